#ifndef FRACDYN_FRACPOLY_HPP
#define FRACDYN_FRACPOLY_HPP

#include <fracdyn/errors.hpp>
#include <fracdyn/specfun.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fracdyn {

/// Variable roles on the first-order fractional jet bundle and its cotangent
/// side, plus the multiplier bookkeeping of constrained problems and the
/// discount factor symbol E (treated as an opaque positive factor whose time
/// derivative is supplied by the eigenfunction rule, never by the power rule).
enum class VarKind {
    time,            // t
    position,        // x_i
    velocity,        // y_i, the normalized fractional velocity
    accel,           // y2_i, the second-order symbol
    momentum,        // p_i
    multiplier,      // lambda
    multiplier_rate, // dlambda, carried as an independent symbol
    discount,        // E
};

struct VarId {
    VarKind kind;
    int index; // 1-based for indexed kinds, 0 otherwise

    static VarId time() { return {VarKind::time, 0}; }
    static VarId pos(int i) { return {VarKind::position, i}; }
    static VarId vel(int i) { return {VarKind::velocity, i}; }
    static VarId accel(int i) { return {VarKind::accel, i}; }
    static VarId mom(int i) { return {VarKind::momentum, i}; }
    static VarId multiplier() { return {VarKind::multiplier, 0}; }
    static VarId multiplier_rate() { return {VarKind::multiplier_rate, 0}; }
    static VarId discount() { return {VarKind::discount, 0}; }

    std::string name() const; // t, x_1, y_1, y2_1, p_1, lambda, dlambda, E

    friend bool operator==(const VarId&, const VarId&) = default;
    friend auto operator<=>(const VarId&, const VarId&) = default;
};

/// Exponent kept on the exact alpha-lattice m + k*alpha when possible.
/// Lattice arithmetic is integer-exact, which is what makes repeated power
/// rules land back on the same monomial slots instead of drifting apart.
class Exponent {
  public:
    Exponent() : lattice_(true), m_(0), k_(0), value_(0.0) {}

    static Exponent integer(int m) { return Exponent(m, 0); }
    static Exponent alpha_multiple(int k) { return Exponent(0, k); }
    static Exponent lattice(int m, int k) { return Exponent(m, k); }
    static Exponent real(double v);

    bool is_lattice() const { return lattice_; }
    int m() const { return m_; }
    int k() const { return k_; }

    double value(double alpha) const { return lattice_ ? m_ + k_ * alpha : value_; }

    // Exact-form equality: lattice coordinates first, float fallback bitwise.
    bool same(const Exponent& o) const;

    Exponent plus(const Exponent& o, double alpha) const;
    Exponent minus_alpha(double alpha) const; // exponent - alpha

    std::string str() const; // "m+k*a" lattice form, else decimal

  private:
    Exponent(int m, int k) : lattice_(true), m_(m), k_(k), value_(0.0) {}
    bool lattice_;
    int m_, k_;
    double value_;
};

/// One term c * prod v^e. Exponents are stored sorted by VarId with no zero
/// entries; an absent variable means exponent zero.
struct Monomial {
    double coeff = 0.0;
    std::vector<std::pair<VarId, Exponent>> exps;

    std::optional<Exponent> exponent_of(const VarId& v) const;
};

/// Finite sum of real-exponent monomials over the jet-bundle variables,
/// closed under the Caputo power rule. A polynomial is pinned to one alpha:
/// gamma factors are folded into coefficients at composition time, so mixing
/// alphas is a logic error and is rejected.
class FracPoly {
  public:
    explicit FracPoly(FracOrder order) : alpha_(order.alpha()) {}

    static FracPoly zero(FracOrder order) { return FracPoly(order); }
    static FracPoly constant(FracOrder order, double c);
    static FracPoly monomial(FracOrder order, double c,
                             std::vector<std::pair<VarId, Exponent>> exps);
    static FracPoly var(FracOrder order, VarId v); // v^1
    static FracPoly var_pow(FracOrder order, VarId v, Exponent e);

    double alpha() const { return alpha_; }
    FracOrder order() const;
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    double constant_value() const; // 0 for the zero polynomial

    FracPoly add(const FracPoly& q) const;
    FracPoly sub(const FracPoly& q) const;
    FracPoly mul(const FracPoly& q) const;
    FracPoly scale(double c) const;

    /// True when a term carries a negative exponent of some variable
    /// (produced by the power rule when gamma < alpha); such terms evaluate
    /// everywhere except at that variable's origin.
    bool singular_at_origin() const;

    /// Collects the terms linear in `v` (exponent exactly 1) with v stripped,
    /// plus the terms free of v. Throws if any other power of v appears.
    /// This is how leading y2 symbols are read off derived systems.
    std::pair<FracPoly, FracPoly> split_linear(const VarId& v) const;

    /// Largest |coefficient| over all terms; 0 for the zero polynomial.
    double max_abs_coeff() const;

    friend bool operator==(const FracPoly&, const FracPoly&);

  private:
    void canonicalize();
    double alpha_;
    std::vector<Monomial> terms_;
};

/// Termwise Caputo partial derivative via the power rule:
///   c v^g -> c Gamma(1+g)/Gamma(1+g-alpha) v^{g-alpha}   (g > 0),
/// terms free of v map to zero, constants map to zero. The derivative order
/// always equals the polynomial's own alpha.
FracPoly frac_partial(const FracPoly& p, VarId v, FracOrder order);

/// First-order fractional total derivative D_t + sum_i y_i D_{x_i}.
FracPoly dt_alpha_total(const FracPoly& p, int n);

/// Second-order symbol version D_t + sum_i y_i D_{x_i} + sum_i y2_i D_{y_i}.
FracPoly dt_2alpha_total(const FracPoly& p, int n);

/// Fractional Taylor reconstruction over t: reads off the lattice
/// coefficients D_t^{alpha a} p |_{t=0} by repeated power rule and rebuilds
/// sum t^{alpha a}/Gamma(1+alpha a) * coeff_a. Identity on its domain.
FracPoly taylor_reconstruct(const FracPoly& p, FracOrder order, int k_max);

/// Point evaluation. Every variable appearing in p must be assigned;
/// non-integer exponents require base >= 0, negative exponents base != 0.
double eval(const FracPoly& p, const std::map<VarId, double>& point);

/// Optional display-name override (e.g. K/I/N for the investment model).
using NameTable = std::vector<std::pair<VarId, std::string>>;

/// Text form: terms "coeff * var^exp * ..." joined by " + ", lattice
/// exponents printed as "m+k*a". Deterministic by canonical term order.
std::string to_string(const FracPoly& p, const NameTable& names = {});

/// Parses the same grammar; `names` adds context aliases on top of the
/// canonical variable names. Whitespace-insensitive.
FracPoly parse_fracpoly(const std::string& text, FracOrder order, const NameTable& names = {});

} // namespace fracdyn

#endif
