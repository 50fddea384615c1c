#ifndef FRACDYN_FDESOLVE_HPP
#define FRACDYN_FDESOLVE_HPP

#include <fracdyn/errors.hpp>
#include <fracdyn/fracpoly.hpp>
#include <fracdyn/specfun.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fracdyn {

/// Time grid starting at 0 with named channels of equal length.
/// For trajectories produced by solve_fvf, channel v_i holds D_t^alpha x_i;
/// the normalized jet coordinate y_i is v_i / Gamma(1+alpha).
struct Trajectory {
    double step = 0.0;
    double alpha = 0.0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;

    std::size_t points() const { return cols.empty() ? 0 : cols.front().size(); }
    double t(std::size_t i) const { return step * static_cast<double>(i); }

    bool has_channel(const std::string& name) const;
    const std::vector<double>& channel(const std::string& name) const;
    void add_channel(const std::string& name, std::vector<double> values);
};

/// Right-hand side of D_t^alpha y = f(t, y): either an opaque callable or a
/// FracPoly vector with an explicit state-variable binding. The binding is
/// the caller's statement of which polynomial variable reads which state
/// slot; no normalization is applied here.
class RhsSpec {
  public:
    using Fn = std::function<void(double t, std::span<const double> y, std::span<double> out)>;

    static RhsSpec function(std::size_t dim, Fn f);
    static RhsSpec polynomials(std::vector<FracPoly> rhs, std::vector<VarId> state_vars);

    std::size_t dim() const { return dim_; }
    std::size_t state_dim() const { return state_vars_.empty() ? dim_ : state_vars_.size(); }
    void eval(double t, std::span<const double> y, std::span<double> out) const;

  private:
    RhsSpec() = default;
    std::size_t dim_ = 0;
    Fn fn_;
    std::vector<FracPoly> polys_;
    std::vector<VarId> state_vars_;
};

/// Adams-Bashforth-Moulton predictor-corrector for D_t^alpha y = f(t,y),
/// y(0) = y0, fixed step, one corrector pass, full O(N^2) history with a
/// fixed (oldest-first) summation order. alpha = 1 (classical_limit) reduces
/// to the classical second-order PECE pair.
Trajectory solve_alpha_system(FracOrder order, const RhsSpec& rhs, std::span<const double> y0,
                              double horizon, double step);

/// Second-order-form system D^{2alpha} x = F(t, x, D^alpha x), integrated as
/// the augmented pair D^alpha x = v, D^alpha v = F with the composition
/// reading of D^{2alpha}. F evaluates on the concatenated state (x_1..x_n,
/// v_1..v_n). Channels x_i and v_i are returned.
Trajectory solve_fvf(FracOrder order, const RhsSpec& F, std::span<const double> x0,
                     std::span<const double> v0, double horizon, double step);

} // namespace fracdyn

#endif
