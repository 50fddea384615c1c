#ifndef FRACDYN_MODELS_HPP
#define FRACDYN_MODELS_HPP

#include <fracdyn/variational.hpp>

#include <functional>
#include <optional>

namespace fracdyn {

// ---------------------------------------------------------------------------
// Quadratic-economy (Samuelson) model

struct SamuelsonParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double rho = 0.0;
    FracOrder order;

    void validate() const; // a1 != 0 (regularity), rho >= 0
};

/// L1 = -a1 y^{2a} - a2 y^a x^a - a3 x^{2a} over one coordinate.
FracPoly samuelson_lagrangian(const SamuelsonParams& params);
LagrangianSpec samuelson_spec(const SamuelsonParams& params);

/// Discounted Euler-Lagrange equation of the quadratic Lagrangian. The
/// result is cross-checked term by term against the directly assembled
/// gamma-coefficient polynomial; a mismatch raises numeric_error.
ELSystem samuelson_derive(const SamuelsonParams& params);

/// Integrates the derived equation (solved for the y2 symbol) through the
/// augmented solver and attaches the momentum channel p_1 = E D_y L1.
/// State positivity is enforced while fractional powers are present.
Trajectory samuelson_simulate(const SamuelsonParams& params, double x0, double v0,
                              double horizon, double step);

// ---------------------------------------------------------------------------
// Consumption (Liviatan-Samuelson) residual

/// Left side of the consumption-model equation at one point (x, y):
///   G1^2 U''(c) y^{2a} - G1 Dg(x) U''(c) y + rho U'(c) G1 - U'(c) Dg(x)
/// with c = g(x) - y, G1 = Gamma(1+alpha) and Dg the exact fractional
/// derivative of the polynomial g. Used for steady states and as a
/// trajectory residual.
double liviatan_el_residual(const std::function<double(double)>& u_prime,
                            const std::function<double(double)>& u_second, const FracPoly& g,
                            FracOrder order, double rho, double x, double y);

/// Damped Newton with positive projection on a scalar residual; returns the
/// root or nullopt after the iteration budget.
std::optional<double> find_positive_root(const std::function<double(double)>& f, double x0);

// ---------------------------------------------------------------------------
// Fractional homogeneity (Euler-type degree counting)

struct Homogeneity {
    bool ok = false;
    double r = 0.0;
    FracPoly defect;
};

/// Checks K^a D_K P + I^a D_I P + N^a D_N P = (r / Gamma(1+a)) P for some
/// scalar r (canonical proportionality to 1e-12); on failure returns the
/// defect polynomial.
Homogeneity check_homogeneity(const FracPoly& P, FracOrder order);

/// The capital exponent that makes a single monomial K^g degree-1 in the
/// sense above; root of Gamma(1+a) Gamma(1+g)/Gamma(1+g-a) = 1.
double phi_degree_one_exponent(FracOrder order);

// ---------------------------------------------------------------------------
// Investment model with the accumulation constraint phi(K,I,N) = D^alpha K

struct InvestmentSpec {
    FracPoly L1;  // over K, I, N  (positions x_1..x_3)
    FracPoly phi; // over K, I, N
    double rho = 0.0;
    FracOrder order;
    std::optional<double> r;       // asserted homogeneity degree of L1
    bool strict_paper = false;     // reproduce the printed D_K phi in equation 2
    std::optional<double> lambda0; // override the consistent multiplier start

    void validate() const;
};

/// Display aliases K, I, N for the three position variables.
NameTable investment_names();

/// The three first-order conditions with lambda and dlambda symbols. The
/// default second equation carries D_I phi (the derivation forces the
/// I-derivative); strict_paper swaps in the printed D_K phi.
ELSystem investment_derive(const InvestmentSpec& spec);

/// Semi-explicit integration: K and lambda are the differential pair
/// (constraint and first condition), N solves the third condition per step,
/// I is held at I0 (closure; the conditions leave it free for compatible
/// monomial data). Returns channels x_1..x_3 (K, I, N), v_1 = phi and lambda.
Trajectory investment_simulate(const InvestmentSpec& spec, double K0, double I0, double N0,
                               double horizon, double step);

/// Relative residual of the homogeneity relation
///   r E L1 + lambda K^{(a)} + Gamma(1+a) K^a lambda^{(a)} = 0
/// along a trajectory, with the grid Caputo operator supplying K^{(a)} and
/// lambda^{(a)}. Nodes in the initial boundary layer (t < horizon/8) are
/// excluded; the layer is a scheme artifact of the t^alpha start.
double investment_relation_residual(const Trajectory& traj, const InvestmentSpec& spec);

} // namespace fracdyn

#endif
