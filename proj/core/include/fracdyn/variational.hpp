#ifndef FRACDYN_VARIATIONAL_HPP
#define FRACDYN_VARIATIONAL_HPP

#include <fracdyn/fdesolve.hpp>
#include <fracdyn/fracpoly.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracdyn {

/// A fractional Lagrangian: the base polynomial L1 over (t, x_i, y_i) and an
/// optional discount rate. With discount_rho set, the full Lagrangian is
/// L1 * E with E the discount factor E_alpha(-rho t^alpha); E never enters
/// the power rule, its time derivative is the eigenfunction rule
/// D_t^alpha E = -rho E.
struct LagrangianSpec {
    FracPoly base;
    std::optional<double> discount_rho;
    int n = 1;
    FracOrder order;

    void validate() const;
    bool discounted() const { return discount_rho.has_value(); }
};

/// The full Lagrangian as a polynomial, with the E symbol attached when
/// discounted.
FracPoly full_lagrangian(const LagrangianSpec& L);

/// D_t^alpha on polynomials that may carry the E symbol linearly: E-terms
/// map to -rho times themselves, the rest goes through the power rule.
FracPoly time_partial(const FracPoly& p, double rho);

/// Derived Euler-Lagrange system: one residual polynomial per coordinate
/// over (t, x, y, y2) plus multiplier symbols for constrained systems.
/// accel_coeffs[i][j] is the coefficient polynomial of y2_j in residual i.
struct ELSystem {
    std::vector<FracPoly> residuals;
    std::vector<std::vector<FracPoly>> accel_coeffs;
    int n = 1;
    FracOrder order;
    bool discounted = false;
};

/// Free Euler-Lagrange system D_x^alpha L - d_t^{2alpha}(D_y^alpha L) = 0.
/// The coefficient of y2_j in residual i is -g_ij.
ELSystem derive_el(const LagrangianSpec& L);

/// Discounted Euler-Lagrange system for L = L1 E. The E factor cancels; the
/// residuals are presented in the normalization whose y2 coefficient is
/// +Gamma(1+a) Gamma(1+2a) a1 for the quadratic economy Lagrangian, i.e.
/// -Gamma(1+alpha) times the raw bracket form. Requires L1 free of t.
ELSystem derive_el_discounted(const LagrangianSpec& L);

/// Velocity Hessian g_ij = D_{y_i} D_{y_j} L together with the force
/// numerators D_{x_k} L - d_t^alpha(D_{y_k} L); M^i = g^{ik} rhs_k is
/// evaluated pointwise and fails where det g vanishes.
struct FVFCoeffs {
    std::vector<std::vector<FracPoly>> g;
    std::vector<FracPoly> rhs;
    int n = 1;
    FracOrder order;
    std::optional<double> rho;

    std::vector<std::vector<double>> g_at(double t, std::span<const double> x,
                                          std::span<const double> y) const;
    std::vector<double> M_at(double t, std::span<const double> x,
                             std::span<const double> y) const;
};

FVFCoeffs build_fvf(const LagrangianSpec& L);

/// Legendre data: momenta p_i = D_{y_i} L, a closed-form Hamiltonian
/// polynomial over (x, p) when every momentum is affine in its own velocity
/// with constant leading coefficient, and a numeric inversion fallback on a
/// declared per-coordinate box otherwise.
struct LegendreBox {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct HamiltonianSpec {
    std::vector<FracPoly> momenta;
    std::optional<FracPoly> closed_form;
    FracPoly lagrangian; // full L with the E symbol attached when discounted
    int n = 1;
    FracOrder order;
    std::optional<double> rho;
    LegendreBox box;

    /// Inverts p = D_y L(x, y) per coordinate (safeguarded bisection/Newton
    /// inside the box) and returns y*.
    std::vector<double> invert(double t, std::span<const double> x,
                               std::span<const double> p) const;

    /// H = Gamma(1+alpha) p_i y*_i - L(t, x, y*).
    double value(double t, std::span<const double> x, std::span<const double> p) const;
};

HamiltonianSpec legendre(const LagrangianSpec& L, LegendreBox box = {});

/// Fractional Poisson bracket over cotangent coordinates (x, p):
/// sum_i D_{p_i} f D_{x_i} h - D_{x_i} f D_{p_i} h, exact.
FracPoly poisson_bracket(const FracPoly& f, const FracPoly& h, FracOrder order, int n);

struct ResidualEntry {
    std::string name;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double relative = 0.0; // max_abs over the larger of the two compared terms
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    double max_relative() const;
};

/// Residuals of the Hamilton equations and the bracket identities along a
/// trajectory carrying x, v and p channels. Time derivatives are taken with
/// the grid Caputo operator (centered differences at alpha = 1); endpoints
/// and the first node are excluded. Requires a closed-form Hamiltonian.
ResidualReport verify_hamilton(const Trajectory& traj, const HamiltonianSpec& H);

/// Constrained system for L2 = L + lambda F with F over (x, y): the residual
/// carries lambda and the independent symbol dlambda for D_t^alpha lambda.
/// With a discounted L this is the expanded three-block form (the E block,
/// the lambda block and the dlambda term).
ELSystem derive_constrained_el(const LagrangianSpec& L, const FracPoly& F);

} // namespace fracdyn

#endif
