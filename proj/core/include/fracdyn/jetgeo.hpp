#ifndef FRACDYN_JETGEO_HPP
#define FRACDYN_JETGEO_HPP

#include <fracdyn/variational.hpp>

#include <vector>

namespace fracdyn {

/// Point of the first-order fractional jet bundle in chart coordinates
/// (t, x^i, y^i). Components entering non-integer powers must be positive.
struct JetPoint {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;
};

/// Vector written in the operator basis (D_t, D_{x_i}, D_{y_i}).
struct TangentRep {
    double c_t = 0.0;
    std::vector<double> c_x;
    std::vector<double> c_y;
};

/// Pointwise Cartan 2-form coefficients: A_i (dt^a ^ dx_i^a), B_i
/// (dt^a ^ dy_i^a), A2_ij (dx^a ^ dx^a, only the antisymmetric part enters),
/// B2_ij (dx_i^a ^ dy_j^a).
struct CanonicalEval {
    std::vector<double> A;
    std::vector<double> B;
    std::vector<std::vector<double>> A2;
    std::vector<std::vector<double>> B2;
};

/// Positive per-coordinate scaling composed with a permutation:
/// new_x^i = scale_i * x^{sigma(i)} (sigma 1-based).
struct CoordinateChange {
    std::vector<int> sigma;
    std::vector<double> scale;

    void validate() const;
    CoordinateChange inverse() const;
};

/// Duality pairings of the normalized coframe (1/Gamma(1+a)) d(.)^a against
/// the operator basis, each entry computed symbolically through the power
/// rule. Must be the identity matrix of size 2n+1.
std::vector<std::vector<double>> pairing_table(FracOrder order, int n);

struct FvfCheck {
    bool is_fvf = false;
    double time_defect = 0.0;           // (1/Gamma) dt^a(v) - 1 = c_t - 1
    std::vector<double> theta_defects;  // theta^i(v) = c_x[i] - y_i c_t
};

/// Flags vectors of the contact form: accepted exactly when c_t = 1 and
/// c_x = y(p), i.e. the local FVF shape with free fiber part.
FvfCheck check_fvf(const TangentRep& v, const JetPoint& p, FracOrder order);

struct StructureImages {
    TangentRep theta1;
    TangentRep theta2;
    TangentRep S;
};

/// Images of v under the canonical structures theta1, theta2, S at p.
StructureImages apply_structures(const TangentRep& v, const JetPoint& p, FracOrder order);

/// Cartan 2-form coefficients of a Lagrangian at a point, assembled so that
/// the regular fractional vector field contracts to zero identically:
///   A_i  = D_t D_{y_i} L + y^j D_{x_i} D_{y_j} L - D_{x_i} L
///   B_i  = y^j D_{y_j} D_{y_i} L
///   A2_ij = D_{x_i} D_{y_j} L
///   B2_ij = -D_{y_j} D_{y_i} L
CanonicalEval cartan_coeffs(const LagrangianSpec& L, const JetPoint& p);

/// Max-norm of i_{Gamma_L} omega_L at p with Gamma_L from build_fvf; zero up
/// to rounding at every regular point.
double interior_product_residual(const LagrangianSpec& L, const JetPoint& p);

/// Negative control: same contraction with the fiber coefficients M^i
/// shifted by delta; bounded away from zero for nondegenerate L.
double interior_product_residual_perturbed(const LagrangianSpec& L, const JetPoint& p,
                                           double delta);

/// Jet-coordinate transport: x by substitution, y through the fractional
/// Jacobian (1/Gamma(1+a)) D_{new_x^j}((x^i)^a), each entry computed with the
/// power rule. Restricted to positive scalings and permutations.
JetPoint transform_jet(const CoordinateChange& change, const JetPoint& p, FracOrder order);

} // namespace fracdyn

#endif
