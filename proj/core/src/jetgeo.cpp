#include <fracdyn/jetgeo.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace fracdyn {

namespace {

void check_point(const JetPoint& p, int n) {
    if (static_cast<int>(p.x.size()) != n || static_cast<int>(p.y.size()) != n) {
        throw input_error("JetPoint: dimension mismatch");
    }
    if (!std::isfinite(p.t)) throw input_error("JetPoint: non-finite t");
    for (double v : p.x) {
        if (!std::isfinite(v)) throw input_error("JetPoint: non-finite x");
    }
    for (double v : p.y) {
        if (!std::isfinite(v)) throw input_error("JetPoint: non-finite y");
    }
}

std::map<VarId, double> point_assignment(const LagrangianSpec& L, const JetPoint& p) {
    std::map<VarId, double> point;
    point[VarId::time()] = p.t;
    for (int i = 1; i <= L.n; ++i) {
        point[VarId::pos(i)] = p.x[static_cast<std::size_t>(i - 1)];
        point[VarId::vel(i)] = p.y[static_cast<std::size_t>(i - 1)];
    }
    point[VarId::discount()] =
        L.discounted() ? ml_discount(L.order, *L.discount_rho, p.t) : 1.0;
    return point;
}

} // namespace

void CoordinateChange::validate() const {
    const std::size_t n = sigma.size();
    if (scale.size() != n || n == 0) throw input_error("CoordinateChange: size mismatch");
    std::vector<bool> seen(n, false);
    for (int s : sigma) {
        if (s < 1 || s > static_cast<int>(n) || seen[static_cast<std::size_t>(s - 1)]) {
            throw input_error("CoordinateChange: sigma is not a permutation of 1..n");
        }
        seen[static_cast<std::size_t>(s - 1)] = true;
    }
    for (double c : scale) {
        if (!(c > 0.0)) throw input_error("CoordinateChange: scalings must be positive");
    }
}

CoordinateChange CoordinateChange::inverse() const {
    validate();
    const std::size_t n = sigma.size();
    CoordinateChange inv;
    inv.sigma.resize(n);
    inv.scale.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t target = static_cast<std::size_t>(sigma[i] - 1);
        inv.sigma[target] = static_cast<int>(i) + 1;
        inv.scale[target] = 1.0 / scale[i];
    }
    return inv;
}

std::vector<std::vector<double>> pairing_table(FracOrder order, int n) {
    if (n < 1) throw input_error("pairing_table: n must be >= 1");
    const double g1 = gamma_fn(1.0 + order.alpha());

    std::vector<VarId> vars;
    vars.push_back(VarId::time());
    for (int i = 1; i <= n; ++i) vars.push_back(VarId::pos(i));
    for (int i = 1; i <= n; ++i) vars.push_back(VarId::vel(i));

    const std::size_t dim = vars.size();
    std::vector<std::vector<double>> table(dim, std::vector<double>(dim, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        // normalized coframe element (1/Gamma(1+a)) (u_r)^a
        FracPoly form = FracPoly::monomial(order, 1.0 / g1,
                                           {{vars[r], Exponent::alpha_multiple(1)}});
        for (std::size_t c = 0; c < dim; ++c) {
            FracPoly paired = frac_partial(form, vars[c], order);
            if (!paired.is_constant()) {
                throw numeric_error("pairing_table: non-constant pairing result");
            }
            table[r][c] = paired.constant_value();
        }
    }
    return table;
}

FvfCheck check_fvf(const TangentRep& v, const JetPoint& p, FracOrder order) {
    const int n = static_cast<int>(p.x.size());
    check_point(p, n);
    if (v.c_x.size() != p.x.size() || v.c_y.size() != p.y.size()) {
        throw input_error("check_fvf: vector/point dimension mismatch");
    }
    (void)order; // the normalized pairings cancel the Gamma factors below

    FvfCheck out;
    out.time_defect = v.c_t - 1.0;
    out.theta_defects.resize(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        out.theta_defects[i] = v.c_x[i] - p.y[i] * v.c_t;
    }
    out.is_fvf = out.time_defect == 0.0 &&
                 std::all_of(out.theta_defects.begin(), out.theta_defects.end(),
                             [](double d) { return d == 0.0; });
    return out;
}

StructureImages apply_structures(const TangentRep& v, const JetPoint& p, FracOrder order) {
    const int n = static_cast<int>(p.x.size());
    check_point(p, n);
    const double g1 = gamma_fn(1.0 + order.alpha());
    const std::size_t un = p.x.size();

    StructureImages out;
    // theta1 = d(t^a) (x) (D_t + y^i D_{x_i}); d(t^a)(v) = Gamma(1+a) c_t
    out.theta1.c_t = g1 * v.c_t;
    out.theta1.c_x.resize(un);
    out.theta1.c_y.assign(un, 0.0);
    for (std::size_t i = 0; i < un; ++i) out.theta1.c_x[i] = g1 * v.c_t * p.y[i];

    // theta^i(v) = c_x[i] - y_i c_t
    std::vector<double> theta(un);
    for (std::size_t i = 0; i < un; ++i) theta[i] = v.c_x[i] - p.y[i] * v.c_t;

    out.theta2.c_t = 0.0;
    out.theta2.c_x = theta;
    out.theta2.c_y.assign(un, 0.0);

    out.S.c_t = 0.0;
    out.S.c_x.assign(un, 0.0);
    out.S.c_y = theta;
    return out;
}

CanonicalEval cartan_coeffs(const LagrangianSpec& L, const JetPoint& p) {
    L.validate();
    check_point(p, L.n);
    const FracPoly full = full_lagrangian(L);
    const double rho = L.discount_rho.value_or(0.0);
    auto point = point_assignment(L, p);
    const std::size_t un = static_cast<std::size_t>(L.n);

    std::vector<FracPoly> dy;
    for (int i = 1; i <= L.n; ++i) dy.push_back(frac_partial(full, VarId::vel(i), L.order));

    CanonicalEval out;
    out.A.resize(un);
    out.B.resize(un);
    out.A2.assign(un, std::vector<double>(un, 0.0));
    out.B2.assign(un, std::vector<double>(un, 0.0));

    for (int i = 1; i <= L.n; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i - 1);
        double a = eval(time_partial(dy[ii], rho), point);
        for (int j = 1; j <= L.n; ++j) {
            const std::size_t jj = static_cast<std::size_t>(j - 1);
            a += p.y[jj] * eval(frac_partial(dy[jj], VarId::pos(i), L.order), point);
        }
        a -= eval(frac_partial(full, VarId::pos(i), L.order), point);
        out.A[ii] = a;

        double b = 0.0;
        for (int j = 1; j <= L.n; ++j) {
            const std::size_t jj = static_cast<std::size_t>(j - 1);
            b += p.y[jj] * eval(frac_partial(dy[jj], VarId::vel(i), L.order), point);
        }
        out.B[ii] = b;

        for (int j = 1; j <= L.n; ++j) {
            const std::size_t jj = static_cast<std::size_t>(j - 1);
            out.A2[ii][jj] = eval(frac_partial(dy[jj], VarId::pos(i), L.order), point);
            out.B2[ii][jj] = -eval(frac_partial(dy[ii], VarId::vel(j), L.order), point);
        }
    }
    return out;
}

namespace {

double contract_residual(const LagrangianSpec& L, const JetPoint& p,
                         const std::vector<double>& M) {
    const CanonicalEval c = cartan_coeffs(L, p);
    const double g1 = gamma_fn(1.0 + L.order.alpha());
    const std::size_t n = static_cast<std::size_t>(L.n);

    // i_Gamma(e^A ^ e^B) = e^A(Gamma) e^B - e^B(Gamma) e^A with
    // e^t(Gamma) = g1, e^{x_i}(Gamma) = g1 y_i, e^{y_i}(Gamma) = g1 M_i.
    double worst = 0.0;

    double coef_t = 0.0;
    for (std::size_t i = 0; i < n; ++i) coef_t -= c.A[i] * p.y[i] + c.B[i] * M[i];
    worst = std::max(worst, std::abs(g1 * coef_t));

    for (std::size_t k = 0; k < n; ++k) {
        double cx = c.A[k];
        for (std::size_t i = 0; i < n; ++i) {
            cx += c.A2[i][k] * p.y[i] - c.A2[k][i] * p.y[i] - c.B2[k][i] * M[i];
        }
        worst = std::max(worst, std::abs(g1 * cx));

        double cy = c.B[k];
        for (std::size_t i = 0; i < n; ++i) cy += c.B2[i][k] * p.y[i];
        worst = std::max(worst, std::abs(g1 * cy));
    }
    return worst;
}

} // namespace

double interior_product_residual(const LagrangianSpec& L, const JetPoint& p) {
    const FVFCoeffs fvf = build_fvf(L);
    const std::vector<double> M = fvf.M_at(p.t, p.x, p.y);
    return contract_residual(L, p, M);
}

double interior_product_residual_perturbed(const LagrangianSpec& L, const JetPoint& p,
                                           double delta) {
    const FVFCoeffs fvf = build_fvf(L);
    std::vector<double> M = fvf.M_at(p.t, p.x, p.y);
    for (double& m : M) m += delta;
    return contract_residual(L, p, M);
}

JetPoint transform_jet(const CoordinateChange& change, const JetPoint& p, FracOrder order) {
    change.validate();
    const std::size_t n = change.sigma.size();
    check_point(p, static_cast<int>(n));
    for (double v : p.x) {
        if (!(v > 0.0)) {
            throw input_error("transform_jet: x components must be positive");
        }
    }

    const double g1 = gamma_fn(1.0 + order.alpha());
    JetPoint out;
    out.t = p.t;
    out.x.resize(n);
    out.y.resize(n);

    // forward positions; inverse map x^i = new_x^j / scale_j at j = sigma^{-1}(i)
    std::vector<std::size_t> sigma_inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = change.scale[j] * p.x[static_cast<std::size_t>(change.sigma[j] - 1)];
        sigma_inv[static_cast<std::size_t>(change.sigma[j] - 1)] = j;
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = sigma_inv[i];
        // J^i_j = (1/Gamma) D_{new_x_j}( (x^i)^a ) with
        // (x^i)^a = scale_j^{-a} (new_x_j)^a; the power rule makes it constant.
        FracPoly xi_alpha = FracPoly::monomial(
            order, std::pow(change.scale[j], -order.alpha()) / g1,
            {{VarId::pos(static_cast<int>(j) + 1), Exponent::alpha_multiple(1)}});
        FracPoly jac = frac_partial(xi_alpha, VarId::pos(static_cast<int>(j) + 1), order);
        if (!jac.is_constant()) throw numeric_error("transform_jet: non-constant Jacobian entry");
        out.y[j] = jac.constant_value() * p.y[i];
    }
    return out;
}

} // namespace fracdyn
