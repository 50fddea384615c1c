#include <fracdyn/models.hpp>

#include <fracdyn/gridops.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace fracdyn {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const VarId kK = VarId::pos(1);
const VarId kI = VarId::pos(2);
const VarId kN = VarId::pos(3);

} // namespace

// ---------------------------------------------------------------------------
// Samuelson

void SamuelsonParams::validate() const {
    if (a1 == 0.0) {
        throw input_error("SamuelsonParams: a1 must be nonzero (g = -a1 Gamma(1+2a) degenerates)");
    }
    if (rho < 0.0) throw input_error("SamuelsonParams: rho must be >= 0");
}

FracPoly samuelson_lagrangian(const SamuelsonParams& params) {
    const FracOrder order = params.order;
    FracPoly L1 = FracPoly::monomial(order, -params.a1,
                                     {{VarId::vel(1), Exponent::alpha_multiple(2)}});
    L1 = L1.add(FracPoly::monomial(order, -params.a2,
                                   {{VarId::vel(1), Exponent::alpha_multiple(1)},
                                    {VarId::pos(1), Exponent::alpha_multiple(1)}}));
    L1 = L1.add(FracPoly::monomial(order, -params.a3,
                                   {{VarId::pos(1), Exponent::alpha_multiple(2)}}));
    return L1;
}

LagrangianSpec samuelson_spec(const SamuelsonParams& params) {
    params.validate();
    return LagrangianSpec{samuelson_lagrangian(params), params.rho, 1, params.order};
}

ELSystem samuelson_derive(const SamuelsonParams& params) {
    params.validate();
    ELSystem sys = derive_el_discounted(samuelson_spec(params));

    // direct assembly of the four-term equation for the cross-check
    const double a = params.order.alpha();
    const double g1 = gamma_fn(1.0 + a);
    const double g2 = gamma_fn(1.0 + 2.0 * a);
    FracPoly expected = FracPoly::monomial(params.order, params.a1 * g1 * g2,
                                           {{VarId::accel(1), Exponent::integer(1)}});
    expected = expected.add(FracPoly::monomial(
        params.order, -(params.a2 * g1 * g1 + params.rho * params.a1 * g2),
        {{VarId::vel(1), Exponent::alpha_multiple(1)}}));
    expected = expected.add(FracPoly::monomial(params.order, params.a2 * g1 * g1 * g1,
                                               {{VarId::vel(1), Exponent::integer(1)}}));
    expected = expected.add(FracPoly::monomial(
        params.order, -(params.a3 * g2 + params.rho * params.a2 * g1 * g1),
        {{VarId::pos(1), Exponent::alpha_multiple(1)}}));

    const FracPoly diff = sys.residuals[0].sub(expected);
    const double scale = std::max(expected.max_abs_coeff(), 1.0);
    if (diff.max_abs_coeff() > 1.0e-12 * scale) {
        throw numeric_error("samuelson_derive: derived equation missed the expected "
                            "gamma-coefficient form (defect " +
                            fmt_double(diff.max_abs_coeff()) + ")");
    }
    return sys;
}

Trajectory samuelson_simulate(const SamuelsonParams& params, double x0, double v0,
                              double horizon, double step) {
    params.validate();
    const FracOrder order = params.order;
    const double a = order.alpha();
    const double g1 = gamma_fn(1.0 + a);
    const bool fractional = !order.is_classical();
    if (fractional && !(x0 > 0.0 && v0 >= 0.0)) {
        throw input_error("samuelson_simulate: fractional powers need x0 > 0 and v0 >= 0");
    }

    ELSystem sys = samuelson_derive(params);
    auto [coeff, rest] = sys.residuals[0].split_linear(VarId::accel(1));
    if (!coeff.is_constant()) {
        throw numeric_error("samuelson_simulate: nonconstant y2 coefficient");
    }
    const double c = coeff.constant_value();

    // D^a x = v, D^a v = g1 * m(x, v/g1) with m the solved-for y2 symbol
    RhsSpec F = RhsSpec::function(
        1, [rest, c, g1, a, fractional](double t, std::span<const double> s,
                                        std::span<double> out) {
            const double x = s[0];
            const double y = s[1] / g1;
            if (fractional && (x < 0.0 || y < 0.0)) {
                throw orthant_exit_error("samuelson_simulate: state left the positive orthant", t);
            }
            std::map<VarId, double> point;
            point[VarId::pos(1)] = x;
            point[VarId::vel(1)] = y;
            const double m = -eval(rest, point) / c;
            out[0] = g1 * m;
            (void)a;
        });

    const double x0v[1] = {x0};
    const double v0v[1] = {v0};
    Trajectory traj = solve_fvf(order, F, x0v, v0v, horizon, step);

    // momentum channel p = E D_y L1 evaluated along the trajectory
    FracPoly dy = frac_partial(samuelson_lagrangian(params), VarId::vel(1), order);
    const auto& xs = traj.channel("x_1");
    const auto& vs = traj.channel("v_1");
    std::vector<double> ps(traj.points());
    for (std::size_t k = 0; k < ps.size(); ++k) {
        std::map<VarId, double> point;
        point[VarId::pos(1)] = xs[k];
        point[VarId::vel(1)] = vs[k] / g1;
        ps[k] = ml_discount(order, params.rho, traj.t(k)) * eval(dy, point);
    }
    traj.add_channel("p_1", std::move(ps));
    return traj;
}

// ---------------------------------------------------------------------------
// Liviatan-Samuelson residual

double liviatan_el_residual(const std::function<double(double)>& u_prime,
                            const std::function<double(double)>& u_second, const FracPoly& g,
                            FracOrder order, double rho, double x, double y) {
    for (const auto& term : g.terms()) {
        for (const auto& [v, e] : term.exps) {
            if (v != VarId::pos(1)) {
                throw input_error("liviatan_el_residual: g must be a polynomial in x");
            }
        }
    }
    const double a = order.alpha();
    const double g1 = gamma_fn(1.0 + a);
    std::map<VarId, double> point{{VarId::pos(1), x}};
    const double gx = eval(g, point);
    const double dgx = eval(frac_partial(g, VarId::pos(1), order), point);
    const double c = gx - y;
    const double up = u_prime(c);
    const double upp = u_second(c);
    if (y < 0.0 && std::floor(2.0 * a) != 2.0 * a) {
        throw input_error("liviatan_el_residual: y < 0 under the fractional power y^{2a}");
    }
    return g1 * g1 * upp * std::pow(y, 2.0 * a) - g1 * dgx * upp * y + rho * up * g1 - up * dgx;
}

std::optional<double> find_positive_root(const std::function<double(double)>& f, double x0) {
    double x = std::max(x0, 1.0e-12);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = f(x);
        if (std::abs(fx) < 1.0e-12 * std::max(1.0, std::abs(x))) return x;
        const double h = 1.0e-6 * std::max(1.0, std::abs(x));
        const double d = (f(x + h) - f(std::max(x - h, 1.0e-12))) / (x + h - std::max(x - h, 1.0e-12));
        if (d == 0.0 || !std::isfinite(d)) return std::nullopt;
        double step = fx / d;
        double damp = 1.0;
        // damped update with positive projection
        for (int back = 0; back < 40; ++back) {
            const double cand = std::max(x - damp * step, 1.0e-12);
            if (std::abs(f(cand)) < std::abs(fx)) {
                x = cand;
                break;
            }
            damp *= 0.5;
            if (back == 39) return std::nullopt;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Homogeneity

Homogeneity check_homogeneity(const FracPoly& P, FracOrder order) {
    const double g1 = gamma_fn(1.0 + order.alpha());
    Homogeneity out{false, 0.0, FracPoly::zero(order)};
    if (P.is_zero() || P.is_constant()) {
        // Euler sum annihilates constants; degree 0 by convention
        out.ok = P.is_constant();
        return out;
    }

    FracPoly lhs = FracPoly::zero(order);
    for (const VarId& v : {kK, kI, kN}) {
        FracPoly va = FracPoly::var_pow(order, v, Exponent::alpha_multiple(1));
        lhs = lhs.add(va.mul(frac_partial(P, v, order)));
    }

    // candidate scalar from the first term of P and its partner in lhs
    const auto& lead = P.terms().front();
    double s = 0.0;
    bool found = false;
    for (const auto& term : lhs.terms()) {
        if (term.exps.size() == lead.exps.size()) {
            bool match = true;
            for (std::size_t i = 0; i < term.exps.size(); ++i) {
                if (term.exps[i].first != lead.exps[i].first ||
                    !term.exps[i].second.same(lead.exps[i].second)) {
                    match = false;
                    break;
                }
            }
            if (match) {
                s = g1 * term.coeff / lead.coeff;
                found = true;
                break;
            }
        }
    }
    if (!found) {
        out.defect = lhs;
        return out;
    }

    FracPoly defect = lhs.sub(P.scale(s / g1));
    const double scale = std::max({lhs.max_abs_coeff(), P.max_abs_coeff(), 1.0});
    out.defect = defect;
    out.r = s;
    out.ok = defect.max_abs_coeff() <= 1.0e-12 * scale;
    return out;
}

double phi_degree_one_exponent(FracOrder order) {
    const double a = order.alpha();
    const double g1 = gamma_fn(1.0 + a);
    // solve g1 * Gamma(1+g)/Gamma(1+g-a) = 1 by bisection on g in (a, 4)
    auto f = [&](double g) { return g1 * gamma_fn(1.0 + g) / gamma_fn(1.0 + g - a) - 1.0; };
    double lo = a + 1.0e-9, hi = 4.0;
    if (f(lo) > 0.0 || f(hi) < 0.0) {
        throw numeric_error("phi_degree_one_exponent: no bracket, alpha = " + fmt_double(a));
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Investment model

void InvestmentSpec::validate() const {
    if (rho < 0.0) throw input_error("InvestmentSpec: rho must be >= 0");
    for (const FracPoly* p : {&L1, &phi}) {
        if (p->alpha() != order.alpha()) {
            throw input_error("InvestmentSpec: polynomial alpha differs from order");
        }
        for (const auto& term : p->terms()) {
            for (const auto& [v, e] : term.exps) {
                if (v.kind != VarKind::position || v.index < 1 || v.index > 3) {
                    throw input_error("InvestmentSpec: variables must be exactly {K, I, N}, got " +
                                      v.name());
                }
                if (e.value(order.alpha()) <= 0.0) {
                    throw input_error("InvestmentSpec: exponents must be positive");
                }
            }
        }
    }
    if (phi.is_zero()) throw input_error("InvestmentSpec: phi must be nonzero");
}

NameTable investment_names() {
    return {{kK, "K"}, {kI, "I"}, {kN, "N"}, {VarId::multiplier(), "lambda"},
            {VarId::multiplier_rate(), "dlambda"}, {VarId::discount(), "E"}};
}

ELSystem investment_derive(const InvestmentSpec& spec) {
    spec.validate();
    const FracOrder order = spec.order;
    const double g1 = gamma_fn(1.0 + order.alpha());

    // Constraint F = phi - K^{(a)} with K^{(a)} carried as the jet-bundle
    // monomial (1/Gamma(1+a)) y_1^a, the unique power whose y_1-derivative
    // is the constant 1 under the normalized duality.
    FracPoly F = spec.phi.sub(FracPoly::monomial(order, 1.0 / g1,
                                                 {{VarId::vel(1), Exponent::alpha_multiple(1)}}));

    LagrangianSpec L{spec.L1, spec.rho, 3, order};
    ELSystem sys = derive_constrained_el(L, F);

    if (spec.strict_paper) {
        // literal text: the second equation carries lambda D_K phi
        FracPoly eq2 = frac_partial(spec.L1, kI, order)
                           .mul(FracPoly::var(order, VarId::discount()));
        eq2 = eq2.add(FracPoly::var(order, VarId::multiplier())
                          .mul(frac_partial(spec.phi, kK, order)));
        sys.residuals[1] = std::move(eq2);
    }
    return sys;
}

namespace {

struct InvestmentEquations {
    FracPoly dL1_K, dL1_I, dL1_N;
    FracPoly dphi_K, dphi_I, dphi_N;
};

InvestmentEquations investment_partials(const InvestmentSpec& spec) {
    return InvestmentEquations{
        frac_partial(spec.L1, kK, spec.order), frac_partial(spec.L1, kI, spec.order),
        frac_partial(spec.L1, kN, spec.order), frac_partial(spec.phi, kK, spec.order),
        frac_partial(spec.phi, kI, spec.order), frac_partial(spec.phi, kN, spec.order)};
}

double eval_kin(const FracPoly& p, double K, double I, double N) {
    std::map<VarId, double> point{{kK, K}, {kI, I}, {kN, N}};
    return eval(p, point);
}

// Third first-order condition as a function of N; solved per step by a
// safeguarded bisection in log space.
double solve_labor(const InvestmentEquations& eq, double Eval, double lambda, double K, double I,
                   double n_guess, double t) {
    auto g = [&](double N) {
        return Eval * eval_kin(eq.dL1_N, K, I, N) + lambda * eval_kin(eq.dphi_N, K, I, N);
    };
    const bool l1_free = eq.dL1_N.is_zero();
    const bool phi_free = eq.dphi_N.is_zero();
    if (l1_free && phi_free) return n_guess; // N does not enter, keep the closure value
    if (l1_free != phi_free) {
        throw numeric_error("investment_simulate: third equation cannot determine N "
                            "(one-sided N dependence)");
    }

    double lo = n_guess, hi = n_guess;
    double glo = g(lo), ghi = glo;
    for (int expand = 0; expand < 80 && (glo > 0.0) == (ghi > 0.0); ++expand) {
        lo /= 1.5;
        hi *= 1.5;
        glo = g(lo);
        ghi = g(hi);
        if (!std::isfinite(glo) || !std::isfinite(ghi)) {
            throw solver_error("investment_simulate: labor equation not finite", 0, t);
        }
    }
    if ((glo > 0.0) == (ghi > 0.0)) {
        throw numeric_error("investment_simulate: labor root find failed to bracket "
                            "(non-monotone or rootless N equation at t = " +
                            fmt_double(t) + ")");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1.0e-14 * hi) break;
    }
    return std::sqrt(lo * hi);
}

} // namespace

Trajectory investment_simulate(const InvestmentSpec& spec, double K0, double I0, double N0,
                               double horizon, double step) {
    spec.validate();
    if (!(K0 > 0.0 && I0 > 0.0 && N0 > 0.0)) {
        throw input_error("investment_simulate: initial state must be positive");
    }
    const FracOrder order = spec.order;
    const InvestmentEquations eq = investment_partials(spec);

    // consistent multiplier start: second condition when it is informative,
    // else quasi-steady from the first
    double lambda0;
    if (spec.lambda0) {
        lambda0 = *spec.lambda0;
    } else if (!eq.dphi_I.is_zero() && !eq.dL1_I.is_zero()) {
        lambda0 = -eval_kin(eq.dL1_I, K0, I0, N0) / eval_kin(eq.dphi_I, K0, I0, N0);
    } else {
        lambda0 = -eval_kin(eq.dL1_K, K0, I0, N0) / eval_kin(eq.dphi_K, K0, I0, N0);
    }

    // differential pair (K, lambda); N per step from the third condition,
    // I held at I0
    RhsSpec rhs = RhsSpec::function(
        2, [&spec, &eq, I0, N0](double t, std::span<const double> s, std::span<double> out) {
            const double K = s[0];
            const double lambda = s[1];
            if (!(K > 0.0)) {
                throw orthant_exit_error("investment_simulate: capital left the positive orthant",
                                        t);
            }
            const double Eval = ml_discount(spec.order, spec.rho, t);
            const double N = solve_labor(eq, Eval, lambda, K, I0, N0, t);
            out[0] = eval_kin(spec.phi, K, I0, N);
            out[1] = -Eval * eval_kin(eq.dL1_K, K, I0, N) - lambda * eval_kin(eq.dphi_K, K, I0, N);
        });

    const double y0[2] = {K0, lambda0};
    Trajectory raw = solve_alpha_system(order, rhs, y0, horizon, step);
    const std::size_t npts = raw.points();

    Trajectory traj;
    traj.step = raw.step;
    traj.alpha = raw.alpha;
    traj.add_channel("x_1", raw.cols[0]);
    traj.add_channel("x_2", std::vector<double>(npts, I0));

    std::vector<double> Ns(npts), phis(npts);
    for (std::size_t k = 0; k < npts; ++k) {
        const double t = raw.t(k);
        const double Eval = ml_discount(order, spec.rho, t);
        Ns[k] = solve_labor(eq, Eval, raw.cols[1][k], raw.cols[0][k], I0, N0, t);
        phis[k] = eval_kin(spec.phi, raw.cols[0][k], I0, Ns[k]);
    }
    traj.add_channel("x_3", std::move(Ns));
    traj.add_channel("v_1", std::move(phis));
    traj.add_channel("lambda", raw.cols[1]);
    return traj;
}

double investment_relation_residual(const Trajectory& traj, const InvestmentSpec& spec) {
    spec.validate();
    if (!traj.has_channel("lambda")) {
        throw input_error("investment_relation_residual: trajectory lacks the lambda channel");
    }
    const FracOrder order = spec.order;
    const double a = order.alpha();
    const double g1 = gamma_fn(1.0 + a);

    double r;
    if (spec.r) {
        r = *spec.r; // caller-asserted degree (negative controls)
    } else {
        Homogeneity h = check_homogeneity(spec.L1, order);
        if (!h.ok) {
            throw input_error("investment_relation_residual: L1 is not fractionally homogeneous");
        }
        r = h.r;
    }
    Homogeneity hphi = check_homogeneity(spec.phi, order);
    if (!hphi.ok || std::abs(hphi.r - 1.0) > 1.0e-8) {
        throw input_error("investment_relation_residual: phi must be homogeneous of degree 1, "
                          "got " + fmt_double(hphi.r));
    }

    const auto& K = traj.channel("x_1");
    const auto& I = traj.channel("x_2");
    const auto& N = traj.channel("x_3");
    const auto& lam = traj.channel("lambda");
    const std::size_t npts = traj.points();

    SampledFunction fk{0.0, traj.step, K};
    SampledFunction fl{0.0, traj.step, lam};
    const std::vector<double> dK = caputo_left(fk, a).values;
    const std::vector<double> dLam = caputo_left(fl, a).values;

    const double t_end = traj.t(npts - 1);
    const double burn_in = t_end / 8.0;
    double worst = 0.0;
    for (std::size_t k = 1; k < npts; ++k) {
        if (traj.t(k) < burn_in) continue;
        const double Eval = ml_discount(order, spec.rho, traj.t(k));
        const double l1 = eval_kin(spec.L1, K[k], I[k], N[k]);
        const double term1 = r * Eval * l1;
        const double term2 = lam[k] * dK[k];
        const double term3 = g1 * std::pow(K[k], a) * dLam[k];
        const double scale = std::abs(term1) + std::abs(term2) + std::abs(term3) + 1.0e-300;
        worst = std::max(worst, std::abs(term1 + term2 + term3) / scale);
    }
    return worst;
}

} // namespace fracdyn
