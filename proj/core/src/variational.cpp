#include <fracdyn/variational.hpp>

#include <fracdyn/gridops.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace fracdyn {

namespace {

// Dense LU solve with partial pivoting; n here is 1..3 in practice.
// Returns false when the pivot collapses (singular matrix).
bool lu_solve(std::vector<std::vector<double>> a, std::vector<double>& b) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    const double tol = 1.0e-12 * std::max(1.0, scale);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) <= tol) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * b[c];
        b[i] = s / a[i][i];
    }
    return true;
}

std::map<VarId, double> jet_assignment(double t, std::span<const double> x,
                                       std::span<const double> y, double e_value) {
    std::map<VarId, double> point;
    point[VarId::time()] = t;
    for (std::size_t i = 0; i < x.size(); ++i) point[VarId::pos(static_cast<int>(i) + 1)] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) point[VarId::vel(static_cast<int>(i) + 1)] = y[i];
    point[VarId::discount()] = e_value;
    return point;
}

} // namespace

void LagrangianSpec::validate() const {
    if (n < 1) throw input_error("LagrangianSpec: need n >= 1 coordinates");
    if (base.alpha() != order.alpha()) {
        throw input_error("LagrangianSpec: base polynomial alpha differs from order");
    }
    if (discount_rho && *discount_rho < 0.0) {
        throw input_error("LagrangianSpec: discount rate must be >= 0");
    }
    for (const auto& term : base.terms()) {
        for (const auto& [v, e] : term.exps) {
            const bool ok = v.kind == VarKind::time ||
                            ((v.kind == VarKind::position || v.kind == VarKind::velocity) &&
                             v.index >= 1 && v.index <= n);
            if (!ok) {
                throw input_error("LagrangianSpec: base uses undeclared variable " + v.name());
            }
        }
    }
}

FracPoly full_lagrangian(const LagrangianSpec& L) {
    L.validate();
    if (!L.discounted()) return L.base;
    return L.base.mul(FracPoly::var(L.order, VarId::discount()));
}

FracPoly time_partial(const FracPoly& p, double rho) {
    FracPoly e_block(p.order());
    FracPoly plain(p.order());
    for (const auto& term : p.terms()) {
        auto e = term.exponent_of(VarId::discount());
        FracPoly one = FracPoly::monomial(p.order(), term.coeff, term.exps);
        if (e) {
            if (!(e->is_lattice() && e->m() == 1 && e->k() == 0)) {
                throw input_error("time_partial: the discount symbol must appear linearly");
            }
            e_block = e_block.add(one);
        } else {
            plain = plain.add(one);
        }
    }
    return e_block.scale(-rho).add(frac_partial(plain, VarId::time(), p.order()));
}

ELSystem derive_el(const LagrangianSpec& L) {
    L.validate();
    if (L.discounted()) {
        throw input_error("derive_el: discounted Lagrangian, use derive_el_discounted");
    }
    ELSystem sys{{}, {}, L.n, L.order, false};
    for (int i = 1; i <= L.n; ++i) {
        FracPoly dyi = frac_partial(L.base, VarId::vel(i), L.order);
        FracPoly res = frac_partial(L.base, VarId::pos(i), L.order).sub(dt_2alpha_total(dyi, L.n));
        sys.residuals.push_back(std::move(res));
    }
    for (int i = 0; i < L.n; ++i) {
        std::vector<FracPoly> row;
        for (int j = 1; j <= L.n; ++j) {
            row.push_back(sys.residuals[i].split_linear(VarId::accel(j)).first);
        }
        sys.accel_coeffs.push_back(std::move(row));
    }
    return sys;
}

ELSystem derive_el_discounted(const LagrangianSpec& L) {
    L.validate();
    if (!L.discounted()) {
        throw input_error("derive_el_discounted: no discount rate on the Lagrangian");
    }
    for (const auto& term : L.base.terms()) {
        if (term.exponent_of(VarId::time())) {
            throw input_error("derive_el_discounted: L1 must not depend on t");
        }
    }
    const double rho = *L.discount_rho;
    const double g1 = gamma_fn(1.0 + L.order.alpha());

    ELSystem sys{{}, {}, L.n, L.order, true};
    for (int i = 1; i <= L.n; ++i) {
        FracPoly dyi = frac_partial(L.base, VarId::vel(i), L.order);
        FracPoly bracket(L.order);
        for (int j = 1; j <= L.n; ++j) {
            FracPoly y2j = FracPoly::var(L.order, VarId::accel(j));
            FracPoly yj = FracPoly::var(L.order, VarId::vel(j));
            bracket = bracket.add(y2j.mul(frac_partial(dyi, VarId::vel(j), L.order)));
            bracket = bracket.add(yj.mul(frac_partial(dyi, VarId::pos(j), L.order)));
        }
        bracket = bracket.sub(dyi.scale(rho));
        bracket = bracket.sub(frac_partial(L.base, VarId::pos(i), L.order));
        sys.residuals.push_back(bracket.scale(-g1));
    }
    for (int i = 0; i < L.n; ++i) {
        std::vector<FracPoly> row;
        for (int j = 1; j <= L.n; ++j) {
            row.push_back(sys.residuals[i].split_linear(VarId::accel(j)).first);
        }
        sys.accel_coeffs.push_back(std::move(row));
    }
    return sys;
}

FVFCoeffs build_fvf(const LagrangianSpec& L) {
    L.validate();
    FVFCoeffs out{{}, {}, L.n, L.order, L.discount_rho};

    const FracPoly full = full_lagrangian(L);
    const double rho = L.discount_rho.value_or(0.0);

    for (int i = 1; i <= L.n; ++i) {
        std::vector<FracPoly> row;
        FracPoly dyi = frac_partial(full, VarId::vel(i), L.order);
        for (int j = 1; j <= L.n; ++j) {
            row.push_back(frac_partial(dyi, VarId::vel(j), L.order));
        }
        out.g.push_back(std::move(row));

        // rhs_i = D_{x_i} L - d_t^alpha(D_{y_i} L), with d_t^alpha = D_t + y_j D_{x_j}
        FracPoly total = time_partial(dyi, rho);
        for (int j = 1; j <= L.n; ++j) {
            FracPoly yj = FracPoly::var(L.order, VarId::vel(j));
            total = total.add(yj.mul(frac_partial(dyi, VarId::pos(j), L.order)));
        }
        out.rhs.push_back(frac_partial(full, VarId::pos(i), L.order).sub(total));
    }
    return out;
}

std::vector<std::vector<double>> FVFCoeffs::g_at(double t, std::span<const double> x,
                                                 std::span<const double> y) const {
    const double e_val = rho ? ml_discount(order, *rho, t) : 1.0;
    auto point = jet_assignment(t, x, y, e_val);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = eval(g[i][j], point);
    }
    return m;
}

std::vector<double> FVFCoeffs::M_at(double t, std::span<const double> x,
                                    std::span<const double> y) const {
    const double e_val = rho ? ml_discount(order, *rho, t) : 1.0;
    auto point = jet_assignment(t, x, y, e_val);
    auto gm = g_at(t, x, y);
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = eval(rhs[i], point);
    if (!lu_solve(gm, b)) {
        std::vector<double> at{t};
        at.insert(at.end(), x.begin(), x.end());
        at.insert(at.end(), y.begin(), y.end());
        throw singular_gram_error("build_fvf: velocity Hessian is singular at the point", at);
    }
    return b;
}

namespace {

// Closed-form path: every momentum is c_i y_i + r_i(x) with c_i a nonzero
// constant, and L is polynomial in the velocities with integer exponents.
struct AffineMomentum {
    double c;
    FracPoly rest;
};

std::optional<AffineMomentum> affine_in_velocity(const FracPoly& p, int i, int n) {
    FracPoly linear(p.order()), rest(p.order());
    for (const auto& term : p.terms()) {
        auto e = term.exponent_of(VarId::vel(i));
        FracPoly one = FracPoly::monomial(p.order(), term.coeff, term.exps);
        if (!e) {
            // must be free of every velocity to be invertible per coordinate
            for (int j = 1; j <= n; ++j) {
                if (term.exponent_of(VarId::vel(j))) return std::nullopt;
            }
            rest = rest.add(one);
            continue;
        }
        if (!(e->is_lattice() && e->m() == 1 && e->k() == 0)) return std::nullopt;
        if (term.exps.size() != 1) return std::nullopt; // coefficient must be constant
        linear = linear.add(one);
    }
    if (linear.is_zero()) return std::nullopt;
    return AffineMomentum{linear.terms()[0].coeff / 1.0, rest};
}

// Substitutes polynomials for the velocity variables of L; valid only when
// every velocity exponent is a nonnegative integer.
std::optional<FracPoly> substitute_velocities(const FracPoly& L,
                                              const std::vector<FracPoly>& repl, int n) {
    FracPoly out(L.order());
    for (const auto& term : L.terms()) {
        FracPoly factor = FracPoly::constant(L.order(), term.coeff);
        for (const auto& [v, e] : term.exps) {
            if (v.kind == VarKind::velocity) {
                const double ev = e.value(L.alpha());
                if (std::floor(ev) != ev || ev < 0.0) return std::nullopt;
                for (int k = 0; k < static_cast<int>(ev); ++k) {
                    factor = factor.mul(repl[static_cast<std::size_t>(v.index - 1)]);
                }
            } else {
                factor = factor.mul(FracPoly::var_pow(L.order(), v, e));
            }
        }
        out = out.add(factor);
        (void)n;
    }
    return out;
}

} // namespace

HamiltonianSpec legendre(const LagrangianSpec& L, LegendreBox box) {
    L.validate();
    HamiltonianSpec H{{}, std::nullopt, full_lagrangian(L), L.n, L.order, L.discount_rho, {}};
    if (box.lo.empty()) {
        H.box.lo.assign(static_cast<std::size_t>(L.n), 1.0e-6);
        H.box.hi.assign(static_cast<std::size_t>(L.n), 64.0);
    } else {
        H.box = std::move(box);
    }

    const FracPoly full = full_lagrangian(L);
    bool degenerate = true;
    for (int i = 1; i <= L.n; ++i) {
        H.momenta.push_back(frac_partial(full, VarId::vel(i), L.order));
        if (!H.momenta.back().is_zero()) degenerate = false;
    }
    if (degenerate) {
        throw singular_gram_error("legendre: all momenta vanish, Lagrangian is degenerate", {});
    }

    // closed form when momenta are affine with constant leading coefficients
    // and no discount symbol is in the way
    bool closed = !L.discounted();
    std::vector<FracPoly> yhat;
    for (int i = 1; i <= L.n && closed; ++i) {
        auto aff = affine_in_velocity(H.momenta[static_cast<std::size_t>(i - 1)], i, L.n);
        if (!aff || aff->c == 0.0) {
            closed = false;
            break;
        }
        FracPoly pvar = FracPoly::var(L.order, VarId::mom(i));
        yhat.push_back(pvar.sub(aff->rest).scale(1.0 / aff->c));
    }
    if (closed) {
        if (auto Lsub = substitute_velocities(L.base, yhat, L.n)) {
            const double g1 = gamma_fn(1.0 + L.order.alpha());
            FracPoly h(L.order);
            for (int i = 1; i <= L.n; ++i) {
                FracPoly pvar = FracPoly::var(L.order, VarId::mom(i));
                h = h.add(pvar.mul(yhat[static_cast<std::size_t>(i - 1)]).scale(g1));
            }
            H.closed_form = h.sub(*Lsub);
        }
    }
    return H;
}

namespace {

double eval_momentum(const FracPoly& mom, const std::map<VarId, double>& base_point, int i,
                     double yi) {
    auto point = base_point;
    point[VarId::vel(i)] = yi;
    return eval(mom, point);
}

} // namespace

std::vector<double> HamiltonianSpec::invert(double t, std::span<const double> x,
                                            std::span<const double> p) const {
    const double e_val = rho ? ml_discount(order, *rho, t) : 1.0;
    auto base_point = jet_assignment(t, x, std::span<const double>{}, e_val);

    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const FracPoly& mom = momenta[static_cast<std::size_t>(i - 1)];
        for (const auto& term : mom.terms()) {
            for (const auto& [v, e] : term.exps) {
                if (v.kind == VarKind::velocity && v.index != i) {
                    throw input_error("legendre inversion: momentum p_" + std::to_string(i) +
                                      " couples several velocities");
                }
            }
        }
        const double lo = box.lo[static_cast<std::size_t>(i - 1)];
        const double hi = box.hi[static_cast<std::size_t>(i - 1)];

        // monotonicity: finite-difference slope at the box ends and 32
        // interior samples must share a sign
        const double dh = (hi - lo) * 1.0e-6;
        int sign = 0;
        for (int s = 0; s <= 33; ++s) {
            const double ys = lo + (hi - lo) * s / 33.0;
            const double a = eval_momentum(mom, base_point, i, std::min(ys + dh, hi));
            const double b = eval_momentum(mom, base_point, i, std::max(ys - dh, lo));
            const int sgn = a > b ? 1 : (a < b ? -1 : 0);
            if (sgn == 0) continue;
            if (sign == 0) sign = sgn;
            if (sgn != sign) {
                throw input_error("legendre inversion: p_" + std::to_string(i) +
                                  " is not monotone in y_" + std::to_string(i) + " on the box");
            }
        }
        if (sign == 0) {
            throw input_error("legendre inversion: p_" + std::to_string(i) +
                              " is constant on the box (degenerate)");
        }

        double flo = eval_momentum(mom, base_point, i, lo) - p[static_cast<std::size_t>(i - 1)];
        double fhi = eval_momentum(mom, base_point, i, hi) - p[static_cast<std::size_t>(i - 1)];
        if (flo == 0.0) {
            y[static_cast<std::size_t>(i - 1)] = lo;
            continue;
        }
        if (fhi == 0.0) {
            y[static_cast<std::size_t>(i - 1)] = hi;
            continue;
        }
        if ((flo > 0.0) == (fhi > 0.0)) {
            throw input_error("legendre inversion: target momentum outside the declared box");
        }
        double a = lo, b = hi;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            const double fm = eval_momentum(mom, base_point, i, mid) -
                              p[static_cast<std::size_t>(i - 1)];
            if (fm == 0.0 || (b - a) < 1.0e-15 * std::max(1.0, std::abs(mid))) {
                a = b = mid;
                break;
            }
            if ((fm > 0.0) == (flo > 0.0)) {
                a = mid;
                flo = fm;
            } else {
                b = mid;
            }
        }
        y[static_cast<std::size_t>(i - 1)] = 0.5 * (a + b);
    }
    return y;
}

double HamiltonianSpec::value(double t, std::span<const double> x,
                              std::span<const double> p) const {
    if (closed_form) {
        std::map<VarId, double> point;
        point[VarId::time()] = t;
        for (std::size_t i = 0; i < x.size(); ++i) {
            point[VarId::pos(static_cast<int>(i) + 1)] = x[i];
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            point[VarId::mom(static_cast<int>(i) + 1)] = p[i];
        }
        return eval(*closed_form, point);
    }
    const std::vector<double> y = invert(t, x, p);
    const double e_val = rho ? ml_discount(order, *rho, t) : 1.0;
    const double g1 = gamma_fn(1.0 + order.alpha());
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) h += g1 * p[i] * y[i];
    return h - eval(lagrangian, jet_assignment(t, x, y, e_val));
}

ELSystem derive_constrained_el(const LagrangianSpec& L, const FracPoly& F) {
    L.validate();
    for (const auto& term : F.terms()) {
        for (const auto& [v, e] : term.exps) {
            if (v.kind != VarKind::position && v.kind != VarKind::velocity) {
                throw input_error("derive_constrained_el: F must be over (x, y), found " +
                                  v.name());
            }
        }
    }
    if (F.alpha() != L.order.alpha()) {
        throw input_error("derive_constrained_el: F alpha differs from the Lagrangian");
    }

    const FracPoly lambda = FracPoly::var(L.order, VarId::multiplier());
    const FracPoly dlambda = FracPoly::var(L.order, VarId::multiplier_rate());

    ELSystem sys{{}, {}, L.n, L.order, L.discounted()};

    for (int i = 1; i <= L.n; ++i) {
        const FracPoly dFyi = frac_partial(F, VarId::vel(i), L.order);
        // lambda block: D_x F - y_j D_{x_j}(D_{y_i} F) - y2_j D_{y_j}(D_{y_i} F)
        FracPoly lam_block = frac_partial(F, VarId::pos(i), L.order);
        for (int j = 1; j <= L.n; ++j) {
            FracPoly yj = FracPoly::var(L.order, VarId::vel(j));
            FracPoly y2j = FracPoly::var(L.order, VarId::accel(j));
            lam_block = lam_block.sub(yj.mul(frac_partial(dFyi, VarId::pos(j), L.order)));
            lam_block = lam_block.sub(y2j.mul(frac_partial(dFyi, VarId::vel(j), L.order)));
        }

        FracPoly res(L.order);
        if (L.discounted()) {
            const double rho = *L.discount_rho;
            for (const auto& term : L.base.terms()) {
                if (term.exponent_of(VarId::time())) {
                    throw input_error("derive_constrained_el: discounted L1 must not depend on t");
                }
            }
            FracPoly dyi = frac_partial(L.base, VarId::vel(i), L.order);
            FracPoly e_block = frac_partial(L.base, VarId::pos(i), L.order).add(dyi.scale(rho));
            for (int j = 1; j <= L.n; ++j) {
                FracPoly yj = FracPoly::var(L.order, VarId::vel(j));
                FracPoly y2j = FracPoly::var(L.order, VarId::accel(j));
                e_block = e_block.sub(yj.mul(frac_partial(dyi, VarId::pos(j), L.order)));
                e_block = e_block.sub(y2j.mul(frac_partial(dyi, VarId::vel(j), L.order)));
            }
            res = e_block.mul(FracPoly::var(L.order, VarId::discount()));
        } else {
            FracPoly dyi = frac_partial(L.base, VarId::vel(i), L.order);
            res = frac_partial(L.base, VarId::pos(i), L.order).sub(dt_2alpha_total(dyi, L.n));
        }
        res = res.add(lambda.mul(lam_block));
        res = res.sub(dlambda.mul(dFyi));
        sys.residuals.push_back(std::move(res));
    }

    for (int i = 0; i < L.n; ++i) {
        std::vector<FracPoly> row;
        for (int j = 1; j <= L.n; ++j) {
            row.push_back(sys.residuals[i].split_linear(VarId::accel(j)).first);
        }
        sys.accel_coeffs.push_back(std::move(row));
    }
    return sys;
}

FracPoly poisson_bracket(const FracPoly& f, const FracPoly& h, FracOrder order, int n) {
    for (const FracPoly* p : {&f, &h}) {
        for (const auto& term : p->terms()) {
            for (const auto& [v, e] : term.exps) {
                if (v.kind != VarKind::position && v.kind != VarKind::momentum) {
                    throw input_error("poisson_bracket: arguments must be over (x, p), found " +
                                      v.name());
                }
            }
        }
    }
    FracPoly out(order);
    for (int i = 1; i <= n; ++i) {
        FracPoly fp_f = frac_partial(f, VarId::mom(i), order);
        FracPoly fx_h = frac_partial(h, VarId::pos(i), order);
        FracPoly fx_f = frac_partial(f, VarId::pos(i), order);
        FracPoly fp_h = frac_partial(h, VarId::mom(i), order);
        out = out.add(fp_f.mul(fx_h)).sub(fx_f.mul(fp_h));
    }
    return out;
}

double ResidualReport::max_relative() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.relative);
    return m;
}

namespace {

// Grid time derivative of one channel: Caputo for fractional alpha, centered
// differences at alpha = 1. Entries before `first_valid` are not comparable.
std::vector<double> grid_time_derivative(const std::vector<double>& v, double h, double alpha,
                                         std::size_t& first_valid, std::size_t& last_valid) {
    const std::size_t n = v.size();
    std::vector<double> d(n, 0.0);
    if (alpha == 1.0) {
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        first_valid = 1;
        last_valid = n - 2;
    } else {
        SampledFunction f{0.0, h, v};
        d = caputo_left(f, alpha).values;
        first_valid = 1;
        last_valid = n - 1;
    }
    return d;
}

ResidualEntry make_entry(const std::string& name, const std::vector<double>& lhs,
                         const std::vector<double>& rhs, std::size_t first, std::size_t last) {
    ResidualEntry e;
    e.name = name;
    double scale = 0.0;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = first; i <= last; ++i) {
        const double r = std::abs(lhs[i] - rhs[i]);
        e.max_abs = std::max(e.max_abs, r);
        scale = std::max({scale, std::abs(lhs[i]), std::abs(rhs[i])});
        sum += r;
        ++count;
    }
    e.mean_abs = count ? sum / static_cast<double>(count) : 0.0;
    e.relative = e.max_abs / std::max(scale, 1.0e-300);
    if (scale == 0.0) e.relative = 0.0; // identically zero comparison
    return e;
}

} // namespace

ResidualReport verify_hamilton(const Trajectory& traj, const HamiltonianSpec& H) {
    if (!H.closed_form) {
        throw input_error("verify_hamilton: requires a closed-form Hamiltonian");
    }
    for (int i = 1; i <= H.n; ++i) {
        const std::string xi = "x_" + std::to_string(i);
        const std::string pi = "p_" + std::to_string(i);
        if (!traj.has_channel(xi) || !traj.has_channel(pi)) {
            throw input_error("verify_hamilton: trajectory lacks channel " +
                              (traj.has_channel(xi) ? pi : xi));
        }
    }

    const std::size_t npts = traj.points();
    ResidualReport report;

    for (int i = 1; i <= H.n; ++i) {
        const auto& xs = traj.channel("x_" + std::to_string(i));
        const auto& ps = traj.channel("p_" + std::to_string(i));

        std::size_t first = 0, last = 0;
        std::vector<double> dp = grid_time_derivative(ps, traj.step, traj.alpha, first, last);
        std::vector<double> dx = grid_time_derivative(xs, traj.step, traj.alpha, first, last);

        FracPoly dxH = frac_partial(*H.closed_form, VarId::pos(i), H.order);
        FracPoly dpH = frac_partial(*H.closed_form, VarId::mom(i), H.order);
        FracPoly br_p = poisson_bracket(*H.closed_form, FracPoly::var(H.order, VarId::mom(i)),
                                        H.order, H.n);
        FracPoly br_x = poisson_bracket(*H.closed_form, FracPoly::var(H.order, VarId::pos(i)),
                                        H.order, H.n);

        std::vector<double> rhs_p(npts, 0.0), rhs_x(npts, 0.0), rhs_bp(npts, 0.0),
            rhs_bx(npts, 0.0);
        for (std::size_t k = 0; k < npts; ++k) {
            std::map<VarId, double> point;
            point[VarId::time()] = traj.t(k);
            for (int j = 1; j <= H.n; ++j) {
                point[VarId::pos(j)] = traj.channel("x_" + std::to_string(j))[k];
                point[VarId::mom(j)] = traj.channel("p_" + std::to_string(j))[k];
            }
            rhs_p[k] = -eval(dxH, point);
            rhs_x[k] = eval(dpH, point);
            rhs_bp[k] = eval(br_p, point);
            rhs_bx[k] = eval(br_x, point);
        }

        const std::string sfx = "_" + std::to_string(i);
        report.entries.push_back(make_entry("hamilton_p" + sfx, dp, rhs_p, first, last));
        report.entries.push_back(make_entry("hamilton_x" + sfx, dx, rhs_x, first, last));
        report.entries.push_back(make_entry("bracket_p" + sfx, dp, rhs_bp, first, last));
        report.entries.push_back(make_entry("bracket_x" + sfx, dx, rhs_bx, first, last));
    }
    return report;
}

} // namespace fracdyn
