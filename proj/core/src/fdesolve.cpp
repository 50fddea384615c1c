#include <fracdyn/fdesolve.hpp>

#include <cmath>
#include <map>

namespace fracdyn {

bool Trajectory::has_channel(const std::string& name) const {
    for (const auto& n : names) {
        if (n == name) return true;
    }
    return false;
}

const std::vector<double>& Trajectory::channel(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return cols[i];
    }
    throw input_error("Trajectory: no channel named '" + name + "'");
}

void Trajectory::add_channel(const std::string& name, std::vector<double> values) {
    if (!cols.empty() && values.size() != points()) {
        throw input_error("Trajectory: channel '" + name + "' length mismatch");
    }
    names.push_back(name);
    cols.push_back(std::move(values));
}

RhsSpec RhsSpec::function(std::size_t dim, Fn f) {
    RhsSpec r;
    r.dim_ = dim;
    r.fn_ = std::move(f);
    return r;
}

RhsSpec RhsSpec::polynomials(std::vector<FracPoly> rhs, std::vector<VarId> state_vars) {
    if (rhs.empty()) throw input_error("RhsSpec: empty polynomial vector");
    RhsSpec r;
    r.dim_ = rhs.size();
    r.polys_ = std::move(rhs);
    r.state_vars_ = std::move(state_vars);
    return r;
}

void RhsSpec::eval(double t, std::span<const double> y, std::span<double> out) const {
    if (fn_) {
        fn_(t, y, out);
        return;
    }
    if (y.size() != state_vars_.size()) {
        throw input_error("RhsSpec: state dimension does not match the variable binding");
    }
    std::map<VarId, double> point;
    point[VarId::time()] = t;
    for (std::size_t i = 0; i < state_vars_.size(); ++i) point[state_vars_[i]] = y[i];
    for (std::size_t i = 0; i < polys_.size(); ++i) out[i] = fracdyn::eval(polys_[i], point);
}

namespace {

std::size_t checked_step_count(double horizon, double step) {
    if (!(step > 0.0)) throw input_error("solver: step must be > 0");
    if (!(horizon > 0.0)) throw input_error("solver: horizon must be > 0");
    const double n = horizon / step;
    if (n > 1.0e6) throw input_error("solver: horizon/step exceeds 1e6 nodes");
    return static_cast<std::size_t>(std::llround(n));
}

} // namespace

Trajectory solve_alpha_system(FracOrder order, const RhsSpec& rhs, std::span<const double> y0,
                              double horizon, double step) {
    const double alpha = order.alpha();
    const std::size_t steps = checked_step_count(horizon, step);
    const std::size_t dim = rhs.state_dim();
    if (rhs.dim() != dim) {
        throw input_error("solver: rhs output dimension must equal the state dimension");
    }
    if (y0.size() != dim) throw input_error("solver: y0 dimension mismatch");

    // stationary weight tables: pa[m] = m^alpha, pa1[m] = m^{alpha+1}
    std::vector<double> pa(steps + 2), pa1(steps + 2);
    for (std::size_t m = 0; m < steps + 2; ++m) {
        pa[m] = std::pow(static_cast<double>(m), alpha);
        pa1[m] = std::pow(static_cast<double>(m), alpha + 1.0);
    }
    const double pred_scale = std::pow(step, alpha) / gamma_fn(alpha + 1.0);
    const double corr_scale = std::pow(step, alpha) / gamma_fn(alpha + 2.0);

    std::vector<std::vector<double>> y(steps + 1, std::vector<double>(dim));
    std::vector<std::vector<double>> f(steps + 1, std::vector<double>(dim));
    std::vector<double> ypred(dim), fpred(dim), acc(dim);

    for (std::size_t d = 0; d < dim; ++d) y[0][d] = y0[d];
    rhs.eval(0.0, y[0], f[0]);
    for (double v : f[0]) {
        if (!std::isfinite(v)) {
            throw solver_error("solver: right-hand side not finite at the initial state", 0, 0.0);
        }
    }

    for (std::size_t n = 0; n + 1 <= steps; ++n) {
        const double t_next = step * static_cast<double>(n + 1);

        // predictor: rectangle weights b_j = (n+1-j)^a - (n-j)^a, oldest first
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            const double b = pa[n + 1 - j] - pa[n - j];
            for (std::size_t d = 0; d < dim; ++d) acc[d] += b * f[j][d];
        }
        for (std::size_t d = 0; d < dim; ++d) ypred[d] = y[0][d] + pred_scale * acc[d];

        rhs.eval(t_next, ypred, fpred);

        // corrector: trapezoid weights, one pass
        std::fill(acc.begin(), acc.end(), 0.0);
        {
            const double nd = static_cast<double>(n);
            const double a0 = pa1[n] - (nd - alpha) * pa[n + 1];
            for (std::size_t d = 0; d < dim; ++d) acc[d] += a0 * f[0][d];
        }
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t m = n - j;
            const double a = pa1[m + 2] + pa1[m] - 2.0 * pa1[m + 1];
            for (std::size_t d = 0; d < dim; ++d) acc[d] += a * f[j][d];
        }
        for (std::size_t d = 0; d < dim; ++d) {
            acc[d] += fpred[d];
            y[n + 1][d] = y[0][d] + corr_scale * acc[d];
        }

        rhs.eval(t_next, y[n + 1], f[n + 1]);
        for (std::size_t d = 0; d < dim; ++d) {
            if (!std::isfinite(y[n + 1][d]) || !std::isfinite(f[n + 1][d])) {
                throw solver_error("solver: non-finite value in component " + std::to_string(d + 1),
                                   n + 1, t_next);
            }
        }
    }

    Trajectory traj;
    traj.step = step;
    traj.alpha = alpha;
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> col(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) col[i] = y[i][d];
        traj.add_channel("x_" + std::to_string(d + 1), std::move(col));
    }
    return traj;
}

Trajectory solve_fvf(FracOrder order, const RhsSpec& F, std::span<const double> x0,
                     std::span<const double> v0, double horizon, double step) {
    const std::size_t n = F.dim();
    if (x0.size() != n || v0.size() != n) throw input_error("solve_fvf: x0/v0 dimension mismatch");

    RhsSpec augmented = RhsSpec::function(2 * n, [&F, n](double t, std::span<const double> y,
                                                         std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = y[n + i];
        F.eval(t, y, out.subspan(n));
    });

    std::vector<double> y0(2 * n);
    for (std::size_t i = 0; i < n; ++i) y0[i] = x0[i];
    for (std::size_t i = 0; i < n; ++i) y0[n + i] = v0[i];

    Trajectory raw = solve_alpha_system(order, augmented, y0, horizon, step);

    Trajectory traj;
    traj.step = raw.step;
    traj.alpha = raw.alpha;
    for (std::size_t i = 0; i < n; ++i) {
        traj.add_channel("x_" + std::to_string(i + 1), raw.cols[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        traj.add_channel("v_" + std::to_string(i + 1), raw.cols[n + i]);
    }
    return traj;
}

} // namespace fracdyn
