#include <fracdyn/gridops.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdyn {

void SampledFunction::validate() const {
    if (!(step > 0.0)) throw input_error("SampledFunction: step must be > 0");
    if (values.size() < 3) throw input_error("SampledFunction: need at least 3 points");
    for (double v : values) {
        if (!std::isfinite(v)) throw input_error("SampledFunction: non-finite sample");
    }
}

void MultiGrid::validate() const {
    if (axes.empty()) throw input_error("MultiGrid: no axes");
    std::size_t n = 1;
    for (const auto& ax : axes) {
        if (!(ax.step > 0.0)) throw input_error("MultiGrid: axis step must be > 0");
        n *= ax.count;
    }
    if (values.size() != n) {
        throw input_error("MultiGrid: value count does not match the axis product");
    }
}

std::size_t MultiGrid::axis_stride(std::size_t axis) const {
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < axes.size(); ++a) stride *= axes[a].count;
    return stride;
}

namespace {

// L1 weights for order in (0,1): a_k = (k+1)^{1-order} - k^{1-order}.
// Applied to first differences, a constant input cancels identically.
std::vector<double> l1_weights(double order, std::size_t n) {
    std::vector<double> w(n);
    const double q = 1.0 - order;
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double next = std::pow(static_cast<double>(k + 1), q);
        w[k] = next - prev;
        prev = next;
    }
    return w;
}

std::vector<double> l1_apply(const std::vector<double>& v, double h, double order) {
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    const std::vector<double> w = l1_weights(order, n);
    const double scale = std::pow(h, -order) / gamma_fn(2.0 - order);
    for (std::size_t i = 1; i < n; ++i) {
        // oldest difference first
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            acc += w[i - 1 - j] * (v[j + 1] - v[j]);
        }
        out[i] = scale * acc;
    }
    return out;
}

// Second-order first derivative: centered inside, one-sided at the ends.
std::vector<double> first_derivative(const std::vector<double>& v, double h) {
    const std::size_t n = v.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return d;
}

void check_order(double order) {
    if (!std::isfinite(order) || order == std::floor(order)) {
        throw input_error("caputo: integer order " + std::to_string(order) +
                          " rejected, use classical finite differences");
    }
    if (!(order > 0.0 && order < 2.0)) {
        throw input_error("caputo: order must lie in (0,1) or (1,2)");
    }
}

} // namespace

SampledFunction caputo_left(const SampledFunction& f, double order) {
    f.validate();
    check_order(order);
    SampledFunction out{f.start, f.step, {}};
    if (order < 1.0) {
        out.values = l1_apply(f.values, f.step, order);
    } else {
        // m = 2: differentiate once (order-2 accurate), then order-1 in (0,1)
        out.values = l1_apply(first_derivative(f.values, f.step), f.step, order - 1.0);
    }
    return out;
}

SampledFunction caputo_right(const SampledFunction& f, double order) {
    f.validate();
    check_order(order);
    if (order > 1.0) {
        throw input_error("caputo_right: only orders in (0,1) are supported");
    }
    SampledFunction mirrored = f;
    std::reverse(mirrored.values.begin(), mirrored.values.end());
    SampledFunction d = caputo_left(mirrored, order);
    std::reverse(d.values.begin(), d.values.end());
    d.start = f.start;
    return d;
}

MultiGrid caputo_partial(const MultiGrid& f, std::size_t axis, FracOrder order) {
    f.validate();
    if (axis >= f.axes.size()) {
        throw input_error("caputo_partial: axis " + std::to_string(axis) + " out of range");
    }
    if (f.axes[axis].count < 3) {
        throw input_error("caputo_partial: need at least 3 points along the axis");
    }
    if (order.is_classical()) {
        throw input_error("caputo_partial: integer order rejected");
    }

    const std::size_t stride = f.axis_stride(axis);
    const std::size_t count = f.axes[axis].count;
    const std::size_t total = f.values.size();
    const std::size_t block = stride * count;

    MultiGrid out = f;
    std::vector<double> pencil(count);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (std::size_t i = 0; i < count; ++i) {
                pencil[i] = f.values[base + off + i * stride];
            }
            std::vector<double> d = l1_apply(pencil, f.axes[axis].step, order.alpha());
            for (std::size_t i = 0; i < count; ++i) {
                out.values[base + off + i * stride] = d[i];
            }
        }
    }
    return out;
}

} // namespace fracdyn
