#ifndef FRACDYN_GRIDOPS_HPP
#define FRACDYN_GRIDOPS_HPP

#include <fracdyn/errors.hpp>
#include <fracdyn/specfun.hpp>

#include <cstddef>
#include <vector>

namespace fracdyn {

/// Uniformly sampled scalar function x(a), x(a+h), ...
struct SampledFunction {
    double start = 0.0;
    double step = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double t(std::size_t i) const { return start + step * static_cast<double>(i); }

    void validate() const; // step > 0, >= 3 finite points
};

/// Dense tensor-product grid, row-major in axis order.
struct GridAxis {
    double start = 0.0;
    double step = 0.0;
    std::size_t count = 0;
};

struct MultiGrid {
    std::vector<GridAxis> axes;
    std::vector<double> values;

    void validate() const;
    std::size_t axis_stride(std::size_t axis) const;
};

/// Left Caputo derivative on a uniform grid.
///
/// Order in (0,1): the L1 scheme — piecewise-linear reconstruction with the
/// kernel integrated exactly, accuracy O(h^{2-order}) on smooth input.
/// Order in (1,2): the order-(order-1) scheme applied to a second-order
/// finite-difference first derivative, which matches the m = 2 definition.
/// The first node is 0 by convention. Integer orders are rejected.
///
/// Summation order per output node is fixed (oldest first), so results are
/// bit-identical run to run.
SampledFunction caputo_left(const SampledFunction& f, double order);

/// Right Caputo derivative for order in (0,1), realized as the reflection of
/// caputo_left about the upper limit: reverse, differentiate, reverse.
SampledFunction caputo_right(const SampledFunction& f, double order);

/// caputo_left along one axis of a tensor-product grid, all other
/// coordinates frozen.
MultiGrid caputo_partial(const MultiGrid& f, std::size_t axis, FracOrder order);

} // namespace fracdyn

#endif
