// Piecewise-cubic Hermite interpolation (Fritsch-Carlson slopes) on a
// strictly increasing grid. Shape-preserving, C^1, no overshoot.

#pragma once

#include <cstddef>
#include <vector>

namespace henonlab {

class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

  private:
    std::size_t locate(double x) const;
    std::vector<double> x_, y_, d_;  // nodes, values, node slopes
};

}  // namespace henonlab
