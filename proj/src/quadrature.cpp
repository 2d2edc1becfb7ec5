#include <cmath>
#include <numbers>

#include "pencileig/contour.hpp"

namespace pencileig {

std::vector<QuadratureNode> trapezoid_circle(Complex center, double radius, Index n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "trapezoid_circle needs at least 2 nodes");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  const double count = static_cast<double>(n);
  for (Index j = 1; j <= n; ++j) {
    const double theta = static_cast<double>(2 * j - 1) * std::numbers::pi / count;
    const Complex offset = std::polar(radius, theta);
    nodes.push_back({center + offset, offset / count});
  }
  return nodes;
}

}  // namespace pencileig
