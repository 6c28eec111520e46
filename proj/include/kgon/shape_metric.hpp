#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <kgon/geometry.hpp>

namespace kgon {

/// Centered, unit-norm configuration. Rotation is not quotiented out.
struct Preshape {
  std::vector<Point> coords;

  std::size_t size() const { return coords.size(); }
};

/// Centers by the plain mean and scales to unit norm.
/// Throws Error{TooFewPoints} below 4 points and Error{ZeroNorm} when all
/// points coincide.
Preshape preshape(std::span<const Point> points);

/// Treats `points` as a closed polyline, evaluates it at m arc-length-uniform
/// fractions from its first point, then builds the preshape. When m equals
/// the number of points the points are used as given.
Preshape preshape(std::span<const Point> points, std::size_t m);

/// Extrinsic distance between the shapes of two preshapes under the
/// Veronese-Whitney embedding: the Frobenius norm of uu* - vv*. Equals
/// sqrt(2 (1 - |<u, v>|^2)); evaluated as |u - e^{i phi} v| sqrt(1 + |<u, v>|)
/// with the optimal phase, which stays accurate when the shapes nearly agree.
/// Inputs must be unit vectors of equal length.
double projective_distance(std::span<const Point> u, std::span<const Point> v);

inline constexpr double kMaxShapeDistance = std::numbers::sqrt2;

struct ShapeDistance {
  double rho = 0.0;

  double normalized() const { return rho / kMaxShapeDistance; }
};

ShapeDistance shape_distance(const Preshape& a, const Preshape& b);

/// m points at fractions anchor + j/m of the contour.
std::vector<Point> anchored_samples(const Contour& c, std::size_t m);

/// m points at fractions j/m of the k-gon, whose first vertex is the anchor
/// of its parent.
std::vector<Point> anchored_samples(const KGon& g, std::size_t m);

/// Shape distance between two curves evaluated on a common anchor-aligned
/// grid of m arc-length fractions. Throws Error{BadConfig} for m < 4.
template <class CurveA, class CurveB>
ShapeDistance vw_distance(const CurveA& a, const CurveB& b, std::size_t m);

namespace detail {
void check_dimension(std::size_t m);
}

template <class CurveA, class CurveB>
ShapeDistance vw_distance(const CurveA& a, const CurveB& b, std::size_t m) {
  detail::check_dimension(m);
  const auto sa = anchored_samples(a, m);
  const auto sb = anchored_samples(b, m);
  return shape_distance(preshape(sa), preshape(sb));
}

}  // namespace kgon
