#include <kgon/shape_metric.hpp>

#include <algorithm>
#include <string>

#include <kgon/error.hpp>

namespace kgon {

Preshape preshape(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 4) throw Error(ErrorCode::TooFewPoints, "preshape needs at least 4 points");

  Point mean{0.0, 0.0};
  double scale = 0.0;
  for (const Point& p : points) {
    mean += p;
    scale = std::max(scale, std::abs(p));
  }
  mean /= double(n);

  Preshape out;
  out.coords.resize(n);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.coords[i] = points[i] - mean;
    norm2 += std::norm(out.coords[i]);
  }
  const double norm = std::sqrt(norm2);
  if (!(norm > 1e-14 * scale) || norm == 0.0) {
    throw Error(ErrorCode::ZeroNorm, "all points coincide");
  }
  for (Point& z : out.coords) z /= norm;
  return out;
}

Preshape preshape(std::span<const Point> points, std::size_t m) {
  detail::check_dimension(m);
  if (m == points.size()) return preshape(points);
  const ClosedPolyline poly(std::vector<Point>(points.begin(), points.end()));
  std::vector<Point> samples(m);
  for (std::size_t j = 0; j < m; ++j) samples[j] = poly.at(double(j) / double(m));
  return preshape(samples);
}

namespace {

bool lexicographically_less(std::span<const Point> a, std::span<const Point> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](Point x, Point y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
}

}  // namespace

double projective_distance(std::span<const Point> u, std::span<const Point> v) {
  // Fixed argument order makes the result exactly symmetric.
  if (lexicographically_less(v, u)) std::swap(u, v);
  Point inner{0.0, 0.0};
  for (std::size_t j = 0; j < u.size(); ++j) inner += u[j] * std::conj(v[j]);
  const double modulus = std::min(std::abs(inner), 1.0);
  const Point phase = modulus > 0.0 ? inner / std::abs(inner) : Point{1.0, 0.0};

  double gap = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) gap += std::norm(u[j] - phase * v[j]);
  return std::min(std::sqrt(gap * (1.0 + modulus)), kMaxShapeDistance);
}

ShapeDistance shape_distance(const Preshape& a, const Preshape& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::BadConfig, "preshapes of different dimension");
  }
  return {projective_distance(a.coords, b.coords)};
}

std::vector<Point> anchored_samples(const Contour& c, std::size_t m) {
  std::vector<Point> out(m);
  const double anchor = c.anchor();
  for (std::size_t j = 0; j < m; ++j) out[j] = c.polyline().at(anchor + double(j) / double(m));
  return out;
}

std::vector<Point> anchored_samples(const KGon& g, std::size_t m) {
  std::vector<Point> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = g.polyline().at(double(j) / double(m));
  return out;
}

namespace detail {
void check_dimension(std::size_t m) {
  if (m < 4) throw Error(ErrorCode::BadConfig, "shape dimension m = " + std::to_string(m) + " < 4");
}
}  // namespace detail

}  // namespace kgon
