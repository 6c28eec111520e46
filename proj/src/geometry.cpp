#include <kgon/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <kgon/error.hpp>

namespace kgon {

namespace {

// Relative distance below which two anchor candidates count as tied.
constexpr double kAnchorTieTolerance = 1e-12;

// Grid density of the anchor search, per vertex.
constexpr std::size_t kAnchorGridFactor = 4;

double wrap_fraction(double s) {
  s -= std::floor(s);
  return s >= 1.0 ? 0.0 : s;
}

std::vector<Point> collapse_duplicates(std::vector<Point> raw) {
  std::vector<Point> out;
  out.reserve(raw.size());
  for (const Point& p : raw) {
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  while (out.size() > 1 && out.back() == out.front()) out.pop_back();
  return out;
}

Point line_centroid(const ClosedPolyline& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  Point sum{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    sum += std::abs(b - a) * 0.5 * (a + b);
  }
  return sum / poly.length();
}

double farthest_fraction(const ClosedPolyline& poly, Point center) {
  const std::size_t n = poly.size();
  const std::size_t grid = kAnchorGridFactor * n;

  // Merge vertex fractions with the uniform grid in increasing order so the
  // first maximal candidate wins ties.
  std::vector<double> candidates;
  candidates.reserve(n + grid);
  for (std::size_t i = 0; i < n; ++i) candidates.push_back(poly.vertex_fraction(i));
  for (std::size_t i = 0; i < grid; ++i) candidates.push_back(double(i) / double(grid));
  std::stable_sort(candidates.begin(), candidates.end());

  double best_fraction = 0.0;
  double best_distance = -1.0;
  for (double s : candidates) {
    const double d = std::abs(poly.at(s) - center);
    if (d > best_distance * (1.0 + kAnchorTieTolerance)) {
      best_distance = d;
      best_fraction = s;
    }
  }
  return best_fraction;
}

}  // namespace

ArcTable::ArcTable(std::span<const Point> vertices) {
  const std::size_t n = vertices.size();
  cumulative_.resize(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cumulative_[i + 1] = cumulative_[i] + std::abs(vertices[(i + 1) % n] - vertices[i]);
  }
}

ClosedPolyline::ClosedPolyline(std::vector<Point> vertices)
    : vertices_(std::move(vertices)), arc_(vertices_) {}

Point ClosedPolyline::at(double s) const {
  const std::size_t n = vertices_.size();
  if (n == 0) return {};
  const auto cum = arc_.cumulative();
  const double target = wrap_fraction(s) * cum[n];

  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  std::size_t j = it == cum.begin() ? 0 : std::size_t(it - cum.begin()) - 1;
  if (j >= n) j = n - 1;

  const double segment = cum[j + 1] - cum[j];
  const Point& a = vertices_[j];
  const Point& b = vertices_[(j + 1) % n];
  if (segment <= 0.0) return a;
  // Convex combination normalized by the segment length.
  return ((cum[j + 1] - target) * a + (target - cum[j]) * b) / segment;
}

double ClosedPolyline::vertex_fraction(std::size_t i) const {
  return arc_.cumulative()[i] / length();
}

Contour::Contour(ClosedPolyline polyline) : polyline_(std::move(polyline)) {
  centroid_ = line_centroid(polyline_);
  anchor_ = farthest_fraction(polyline_, centroid_);
}

Contour Contour::ingest(std::vector<Point> raw) {
  std::vector<Point> pts = collapse_duplicates(std::move(raw));
  if (pts.size() < 4) {
    throw Error(ErrorCode::TooFewPoints,
                "contour needs at least 4 distinct points, got " + std::to_string(pts.size()));
  }

  const double area = signed_area(pts);
  const double perimeter = ArcTable(pts).total_length();
  if (!std::isfinite(area) || std::abs(area) <= 1e-14 * perimeter * perimeter) {
    throw Error(ErrorCode::DegenerateContour, "contour points are collinear");
  }
  if (area < 0.0) std::reverse(pts.begin() + 1, pts.end());

  return Contour(ClosedPolyline(std::move(pts)));
}

KGon::KGon(std::vector<Point> vertices, std::vector<double> source_fractions,
           Parameterization parameterization)
    : polyline_(std::move(vertices)),
      source_fractions_(std::move(source_fractions)),
      parameterization_(parameterization) {}

double signed_area(std::span<const Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  // Shoelace about the first vertex to limit cancellation far from the origin.
  const Point origin = vertices[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point a = vertices[i] - origin;
    const Point b = vertices[i + 1] - origin;
    twice += a.real() * b.imag() - a.imag() * b.real();
  }
  return 0.5 * twice;
}

ArcTable arc_table(const Contour& c) { return c.polyline().arc(); }

Point centroid(const Contour& c) { return c.centroid(); }

double anchor_fraction(const Contour& c) { return c.anchor(); }

Point evaluate(const Contour& c, double s) { return c.polyline().at(s); }

Point evaluate(const KGon& g, double s) { return g.polyline().at(s); }

KGon sample_contour(const Contour& c, std::vector<double> fractions,
                    Parameterization parameterization) {
  std::vector<Point> vertices;
  vertices.reserve(fractions.size());
  for (double s : fractions) vertices.push_back(c.polyline().at(s));
  return KGon(std::move(vertices), std::move(fractions), parameterization);
}

void check_k(const Contour& c, int k) {
  if (k < 4 || std::size_t(k) > c.size()) {
    throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " outside [4, " +
                                     std::to_string(c.size()) + "]");
  }
}

KGon resample_arclength(const Contour& c, int k) {
  check_k(c, k);
  const double anchor = c.anchor();
  std::vector<double> fractions(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) fractions[std::size_t(j)] = anchor + double(j) / double(k);
  return sample_contour(c, std::move(fractions), Parameterization::Arclength);
}

}  // namespace kgon
