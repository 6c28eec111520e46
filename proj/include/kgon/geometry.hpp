#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kgon {

/// A planar point, x + iy.
using Point = std::complex<double>;

/// Cumulative edge lengths of a closed polyline, closing edge included.
///
/// `cumulative()[0] == 0` and `cumulative()[n] == total_length()`, where n is
/// the number of vertices. Polylines built from sampled k-gons may carry
/// zero-length edges; contours never do.
class ArcTable {
 public:
  ArcTable() = default;
  explicit ArcTable(std::span<const Point> vertices);

  std::span<const double> cumulative() const { return cumulative_; }
  double total_length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<double> cumulative_;
};

/// Closed polyline traversed at unit speed from its first vertex.
class ClosedPolyline {
 public:
  ClosedPolyline() = default;
  explicit ClosedPolyline(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  const ArcTable& arc() const { return arc_; }
  std::size_t size() const { return vertices_.size(); }
  double length() const { return arc_.total_length(); }

  /// Point at arc length s * length() from the first vertex. s is taken modulo 1.
  Point at(double s) const;

  /// Arc-length fraction of vertex i.
  double vertex_fraction(std::size_t i) const;

 private:
  std::vector<Point> vertices_;
  ArcTable arc_;
};

/// A digitized closed contour: at least 4 distinct points, counterclockwise,
/// no zero-length edges. Construct through `Contour::ingest`.
class Contour {
 public:
  /// Collapses consecutive duplicates (wraparound included) and reverses
  /// clockwise input while keeping the first point first.
  /// Throws Error{TooFewPoints} or Error{DegenerateContour}.
  static Contour ingest(std::vector<Point> raw);

  const ClosedPolyline& polyline() const { return polyline_; }
  const std::vector<Point>& vertices() const { return polyline_.vertices(); }
  std::size_t size() const { return polyline_.size(); }
  double length() const { return polyline_.length(); }

  /// Arc-length weighted centroid of the curve (not the vertex mean).
  Point centroid() const { return centroid_; }

  /// Fraction of the point farthest from the centroid.
  double anchor() const { return anchor_; }

 private:
  explicit Contour(ClosedPolyline polyline);

  ClosedPolyline polyline_;
  Point centroid_;
  double anchor_ = 0.0;
};

enum class Parameterization { Arclength, Curvature };

/// Polygon through k points sampled on a parent contour.
///
/// `source_fractions()` are the parent arc-length fractions of the vertices,
/// stored unwrapped: they start at the parent's anchor and increase strictly
/// below anchor + 1. The polygon's own arc-length parametrization starts at
/// its first vertex.
class KGon {
 public:
  KGon(std::vector<Point> vertices, std::vector<double> source_fractions,
       Parameterization parameterization);

  const ClosedPolyline& polyline() const { return polyline_; }
  const std::vector<Point>& vertices() const { return polyline_.vertices(); }
  const std::vector<double>& source_fractions() const { return source_fractions_; }
  Parameterization parameterization() const { return parameterization_; }
  std::size_t size() const { return polyline_.size(); }
  double length() const { return polyline_.length(); }

 private:
  ClosedPolyline polyline_;
  std::vector<double> source_fractions_;
  Parameterization parameterization_;
};

double signed_area(std::span<const Point> vertices);

ArcTable arc_table(const Contour& c);
Point centroid(const Contour& c);
double anchor_fraction(const Contour& c);

Point evaluate(const Contour& c, double s);
Point evaluate(const KGon& g, double s);

/// Evaluates `c` at the given unwrapped fractions.
KGon sample_contour(const Contour& c, std::vector<double> fractions,
                    Parameterization parameterization);

/// k points equally spaced in arc length, starting at the anchor.
/// Throws Error{BadK} unless 4 <= k <= K.
KGon resample_arclength(const Contour& c, int k);

/// Throws Error{BadK} unless 4 <= k <= K.
void check_k(const Contour& c, int k);

}  // namespace kgon
