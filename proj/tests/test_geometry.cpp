#include <doctest.h>

#include <random>

#include <kgon/error.hpp>
#include <kgon/geometry.hpp>
#include <kgon/synthetic.hpp>

#include "oracles.hpp"

using namespace kgon;

namespace {

const std::vector<Point> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("ingest keeps a counterclockwise square") {
  const Contour c = Contour::ingest(kUnitSquare);
  CHECK(c.size() == 4);
  CHECK(c.vertices() == kUnitSquare);
  CHECK(signed_area(c.vertices()) > 0);
}

TEST_CASE("ingest reverses clockwise input keeping the first point") {
  const Contour c = Contour::ingest({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(c.vertices() == kUnitSquare);
}

TEST_CASE("ingest collapses consecutive duplicates including the wraparound") {
  CHECK(Contour::ingest({{0, 0}, {0, 0}, {1, 0}, {1, 1}, {0, 1}}).size() == 4);
  CHECK(Contour::ingest({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}).size() == 4);
}

TEST_CASE("ingest rejects too few or collinear points") {
  CHECK(code_of([] { Contour::ingest({{0, 0}, {1, 0}, {1, 1}, {1, 1}}); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { Contour::ingest({{0, 0}, {1, 0}, {2, 0}, {3, 0}}); }) == ErrorCode::DegenerateContour);
}

TEST_CASE("ingest is insensitive to input orientation") {
  auto pts = synthetic::star_polygon(5, 200);
  const Contour a = Contour::ingest(pts);
  std::reverse(pts.begin() + 1, pts.end());
  const Contour b = Contour::ingest(pts);
  CHECK(a.vertices() == b.vertices());
}

TEST_CASE("arc table") {
  const Contour sq = Contour::ingest(kUnitSquare);
  CHECK(arc_table(sq).total_length() == doctest::Approx(4.0).epsilon(1e-15));

  const Contour circ = Contour::ingest(synthetic::circle(360, 1.0));
  CHECK(circ.length() == doctest::Approx(oracle::regular_polygon_perimeter(360, 1.0)).epsilon(1e-12));
  CHECK(circ.length() == doctest::Approx(6.28312).epsilon(1e-5));

  const auto cum = arc_table(circ).cumulative();
  REQUIRE(cum.size() == 361);
  CHECK(cum.front() == 0.0);
  for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] > cum[i - 1]);
  CHECK(cum.back() == doctest::Approx(oracle::perimeter(circ.vertices())).epsilon(1e-12));
}

TEST_CASE("centroid") {
  const Point sq = centroid(Contour::ingest(kUnitSquare));
  CHECK(sq.real() == doctest::Approx(0.5));
  CHECK(sq.imag() == doctest::Approx(0.5));

  const Point poly = centroid(Contour::ingest(synthetic::circle(7, 3.0)));
  CHECK(std::abs(poly) < 1e-12);

  const std::vector<Point> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const Point expected = oracle::centroid_by_subdivision(ell, 1000);
  const Point got = centroid(Contour::ingest(ell));
  CHECK(std::abs(got - expected) < 1e-12);
  // Not the vertex mean.
  CHECK(std::abs(got - Point(1.0, 1.0)) > 1e-3);
}

TEST_CASE("centroid is invariant to the starting vertex") {
  auto pts = synthetic::random_smooth(3, 300);
  const Point a = centroid(Contour::ingest(pts));
  std::rotate(pts.begin(), pts.begin() + 117, pts.end());
  CHECK(std::abs(centroid(Contour::ingest(pts)) - a) < 1e-12);
}

TEST_CASE("anchor") {
  CHECK(anchor_fraction(Contour::ingest(synthetic::ellipse(1000, 2.0, 1.0))) == 0.0);
  CHECK(anchor_fraction(Contour::ingest(kUnitSquare)) == 0.0);

  // Brute force over vertices of star polygons whose corners are vertices.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 14; ++i) pts.push_back(std::polar(i % 2 ? u(rng) * 0.5 : u(rng), oracle::pi * i / 7.0));
    const Contour c = Contour::ingest(pts);
    const Point g = c.centroid();
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (std::abs(pts[i] - g) > std::abs(pts[best] - g)) best = i;
    }
    CHECK(std::abs(evaluate(c, anchor_fraction(c)) - pts[best]) < 1e-12);
  }
}

TEST_CASE("evaluate") {
  const Contour sq = Contour::ingest(kUnitSquare);
  CHECK(std::abs(evaluate(sq, 0.125) - Point(0.5, 0)) < 1e-15);
  CHECK(evaluate(sq, 0.0) == kUnitSquare[0]);
  CHECK(std::abs(evaluate(sq, 0.999) - Point(0, 0.004)) < 1e-12);
  CHECK(std::abs(evaluate(sq, 0.999) - oracle::walk(kUnitSquare, 0.999)) < 1e-12);
}

TEST_CASE("evaluate is continuous at unit speed") {
  const Contour c = Contour::ingest(synthetic::hand(500));
  const double L = c.length();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    for (int i = 0; i < 200; ++i) {
      const double s = u(rng) * (1.0 - eps);
      CHECK(std::abs(evaluate(c, s + eps) - evaluate(c, s)) <= eps * L + 1e-12);
    }
  }
}

TEST_CASE("resample_arclength") {
  const Contour sq = Contour::ingest(kUnitSquare);
  const KGon g = resample_arclength(sq, 4);
  CHECK(g.vertices() == kUnitSquare);
  CHECK(g.length() == doctest::Approx(4.0));
  CHECK(g.parameterization() == Parameterization::Arclength);

  const Contour circ = Contour::ingest(synthetic::circle(2048, 1.0));
  CHECK(std::abs(resample_arclength(circ, 16).length() - 32.0 * std::sin(oracle::pi / 16.0)) < 1e-6);

  CHECK(resample_arclength(circ, 2048).length() == doctest::Approx(circ.length()).epsilon(1e-9));

  const Contour star = Contour::ingest(synthetic::smooth_star(5, 400));
  CHECK(resample_arclength(star, 400).length() <= star.length() + 1e-12);
}

TEST_CASE("source fractions start at the anchor and increase") {
  const Contour c = Contour::ingest(synthetic::random_smooth(9, 300));
  const KGon g = resample_arclength(c, 37);
  const auto& f = g.source_fractions();
  CHECK(f.front() == c.anchor());
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] > f[i - 1]);
  CHECK(f.back() < c.anchor() + 1.0);
}

TEST_CASE("resample_arclength rejects k outside [4, K]") {
  const Contour c = Contour::ingest(synthetic::circle(10));
  CHECK(code_of([&] { resample_arclength(c, 3); }) == ErrorCode::BadK);
  CHECK(code_of([&] { resample_arclength(c, 11); }) == ErrorCode::BadK);
}

TEST_CASE("nested refinement does not shorten a convex k-gon") {
  const Contour c = Contour::ingest(synthetic::ellipse(1024, 2.0, 1.0));
  for (int k = 4; k <= 256; k *= 2) CHECK(resample_arclength(c, 2 * k).length() >= resample_arclength(c, k).length());
}

TEST_CASE("resampled circle perimeter follows the inscribed polygon deficit") {
  const Contour c = Contour::ingest(synthetic::circle(2048, 1.0));
  for (int k = 4; k <= 64; ++k) {
    const double deficit = (c.length() - resample_arclength(c, k).length()) / c.length();
    CHECK(std::abs(deficit - oracle::inscribed_deficit(k)) < 1e-4);
  }
}
