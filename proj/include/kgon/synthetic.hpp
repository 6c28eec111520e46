#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <kgon/geometry.hpp>

namespace kgon::synthetic {

/// Regular K-gon inscribed in a circle, first vertex at angle `phase`.
std::vector<Point> circle(std::size_t K, double radius = 1.0, Point center = {}, double phase = 0.0);

/// Ellipse sampled at K equally spaced parameter values, starting at (a, 0).
std::vector<Point> ellipse(std::size_t K, double a, double b);

/// Axis-aligned square from (0, 0), `per_side` points on each side.
std::vector<Point> square(std::size_t per_side, double side = 1.0);

/// Star polygon with `tips` outer corners, edges densely resampled so that
/// the result has about K points.
std::vector<Point> star_polygon(std::size_t tips, std::size_t K, double outer = 1.0,
                                double inner = 0.45);

/// Smooth star r(t) = 1 + amplitude cos(lobes t).
std::vector<Point> smooth_star(std::size_t lobes, std::size_t K, double amplitude = 0.3);

/// Two semicircles of radius r joined by straight segments of length `straight`.
std::vector<Point> stadium(std::size_t K, double radius, double straight);

/// Palm with narrow finger-like lobes on the upper half.
std::vector<Point> hand(std::size_t K, std::size_t fingers = 5, double finger_length = 1.2,
                        double finger_width = 0.09);

/// Circle with random low-order Fourier perturbations of the radius.
std::vector<Point> random_smooth(std::uint64_t seed, std::size_t K, std::size_t harmonics = 6,
                                 double roughness = 0.12);

/// Smooth curve traced every `spacing` pixels and quantized to an integer
/// pixel grid, as a digitized boundary would be: `scale` pixels per unit,
/// consecutive duplicates removed.
std::vector<Point> digitize(const std::vector<Point>& smooth_curve, double scale,
                            double spacing = 1.0);

/// About K points equally spaced along the curve, each displaced by
/// isotropic Gaussian noise. The standard deviation peaks at `relative_sigma`
/// times the spacing inside `patches` randomly placed stretches and drops to
/// a tenth of that elsewhere; with no patches it is uniform.
std::vector<Point> jitter(const std::vector<Point>& smooth_curve, std::size_t K, double relative_sigma,
                          std::uint64_t seed, std::size_t patches = 0);

struct SyntheticContour {
  std::string id;
  std::string category;
  std::vector<Point> points;
};

/// circle, ellipse, square, star, stadium and hand-like shapes.
std::vector<SyntheticContour> basic_suite();

/// Jittered contours of varied shape, about 2500 points each, whose noise
/// is concentrated in a few patches.
std::vector<SyntheticContour> jagged_suite(std::uint64_t seed, std::size_t count);

/// 238 digitized contours in 12 categories: 10 dogs, 6 x 20 fish, 4 x 5
/// hands and 88 pears, mirroring the layout of the Kimia set.
std::vector<SyntheticContour> kimia_like_dataset(std::uint64_t seed);

}  // namespace kgon::synthetic
