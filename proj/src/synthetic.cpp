#include <kgon/synthetic.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

namespace kgon::synthetic {

namespace {

using std::numbers::pi;

// Jitter level outside the noisy patches, relative to the peak level.
constexpr double kJitterFloor = 0.1;

constexpr std::size_t kJaggedPoints = 2500;
constexpr double kJaggedSigma = 0.2;
constexpr std::size_t kJaggedPatches = 3;

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}

  double operator()() { return double(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

struct Bump {
  double angle;
  double width;
  double height;
};

double bump_sum(const std::vector<Bump>& bumps, double t) {
  double r = 0.0;
  for (const Bump& b : bumps) {
    double d = std::remainder(t - b.angle, 2.0 * pi);
    r += b.height * std::exp(-0.5 * (d / b.width) * (d / b.width));
  }
  return r;
}

// Curve (a cos t, b sin t) * (1 + bumps(t)), rotated by `rotation`.
std::vector<Point> bumpy_ellipse(std::size_t K, double a, double b, const std::vector<Bump>& bumps,
                                 double rotation = 0.0) {
  std::vector<Point> out(K);
  const Point turn = std::polar(1.0, rotation);
  for (std::size_t i = 0; i < K; ++i) {
    const double t = 2.0 * pi * double(i) / double(K);
    const double r = 1.0 + bump_sum(bumps, t);
    out[i] = turn * Point(a * std::cos(t) * r, b * std::sin(t) * r);
  }
  return out;
}

std::vector<Point> resample_dense(const std::vector<Point>& curve, double step) {
  std::vector<Point> out;
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = curve[i];
    const Point b = curve[(i + 1) % n];
    const std::size_t pieces = std::max<std::size_t>(1, std::size_t(std::ceil(std::abs(b - a) / step)));
    for (std::size_t j = 0; j < pieces; ++j) out.push_back(a + (b - a) * (double(j) / double(pieces)));
  }
  return out;
}

std::vector<Point> resample_uniform(const std::vector<Point>& curve, double step) {
  const ClosedPolyline poly(curve);
  const std::size_t n = std::max<std::size_t>(4, std::size_t(std::llround(poly.length() / step)));
  std::vector<Point> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = poly.at(double(i) / double(n));
  return out;
}

}  // namespace

std::vector<Point> circle(std::size_t K, double radius, Point center, double phase) {
  std::vector<Point> out(K);
  for (std::size_t i = 0; i < K; ++i) {
    out[i] = center + std::polar(radius, phase + 2.0 * pi * double(i) / double(K));
  }
  return out;
}

std::vector<Point> ellipse(std::size_t K, double a, double b) {
  return bumpy_ellipse(K, a, b, {});
}

std::vector<Point> square(std::size_t per_side, double side) {
  std::vector<Point> out;
  out.reserve(4 * per_side);
  const Point corners[] = {{0, 0}, {side, 0}, {side, side}, {0, side}};
  for (int c = 0; c < 4; ++c) {
    const Point a = corners[c];
    const Point b = corners[(c + 1) % 4];
    for (std::size_t j = 0; j < per_side; ++j) {
      out.push_back(a + (b - a) * (double(j) / double(per_side)));
    }
  }
  return out;
}

std::vector<Point> star_polygon(std::size_t tips, std::size_t K, double outer, double inner) {
  std::vector<Point> corners;
  for (std::size_t i = 0; i < 2 * tips; ++i) {
    const double r = i % 2 == 0 ? outer : inner;
    corners.push_back(std::polar(r, pi / 2.0 + pi * double(i) / double(tips)));
  }
  double perimeter = 0.0;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    perimeter += std::abs(corners[(i + 1) % corners.size()] - corners[i]);
  }
  return resample_dense(corners, perimeter / double(K));
}

std::vector<Point> smooth_star(std::size_t lobes, std::size_t K, double amplitude) {
  std::vector<Point> out(K);
  for (std::size_t i = 0; i < K; ++i) {
    const double t = 2.0 * pi * double(i) / double(K);
    out[i] = std::polar(1.0 + amplitude * std::cos(double(lobes) * t), t);
  }
  return out;
}

std::vector<Point> stadium(std::size_t K, double radius, double straight) {
  const double perimeter = 2.0 * pi * radius + 2.0 * straight;
  const double step = perimeter / double(K);
  std::vector<Point> out;
  out.reserve(K);
  const double half = straight / 2.0;
  for (std::size_t i = 0; i < K; ++i) {
    double s = double(i) * step;
    // Right cap centered at (half, 0) from angle -pi/2 to pi/2, then top
    // segment, left cap, bottom segment.
    if (s < pi * radius) {
      out.push_back(Point(half, 0) + std::polar(radius, -pi / 2 + s / radius));
      continue;
    }
    s -= pi * radius;
    if (s < straight) {
      out.emplace_back(half - s, radius);
      continue;
    }
    s -= straight;
    if (s < pi * radius) {
      out.push_back(Point(-half, 0) + std::polar(radius, pi / 2 + s / radius));
      continue;
    }
    s -= pi * radius;
    out.emplace_back(-half + s, -radius);
  }
  return out;
}

std::vector<Point> hand(std::size_t K, std::size_t fingers, double finger_length,
                        double finger_width) {
  std::vector<Bump> bumps;
  for (std::size_t f = 0; f < fingers; ++f) {
    const double angle = pi * (0.2 + 0.6 * (double(f) + 0.5) / double(fingers));
    bumps.push_back({angle, finger_width, finger_length * (f == 0 || f + 1 == fingers ? 0.7 : 1.0)});
  }
  return bumpy_ellipse(K, 1.0, 0.9, bumps);
}

std::vector<Point> random_smooth(std::uint64_t seed, std::size_t K, std::size_t harmonics,
                                 double roughness) {
  Uniform u(seed);
  std::vector<double> amp(harmonics + 1), phase(harmonics + 1);
  for (std::size_t h = 2; h <= harmonics; ++h) {
    amp[h] = roughness * u(0.2, 1.0) / double(h);
    phase[h] = u(0.0, 2.0 * pi);
  }
  std::vector<Point> out(K);
  for (std::size_t i = 0; i < K; ++i) {
    const double t = 2.0 * pi * double(i) / double(K);
    double r = 1.0;
    for (std::size_t h = 2; h <= harmonics; ++h) r += amp[h] * std::cos(double(h) * t + phase[h]);
    out[i] = std::polar(r, t);
  }
  return out;
}

std::vector<Point> digitize(const std::vector<Point>& smooth_curve, double scale, double spacing) {
  std::vector<Point> out;
  for (const Point& p : resample_uniform(smooth_curve, spacing / scale)) {
    const Point q(std::round(p.real() * scale), std::round(p.imag() * scale));
    if (out.empty() || out.back() != q) out.push_back(q);
  }
  while (out.size() > 1 && out.back() == out.front()) out.pop_back();
  return out;
}

std::vector<Point> jitter(const std::vector<Point>& smooth_curve, std::size_t K, double relative_sigma,
                          std::uint64_t seed, std::size_t patches) {
  const double step = ClosedPolyline(smooth_curve).length() / double(K);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Uniform u(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Bump> profile;
  for (std::size_t j = 0; j < patches; ++j) profile.push_back({u(0.0, 2.0 * pi), u(0.1, 0.3), 1.0});

  std::vector<Point> out = resample_uniform(smooth_curve, step);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = 2.0 * pi * double(i) / double(out.size());
    const double level = patches == 0 ? 1.0 : std::min(1.0, kJitterFloor + bump_sum(profile, t));
    const double sigma = relative_sigma * step * level;
    out[i] += Point(sigma * noise(rng), sigma * noise(rng));
  }
  return out;
}

std::vector<SyntheticContour> basic_suite() {
  std::vector<SyntheticContour> out;
  out.push_back({"circle", "circle", circle(512, 1.0)});
  out.push_back({"ellipse", "ellipse", ellipse(512, 2.0, 1.0)});
  out.push_back({"square", "square", square(100)});
  out.push_back({"star", "star", star_polygon(5, 500)});
  out.push_back({"stadium", "stadium", stadium(512, 1.0, 2.0)});
  out.push_back({"hand", "hand", hand(800)});
  return out;
}

std::vector<SyntheticContour> jagged_suite(std::uint64_t seed, std::size_t count) {
  std::vector<SyntheticContour> out;
  for (std::size_t i = 0; i < count; ++i) {
    Uniform u(seed * 1000003ULL + i);
    std::vector<Point> curve;
    switch (i % 4) {
      case 0: curve = random_smooth(seed + i, 2000, 6, 0.15); break;
      case 1: curve = hand(2000, 3 + i % 3, u(0.6, 1.1), u(0.10, 0.16)); break;
      case 2: curve = bumpy_ellipse(2000, u(1.4, 2.0), u(0.6, 0.9),
                                    {{u(2.8, 3.4), 0.25, u(0.2, 0.5)}}); break;
      default: curve = smooth_star(3 + i % 4, 2000, u(0.15, 0.3)); break;
    }
    out.push_back({"jagged" + std::to_string(i), "jagged",
                   jitter(curve, kJaggedPoints, kJaggedSigma, seed * 7919ULL + i, kJaggedPatches)});
  }
  return out;
}

std::vector<SyntheticContour> kimia_like_dataset(std::uint64_t seed) {
  std::vector<SyntheticContour> out;
  auto add = [&out](const std::string& category, std::size_t index, std::vector<Point> curve,
                    double scale) {
    out.push_back({category + "-" + std::to_string(index + 1), category, digitize(curve, scale)});
  };

  Uniform u(seed);
  // Dogs: body with legs, head, ears and tail.
  for (std::size_t i = 0; i < 10; ++i) {
    std::vector<Bump> b{{u(0.3, 0.5), 0.12, u(0.5, 0.8)},   {u(0.9, 1.1), 0.08, u(0.3, 0.5)},
                        {u(-1.3, -1.1), 0.07, u(0.8, 1.1)}, {u(-1.9, -1.7), 0.07, u(0.8, 1.1)},
                        {u(-2.3, -2.1), 0.07, u(0.8, 1.1)}, {u(2.9, 3.2), 0.06, u(0.4, 0.8)}};
    add("dog", i, bumpy_ellipse(2400, u(1.6, 1.9), u(0.7, 0.9), b, u(-0.2, 0.2)), u(70, 110));
  }
  // Fish: six species, tail and fins differ by species.
  for (std::size_t species = 0; species < 6; ++species) {
    Uniform su(seed + 17 * (species + 1));
    const double a = su(1.6, 2.4), b = su(0.45, 0.9);
    const double tail = su(0.3, 0.8), fin = su(0.1, 0.45);
    for (std::size_t i = 0; i < 20; ++i) {
      std::vector<Bump> bumps{{pi + u(-0.35, -0.25), 0.08, tail * u(0.8, 1.2)},
                              {pi + u(0.25, 0.35), 0.08, tail * u(0.8, 1.2)},
                              {u(1.3, 1.8), 0.15, fin * u(0.8, 1.2)},
                              {u(-1.8, -1.3), 0.12, fin * u(0.5, 1.0)}};
      add("fish" + std::to_string(species + 1), i,
          bumpy_ellipse(2400, a * u(0.95, 1.05), b * u(0.9, 1.1), bumps, u(-0.3, 0.3)),
          u(60, 100));
    }
  }
  // Hands: four gestures with different finger counts.
  for (std::size_t gesture = 0; gesture < 4; ++gesture) {
    for (std::size_t i = 0; i < 5; ++i) {
      add("hand" + std::to_string(gesture + 1), i,
          hand(2400, 2 + gesture, u(0.7, 1.3), u(0.08, 0.12)), u(70, 110));
    }
  }
  // Pears: round body with a narrower top.
  for (std::size_t i = 0; i < 88; ++i) {
    std::vector<Bump> b{{pi / 2 + u(-0.1, 0.1), u(0.35, 0.5), u(0.3, 0.6)},
                        {pi / 2 + u(-0.1, 0.1), 0.05, u(0.05, 0.15)}};
    add("pear", i, bumpy_ellipse(2400, u(0.8, 1.0), u(0.9, 1.1), b, u(-0.4, 0.4)), u(50, 100));
  }
  return out;
}

}  // namespace kgon::synthetic
