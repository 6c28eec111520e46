#include <kgon/curvature.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <kgon/error.hpp>

namespace kgon {

namespace {

// |kappa| * L below this counts as zero curvature when scanning signs.
constexpr double kZeroCurvatureBand = 1e-8;

int count_sign_changes(const std::vector<double>& kappa, double length) {
  int first_sign = 0;
  int last_sign = 0;
  int changes = 0;
  for (double k : kappa) {
    if (std::abs(k) * length < kZeroCurvatureBand) continue;
    const int sign = k > 0.0 ? 1 : -1;
    if (first_sign == 0) first_sign = sign;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  if (first_sign != 0 && last_sign != first_sign) ++changes;
  return changes;
}

}  // namespace

double CurvatureProfile::cumulative_at(double f) const {
  const std::size_t n = size();
  f -= std::floor(f);
  const double x = f * double(n);
  std::size_t i = std::size_t(x);
  if (i >= n) return cumulative_absolute[n];
  const double t = x - double(i);
  return cumulative_absolute[i] + t * (cumulative_absolute[i + 1] - cumulative_absolute[i]);
}

double CurvatureProfile::fraction_at(double target) const {
  const std::size_t n = size();
  const auto& cum = cumulative_absolute;
  auto it = std::lower_bound(cum.begin(), cum.end(), target);
  if (it == cum.begin()) return 0.0;
  if (it == cum.end()) return 1.0;
  const std::size_t j = std::size_t(it - cum.begin());
  const double step = cum[j] - cum[j - 1];
  const double t = step > 0.0 ? (target - cum[j - 1]) / step : 0.0;
  return (double(j - 1) + t) / double(n);
}

CurvatureProfile curvature_profile(const Contour& c) {
  const std::size_t n = c.size();
  if (n < 5) throw Error(ErrorCode::TooFewPoints, "curvature needs K >= 5");

  std::vector<Point> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = c.polyline().at((double(i) + 0.5) / double(n));

  CurvatureProfile p;
  p.spacing = c.length() / double(n);
  p.signed_curvatures.resize(n);
  p.cumulative_absolute.assign(n + 1, 0.0);

  const double ds = p.spacing;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& prev = z[(i + n - 1) % n];
    const Point& next = z[(i + 1) % n];
    const Point d1 = (next - prev) / (2.0 * ds);
    const Point d2 = (next - 2.0 * z[i] + prev) / (ds * ds);
    const double speed2 = std::norm(d1);
    if (speed2 < 1e-30) {
      throw Error(ErrorCode::DegenerateDerivative, "vanishing tangent at sample " + std::to_string(i));
    }
    const double cross = d1.real() * d2.imag() - d1.imag() * d2.real();
    p.signed_curvatures[i] = cross / std::pow(speed2, 1.5);
    p.cumulative_absolute[i + 1] = p.cumulative_absolute[i] + std::abs(p.signed_curvatures[i]) * ds;
  }
  p.total_absolute = p.cumulative_absolute[n];
  p.sign_changes = count_sign_changes(p.signed_curvatures, c.length());
  return p;
}

KGon resample_curvature(const Contour& c, const CurvatureProfile& profile, int k) {
  check_k(c, k);
  const double total = profile.total_absolute;
  if (!(total >= 1e-12)) throw Error(ErrorCode::FlatContour, "no curvature to distribute");

  const double anchor = c.anchor();
  const double start = profile.cumulative_at(anchor);
  std::vector<double> fractions(static_cast<std::size_t>(k));
  fractions[0] = anchor;
  for (int j = 1; j < k; ++j) {
    double target = start + total * double(j) / double(k);
    bool wrapped = false;
    if (target >= total) {
      target -= total;
      wrapped = true;
    }
    double f = profile.fraction_at(target);
    if (wrapped || f < anchor) f += 1.0;
    fractions[std::size_t(j)] = f;
  }
  return sample_contour(c, std::move(fractions), Parameterization::Curvature);
}

}  // namespace kgon
