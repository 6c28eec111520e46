#include <kgon/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace kgon {

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::BadConfig, "threshold E must lie in (0, 1)");
  }
}

int linear_scan(const ApproximationErrors& errors, Criterion criterion, Parameterization p,
                double threshold, int from, int to) {
  for (int k = from; k <= to; ++k) {
    if (errors.meets(criterion, p, k, threshold)) return k;
  }
  return -1;
}

int accelerated_search(const ApproximationErrors& errors, Criterion criterion,
                       Parameterization p, double threshold, int K) {
  int lo = 3;  // largest k known to fail
  int hi = -1;
  for (int k = 4;; k = std::min(2 * k, K)) {
    if (errors.meets(criterion, p, k, threshold)) {
      hi = k;
      break;
    }
    lo = k;
    if (k == K) break;
  }
  if (hi < 0) return linear_scan(errors, criterion, p, threshold, 4, K);

  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (errors.meets(criterion, p, mid, threshold)) hi = mid;
    else lo = mid;
  }
  // Bisection assumes a monotone error curve, which does not always hold.
  // Verify backwards that every smaller k fails; otherwise use the scan.
  for (int k = hi - 1; k >= 4; --k) {
    if (errors.meets(criterion, p, k, threshold)) return linear_scan(errors, criterion, p, threshold, 4, k + 1);
  }
  return hi;
}

}  // namespace

std::string_view to_string(Criterion c) {
  return c == Criterion::Length ? "length" : "distance";
}

std::string_view to_string(Parameterization p) {
  return p == Parameterization::Arclength ? "arclength" : "curvature";
}

double length_error(const Contour& c, const KGon& g) {
  return std::max(0.0, (c.length() - g.length()) / c.length());
}

double distance_error(const Contour& c, const KGon& g) {
  return vw_distance(c, g, c.size()).normalized();
}

ApproximationErrors::ApproximationErrors(Contour contour)
    : contour_(std::move(contour)), reference_(preshape(anchored_samples(contour_, contour_.size()))) {
  try {
    profile_ = curvature_profile(contour_);
  } catch (const Error& e) {
    profile_error_ = e;
  }
}

const CurvatureProfile& ApproximationErrors::profile() const {
  if (profile_error_) throw *profile_error_;
  return *profile_;
}

KGon ApproximationErrors::kgon(Parameterization p, int k) const {
  if (p == Parameterization::Arclength) return resample_arclength(contour_, k);
  return resample_curvature(contour_, profile(), k);
}

double ApproximationErrors::error(Criterion criterion, Parameterization p, int k) const {
  const KGon g = kgon(p, k);
  if (criterion == Criterion::Length) return length_error(contour_, g);
  const Preshape approx = preshape(anchored_samples(g, contour_.size()));
  return shape_distance(reference_, approx).normalized();
}

bool ApproximationErrors::meets(Criterion criterion, Parameterization p, int k,
                                double threshold) const {
  const double e = error(criterion, p, k);
  return criterion == Criterion::Length ? e <= threshold : e < threshold;
}

int find_bound(const ApproximationErrors& errors, Criterion criterion, Parameterization p,
               double threshold, SearchOptions options) {
  check_threshold(threshold);
  const int K = int(errors.contour().size());
  const int k = options.accelerated ? accelerated_search(errors, criterion, p, threshold, K)
                                    : linear_scan(errors, criterion, p, threshold, 4, K);
  if (k < 0) {
    throw Error(ErrorCode::NoFeasibleK,
                std::string(to_string(criterion)) + "/" + std::string(to_string(p)) +
                    " error exceeds the threshold even at k = K = " + std::to_string(K));
  }
  return k;
}

int find_bound(const Contour& c, Criterion criterion, Parameterization p, double threshold,
               SearchOptions options) {
  return find_bound(ApproximationErrors(c), criterion, p, threshold, options);
}

const BoundValue& BoundReport::get(Criterion criterion, Parameterization p) const {
  if (criterion == Criterion::Length) return p == Parameterization::Arclength ? k_la : k_lc;
  return p == Parameterization::Arclength ? k_da : k_dc;
}

BoundValue& BoundReport::get(Criterion criterion, Parameterization p) {
  return const_cast<BoundValue&>(std::as_const(*this).get(criterion, p));
}

BoundReport bound_report(const Contour& c, double threshold, std::string id,
                         SearchOptions options) {
  check_threshold(threshold);
  const ApproximationErrors errors(c);
  BoundReport report;
  report.contour_id = std::move(id);
  report.threshold = threshold;
  report.K = c.size();
  for (Criterion criterion : {Criterion::Length, Criterion::Distance}) {
    for (Parameterization p : {Parameterization::Arclength, Parameterization::Curvature}) {
      BoundValue& value = report.get(criterion, p);
      try {
        value.k = find_bound(errors, criterion, p, threshold, options);
      } catch (const Error& e) {
        value.error = e.code();
        value.message = e.message();
      }
    }
  }
  return report;
}

ErrorCurve error_curve(const ApproximationErrors& errors, Criterion criterion, Parameterization p,
                       int k_max) {
  check_k(errors.contour(), k_max);
  ErrorCurve curve{criterion, p, {}};
  curve.values.reserve(std::size_t(k_max - 3));
  for (int k = 4; k <= k_max; ++k) curve.values.emplace_back(k, errors.error(criterion, p, k));
  return curve;
}

ErrorCurve error_curve(const Contour& c, Criterion criterion, Parameterization p, int k_max) {
  return error_curve(ApproximationErrors(c), criterion, p, k_max);
}

}  // namespace kgon
