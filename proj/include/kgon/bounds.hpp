#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <kgon/curvature.hpp>
#include <kgon/error.hpp>
#include <kgon/geometry.hpp>
#include <kgon/shape_metric.hpp>

namespace kgon {

enum class Criterion { Length, Distance };

std::string_view to_string(Criterion c);
std::string_view to_string(Parameterization p);

/// Relative perimeter deficit (L_K - L_k) / L_K, clamped at 0.
double length_error(const Contour& c, const KGon& g);

/// Shape distance at m = K divided by its maximum sqrt(2).
double distance_error(const Contour& c, const KGon& g);

/// Approximation errors of one contour for any criterion, parameterization
/// and k. Caches the anchor-aligned preshape of the contour and its
/// curvature profile.
class ApproximationErrors {
 public:
  explicit ApproximationErrors(Contour contour);

  const Contour& contour() const { return contour_; }

  /// Throws the error recorded while building the curvature profile, if any.
  const CurvatureProfile& profile() const;

  KGon kgon(Parameterization p, int k) const;
  double error(Criterion criterion, Parameterization p, int k) const;

  /// Length: error <= E. Distance: rho / sqrt(2) < E.
  bool meets(Criterion criterion, Parameterization p, int k, double threshold) const;

 private:
  Contour contour_;
  Preshape reference_;
  std::optional<CurvatureProfile> profile_;
  std::optional<Error> profile_error_;
};

struct SearchOptions {
  /// Doubling probes then bisection; falls back to the linear scan whenever
  /// the candidate cannot be confirmed as the first passing k.
  bool accelerated = false;
};

/// Smallest k in [4, K] meeting the threshold. Throws Error{NoFeasibleK}.
int find_bound(const ApproximationErrors& errors, Criterion criterion, Parameterization p,
               double threshold, SearchOptions options = {});
int find_bound(const Contour& c, Criterion criterion, Parameterization p, double threshold,
               SearchOptions options = {});

struct BoundValue {
  std::optional<int> k;
  std::optional<ErrorCode> error;
  std::string message;

  bool ok() const { return k.has_value(); }
};

struct BoundReport {
  std::string contour_id;
  double threshold = 0.0;
  std::size_t K = 0;
  BoundValue k_la;
  BoundValue k_da;
  BoundValue k_lc;
  BoundValue k_dc;

  const BoundValue& get(Criterion criterion, Parameterization p) const;
  BoundValue& get(Criterion criterion, Parameterization p);
};

/// All four bounds; a failing bound is recorded in its field, not thrown.
BoundReport bound_report(const Contour& c, double threshold, std::string id = {},
                         SearchOptions options = {});

struct ErrorCurve {
  Criterion criterion;
  Parameterization parameterization;
  std::vector<std::pair<int, double>> values;
};

/// Errors for k = 4..k_max. Throws Error{BadK} unless 4 <= k_max <= K.
ErrorCurve error_curve(const ApproximationErrors& errors, Criterion criterion, Parameterization p,
                       int k_max);
ErrorCurve error_curve(const Contour& c, Criterion criterion, Parameterization p, int k_max);

}  // namespace kgon
