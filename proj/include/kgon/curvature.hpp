#pragma once

#include <vector>

#include <kgon/geometry.hpp>

namespace kgon {

/// Discrete curvature of a contour on an arc-length-uniform grid of K samples.
///
/// Sample i sits at arc-length fraction (i + 1/2) / K and owns the interval
/// [i/K, (i+1)/K]; `cumulative_absolute[i]` is the absolute turning accrued
/// up to fraction i/K, so the cumulative profile is piecewise linear in the
/// fraction.
struct CurvatureProfile {
  std::vector<double> signed_curvatures;
  std::vector<double> cumulative_absolute;
  double total_absolute = 0.0;
  int sign_changes = 0;
  double spacing = 0.0;

  std::size_t size() const { return signed_curvatures.size(); }

  /// Cumulative absolute curvature at fraction f (taken modulo 1).
  double cumulative_at(double f) const;

  /// Smallest fraction in [0, 1] whose cumulative value reaches `target`.
  double fraction_at(double target) const;
};

/// Central differences with circular indexing on a uniform resampling.
/// Throws Error{TooFewPoints} for K < 5 and Error{DegenerateDerivative}.
CurvatureProfile curvature_profile(const Contour& c);

/// k points enclosing equal absolute turning, starting at the anchor.
/// Throws Error{BadK} or Error{FlatContour}.
KGon resample_curvature(const Contour& c, const CurvatureProfile& profile, int k);

}  // namespace kgon
