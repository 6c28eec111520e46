#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include <kgon/geometry.hpp>

namespace kgon {

enum class Predictor { AbsCurvature, Length, SignChanges };

/// Canonical order used by model selection.
inline constexpr Predictor kAllPredictors[] = {Predictor::AbsCurvature, Predictor::Length,
                                                Predictor::SignChanges};

std::string_view to_string(Predictor p);
std::optional<Predictor> parse_predictor(std::string_view name);

enum class Response { kLA, kDA, kLC, kDC };

inline constexpr Response kAllResponses[] = {Response::kLA, Response::kDA, Response::kLC,
                                             Response::kDC};

std::string_view to_string(Response r);
std::optional<Response> parse_response(std::string_view name);

struct FeatureRow {
  std::string contour_id;
  double total_abs_curvature = 0.0;
  double length = 0.0;
  int sign_changes = 0;
  std::size_t K = 0;
  std::string category;

  double value(Predictor p) const;
};

/// Turning integral, perimeter and curvature sign changes of a contour.
FeatureRow extract_features(const Contour& c, std::string id = {}, std::string category = {});

struct TermEstimate {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t = 0.0;
  double p = 1.0;
};

inline constexpr std::string_view kInterceptName = "intercept";

struct FittedModel {
  std::string response;
  std::vector<TermEstimate> terms;  ///< intercept first
  double rmse = 0.0;
  double r_squared = 0.0;
  double f_stat = 0.0;
  double f_p = 1.0;
  std::size_t n = 0;
  std::size_t df_resid = 0;

  std::vector<std::string> predictor_names() const;
  const TermEstimate* find(std::string_view name) const;
};

/// OLS with an intercept on the columns of `predictors` via Householder QR.
/// Throws Error{TooFewRows} when n <= #columns + 1 and Error{RankDeficient}.
FittedModel fit_ols(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& y,
                    std::vector<std::string> names, std::string response = {});

FittedModel fit_ols(std::span<const FeatureRow> rows, std::span<const double> responses,
                    std::span<const Predictor> terms, std::string response = {});

/// Starts from all columns and drops the one with the largest p-value above
/// `alpha` until none remains; equal p-values drop the later column.
FittedModel backward_select(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& y,
                            std::vector<std::string> names, double alpha,
                            std::string response = {});

FittedModel backward_select(std::span<const FeatureRow> rows, std::span<const double> responses,
                            double alpha, std::string response = {});

struct Prediction {
  double value = 0.0;
  std::int64_t ceiled = 0;
};

/// Linear predictor with features looked up by term name.
/// Throws Error{MissingFeature} when `lookup` returns nullopt.
Prediction predict(const FittedModel& model,
                   const std::function<std::optional<double>(std::string_view)>& lookup);
Prediction predict(const FittedModel& model, const FeatureRow& row);

/// Design matrix without the intercept column.
Eigen::MatrixXd design_matrix(std::span<const FeatureRow> rows, std::span<const Predictor> terms);

}  // namespace kgon
