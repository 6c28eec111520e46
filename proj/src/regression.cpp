#include <kgon/regression.hpp>

#include <cmath>
#include <limits>

#include <Eigen/QR>

#include <kgon/curvature.hpp>
#include <kgon/distributions.hpp>
#include <kgon/error.hpp>

namespace kgon {

namespace {

// Pivots below this fraction of the largest one mark a collinear design.
constexpr double kRankTolerance = 1e-10;

std::vector<std::string> names_of(std::span<const Predictor> terms) {
  std::vector<std::string> names;
  for (Predictor p : terms) names.emplace_back(to_string(p));
  return names;
}

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, Eigen::Index col) {
  Eigen::MatrixXd out(m.rows(), m.cols() - 1);
  for (Eigen::Index j = 0, k = 0; j < m.cols(); ++j) {
    if (j != col) out.col(k++) = m.col(j);
  }
  return out;
}

}  // namespace

std::string_view to_string(Predictor p) {
  switch (p) {
    case Predictor::AbsCurvature: return "abs_kappa";
    case Predictor::Length: return "L_K";
    case Predictor::SignChanges: return "n_kappa";
  }
  return "";
}

std::optional<Predictor> parse_predictor(std::string_view name) {
  for (Predictor p : kAllPredictors) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(Response r) {
  switch (r) {
    case Response::kLA: return "kLA";
    case Response::kDA: return "kDA";
    case Response::kLC: return "kLC";
    case Response::kDC: return "kDC";
  }
  return "";
}

std::optional<Response> parse_response(std::string_view name) {
  for (Response r : kAllResponses) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

double FeatureRow::value(Predictor p) const {
  switch (p) {
    case Predictor::AbsCurvature: return total_abs_curvature;
    case Predictor::Length: return length;
    case Predictor::SignChanges: return double(sign_changes);
  }
  return 0.0;
}

FeatureRow extract_features(const Contour& c, std::string id, std::string category) {
  const CurvatureProfile profile = curvature_profile(c);
  FeatureRow row;
  row.contour_id = std::move(id);
  row.total_abs_curvature = profile.total_absolute;
  row.length = c.length();
  row.sign_changes = profile.sign_changes;
  row.K = c.size();
  row.category = std::move(category);
  return row;
}

std::vector<std::string> FittedModel::predictor_names() const {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    if (t.name != kInterceptName) out.push_back(t.name);
  }
  return out;
}

const TermEstimate* FittedModel::find(std::string_view name) const {
  for (const auto& t : terms) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

FittedModel fit_ols(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& y,
                    std::vector<std::string> names, std::string response) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = predictors.cols() + 1;
  if (predictors.rows() != n || Eigen::Index(names.size()) != predictors.cols()) {
    throw Error(ErrorCode::BadConfig, "design matrix, response and names disagree in size");
  }
  if (n <= p) {
    throw Error(ErrorCode::TooFewRows, std::to_string(n) + " rows for " + std::to_string(p) +
                                           " coefficients");
  }

  Eigen::MatrixXd X(n, p);
  X.col(0).setOnes();
  X.rightCols(p - 1) = predictors;

  // Rank check on unit-norm columns so that scale differences between
  // predictors do not masquerade as collinearity.
  Eigen::MatrixXd scaled = X;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = scaled.col(j).norm();
    if (norm > 0.0) scaled.col(j) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(scaled);
  pivoted.setThreshold(kRankTolerance);
  if (pivoted.rank() < p) {
    throw Error(ErrorCode::RankDeficient, "design matrix has rank " +
                                              std::to_string(pivoted.rank()) + " < " +
                                              std::to_string(p));
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd R_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::VectorXd unscaled_var = R_inv.rowwise().squaredNorm();

  const Eigen::VectorXd fitted = X * beta;
  const double sse = (y - fitted).squaredNorm();
  const double mean = y.mean();
  const double ssr = (fitted.array() - mean).matrix().squaredNorm();
  const double sst = (y.array() - mean).matrix().squaredNorm();
  const std::size_t df = std::size_t(n - p);
  const double sigma2 = sse / double(df);

  FittedModel model;
  model.response = std::move(response);
  model.n = std::size_t(n);
  model.df_resid = df;
  model.rmse = std::sqrt(sigma2);
  model.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;

  for (Eigen::Index j = 0; j < p; ++j) {
    TermEstimate term;
    term.name = j == 0 ? std::string(kInterceptName) : names[std::size_t(j - 1)];
    term.estimate = beta(j);
    term.std_error = std::sqrt(sigma2 * unscaled_var(j));
    if (term.std_error > 0.0) {
      term.t = term.estimate / term.std_error;
      term.p = stats::student_t_two_sided(term.t, double(df));
    } else {
      term.t = term.estimate == 0.0 ? 0.0
                                    : std::copysign(std::numeric_limits<double>::infinity(),
                                                    term.estimate);
      term.p = term.estimate == 0.0 ? 1.0 : 0.0;
    }
    model.terms.push_back(std::move(term));
  }

  if (p > 1) {
    const double df_model = double(p - 1);
    model.f_stat = sse > 0.0 ? (ssr / df_model) / sigma2 : std::numeric_limits<double>::infinity();
    model.f_p = stats::f_survival(model.f_stat, df_model, double(df));
  }
  return model;
}

Eigen::MatrixXd design_matrix(std::span<const FeatureRow> rows, std::span<const Predictor> terms) {
  Eigen::MatrixXd X(Eigen::Index(rows.size()), Eigen::Index(terms.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      X(Eigen::Index(i), Eigen::Index(j)) = rows[i].value(terms[j]);
    }
  }
  return X;
}

FittedModel fit_ols(std::span<const FeatureRow> rows, std::span<const double> responses,
                    std::span<const Predictor> terms, std::string response) {
  if (rows.size() != responses.size()) {
    throw Error(ErrorCode::BadConfig, "feature rows and responses differ in length");
  }
  const Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(responses.data(), Eigen::Index(responses.size()));
  return fit_ols(design_matrix(rows, terms), y, names_of(terms), std::move(response));
}

FittedModel backward_select(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& y,
                            std::vector<std::string> names, double alpha, std::string response) {
  Eigen::MatrixXd X = predictors;
  for (;;) {
    FittedModel model = fit_ols(X, y, names, response);
    std::size_t worst = 0;
    double worst_p = -1.0;
    for (std::size_t j = 1; j < model.terms.size(); ++j) {
      const double p = model.terms[j].p;
      if (p > alpha && p >= worst_p) {
        worst = j;
        worst_p = p;
      }
    }
    if (worst == 0) return model;
    X = drop_column(X, Eigen::Index(worst - 1));
    names.erase(names.begin() + std::ptrdiff_t(worst - 1));
  }
}

FittedModel backward_select(std::span<const FeatureRow> rows, std::span<const double> responses,
                            double alpha, std::string response) {
  if (rows.size() != responses.size()) {
    throw Error(ErrorCode::BadConfig, "feature rows and responses differ in length");
  }
  const Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(responses.data(), Eigen::Index(responses.size()));
  return backward_select(design_matrix(rows, kAllPredictors), y, names_of(kAllPredictors), alpha,
                         std::move(response));
}

Prediction predict(const FittedModel& model,
                   const std::function<std::optional<double>(std::string_view)>& lookup) {
  double value = 0.0;
  for (const auto& term : model.terms) {
    if (term.name == kInterceptName) {
      value += term.estimate;
      continue;
    }
    const auto x = lookup(term.name);
    if (!x) throw Error(ErrorCode::MissingFeature, "no value for term '" + term.name + "'");
    value += term.estimate * *x;
  }
  return {value, std::int64_t(std::ceil(value))};
}

Prediction predict(const FittedModel& model, const FeatureRow& row) {
  return predict(model, [&row](std::string_view name) -> std::optional<double> {
    if (auto p = parse_predictor(name)) return row.value(*p);
    return std::nullopt;
  });
}

}  // namespace kgon
