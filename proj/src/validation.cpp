#include <kgon/validation.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <kgon/error.hpp>
#include <kgon/parallel.hpp>

namespace kgon {

namespace {

constexpr std::uint64_t kSplitStream = 0x8020;
constexpr std::uint64_t kNullStream = 0x10c0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
}

struct Subset {
  std::vector<FeatureRow> rows;
  std::vector<double> y;
};

Subset take(const Dataset& data, const std::vector<std::size_t>& idx) {
  Subset s;
  s.rows.reserve(idx.size());
  s.y.reserve(idx.size());
  for (std::size_t i : idx) {
    s.rows.push_back(data.rows[i]);
    s.y.push_back(data.y[i]);
  }
  return s;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sorted_idx) {
  std::vector<std::size_t> out;
  out.reserve(n - sorted_idx.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < sorted_idx.size() && sorted_idx[j] == i) ++j;
    else out.push_back(i);
  }
  return out;
}

std::vector<Predictor> to_predictors(const std::vector<std::string>& names) {
  std::vector<Predictor> out;
  for (const auto& n : names) out.push_back(*parse_predictor(n));
  return out;
}

// Fits on `train` and returns test residuals (predicted - observed).
std::vector<double> holdout_residuals(const Dataset& data, const std::vector<std::size_t>& train,
                                      const std::vector<std::size_t>& test,
                                      const std::vector<Predictor>& frozen, const CVConfig& cfg) {
  const Subset tr = take(data, train);
  const FittedModel model = cfg.reselect
                                ? backward_select(tr.rows, tr.y, cfg.alpha, data.response)
                                : fit_ols(tr.rows, tr.y, frozen, data.response);
  std::vector<double> residuals;
  residuals.reserve(test.size());
  for (std::size_t i : test) residuals.push_back(predict(model, data.rows[i]).value - data.y[i]);
  return residuals;
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / double(v.size()));
}

void check_dataset(const Dataset& data) {
  if (data.rows.size() != data.y.size()) {
    throw Error(ErrorCode::BadConfig, "feature rows and responses differ in length");
  }
}

void check_config(const CVConfig& cfg) {
  if (cfg.replicates < 1 || !(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
    throw Error(ErrorCode::BadConfig, "replicates must be >= 1 and test_fraction in (0, 1)");
  }
}

// Null distribution of test RMSEs for random test sets of a given size.
std::vector<double> random_split_rmses(const Dataset& data, std::size_t test_size,
                                       std::uint64_t stream, const std::vector<Predictor>& frozen,
                                       const CVConfig& cfg) {
  const std::size_t n = data.rows.size();
  std::vector<double> out(cfg.replicates);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
    auto rng = substream(cfg.seed, stream, r);
    const auto test = sample_without_replacement(rng, n, test_size);
    const auto train = complement(n, test);
    out[r] = rms(holdout_residuals(data, train, test, frozen, cfg));
  });
  return out;
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t base = splitmix64(seed ^ splitmix64(stream));
  return std::mt19937_64(splitmix64(base + splitmix64(index)));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

std::vector<std::size_t> sample_without_replacement(std::mt19937_64& rng, std::size_t n,
                                                    std::size_t count) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + std::size_t(uniform_below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

double freedman_diaconis_width(std::vector<double> values) {
  if (values.size() < 2) return 1.0;
  std::sort(values.begin(), values.end());
  const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
  const double width = 2.0 * iqr / std::cbrt(double(values.size()));
  return width > 0.0 && std::isfinite(width) ? width : 1.0;
}

void StreamingSummary::add(double x) {
  if (count_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++count_;
  sum_ += x;

  if (width_ > 0.0) {
    bin(x);
    return;
  }
  pending_.push_back(x);
  if (pending_.size() == kCalibrationSize) {
    width_ = freedman_diaconis_width(pending_);
    for (double v : pending_) bin(v);
    pending_.clear();
    pending_.shrink_to_fit();
  }
}

void StreamingSummary::bin(double x) { ++bins_[std::int64_t(std::floor(x / width_))]; }

double StreamingSummary::bin_width() const {
  return width_ > 0.0 ? width_ : freedman_diaconis_width(pending_);
}

std::vector<std::pair<double, std::uint64_t>> StreamingSummary::histogram() const {
  const double width = bin_width();
  std::map<std::int64_t, std::uint64_t> bins = bins_;
  for (double v : pending_) ++bins[std::int64_t(std::floor(v / width))];
  std::vector<std::pair<double, std::uint64_t>> out;
  for (const auto& [index, n] : bins) out.emplace_back(double(index) * width, n);
  return out;
}

double ResidualSigns::positive_pct() const { return 100.0 * double(positive) / double(total()); }
double ResidualSigns::negative_pct() const { return 100.0 * double(negative) / double(total()); }
double ResidualSigns::zero_pct() const { return 100.0 * double(zero) / double(total()); }

CVSummary cv_8020(const Dataset& data, const CVConfig& cfg) {
  check_dataset(data);
  check_config(cfg);
  const std::size_t n = data.rows.size();
  if (n < 10) throw Error(ErrorCode::TooFewRows, "80:20 validation needs at least 10 rows");

  const FittedModel full = backward_select(data.rows, data.y, cfg.alpha, data.response);
  const auto frozen = to_predictors(full.predictor_names());

  const std::size_t test_size =
      std::clamp<std::size_t>(std::size_t(std::llround(cfg.test_fraction * double(n))), 1, n - 1);

  CVSummary out;
  out.response = data.response;
  out.terms = full.predictor_names();
  out.test_size = test_size;
  out.full_data_rmse = full.rmse;
  out.rmse_samples = random_split_rmses(data, test_size, kSplitStream, frozen, cfg);
  for (double r : out.rmse_samples) out.summary.add(r);
  return out;
}

std::vector<CVSummary> cv_leave_category(const Dataset& data, const CVConfig& cfg) {
  check_dataset(data);
  check_config(cfg);
  const std::size_t n = data.rows.size();

  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[data.rows[i].category].push_back(i);
  if (members.size() < 2) {
    throw Error(ErrorCode::SingletonCategory, "leave-one-category-out needs at least 2 categories");
  }

  const FittedModel full = backward_select(data.rows, data.y, cfg.alpha, data.response);
  const auto frozen = to_predictors(full.predictor_names());
  const std::size_t coefficients = cfg.reselect ? std::size(kAllPredictors) + 1 : frozen.size() + 1;
  for (const auto& [category, idx] : members) {
    if (n - idx.size() <= coefficients) {
      throw Error(ErrorCode::SingletonCategory,
                  "holding out category '" + category + "' leaves too few rows to fit");
    }
  }

  double y_rms = 0.0;
  for (double v : data.y) y_rms += v * v;
  y_rms = std::sqrt(y_rms / double(n));
  // RMSE differences below numerical resolution count as ties.
  const double tie = 1e-9 * y_rms;

  std::map<std::size_t, std::vector<double>> nulls;
  std::vector<CVSummary> out;
  for (const auto& [category, test] : members) {
    const auto train = complement(n, test);
    const auto residuals = holdout_residuals(data, train, test, frozen, cfg);

    CVSummary s;
    s.response = data.response;
    s.category = category;
    s.terms = full.predictor_names();
    s.test_size = test.size();
    s.full_data_rmse = full.rmse;
    s.observed_rmse = rms(residuals);
    ResidualSigns signs;
    for (double r : residuals) {
      if (r > 0.0) ++signs.positive;
      else if (r < 0.0) ++signs.negative;
      else ++signs.zero;
    }
    s.residual_signs = signs;

    auto it = nulls.find(test.size());
    if (it == nulls.end()) {
      it = nulls.emplace(test.size(), random_split_rmses(data, test.size(),
                                                         kNullStream + test.size(), frozen, cfg))
               .first;
    }
    const auto& null = it->second;
    const auto above = std::count_if(null.begin(), null.end(),
                                     [&](double r) { return r >= *s.observed_rmse - tie; });
    s.upper_tail_prob = double(above) / double(null.size());
    for (double r : null) s.summary.add(r);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace kgon
