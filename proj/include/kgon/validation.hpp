#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <kgon/regression.hpp>

namespace kgon {

struct CVConfig {
  std::size_t replicates = 10000;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  /// Re-run backward selection in every replicate instead of freezing the
  /// terms selected on the full data.
  bool reselect = false;
  unsigned threads = 1;
};

/// Independent generator for (seed, stream, index); used so that replicate
/// results do not depend on the order in which they are computed.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform integer in [0, n) by rejection, independent of the standard
/// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// `count` distinct indices drawn uniformly from [0, n), sorted.
std::vector<std::size_t> sample_without_replacement(std::mt19937_64& rng, std::size_t n,
                                                    std::size_t count);

/// Mean, min, max and a fixed-width histogram of a stream of values.
/// The bin width is chosen by the Freedman-Diaconis rule on the first
/// `kCalibrationSize` values and then held fixed; bins are aligned to 0.
class StreamingSummary {
 public:
  static constexpr std::size_t kCalibrationSize = 1000;

  void add(double x);

  std::size_t count() const { return count_; }
  double mean() const { return count_ ? sum_ / double(count_) : 0.0; }
  double min() const { return min_; }
  double max() const { return max_; }
  double bin_width() const;

  /// (lower edge, count) pairs in increasing order.
  std::vector<std::pair<double, std::uint64_t>> histogram() const;

 private:
  void bin(double x);

  std::size_t count_ = 0;
  double sum_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  std::vector<double> pending_;
  double width_ = 0.0;
  std::map<std::int64_t, std::uint64_t> bins_;
};

/// Freedman-Diaconis width 2 IQR n^(-1/3); 1 when the IQR vanishes.
double freedman_diaconis_width(std::vector<double> values);

struct Dataset {
  std::string response;
  std::vector<FeatureRow> rows;
  std::vector<double> y;
};

struct ResidualSigns {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  std::size_t total() const { return positive + negative + zero; }
  double positive_pct() const;
  double negative_pct() const;
  double zero_pct() const;
};

struct CVSummary {
  std::string response;
  std::string category;               ///< empty for the 80:20 protocol
  std::vector<std::string> terms;     ///< predictors of the full-data model
  std::size_t test_size = 0;
  std::vector<double> rmse_samples;   ///< replicate RMSEs in replicate order
  StreamingSummary summary;
  double full_data_rmse = 0.0;
  std::optional<double> observed_rmse;
  std::optional<double> upper_tail_prob;
  std::optional<ResidualSigns> residual_signs;  ///< residual = predicted - observed
};

/// Repeated random 80:20 splits. Throws Error{TooFewRows} below 10 rows.
CVSummary cv_8020(const Dataset& data, const CVConfig& cfg);

/// Leave one category out, with a null RMSE distribution from random test
/// sets of the held-out category's size. Throws Error{SingletonCategory}.
std::vector<CVSummary> cv_leave_category(const Dataset& data, const CVConfig& cfg);

}  // namespace kgon
