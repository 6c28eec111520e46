#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <kgon/error.hpp>
#include <kgon/validation.hpp>

#include "oracles.hpp"

using namespace kgon;

namespace {

// Rows with independent random features; response linear in two of them.
Dataset linear_dataset(std::size_t n, double noise, std::uint64_t seed, std::size_t categories = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  std::uniform_int_distribution<int> changes(0, 5);
  std::normal_distribution<double> e(0.0, noise > 0 ? noise : 1.0);
  Dataset d;
  d.response = "kLA";
  for (std::size_t i = 0; i < n; ++i) {
    FeatureRow r;
    r.contour_id = "c" + std::to_string(i);
    r.total_abs_curvature = u(rng);
    r.length = 10.0 * u(rng);
    r.sign_changes = 2 * changes(rng);
    r.category = "cat" + std::to_string(i % categories);
    d.rows.push_back(r);
    d.y.push_back(2.0 + 3.0 * r.total_abs_curvature - 0.5 * r.length + (noise > 0 ? e(rng) : 0.0));
  }
  return d;
}

CVConfig small_config(std::size_t replicates, std::uint64_t seed = 7) {
  CVConfig cfg;
  cfg.replicates = replicates;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("substreams are reproducible and distinct") {
  auto a = substream(1, 2, 3), b = substream(1, 2, 3), c = substream(1, 2, 4), d = substream(1, 3, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("uniform_below stays in range and covers it") {
  std::mt19937_64 rng(1);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = uniform_below(rng, 7);
    REQUIRE(v < 7);
    ++seen[v];
  }
  for (int s : seen) CHECK(s > 800);
}

TEST_CASE("sample_without_replacement returns sorted distinct indices") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto idx = sample_without_replacement(rng, 50, 10);
    REQUIRE(idx.size() == 10);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 10);
    CHECK(idx.back() < 50);
  }
}

TEST_CASE("streaming summary matches a full recomputation") {
  std::mt19937_64 rng(3);
  std::gamma_distribution<double> g(4.0, 2.0);
  std::vector<double> xs(1000);
  StreamingSummary s;
  for (double& x : xs) {
    x = g(rng);
    s.add(x);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  CHECK(std::abs(s.mean() - mean) < 1e-12 * mean);
  CHECK(s.min() == *std::min_element(xs.begin(), xs.end()));
  CHECK(s.max() == *std::max_element(xs.begin(), xs.end()));

  const double w = s.bin_width();
  CHECK(w == freedman_diaconis_width(xs));
  std::map<std::int64_t, std::uint64_t> bins;
  for (double x : xs) ++bins[std::int64_t(std::floor(x / w))];
  const auto hist = s.histogram();
  REQUIRE(hist.size() == bins.size());
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (const auto& [index, n] : bins) {
    CHECK(std::abs(hist[i].first - double(index) * w) < 1e-12);
    CHECK(hist[i].second == n);
    total += hist[i].second;
    ++i;
  }
  CHECK(total == xs.size());
}

TEST_CASE("Freedman-Diaconis width falls back to 1 without spread") {
  CHECK(freedman_diaconis_width({2.0, 2.0, 2.0, 2.0}) == 1.0);
  CHECK(freedman_diaconis_width({}) == 1.0);
}

TEST_CASE("noiseless data gives near-zero RMSE in every replicate") {
  const Dataset d = linear_dataset(60, 0.0, 1);
  const CVSummary s = cv_8020(d, small_config(200));
  CHECK(s.test_size == 12);
  CHECK(s.rmse_samples.size() == 200);
  for (double r : s.rmse_samples) CHECK(r < 1e-6);
  std::uint64_t total = 0;
  for (const auto& [edge, n] : s.summary.histogram()) {
    total += n;
    CHECK(edge >= 0.0);
    CHECK(edge < 1e-6);
  }
  CHECK(total == 200);
}

TEST_CASE("a single replicate is reproducible") {
  const Dataset d = linear_dataset(40, 1.0, 2);
  CHECK(cv_8020(d, small_config(1)).rmse_samples == cv_8020(d, small_config(1)).rmse_samples);
}

TEST_CASE("results do not depend on the number of workers") {
  const Dataset d = linear_dataset(80, 2.0, 3, 4);
  CVConfig cfg = small_config(300);
  const auto base = cv_8020(d, cfg).rmse_samples;
  cfg.reselect = true;
  const auto reselect = cv_8020(d, cfg).rmse_samples;
  for (unsigned threads : {2u, 3u, 8u}) {
    cfg.threads = threads;
    cfg.reselect = false;
    CHECK(cv_8020(d, cfg).rmse_samples == base);
    cfg.reselect = true;
    CHECK(cv_8020(d, cfg).rmse_samples == reselect);
    const auto a = cv_leave_category(d, cfg);
    cfg.threads = 1;
    const auto b = cv_leave_category(d, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].rmse_samples == b[i].rmse_samples);
      CHECK(a[i].upper_tail_prob == b[i].upper_tail_prob);
    }
  }
}

TEST_CASE("different seeds give different replicates") {
  const Dataset d = linear_dataset(40, 1.0, 2);
  CHECK(cv_8020(d, small_config(20, 1)).rmse_samples != cv_8020(d, small_config(20, 2)).rmse_samples);
}

TEST_CASE("two identical noiseless categories") {
  Dataset d = linear_dataset(30, 0.0, 4);
  Dataset twin = d;
  for (auto& r : d.rows) r.category = "a";
  for (auto& r : twin.rows) r.category = "b";
  d.rows.insert(d.rows.end(), twin.rows.begin(), twin.rows.end());
  d.y.insert(d.y.end(), twin.y.begin(), twin.y.end());
  const auto out = cv_leave_category(d, small_config(200));
  REQUIRE(out.size() == 2);
  for (const auto& s : out) {
    CHECK(*s.observed_rmse < 1e-8);
    CHECK(*s.upper_tail_prob > 0.99);
  }
}

TEST_CASE("an outlier category is flagged") {
  Dataset d = linear_dataset(120, 1.0, 5, 6);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (d.rows[i].category == "cat2") d.y[i] += 25.0;
  }
  const auto out = cv_leave_category(d, small_config(500));
  const auto it = std::find_if(out.begin(), out.end(), [](const CVSummary& s) { return s.category == "cat2"; });
  REQUIRE(it != out.end());
  CHECK(it->residual_signs->positive_pct() < 5.0);
  CHECK(*it->upper_tail_prob < 0.01);
  for (const auto& s : out) {
    const ResidualSigns& r = *s.residual_signs;
    CHECK(r.total() == s.test_size);
    CHECK(r.positive_pct() + r.negative_pct() + r.zero_pct() == doctest::Approx(100.0).epsilon(1e-12));
  }
}

TEST_CASE("upper tail probabilities are uniform for exchangeable data") {
  const Dataset d = linear_dataset(200, 1.0, 6, 50);
  const auto out = cv_leave_category(d, small_config(1000));
  REQUIRE(out.size() == 50);
  std::vector<double> p;
  for (const auto& s : out) p.push_back(*s.upper_tail_prob);
  CHECK(oracle::ks_uniform(p) < oracle::ks_critical_5pct(p.size()));
}

TEST_CASE("validation errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code([] { cv_8020(linear_dataset(9, 1.0, 1), small_config(5)); }) == ErrorCode::TooFewRows);
  CHECK(code([] { cv_leave_category(linear_dataset(30, 1.0, 1, 1), small_config(5)); }) == ErrorCode::SingletonCategory);
  Dataset lopsided = linear_dataset(30, 1.0, 1, 1);
  for (std::size_t i = 0; i < 27; ++i) lopsided.rows[i].category = "big";
  CHECK(code([&] { cv_leave_category(lopsided, small_config(5)); }) == ErrorCode::SingletonCategory);
  CVConfig bad = small_config(0);
  CHECK(code([&] { cv_8020(linear_dataset(30, 1.0, 1), bad); }) == ErrorCode::BadConfig);
}
