#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include <kgon/contour_io.hpp>
#include <kgon/synthetic.hpp>

#include "cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using kgon::Point;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kgon::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("kgon_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

kgon::io::CsvTable table(const std::string& path) { return kgon::io::read_csv_file(path); }

}  // namespace

TEST_CASE("categories are inferred from file stems") {
  CHECK(kgon::cli::infer_category("dog12") == "dog");
  CHECK(kgon::cli::infer_category("fish1-3") == "fish1");
  CHECK(kgon::cli::infer_category("pear_07") == "pear");
  CHECK(kgon::cli::infer_category("42") == "42");
}

TEST_CASE("end-to-end pipeline on the basic suite") {
  TempDir dir("pipeline");
  const auto start = std::chrono::steady_clock::now();
  REQUIRE(run({"generate", "--suite", "basic", "--out", dir / "shapes"}).code == 0);
  const auto bounds = run({"bounds", "--input", dir / "shapes", "--out", dir / "bounds.csv", "--curve-out",
                           dir / "curves.csv", "--curve-kmax", "40"});
  CHECK(bounds.code == 0);
  CHECK(bounds.err.empty());
  REQUIRE(run({"features", "--input", dir / "shapes/manifest.csv", "--out", dir / "features.csv"}).code == 0);
  REQUIRE(run({"fit", "--features", dir / "features.csv", "--bounds", dir / "bounds.csv", "--response", "kLA",
               "--alpha", "1", "--out", dir / "models.json"})
              .code == 0);
  REQUIRE(run({"predict", "--models", dir / "models.json", "--features", dir / "features.csv", "--out",
               dir / "pred.csv"})
              .code == 0);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));

  const auto b = table(dir / "bounds.csv");
  CHECK(b.header == std::vector<std::string>{"id", "K", "E", "kLA", "kDA", "kLC", "kDC"});
  CHECK(b.rows.size() == 6);
  CHECK(table(dir / "curves.csv").rows.size() == 6 * 4 * 37);
  CHECK(table(dir / "features.csv").header == std::vector<std::string>{"id", "abs_kappa", "L_K", "n_kappa", "K"});

  const auto models = nlohmann::json::parse(slurp(dir / "models.json"));
  REQUIRE(models.size() == 1);
  for (const char* key : {"response", "terms", "rmse", "f", "f_p", "n"}) CHECK(models[0].contains(key));
  for (const char* key : {"name", "estimate", "se", "t", "p"}) CHECK(models[0]["terms"][0].contains(key));

  // Predictions on the training rows leave residuals with mean zero.
  std::map<std::string, double> observed;
  for (const auto& row : b.rows) observed[row[0]] = std::stod(row[3]);
  double residual = 0.0;
  const auto pred = table(dir / "pred.csv");
  for (const auto& row : pred.rows) residual += kgon::io::parse_double(row[2]) - observed[row[0]];
  CHECK(std::abs(residual / double(pred.rows.size())) < 1e-10);
}

TEST_CASE("outputs are byte-identical on rerun and CSV round-trips") {
  TempDir dir("rerun");
  REQUIRE(run({"--seed", "3", "generate", "--suite", "jagged", "--count", "4", "--out", dir / "j"}).code == 0);
  REQUIRE(run({"bounds", "--input", dir / "j", "--out", dir / "b1.csv", "--threads", "1"}).code == 0);
  REQUIRE(run({"bounds", "--input", dir / "j", "--out", dir / "b2.csv", "--threads", "3"}).code == 0);
  CHECK(slurp(dir / "b1.csv") == slurp(dir / "b2.csv"));
  REQUIRE(run({"features", "--input", dir / "j", "--out", dir / "f1.csv"}).code == 0);
  REQUIRE(run({"features", "--input", dir / "j", "--out", dir / "f2.csv"}).code == 0);
  CHECK(slurp(dir / "f1.csv") == slurp(dir / "f2.csv"));

  for (const char* name : {"b1.csv", "f1.csv"}) {
    std::ostringstream again;
    kgon::io::write_csv(again, table(dir / name));
    CHECK(again.str() == slurp(dir / name));
  }
}

TEST_CASE("looser thresholds never need more points") {
  TempDir dir("monotone");
  REQUIRE(run({"generate", "--out", dir / "s"}).code == 0);
  REQUIRE(run({"bounds", "--input", dir / "s", "--e", "0.5", "--out", dir / "loose.csv"}).code == 0);
  REQUIRE(run({"bounds", "--input", dir / "s", "--e", "0.005", "--out", dir / "tight.csv"}).code == 0);
  const auto loose = table(dir / "loose.csv"), tight = table(dir / "tight.csv");
  for (std::size_t r = 0; r < loose.rows.size(); ++r) {
    for (std::size_t c = 3; c < 7; ++c) CHECK(std::stoi(tight.rows[r][c]) >= std::stoi(loose.rows[r][c]));
  }
}

TEST_CASE("selected criteria leave the other columns empty") {
  TempDir dir("select");
  REQUIRE(run({"generate", "--out", dir / "s"}).code == 0);
  const auto r = run({"bounds", "--input", dir / "s/circle.txt", "--criterion", "length", "--param", "arclength"});
  CHECK(r.code == 0);
  CHECK(r.out.find("circle,512,0.005,19,,,\n") != std::string::npos);
}

TEST_CASE("smooth writes sibling files") {
  TempDir dir("smooth");
  const auto circle = kgon::synthetic::circle(64, 2.0);
  kgon::io::write_points_file(dir / "c.txt", circle);
  REQUIRE(run({"smooth", "--input", dir / "c.txt", "--smooth-passes", "0", "--suffix", "_p0"}).code == 0);
  CHECK(kgon::io::read_points_file(dir / "c_p0.txt") == circle);

  REQUIRE(run({"smooth", "--input", dir / "c.txt", "--smooth-passes", "1"}).code == 0);
  const double expected = 2.0 * (1.0 + 2.0 * std::cos(2.0 * oracle::pi / 64.0)) / 3.0;
  for (const Point& p : kgon::io::read_points_file(dir / "c_smoothed.txt")) CHECK(std::abs(p) == doctest::Approx(expected));
}

TEST_CASE("input errors exit with 2 and name the problem") {
  const auto missing = run({"smooth", "--input", "/nonexistent/shape.txt"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("/nonexistent/shape.txt") != std::string::npos);
  CHECK(missing.err.rfind("error code=IoError", 0) == 0);

  CHECK(run({"bounds", "--input", "x", "--criterion", "nonsense"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);

  TempDir dir("badinput");
  kgon::io::write_points_file(dir / "line.txt", std::vector<Point>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  const auto degenerate = run({"features", "--input", dir / "line.txt"});
  CHECK(degenerate.code == 2);
  CHECK(degenerate.err.find("DegenerateContour") != std::string::npos);
}

TEST_CASE("numeric failures exit with 3 and mark the bound") {
  TempDir dir("numeric");
  kgon::io::write_points_file(dir / "noisy.txt", kgon::synthetic::jitter(kgon::synthetic::circle(500), 300, 0.3, 2));
  const auto r = run({"bounds", "--input", dir / "noisy.txt", "--e", "1e-9", "--smooth-passes", "0"});
  CHECK(r.code == 3);
  CHECK(r.out.find(",NA") != std::string::npos);
  CHECK(r.err.find("error code=NoFeasibleK id=noisy bound=kLA") != std::string::npos);
}

TEST_CASE("kimia directories infer categories and validate runs") {
  TempDir dir("kimia");
  fs::create_directories(dir / "raw");
  std::uint64_t seed = 1;
  for (const char* name : {"blob1", "blob2", "blob3", "blob4", "blob5", "blob6", "star1", "star2", "star3",
                           "star4", "star5", "star6"}) {
    const bool star = name[0] == 's';
    const auto pts = star ? kgon::synthetic::smooth_star(4 + seed % 3, 600, 0.1 + 0.02 * double(seed))
                          : kgon::synthetic::random_smooth(seed, 600, 5, 0.2);
    kgon::io::write_points_file(fs::path(dir / "raw") / (std::string(name) + ".txt"), pts);
    ++seed;
  }
  REQUIRE(run({"manifest", "--input", dir / "raw", "--out", dir / "manifest.csv"}).code == 0);
  const auto m = table(dir / "manifest.csv");
  CHECK(m.rows.front()[2] == "blob");
  CHECK(m.rows.back()[2] == "star");

  REQUIRE(run({"bounds", "--kimia", dir / "raw", "--out", dir / "b.csv"}).code == 0);
  REQUIRE(run({"features", "--kimia", dir / "raw", "--out", dir / "f.csv"}).code == 0);
  const auto v = run({"validate", "--features", dir / "f.csv", "--bounds", dir / "b.csv", "--manifest",
                      dir / "manifest.csv", "--mode", "loco", "--replicates", "50", "--seed", "4", "--response",
                      "kDA", "--alpha", "1", "--out", dir / "loco.json"});
  CHECK(v.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "loco.json"));
  CHECK(doc["results"][0]["categories"].size() == 2);
  CHECK(doc["seed"] == 4);

  const auto s = run({"validate", "--features", dir / "f.csv", "--bounds", dir / "b.csv", "--replicates", "30",
                      "--out", dir / "split.json"});
  CHECK(s.code == 0);
  const auto split = nlohmann::json::parse(slurp(dir / "split.json"));
  REQUIRE(split["results"].size() == 4);
  std::uint64_t total = 0;
  for (const auto& bin : split["results"][0]["rmse"]["histogram"]) total += bin[1].get<std::uint64_t>();
  CHECK(total == 30);
}
