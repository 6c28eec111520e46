#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <kgon/bounds.hpp>
#include <kgon/contour_io.hpp>
#include <kgon/error.hpp>
#include <kgon/parallel.hpp>
#include <kgon/regression.hpp>
#include <kgon/smoothing.hpp>
#include <kgon/synthetic.hpp>
#include <kgon/validation.hpp>

namespace kgon::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kMissing = "NA";

struct Global {
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

struct Source {
  std::string id;
  fs::path path;
  std::string category;
};

struct InputFlags {
  std::string input;
  std::string kimia;
};

// Bound columns in output order.
struct BoundSlot {
  const char* name;
  Criterion criterion;
  Parameterization parameterization;
};
constexpr std::array<BoundSlot, 4> kSlots{{
    {"kLA", Criterion::Length, Parameterization::Arclength},
    {"kDA", Criterion::Distance, Parameterization::Arclength},
    {"kLC", Criterion::Length, Parameterization::Curvature},
    {"kDC", Criterion::Distance, Parameterization::Curvature},
}};

void report(std::ostream& err, ErrorCode code, const std::string& context, const std::string& message) {
  err << "error code=" << to_string(code);
  if (!context.empty()) err << ' ' << context;
  err << ": " << message << '\n';
}

// 0 when nothing failed, otherwise the exit code for the worst failure seen.
int severity(ErrorCode code) { return is_numeric_failure(code) ? kExitNumeric : kExitInput; }
int worse(int a, int b) {
  if (a == kExitInput || b == kExitInput) return kExitInput;
  return std::max(a, b);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
}

std::string csv_text(const io::CsvTable& table) {
  std::ostringstream s;
  io::write_csv(s, table);
  return s.str();
}

bool is_point_file(const fs::path& p) {
  static const std::set<std::string> extensions{".txt", ".pts", ".csv", ".dat", ".xy"};
  const std::string name = p.filename().string();
  return !name.empty() && name.front() != '.' && name != "manifest.csv" &&
         extensions.count(p.extension().string()) != 0;
}

bool looks_like_manifest(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + p.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    return line.find("contour_id") != std::string::npos;
  }
  return false;
}

std::vector<Source> sources_from_manifest(const fs::path& manifest) {
  const io::CsvTable t = io::read_csv_file(manifest);
  const std::size_t id_col = t.column("contour_id");
  const std::size_t file_col = t.column("file");
  std::optional<std::size_t> cat_col;
  if (std::find(t.header.begin(), t.header.end(), "category") != t.header.end()) {
    cat_col = t.column("category");
  }
  std::vector<Source> out;
  for (const auto& row : t.rows) {
    fs::path file = row[file_col];
    if (file.is_relative()) file = manifest.parent_path() / file;
    out.push_back({row[id_col], file, cat_col ? row[*cat_col] : infer_category(row[id_col])});
  }
  return out;
}

std::vector<Source> sources_from_directory(const fs::path& dir, bool use_manifest) {
  if (use_manifest && fs::exists(dir / "manifest.csv")) return sources_from_manifest(dir / "manifest.csv");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_point_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Source> out;
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    out.push_back({stem, f, infer_category(stem)});
  }
  return out;
}

std::vector<Source> resolve_sources(const InputFlags& flags) {
  if (flags.input.empty() == flags.kimia.empty()) {
    throw Error(ErrorCode::BadConfig, "give exactly one of --input and --kimia");
  }
  std::vector<Source> out;
  if (!flags.kimia.empty()) {
    if (!fs::is_directory(flags.kimia)) throw Error(ErrorCode::IoError, "not a directory: " + flags.kimia);
    out = sources_from_directory(flags.kimia, false);
  } else {
    const fs::path p = flags.input;
    if (fs::is_directory(p)) {
      out = sources_from_directory(p, true);
    } else if (!fs::exists(p)) {
      throw Error(ErrorCode::IoError, "no such file: " + p.string());
    } else if (looks_like_manifest(p)) {
      out = sources_from_manifest(p);
    } else {
      out.push_back({p.stem().string(), p, infer_category(p.stem().string())});
    }
  }
  if (out.empty()) throw Error(ErrorCode::IoError, "no contour files found");
  std::set<std::string> seen;
  for (const auto& s : out) {
    if (!seen.insert(s.id).second) throw Error(ErrorCode::ParseError, "duplicate contour id " + s.id);
  }
  return out;
}

Contour load(const Source& s, const SmootherConfig& cfg) {
  try {
    return smooth(Contour::ingest(io::read_points_file(s.path)), cfg);
  } catch (const Error& e) {
    throw Error(e.code(), s.id + ": " + e.message());
  }
}

std::vector<Contour> load_all(const std::vector<Source>& sources, const SmootherConfig& cfg) {
  std::vector<Contour> out;
  out.reserve(sources.size());
  for (const auto& s : sources) out.push_back(load(s, cfg));
  return out;
}

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
  cmd->add_option("--input", flags.input, "Point file, directory of point files, or manifest CSV");
  cmd->add_option("--kimia", flags.kimia, "Directory of contour files; categories from file names");
}

void add_smoothing_flags(CLI::App* cmd, SmootherConfig& cfg) {
  cmd->add_option("--smooth-passes", cfg.passes, "Moving-average passes")->capture_default_str();
  cmd->add_option("--smooth-window", cfg.window, "Moving-average window (odd)")->capture_default_str();
}

std::optional<double> parse_optional(const std::string& field) {
  if (field.empty() || field == kMissing) return std::nullopt;
  return io::parse_double(field);
}

std::vector<FeatureRow> read_features(const std::string& path) {
  const io::CsvTable t = io::read_csv_file(path);
  const std::size_t id = t.column("id");
  const std::size_t kappa = t.column("abs_kappa");
  const std::size_t length = t.column("L_K");
  const std::size_t changes = t.column("n_kappa");
  const std::size_t K = t.column("K");
  std::vector<FeatureRow> out;
  for (const auto& row : t.rows) {
    const auto a = parse_optional(row[kappa]);
    const auto l = parse_optional(row[length]);
    const auto n = parse_optional(row[changes]);
    if (!a || !l || !n) continue;
    FeatureRow r;
    r.contour_id = row[id];
    r.total_abs_curvature = *a;
    r.length = *l;
    r.sign_changes = int(*n);
    r.K = std::size_t(io::parse_double(row[K]));
    out.push_back(std::move(r));
  }
  return out;
}

using BoundTable = std::map<std::string, std::array<std::optional<double>, 4>>;

BoundTable read_bounds(const std::string& path) {
  const io::CsvTable t = io::read_csv_file(path);
  const std::size_t id = t.column("id");
  std::array<std::size_t, 4> cols{};
  for (std::size_t i = 0; i < 4; ++i) cols[i] = t.column(kSlots[i].name);
  BoundTable out;
  for (const auto& row : t.rows) {
    auto& entry = out[row[id]];
    for (std::size_t i = 0; i < 4; ++i) entry[i] = parse_optional(row[cols[i]]);
  }
  return out;
}

std::vector<Response> selected_responses(const std::string& name) {
  if (name == "all") return {std::begin(kAllResponses), std::end(kAllResponses)};
  const auto r = parse_response(name);
  if (!r) throw Error(ErrorCode::BadConfig, "unknown response " + name);
  return {*r};
}

Dataset make_dataset(const std::vector<FeatureRow>& features, const BoundTable& bounds, Response r) {
  Dataset d;
  d.response = std::string(to_string(r));
  for (const auto& f : features) {
    auto it = bounds.find(f.contour_id);
    if (it == bounds.end() || !it->second[std::size_t(r)]) continue;
    d.rows.push_back(f);
    d.y.push_back(*it->second[std::size_t(r)]);
  }
  return d;
}

Json model_json(const FittedModel& m) {
  Json terms = Json::array();
  for (const auto& t : m.terms) {
    terms.push_back({{"name", t.name}, {"estimate", t.estimate}, {"se", t.std_error}, {"t", t.t}, {"p", t.p}});
  }
  return {{"response", m.response}, {"terms", terms}, {"rmse", m.rmse}, {"f", m.f_stat},
          {"f_p", m.f_p}, {"n", m.n}};
}

double json_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

FittedModel model_from_json(const Json& j) {
  FittedModel m;
  m.response = j.at("response").get<std::string>();
  for (const auto& t : j.at("terms")) {
    m.terms.push_back({t.at("name").get<std::string>(), json_number(t.at("estimate")),
                       json_number(t.at("se")), json_number(t.at("t")), json_number(t.at("p"))});
  }
  m.rmse = json_number(j.at("rmse"));
  m.f_stat = j.at("f").is_null() ? std::numeric_limits<double>::infinity() : j.at("f").get<double>();
  m.f_p = json_number(j.at("f_p"));
  m.n = j.at("n").get<std::size_t>();
  return m;
}

Json summary_json(const StreamingSummary& s) {
  Json hist = Json::array();
  for (const auto& [edge, count] : s.histogram()) hist.push_back({edge, count});
  return {{"count", s.count()}, {"mean", s.mean()}, {"min", s.min()}, {"max", s.max()},
          {"bin_width", s.bin_width()}, {"histogram", hist}};
}

std::string text_of(const Json& j) { return j.dump(2) + "\n"; }

// ---- commands -------------------------------------------------------------

struct GenerateArgs {
  std::string suite = "basic";
  std::size_t count = 20;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, const Global& g, std::ostream& out) {
  std::vector<synthetic::SyntheticContour> suite;
  if (a.suite == "basic") {
    suite = synthetic::basic_suite();
  } else if (a.suite == "jagged") {
    suite = synthetic::jagged_suite(g.seed, a.count);
  } else {
    suite = synthetic::kimia_like_dataset(g.seed);
  }
  fs::create_directories(a.out);
  io::CsvTable manifest{{"contour_id", "file", "category"}, {}};
  for (const auto& s : suite) {
    const std::string file = s.id + ".txt";
    io::write_points_file(fs::path(a.out) / file, s.points);
    manifest.rows.push_back({s.id, file, s.category});
  }
  emit((fs::path(a.out) / "manifest.csv").string(), csv_text(manifest), out);
  out << suite.size() << " contours written to " << a.out << '\n';
  return kExitOk;
}

struct ManifestArgs {
  std::string input;
  std::string out;
};

int cmd_manifest(const ManifestArgs& a, std::ostream& out) {
  if (!fs::is_directory(a.input)) throw Error(ErrorCode::IoError, "not a directory: " + a.input);
  io::CsvTable t{{"contour_id", "file", "category"}, {}};
  for (const auto& s : sources_from_directory(a.input, false)) {
    t.rows.push_back({s.id, s.path.filename().string(), s.category});
  }
  emit(a.out, csv_text(t), out);
  return kExitOk;
}

struct SmoothArgs {
  InputFlags input;
  SmootherConfig cfg;
  std::string suffix = "_smoothed";
};

int cmd_smooth(const SmoothArgs& a, std::ostream& out) {
  for (const auto& s : resolve_sources(a.input)) {
    std::vector<Point> raw = io::read_points_file(s.path);
    std::vector<Point> points;
    try {
      const Contour c = smooth(Contour::ingest(raw), a.cfg);
      points = a.cfg.passes == 0 ? std::move(raw) : c.vertices();
    } catch (const Error& e) {
      throw Error(e.code(), s.id + ": " + e.message());
    }
    const fs::path target = s.path.parent_path() / (s.path.stem().string() + a.suffix + s.path.extension().string());
    io::write_points_file(target, points);
    out << target.string() << '\n';
  }
  return kExitOk;
}

struct BoundsArgs {
  InputFlags input;
  SmootherConfig cfg;
  double threshold = 0.005;
  std::string criterion = "both";
  std::string param = "both";
  std::string curve_out;
  int curve_kmax = 0;
  bool accelerated = false;
  std::string out;
};

struct ContourBounds {
  std::array<std::optional<BoundValue>, 4> values;
  std::vector<ErrorCurve> curves;
};

int cmd_bounds(const BoundsArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  if (!(a.threshold > 0.0 && a.threshold < 1.0)) throw Error(ErrorCode::BadConfig, "--e must lie in (0, 1)");
  if (a.curve_kmax < 0) throw Error(ErrorCode::BadConfig, "--curve-kmax must be >= 0");
  const auto sources = resolve_sources(a.input);
  const auto contours = load_all(sources, a.cfg);

  std::array<bool, 4> wanted{};
  for (std::size_t i = 0; i < 4; ++i) {
    const bool crit = a.criterion == "both" || a.criterion == to_string(kSlots[i].criterion);
    const bool par = a.param == "both" || a.param == to_string(kSlots[i].parameterization);
    wanted[i] = crit && par;
  }

  std::vector<ContourBounds> results(contours.size());
  parallel_for(contours.size(), g.threads, [&](std::size_t c) {
    const ApproximationErrors errors(contours[c]);
    for (std::size_t i = 0; i < 4; ++i) {
      if (!wanted[i]) continue;
      BoundValue v;
      try {
        v.k = find_bound(errors, kSlots[i].criterion, kSlots[i].parameterization, a.threshold,
                         SearchOptions{a.accelerated});
      } catch (const Error& e) {
        v.error = e.code();
        v.message = e.message();
      }
      results[c].values[i] = v;
      if (a.curve_out.empty()) continue;
      const int K = int(contours[c].size());
      const int kmax = a.curve_kmax == 0 ? K : std::min(a.curve_kmax, K);
      try {
        results[c].curves.push_back(
            error_curve(errors, kSlots[i].criterion, kSlots[i].parameterization, std::max(kmax, 4)));
      } catch (const Error&) {
        // The failure is already reported through the bound itself.
      }
    }
  });

  io::CsvTable table{{"id", "K", "E", "kLA", "kDA", "kLC", "kDC"}, {}};
  int status = kExitOk;
  for (std::size_t c = 0; c < contours.size(); ++c) {
    std::vector<std::string> row{sources[c].id, std::to_string(contours[c].size()), io::format_double(a.threshold)};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& v = results[c].values[i];
      if (!v) {
        row.emplace_back();
      } else if (v->ok()) {
        row.push_back(std::to_string(*v->k));
      } else {
        row.emplace_back(kMissing);
        report(err, *v->error, "id=" + sources[c].id + " bound=" + kSlots[i].name, v->message);
        status = worse(status, severity(*v->error));
      }
    }
    table.rows.push_back(std::move(row));
  }
  emit(a.out, csv_text(table), out);

  if (!a.curve_out.empty()) {
    io::CsvTable curves{{"id", "criterion", "param", "k", "error"}, {}};
    for (std::size_t c = 0; c < contours.size(); ++c) {
      for (const auto& curve : results[c].curves) {
        for (const auto& [k, e] : curve.values) {
          curves.rows.push_back({sources[c].id, std::string(to_string(curve.criterion)),
                                 std::string(to_string(curve.parameterization)), std::to_string(k),
                                 io::format_double(e)});
        }
      }
    }
    emit(a.curve_out, csv_text(curves), out);
  }
  return status;
}

struct FeaturesArgs {
  InputFlags input;
  SmootherConfig cfg;
  std::string out;
};

int cmd_features(const FeaturesArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  const auto sources = resolve_sources(a.input);
  const auto contours = load_all(sources, a.cfg);
  std::vector<std::optional<FeatureRow>> rows(contours.size());
  std::vector<std::optional<Error>> failures(contours.size());
  parallel_for(contours.size(), g.threads, [&](std::size_t c) {
    try {
      rows[c] = extract_features(contours[c], sources[c].id, sources[c].category);
    } catch (const Error& e) {
      failures[c] = e;
    }
  });

  io::CsvTable table{{"id", "abs_kappa", "L_K", "n_kappa", "K"}, {}};
  int status = kExitOk;
  for (std::size_t c = 0; c < contours.size(); ++c) {
    const std::string K = std::to_string(contours[c].size());
    if (rows[c]) {
      table.rows.push_back({sources[c].id, io::format_double(rows[c]->total_abs_curvature),
                            io::format_double(rows[c]->length), std::to_string(rows[c]->sign_changes), K});
    } else {
      table.rows.push_back({sources[c].id, kMissing, kMissing, kMissing, K});
      report(err, failures[c]->code(), "id=" + sources[c].id, failures[c]->message());
      status = worse(status, severity(failures[c]->code()));
    }
  }
  emit(a.out, csv_text(table), out);
  return status;
}

struct FitArgs {
  std::string features;
  std::string bounds;
  double alpha = 0.05;
  std::string response = "all";
  std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.alpha > 0.0 && a.alpha <= 1.0)) throw Error(ErrorCode::BadConfig, "--alpha must lie in (0, 1]");
  const auto features = read_features(a.features);
  const auto bounds = read_bounds(a.bounds);
  Json models = Json::array();
  int status = kExitOk;
  for (Response r : selected_responses(a.response)) {
    const Dataset d = make_dataset(features, bounds, r);
    try {
      models.push_back(model_json(backward_select(d.rows, d.y, a.alpha, d.response)));
    } catch (const Error& e) {
      report(err, e.code(), "response=" + d.response, e.message());
      status = worse(status, severity(e.code()));
    }
  }
  emit(a.out, text_of(models), out);
  return status;
}

std::vector<FittedModel> read_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  if (j.is_object()) j = Json::array({j});
  std::vector<FittedModel> out;
  try {
    for (const auto& m : j) out.push_back(model_from_json(m));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return out;
}

struct PredictArgs {
  std::string models;
  std::string features;
  std::string out;
};

int cmd_predict(const PredictArgs& a, std::ostream& out) {
  const auto models = read_models(a.models);
  const auto features = read_features(a.features);
  io::CsvTable table{{"id", "response", "predicted", "ceiled"}, {}};
  for (const auto& f : features) {
    for (const auto& m : models) {
      Prediction p;
      try {
        p = predict(m, f);
      } catch (const Error& e) {
        throw Error(e.code(), f.contour_id + ": " + e.message());
      }
      table.rows.push_back({f.contour_id, m.response, io::format_double(p.value), std::to_string(p.ceiled)});
    }
  }
  emit(a.out, csv_text(table), out);
  return kExitOk;
}

struct ValidateArgs {
  std::string features;
  std::string bounds;
  std::string manifest;
  std::string mode = "split8020";
  std::size_t replicates = 10000;
  double test_fraction = 0.2;
  double alpha = 0.05;
  bool reselect = false;
  std::string response = "all";
  std::string out;
};

int cmd_validate(const ValidateArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  if (a.replicates < 1) throw Error(ErrorCode::BadConfig, "--replicates must be >= 1");
  if (!(a.test_fraction > 0.0 && a.test_fraction < 1.0)) {
    throw Error(ErrorCode::BadConfig, "--test-fraction must lie in (0, 1)");
  }
  auto features = read_features(a.features);
  const auto bounds = read_bounds(a.bounds);
  if (!a.manifest.empty()) {
    const io::CsvTable t = io::read_csv_file(a.manifest);
    const std::size_t id = t.column("contour_id");
    const std::size_t cat = t.column("category");
    std::map<std::string, std::string> category;
    for (const auto& row : t.rows) category[row[id]] = row[cat];
    for (auto& f : features) {
      auto it = category.find(f.contour_id);
      if (it == category.end()) throw Error(ErrorCode::ParseError, "no category for " + f.contour_id);
      f.category = it->second;
    }
  } else if (a.mode == "loco") {
    throw Error(ErrorCode::BadConfig, "--mode loco needs --manifest");
  }

  CVConfig cfg;
  cfg.replicates = a.replicates;
  cfg.test_fraction = a.test_fraction;
  cfg.seed = g.seed;
  cfg.alpha = a.alpha;
  cfg.reselect = a.reselect;
  cfg.threads = g.threads;

  Json results = Json::array();
  int status = kExitOk;
  for (Response r : selected_responses(a.response)) {
    const Dataset d = make_dataset(features, bounds, r);
    try {
      if (a.mode == "split8020") {
        const CVSummary s = cv_8020(d, cfg);
        results.push_back({{"response", s.response}, {"terms", s.terms}, {"full_data_rmse", s.full_data_rmse},
                           {"test_size", s.test_size}, {"rmse", summary_json(s.summary)}});
        continue;
      }
      Json categories = Json::array();
      std::vector<std::string> terms;
      double full_rmse = 0.0;
      for (const CVSummary& s : cv_leave_category(d, cfg)) {
        terms = s.terms;
        full_rmse = s.full_data_rmse;
        const ResidualSigns& signs = *s.residual_signs;
        categories.push_back({{"category", s.category},
                              {"test_size", s.test_size},
                              {"observed_rmse", *s.observed_rmse},
                              {"upper_tail_prob", *s.upper_tail_prob},
                              {"positive_pct", signs.positive_pct()},
                              {"negative_pct", signs.negative_pct()},
                              {"zero_pct", signs.zero_pct()},
                              {"null_rmse", summary_json(s.summary)}});
      }
      results.push_back({{"response", d.response}, {"terms", terms}, {"full_data_rmse", full_rmse},
                         {"categories", categories}});
    } catch (const Error& e) {
      report(err, e.code(), "response=" + d.response, e.message());
      status = worse(status, severity(e.code()));
    }
  }
  const Json doc{{"mode", a.mode},         {"replicates", a.replicates}, {"seed", g.seed},
                 {"test_fraction", a.test_fraction}, {"alpha", a.alpha}, {"reselect", a.reselect},
                 {"results", results}};
  emit(a.out, text_of(doc), out);
  return status;
}

}  // namespace

std::string infer_category(const std::string& stem) {
  std::string s = stem;
  while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && (s.back() == '-' || s.back() == '_' || s.back() == ' ' || s.back() == '.')) s.pop_back();
  return s.empty() ? stem : s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on contour sampling points, and regression models predicting them", "kgon"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic contour suite and its manifest");
  generate->add_option("--suite", gen.suite, "basic, jagged or kimia-like")
      ->check(CLI::IsMember({"basic", "jagged", "kimia-like"}))
      ->capture_default_str();
  generate->add_option("--count", gen.count, "Number of jagged contours")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  ManifestArgs man;
  auto* manifest = app.add_subcommand("manifest", "List the contour files of a directory with inferred categories");
  manifest->add_option("--input", man.input, "Directory of contour files")->required();
  manifest->add_option("--out", man.out, "Output CSV (default stdout)");

  SmoothArgs sm;
  auto* smooth_cmd = app.add_subcommand("smooth", "Write smoothed copies next to the input files");
  add_input_flags(smooth_cmd, sm.input);
  add_smoothing_flags(smooth_cmd, sm.cfg);
  smooth_cmd->add_option("--suffix", sm.suffix, "Appended to each file stem")->capture_default_str();

  BoundsArgs bd;
  auto* bounds_cmd = app.add_subcommand("bounds", "Smallest k meeting the length and distance thresholds");
  add_input_flags(bounds_cmd, bd.input);
  add_smoothing_flags(bounds_cmd, bd.cfg);
  bounds_cmd->add_option("--e", bd.threshold, "Threshold E")->capture_default_str();
  bounds_cmd->add_option("--criterion", bd.criterion, "length, distance or both")
      ->check(CLI::IsMember({"length", "distance", "both"}))
      ->capture_default_str();
  bounds_cmd->add_option("--param", bd.param, "arclength, curvature or both")
      ->check(CLI::IsMember({"arclength", "curvature", "both"}))
      ->capture_default_str();
  bounds_cmd->add_option("--curve-out", bd.curve_out, "Also write error curves to this CSV");
  bounds_cmd->add_option("--curve-kmax", bd.curve_kmax, "Last k of the error curves (0 = K)")->capture_default_str();
  bounds_cmd->add_flag("--accelerated", bd.accelerated, "Bisection search with fallback to the scan");
  bounds_cmd->add_option("--out", bd.out, "Output CSV (default stdout)");

  FeaturesArgs ft;
  auto* features_cmd = app.add_subcommand("features", "Total absolute curvature, length and sign changes");
  add_input_flags(features_cmd, ft.input);
  add_smoothing_flags(features_cmd, ft.cfg);
  features_cmd->add_option("--out", ft.out, "Output CSV (default stdout)");

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Backward-selected OLS models for the bounds");
  fit_cmd->add_option("--features", fa.features, "Features CSV")->required();
  fit_cmd->add_option("--bounds", fa.bounds, "Bounds CSV")->required();
  fit_cmd->add_option("--alpha", fa.alpha, "Selection level")->capture_default_str();
  fit_cmd->add_option("--response", fa.response, "kLA, kDA, kLC, kDC or all")->capture_default_str();
  fit_cmd->add_option("--out", fa.out, "Output JSON (default stdout)");

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "Predicted bounds from fitted models");
  predict_cmd->add_option("--models", pa.models, "models.json from fit")->required();
  predict_cmd->add_option("--features", pa.features, "Features CSV")->required();
  predict_cmd->add_option("--out", pa.out, "Output CSV (default stdout)");

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Cross-validate the models");
  validate_cmd->add_option("--features", va.features, "Features CSV")->required();
  validate_cmd->add_option("--bounds", va.bounds, "Bounds CSV")->required();
  validate_cmd->add_option("--manifest", va.manifest, "CSV with contour_id,category");
  validate_cmd->add_option("--mode", va.mode, "split8020 or loco")
      ->check(CLI::IsMember({"split8020", "loco"}))
      ->capture_default_str();
  validate_cmd->add_option("--replicates", va.replicates, "Replicates")->capture_default_str();
  validate_cmd->add_option("--test-fraction", va.test_fraction, "Test share of split8020")->capture_default_str();
  validate_cmd->add_option("--alpha", va.alpha, "Selection level")->capture_default_str();
  validate_cmd->add_flag("--reselect", va.reselect, "Re-run model selection in every replicate");
  validate_cmd->add_option("--response", va.response, "kLA, kDA, kLC, kDC or all")->capture_default_str();
  validate_cmd->add_option("--out", va.out, "Output JSON (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error code=Usage: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, g, out);
    if (manifest->parsed()) return cmd_manifest(man, out);
    if (smooth_cmd->parsed()) return cmd_smooth(sm, out);
    if (bounds_cmd->parsed()) return cmd_bounds(bd, g, out, err);
    if (features_cmd->parsed()) return cmd_features(ft, g, out, err);
    if (fit_cmd->parsed()) return cmd_fit(fa, out, err);
    if (predict_cmd->parsed()) return cmd_predict(pa, out);
    if (validate_cmd->parsed()) return cmd_validate(va, g, out, err);
  } catch (const Error& e) {
    report(err, e.code(), {}, e.message());
    return severity(e.code());
  } catch (const fs::filesystem_error& e) {
    report(err, ErrorCode::IoError, {}, e.what());
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace kgon::cli
