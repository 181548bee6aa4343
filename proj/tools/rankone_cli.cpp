#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rankone/adversary.hpp"
#include "rankone/detectors.hpp"
#include "rankone/errors.hpp"
#include "rankone/io.hpp"
#include "rankone/recover.hpp"
#include "rankone/rng.hpp"

namespace {

using nlohmann::json;
using namespace rankone;

constexpr int kExitUsage = 2;
constexpr int kExitAssertion = 3;
constexpr int kExitResource = 4;

std::string cell_to_csv(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  void write_csv(std::ostream& os) const {
    for (std::size_t j = 0; j < header.size(); ++j)
      os << (j ? "," : "") << header[j];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? "," : "") << cell_to_csv(row[j]);
      os << "\n";
    }
  }

  void write_json(std::ostream& os) const {
    json out = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t j = 0; j < row.size(); ++j) obj[header[j]] = row[j];
      out.push_back(obj);
    }
    os << out.dump(2) << "\n";
  }
};

struct Options {
  int r = 1;
  double M = 1.0;
  std::vector<int> d{1};
  std::vector<double> eps;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string mode = "verified";
  double c1 = 1.0;
  std::string regime_override;
  std::string out;
  std::string format = "csv";
  int threads = 1;
  long budget = -1;
  std::string function_source = "random";
  std::string detector_file;
  std::string pointset_file;
};

PointSetMode parse_mode(const std::string& s) {
  if (s == "verified") return PointSetMode::Verified;
  if (s == "formula") return PointSetMode::Formula;
  throw UsageError("mode must be verified or formula");
}

std::optional<Regime> parse_regime(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "Large" || s == "large") return Regime::Large;
  if (s == "Moderate" || s == "moderate") return Regime::Moderate;
  if (s == "Small" || s == "small") return Regime::Small;
  throw UsageError("regime-override must be Large, Moderate, or Small");
}

void emit(const Table& t, const Options& opt) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw ResourceError("cannot open for writing: " + opt.out);
    os = &file;
  }
  if (opt.format == "json")
    t.write_json(*os);
  else
    t.write_csv(*os);
}

double require_single_eps(const Options& opt) {
  if (opt.eps.empty()) throw UsageError("missing --eps");
  return opt.eps.front();
}


// Flat key=value config; command-line flags take precedence.
void apply_config(const std::string& path, CLI::App& sub, Options& opt) {
  std::ifstream is(path);
  if (!is) throw ResourceError("cannot open config file: " + path);
  std::string line;
  long lineno = 0;
  auto given = [&](const std::string& flag) {
    const CLI::Option* o = sub.get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config parse error at line " + std::to_string(lineno) +
                       ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    auto values = [&] {
      std::vector<std::string> parts;
      std::istringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) parts.push_back(tok);
      return parts;
    };
    try {
      if (key == "r") { if (!given("--r")) opt.r = std::stoi(val); }
      else if (key == "M") { if (!given("--M")) opt.M = std::stod(val); }
      else if (key == "d") {
        if (!given("--d")) {
          opt.d.clear();
          for (const auto& v : values()) opt.d.push_back(std::stoi(v));
        }
      } else if (key == "eps") {
        if (!given("--eps")) {
          opt.eps.clear();
          for (const auto& v : values()) opt.eps.push_back(std::stod(v));
        }
      }
      else if (key == "trials") { if (!given("--trials")) opt.trials = std::stoi(val); }
      else if (key == "seed") { if (!given("--seed")) opt.seed = std::stoull(val); }
      else if (key == "mode") { if (!given("--mode")) opt.mode = val; }
      else if (key == "c1") { if (!given("--c1")) opt.c1 = std::stod(val); }
      else if (key == "regime-override") { if (!given("--regime-override")) opt.regime_override = val; }
      else if (key == "out") { if (!given("--out")) opt.out = val; }
      else if (key == "format") { if (!given("--format")) opt.format = val; }
      else if (key == "threads") { if (!given("--threads")) opt.threads = std::stoi(val); }
      else if (key == "budget") { if (!given("--budget")) opt.budget = std::stol(val); }
      else if (key == "function") { if (!given("--function")) opt.function_source = val; }
      else if (key == "detector-file") { if (!given("--detector-file")) opt.detector_file = val; }
      else throw UsageError("config: unknown key \"" + key + "\"");
    } catch (const std::invalid_argument&) {
      throw UsageError("config parse error at line " + std::to_string(lineno) +
                       ": bad value for " + key);
    }
  }
}

int cmd_detect(const Options& opt) {
  const double eps = require_single_eps(opt);
  SmoothnessClass cls(opt.r, opt.M, opt.d.front());
  const auto reg_ov = parse_regime(opt.regime_override);
  const PointSetMode mode = parse_mode(opt.mode);
  PointSet P = build_detector(cls, eps, mode, reg_ov);
  const DetectorParams params = detector_params(cls, eps);
  const std::string pointset_path =
      opt.out.empty() ? "detector.txt" : opt.out + ".points";
  write_pointset_file(pointset_path, P, {detector_header(cls, eps, params)});

  Table t;
  t.header = {"regime", "r", "M", "d", "eps", "mode", "size", "file"};
  t.rows.push_back({to_string(params.regime), opt.r, opt.M, cls.d, eps,
                    opt.mode, P.size(), pointset_path});
  emit(t, opt);
  return 0;
}

int cmd_approximate(const Options& opt) {
  const double eps = require_single_eps(opt);
  SmoothnessClass cls(opt.r, opt.M, opt.d.front());
  if (opt.trials < 1) throw UsageError("trials must be >= 1");
  RecoverConfig cfg;
  cfg.mode = parse_mode(opt.mode);
  cfg.c1 = opt.c1;
  cfg.regime_override = parse_regime(opt.regime_override);
  const PointSet detector =
      opt.detector_file.empty()
          ? build_detector(cls, eps, cfg.mode, cfg.regime_override)
          : read_pointset_file(opt.detector_file);

  std::vector<std::vector<json>> rows(std::size_t(opt.trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= opt.trials) return;
      const std::uint64_t trial_seed = derive_seed(opt.seed, std::uint64_t(t));
      DFun oracle;
      std::optional<RankOneFunction> f;
      if (opt.function_source == "zero") {
        oracle = [](const std::vector<double>&) { return 0.0; };
      } else {
        f = random_rank_one(cls, trial_seed);
        oracle = f->as_oracle();
      }
      auto [a, rep] = approximate(oracle, detector, cls, eps, cfg);
      const double err = sup_error_estimate(oracle, a.as_oracle(), cls.d, 4096);
      const bool within =
          cfg.mode != PointSetMode::Formula ||
          double(rep.total) <= rep.predicted_bound;
      const bool pass = within && err <= eps;
      rows[std::size_t(t)] = {trial_seed,
                              to_string(rep.regime),
                              cls.d,
                              eps,
                              rep.detector_size,
                              rep.m,
                              rep.detector_evals,
                              rep.interpolation_evals,
                              rep.total,
                              rep.predicted_bound,
                              err,
                              pass};
    }
  };
  const int nthreads = std::max(1, opt.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Table t;
  t.header = {"seed",          "regime", "d",
              "eps",           "detector_size", "m",
              "detector_evals", "interp_evals", "total",
              "bound",         "measured_error", "pass"};
  t.rows = std::move(rows);
  emit(t, opt);
  for (const auto& row : t.rows)
    if (!row.back().get<bool>()) return kExitAssertion;
  return 0;
}

int cmd_regimes(const Options& opt) {
  if (opt.eps.empty()) throw UsageError("missing --eps");
  SmoothnessClass probe(opt.r, opt.M, 1);
  const auto reg_ov = parse_regime(opt.regime_override);
  const PointSetMode mode = parse_mode(opt.mode);

  Table t;
  t.header = {"r",      "M",          "d",
              "eps",    "regime",     "tractability",
              "bound",  "detector_size", "m",
              "cost",   "baseline",   "baseline_saturated"};
  for (int d : opt.d)
    for (double eps : opt.eps) {
      SmoothnessClass cls(opt.r, opt.M, d);
      const Regime reg = reg_ov.value_or(regime(cls));
      double size;
      if (mode == PointSetMode::Verified)
        size = double(build_detector(cls, eps, mode, reg_ov).size());
      else
        size = detector_size_formula(cls, eps, reg_ov);
      const long m = choose_m(cls, eps, opt.c1);
      const double bound = cost_bound(cls, eps, opt.c1, reg_ov);
      const BaselineSize base = halton_baseline_size(cls, eps);
      t.rows.push_back({opt.r, opt.M, d, eps, to_string(reg),
                        to_string(classify_tractability(opt.r, opt.M)), bound,
                        size, m, size + double(m), base.value,
                        base.saturated});
    }
  emit(t, opt);
  return 0;
}

int cmd_lowerbound(const Options& opt) {
  Table t;
  t.header = {"regime",        "d",
              "budget",        "family_size",
              "evaded_member", "witnessed_error"};
  const Regime reg =
      parse_regime(opt.regime_override).value_or(regime(opt.r, opt.M));
  for (int d : opt.d) {
    if (reg == Regime::Large && d > 12)
      throw UsageError("lowerbound: Large-regime demo requires d <= 12");
    if (reg == Regime::Small) {
      const long limit =
          opt.r >= 2 ? d : long(std::floor(std::log2(double(std::max(d, 1)))));
      const long budget = opt.budget >= 0 ? opt.budget : limit;
      if (budget > limit)
        throw UsageError("lowerbound: budget exceeds the Small-regime limit");
      auto gen = make_stream(opt.seed, std::uint64_t(d));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      PointSet pts;
      pts.d = d;
      for (long i = 0; i < budget; ++i) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto& c : x) c = unif(gen);
        pts.points.push_back(std::move(x));
      }
      const RankOneFunction f = fooling_function_small(opt.r, opt.M, d, pts);
      t.rows.push_back({to_string(reg), d, budget, 1, 0, f.sup_norm()});
      continue;
    }
    const FoolingFamily fam =
        reg == Regime::Large
            ? fooling_family_large(opt.r, opt.M, d)
            : fooling_family_moderate(opt.r, opt.M, d, require_single_eps(opt));
    const long budget =
        opt.budget >= 0 ? opt.budget : long(fam.size()) - 1;
    auto gen = make_stream(opt.seed, std::uint64_t(d));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    PointSet pts;
    pts.d = d;
    for (long i = 0; i < budget; ++i) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (auto& c : x) c = unif(gen);
      pts.points.push_back(std::move(x));
    }
    const auto evaded = evade(pts, fam);
    t.rows.push_back({to_string(reg), d, budget, fam.size(),
                      evaded ? json(*evaded) : json(-1),
                      evaded ? fam.guaranteed_norm() : 0.0});
  }
  emit(t, opt);
  return 0;
}

int cmd_dispersion(const Options& opt) {
  const PointSet P = read_pointset_file(opt.pointset_file);
  if (P.d > 4)
    throw ResourceError("dispersion: d > 4 exceeds the exact-oracle limit");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", dispersion_exact(P));
  std::cout << buf << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-one tensor recovery experiments"};
  app.require_subcommand(1);

  Options opt;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--r", opt.r, "smoothness order");
    sub->add_option("--M", opt.M, "derivative bound");
    sub->add_option("--d", opt.d, "dimension (repeatable for grids)");
    sub->add_option("--eps", opt.eps, "target accuracy (repeatable)");
    sub->add_option("--trials", opt.trials, "number of random trials");
    sub->add_option("--seed", opt.seed, "base seed");
    sub->add_option("--mode", opt.mode, "verified | formula");
    sub->add_option("--c1", opt.c1, "interpolation constant C1(r)");
    sub->add_option("--regime-override", opt.regime_override,
                    "Large | Moderate | Small");
    sub->add_option("--out", opt.out, "output path (default stdout)");
    sub->add_option("--format", opt.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", opt.threads, "worker threads");
  };

  auto* detect = app.add_subcommand("detect", "build and save a detector");
  add_common(detect);
  auto* approx = app.add_subcommand("approximate", "run recovery trials");
  add_common(approx);
  approx->add_option("--function", opt.function_source,
                     "function source: random | zero")
      ->check(CLI::IsMember({"random", "zero"}));
  approx->add_option("--detector-file", opt.detector_file,
                     "replay a saved detector instead of building one");
  auto* regimes = app.add_subcommand("regimes", "cost tables over (d, eps)");
  add_common(regimes);
  auto* lower = app.add_subcommand("lowerbound", "evasion demonstrations");
  add_common(lower);
  lower->add_option("--budget", opt.budget,
                    "oracle budget (default: family size - 1)");
  auto* disp = app.add_subcommand("dispersion", "exact dispersion of a file");
  disp->add_option("file", opt.pointset_file, "point-set file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().empty() ? nullptr
                                                     : app.get_subcommands()[0];
    if (active && !config_path.empty()) apply_config(config_path, *active, opt);
    if (detect->parsed()) return cmd_detect(opt);
    if (approx->parsed()) return cmd_approximate(opt);
    if (regimes->parsed()) return cmd_regimes(opt);
    if (lower->parsed()) return cmd_lowerbound(opt);
    if (disp->parsed()) return cmd_dispersion(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return 0;
}
