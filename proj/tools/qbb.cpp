#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qbb/cache.hpp"
#include "qbb/config.hpp"
#include "qbb/export.hpp"

using namespace qbb;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string canned;
  std::string cache_dir;
  bool no_cache = false;
  int jobs = 1;

  std::string weight;
  int max_m = 4, max_n = 2;
  std::string index;
  int max_l = 4;
  int depth = 2;
  std::string lambda;
  std::string format = "json";
  int height = 3;
  std::string suite = "all";
  std::vector<std::string> lambdas;
};

ProjectConfig load_config(const Options& o) {
  if (!o.config_path.empty() && !o.canned.empty()) throw UsageError("--config and --datum are mutually exclusive");
  if (!o.canned.empty()) return config_from_canned(o.canned);
  if (o.config_path.empty()) throw UsageError("a datum is required: pass --config FILE or --datum NAME");
  std::ifstream in(o.config_path);
  if (!in) throw UsageError("cannot read config file '" + o.config_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_at_most(int value, int limit, const std::string& what) {
  if (value < 0) throw UsageError(what + " must be non-negative");
  if (value > limit) throw UsageError(what + " " + std::to_string(value) + " exceeds the configured limit " + std::to_string(limit));
}

DominantWeight lambda_arg(const Datum& d, const std::string& s) {
  DominantWeight l = parse_lambda(d, s);
  for (int v : l)
    if (v < 0) throw UsageError("lambda must be dominant");
  return l;
}

// Each command produces its full stdout text, diagnostics and an exit code, so results can be cached.
struct Result {
  CachedRun run;
  std::string diagnostics;
};

Result cmd_validate(const ProjectConfig& c) {
  Datum d = c.datum();
  NuAssignment nu = c.nu();
  Json j;
  j["valid"] = true;
  j["datum"] = datum_json(d);
  Json kinds = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) kinds.push_back(d.is_real(i) ? "real" : d.is_isotropic(i) ? "isotropic" : "imaginary");
  j["kinds"] = kinds;
  j["nu"] = nu.canonical();
  j["warnings"] = nu.warnings();
  return {{dump(j), kPass}, ""};
}

Result cmd_gram(const ProjectConfig& c, const Options& o) {
  Datum d = c.datum();
  RootVector a = parse_weight(d, o.weight);
  require_at_most(height(a), c.max_height, "weight height");
  LusztigForm form(d, c.nu());
  return {{dump(gram_json(form, a)), kPass}, ""};
}

Result cmd_serre(const ProjectConfig& c, const Options& o) {
  if (o.max_m < 1 || o.max_n < 0) throw UsageError("need --max-m >= 1 and --max-n >= 0");
  LusztigForm form(c.datum(), c.nu());
  SuiteResult r = suite_serre(form, o.max_m, o.max_n);
  Json j = suite_json(r);
  return {{dump(j), r.pass ? kPass : kFail}, r.pass ? "" : "FAIL serre: " + r.counterexample + "\n"};
}

Result cmd_primitives(const ProjectConfig& c, const Options& o) {
  Datum d = c.datum();
  int i;
  try {
    i = static_cast<int>(d.index_of(o.index));
  } catch (const UnknownIndex&) {
    throw UsageError("unknown index '" + o.index + "'");
  }
  require_at_most(o.max_l, c.max_height, "--max-l");
  UMinus u(LusztigForm(d, c.nu()));
  return {{dump(primitives_json(u, i, o.max_l)), kPass}, ""};
}

Result cmd_crystal(const ProjectConfig& c, const Options& o) {
  Datum d = c.datum();
  require_at_most(o.depth, c.max_depth, "--depth");
  if (o.format != "dot" && o.format != "json") throw UsageError("--format must be dot or json");
  UMinus u(LusztigForm(d, c.nu()));
  auto emit = [&](const Crystal& cr) {
    CrystalGraph g = crystal_graph(cr, o.depth);
    return o.format == "dot" ? crystal_dot(cr, g) : dump(crystal_json(cr, g));
  };
  if (o.lambda.empty()) return {{emit(Crystal(Ambient(u))), kPass}, ""};
  VModule v(u, lambda_arg(d, o.lambda));
  return {{emit(Crystal(Ambient(v))), kPass}, ""};
}

Result cmd_global(const ProjectConfig& c, const Options& o) {
  Datum d = c.datum();
  require_at_most(o.height, c.max_height, "--height");
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be json or csv for global");
  UMinus u(LusztigForm(d, c.nu()));
  auto emit = [&](const GlobalBasis& gb) -> Result {
    try {
      auto rows = global_rows(gb, o.height);
      bool ok = std::all_of(rows.begin(), rows.end(), [](const GlobalRow& r) { return r.bar_invariant && r.in_aform && r.residue_match && r.cr_ok; });
      std::string out = o.format == "csv" ? global_csv(rows) : dump(global_json(gb, rows));
      return {{out, ok ? kPass : kFail}, ok ? "" : "FAIL global: a certificate does not hold\n"};
    } catch (const NoSolution& e) {
      return {{"", kFail}, std::string("FAIL global: ") + e.what() + "\n"};
    }
  };
  Crystal ci{Ambient(u)};
  if (o.lambda.empty()) {
    GlobalBasis gb(ci);
    return emit(gb);
  }
  VModule v(u, lambda_arg(d, o.lambda));
  Crystal cl{Ambient(v)};
  GlobalBasis gb(cl);
  return emit(gb);
}

Result cmd_verify(const ProjectConfig& c, const Options& o) {
  Datum d = c.datum();
  require_at_most(o.height, c.max_height, "--height");
  std::vector<const SuiteSpec*> sel;
  if (o.suite == "all") {
    for (auto& s : suite_registry()) sel.push_back(&s);
  } else {
    const SuiteSpec* s = find_suite(o.suite);
    if (!s) {
      std::string names;
      for (auto& x : suite_registry()) names += " " + x.name;
      throw UsageError("unknown suite '" + o.suite + "'; known:" + names);
    }
    sel.push_back(s);
  }
  std::vector<DominantWeight> lambdas;
  for (auto& s : o.lambdas) lambdas.push_back(lambda_arg(d, s));
  if (lambdas.empty()) lambdas = c.lambda_list();
  Workbench w(LusztigForm(d, c.nu()), lambdas);
  auto results = run_suites(w, sel, o.height, o.jobs);
  std::string diag;
  bool ok = true;
  for (auto& r : results)
    if (!r.pass) {
      ok = false;
      diag += "FAIL " + r.name + ": " + r.counterexample + "\n";
    }
  return {{dump(verify_json(d, o.height, lambdas, results)), ok ? kPass : kFail}, diag};
}

// Everything that determines the output of a command, in a canonical order.
std::string cache_key(const ProjectConfig& c, const std::string& cmd, const Options& o) {
  auto lam = o.lambda.empty() ? std::string() : lambda_str(c.datum(), parse_lambda(c.datum(), o.lambda));
  Json k;
  k["version"] = kCacheVersion;
  k["datum"] = datum_json(c.datum());
  k["nu"] = c.nu().canonical();
  k["command"] = cmd;
  if (cmd == "gram") k["weight"] = weight_str(c.datum(), parse_weight(c.datum(), o.weight));
  if (cmd == "serre-check") k["args"] = {o.max_m, o.max_n};
  if (cmd == "primitives") k["args"] = {o.index, o.max_l};
  if (cmd == "crystal") k["args"] = {o.depth, lam, o.format};
  if (cmd == "global") k["args"] = {o.height, lam, o.format};
  if (cmd == "verify") {
    std::vector<std::string> ls;
    for (auto& l : o.lambdas.empty() ? c.lambda_list() : std::vector<DominantWeight>{}) ls.push_back(lambda_str(c.datum(), l));
    for (auto& s : o.lambdas) ls.push_back(lambda_str(c.datum(), parse_lambda(c.datum(), s)));
    k["args"] = {o.height, o.suite, ls};
  }
  return k.dump();
}

int run(const std::string& cmd, const Options& o) {
  ProjectConfig c = load_config(o);
  std::string dir = o.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("QBB_CACHE_DIR")) dir = env;
  if (dir.empty()) dir = c.cache_dir;
  std::optional<ResultCache> cache;
  if (!o.no_cache && !dir.empty() && cmd != "validate") cache.emplace(dir);
  std::string key = cache ? cache_key(c, cmd, o) : std::string();
  if (cache)
    if (auto hit = cache->load(key)) {
      std::cout << hit->output;
      if (!hit->diagnostics.empty()) std::cerr << hit->diagnostics;
      return hit->exit_code;
    }
  Result r;
  if (cmd == "validate") r = cmd_validate(c);
  else if (cmd == "gram") r = cmd_gram(c, o);
  else if (cmd == "serre-check") r = cmd_serre(c, o);
  else if (cmd == "primitives") r = cmd_primitives(c, o);
  else if (cmd == "crystal") r = cmd_crystal(c, o);
  else if (cmd == "global") r = cmd_global(c, o);
  else r = cmd_verify(c, o);
  r.run.diagnostics = r.diagnostics;
  if (cache) cache->store(key, r.run);
  std::cout << r.run.output;
  std::cerr << r.diagnostics;
  return r.run.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbb: quantum Borcherds-Bozec algebras at bounded height"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "JSON project configuration");
  app.add_option("--datum", o.canned, "canned datum: D-iso, D-im, D-mix or A1");
  app.add_option("--cache-dir", o.cache_dir, "result cache directory (overrides QBB_CACHE_DIR and the config)");
  app.add_flag("--no-cache", o.no_cache, "ignore the result cache");
  app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));

  app.add_subcommand("validate", "check the datum and the nu assignment");
  auto* gram = app.add_subcommand("gram", "Gram matrix of Lusztig's form on the words of one weight");
  gram->add_option("--weight", o.weight, "weight such as 2*i,1*j")->required();
  auto* serre = app.add_subcommand("serre-check", "higher order Serre elements lie in the radical");
  serre->add_option("--max-m", o.max_m)->required();
  serre->add_option("--max-n", o.max_n)->required();
  auto* prim = app.add_subcommand("primitives", "primitive generators b_il and tau_il");
  prim->add_option("--index", o.index)->required();
  prim->add_option("--max-l", o.max_l)->required();
  auto* crystal = app.add_subcommand("crystal", "crystal graph of B(infinity) or B(lambda)");
  crystal->add_option("--depth", o.depth)->required();
  crystal->add_option("--lambda", o.lambda, "dominant weight such as i=1,j=0");
  crystal->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}));
  auto* global = app.add_subcommand("global", "global basis with certificates");
  global->add_option("--height", o.height)->required();
  global->add_option("--lambda", o.lambda, "dominant weight such as i=1,j=0");
  global->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", o.suite, "suite name or all");
  verify->add_option("--height", o.height)->required();
  verify->add_option("--lambda", o.lambdas, "dominant weights (repeatable); default all 0, all 1, all 5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const InvalidDatum& e) {
    std::cerr << "invalid datum: " << e.what() << "\n";
  } catch (const HeightBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
