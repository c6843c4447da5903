#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "stochord/montecarlo.hpp"
#include "stochord/theorem_bench.hpp"

namespace stochord::cli {

namespace {

namespace fs = std::filesystem;

// Shortest decimal that round-trips.
std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Temp file next to the target, then rename over it.
void write_atomically(const fs::path& target, const std::string& content) {
  fs::create_directories(target.parent_path().empty() ? fs::path(".") : target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError(tmp.string() + ": cannot write");
    f << content;
    if (!f.flush()) throw ConfigError(tmp.string() + ": write failed");
  }
  fs::rename(tmp, target);
}

std::string curve_csv(const Curve& c) {
  std::string s = "x,lhs,rhs,diff\n";
  for (std::size_t k = 0; k < c.x.size(); ++k) {
    s += num(c.x[k]) + ',' + num(c.lhs[k]) + ',' + num(c.rhs[k]) + ',' + num(c.diff[k]) + '\n';
  }
  return s;
}

std::string describe(const SystemSpec& s) {
  std::string d = to_string(s.structure) + " of " + std::to_string(s.size()) + ':';
  for (const auto& c : s.components) d += ' ' + c.describe();
  return d;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || p != end) {
    throw ConfigError(source + ": seed must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

struct SeedOption {
  std::optional<std::uint64_t> flag;

  std::uint64_t resolve() const {
    if (flag) return *flag;
    if (const char* env = std::getenv("STOCHORD_SEED")) return parse_seed(env, "STOCHORD_SEED");
    return 0;
  }
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto* end = item.data() + item.size();
    auto [p, ec] = std::from_chars(item.data(), end, v);
    if (item.empty() || ec != std::errc() || p != end) {
      throw ConfigError(flag + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag + ": empty list");
  return out;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string config;
  std::string order;
  std::optional<std::size_t> grid;
  std::optional<double> x_max;
  std::string out_dir = ".";
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  CompareConfig cfg = load_compare(a.config);
  if (!a.order.empty()) cfg.order = parse_order(a.order);
  if (!cfg.order) throw ConfigError(a.config + ": no order given (config \"order\" or --order)");

  const std::size_t count = a.grid.value_or(cfg.grid.count.value_or(2048));
  const auto x_max = a.x_max ? a.x_max : cfg.grid.x_max;
  const Grid grid = grid_for(cfg.lhs, cfg.rhs, count, cfg.grid.policy.value_or(GridPolicy::linear), x_max);
  const Certification c = certify(*cfg.order, cfg.lhs, cfg.rhs, grid);
  const OrderVerdict& v = c.verdict;

  std::ostringstream block;
  block << "order: " << to_string(v.order) << '\n'
        << "lhs: " << describe(cfg.lhs) << '\n'
        << "rhs: " << describe(cfg.rhs) << '\n'
        << "holds: " << (v.holds ? "true" : "false") << '\n'
        << "margin: " << num(v.margin) << '\n'
        << "worst_x: " << num(v.worst_x) << '\n'
        << "tolerance: " << num(v.tolerance) << '\n';
  if (v.witness_x) block << "witness_x: " << num(*v.witness_x) << '\n';
  block << "grid: " << v.grid_count << ' ' << to_string(v.policy) << " points on (0, " << num(v.x_max) << "]\n"
        << "points_used: " << v.points_used << '\n'
        << "truncated: " << (v.truncated ? "true" : "false") << '\n';

  const fs::path dir(a.out_dir);
  write_atomically(dir / "curve.csv", curve_csv(c.curve));
  write_atomically(dir / "verdict.txt", block.str());
  out << block.str();
  return v.holds ? kOk : kOrderFails;
}

struct VerifyArgs {
  std::string id;
  std::size_t count = 200;
  SeedOption seed;
  std::size_t grid = 2048;
  std::size_t n = 0;
  std::optional<double> beta;
  std::string drop;
  std::string out_dir;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto id = parse_theorem_id(a.id);
  if (!id) throw ConfigError("unknown theorem id '" + a.id + "' (expected T3.1..T3.5 or T4.1..T4.5)");
  TheoremScenario s;
  s.id = *id;
  s.count = a.count;
  s.seed = a.seed.resolve();
  s.grid_count = a.grid;
  s.n = a.n;
  s.fixed_beta = a.beta;
  s.want_curve = !a.out_dir.empty();

  BenchReport r;
  if (a.drop.empty()) {
    r = run_scenario(s);
  } else {
    const auto h = parse_hypothesis(a.drop);
    if (!h) throw ConfigError("--drop: expected one of beta, pn, prefix");
    r = counterexample_probe(s, *h);
  }
  out << format_report(r);
  if (r.curve) write_atomically(fs::path(a.out_dir) / "curve.csv", curve_csv(*r.curve));
  if (!a.drop.empty()) return kOk;  // a probe only reports
  return r.all_passed() ? kOk : kOrderFails;
}

struct MajorizeArgs {
  std::string a, b, matrix_a, matrix_b;
};

const char* yes(bool v) { return v ? "true" : "false"; }

int cmd_majorize(const MajorizeArgs& m, std::ostream& out) {
  const bool vectors = !m.a.empty() || !m.b.empty();
  const bool matrices = !m.matrix_a.empty() || !m.matrix_b.empty();
  if (vectors == matrices) throw ConfigError("give either --a and --b or --matrix-a and --matrix-b");

  if (vectors) {
    if (m.a.empty() || m.b.empty()) throw ConfigError("--a and --b are both required");
    const auto a = parse_list(m.a, "--a");
    const auto b = parse_list(m.b, "--b");
    if (a.size() != b.size()) throw ConfigError("--a and --b differ in length");
    const auto r = implication_suite(a, b);
    out << "plain: " << yes(r.plain) << '\n'
        << "weak_sub: " << yes(r.weak_sub) << '\n'
        << "weak_super: " << yes(r.weak_super) << '\n';
    return kOk;
  }

  if (m.matrix_a.empty() || m.matrix_b.empty()) throw ConfigError("--matrix-a and --matrix-b are both required");
  const ParamMatrix a = load_matrix(m.matrix_a);
  const ParamMatrix b = load_matrix(m.matrix_b);
  if (a.cols() != b.cols()) throw ConfigError("matrices differ in column count");
  for (std::size_t r = 0; r < 2; ++r) {
    const auto ra = a.row(r);
    const auto rb = b.row(r);
    out << "row" << r << "_b_majorized_by_a: " << yes(majorize_check(rb, ra, MajorizationKind::plain)) << '\n';
  }
  if (a.cols() == 2) {
    const auto lambda = chain_majorize_solve_2x2(a, b);
    std::ostringstream l;
    l.precision(12);
    if (lambda) l << *lambda;
    out << "chain_2x2: " << yes(lambda.has_value());
    if (lambda) out << " lambda=" << l.str();
    out << '\n';
  } else {
    out << "chain_2x2: n/a (" << a.cols() << " columns)\n";
  }
  out << "pn_a: " << yes(pn_membership(a)) << '\n' << "pn_b: " << yes(pn_membership(b)) << '\n';
  return kOk;
}

struct SampleArgs {
  std::string config;
  std::string family;
  std::optional<double> alpha, beta, gamma, lambda;
  std::size_t count = 1000;
  SeedOption seed;
  std::string out_dir = ".";
};

LifetimeModel model_from_flags(const SampleArgs& a) {
  auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("--") + flag + " is required for this family");
    return *v;
  };
  if (a.family == "wg" || a.family == "weibull-g") {
    if (a.lambda) throw ConfigError("--lambda does not apply to weibull-g");
    return WeibullGParams{need(a.alpha, "alpha"), need(a.beta, "beta"), need(a.gamma, "gamma"),
                          Baseline::exponential()};
  }
  if (a.family == "gm" || a.family == "gompertz-makeham") {
    if (a.gamma) throw ConfigError("--gamma does not apply to gompertz-makeham");
    return GompertzMakehamParams{need(a.alpha, "alpha"), need(a.beta, "beta"), need(a.lambda, "lambda")};
  }
  throw ConfigError("--family must be wg, weibull-g, gm or gompertz-makeham");
}

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const std::uint64_t seed = a.seed.resolve();
  std::vector<double> values;
  double ks = 0.0;
  std::string what;
  if (!a.config.empty()) {
    if (!a.family.empty()) throw ConfigError("--config and --family are exclusive");
    const SystemSpec spec = load_system(a.config);
    what = describe(spec);
    if (spec.size() == 1) {
      auto batch = sample(spec.components.front(), a.count, seed);
      ks = ks_distance(batch, spec.components.front());
      values = std::move(batch.values);
    } else {
      auto check = empirical_system_check(spec, a.count, seed);
      ks = check.ks;
      values = std::move(check.values);
    }
  } else {
    const LifetimeModel model = [&] {
      try {
        return model_from_flags(a);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    }();
    what = model.describe();
    auto batch = sample(model, a.count, seed);
    ks = ks_distance(batch, model);
    values = std::move(batch.values);
  }

  std::string csv = "index,value\n";
  for (std::size_t k = 0; k < values.size(); ++k) csv += std::to_string(k) + ',' + num(values[k]) + '\n';
  write_atomically(fs::path(a.out_dir) / "samples.csv", csv);

  out << "model: " << what << '\n'
      << "count: " << values.size() << '\n'
      << "seed: " << seed << '\n'
      << "min: " << num(values.front()) << '\n'
      << "max: " << num(values.back()) << '\n'
      << "ks: " << num(ks) << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic ordering of series and parallel systems"};
  app.require_subcommand(1);

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "certify lhs <=order rhs for two configured systems");
  c->add_option("--config", compare.config, "JSON with lhs and rhs systems")->required();
  c->add_option("--order", compare.order, "st, hr, rh or lr")->check(CLI::IsMember({"st", "hr", "rh", "lr"}));
  c->add_option("--grid", compare.grid, "grid points")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 24));
  c->add_option("--xmax", compare.x_max, "right end of the grid")->check(CLI::PositiveNumber);
  c->add_option("--out", compare.out_dir, "output directory");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify-theorem", "run the randomized check of one ordering result");
  v->add_option("id", verify.id, "T3.1 .. T3.5, T4.1 .. T4.5")->required();
  v->add_option("--count", verify.count, "instances")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
  v->add_option("--seed", verify.seed.flag, "master seed (default: $STOCHORD_SEED, else 0)");
  v->add_option("--grid", verify.grid, "grid points")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 24));
  v->add_option("--n", verify.n, "components per system");
  v->add_option("--beta", verify.beta, "fix the shared W-G shape")->check(CLI::PositiveNumber);
  v->add_option("--drop", verify.drop, "probe with a hypothesis disabled: beta, pn or prefix");
  v->add_option("--out", verify.out_dir, "write the curve of instance 0 here");

  MajorizeArgs majorize;
  auto* m = app.add_subcommand("majorize", "report which majorization relations hold");
  m->add_option("--a", majorize.a, "comma-separated vector");
  m->add_option("--b", majorize.b, "comma-separated vector");
  m->add_option("--matrix-a", majorize.matrix_a, "JSON 2 x n matrix");
  m->add_option("--matrix-b", majorize.matrix_b, "JSON 2 x n matrix");

  SampleArgs smp;
  auto* s = app.add_subcommand("sample", "draw lifetimes by inverse transform");
  s->add_option("--config", smp.config, "JSON system config");
  s->add_option("--family", smp.family, "wg or gm");
  s->add_option("--alpha", smp.alpha);
  s->add_option("--beta", smp.beta);
  s->add_option("--gamma", smp.gamma);
  s->add_option("--lambda", smp.lambda);
  s->add_option("--count,--n", smp.count, "sample size")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 28));
  s->add_option("--seed", smp.seed.flag, "seed (default: $STOCHORD_SEED, else 0)");
  s->add_option("--out", smp.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (c->parsed()) return cmd_compare(compare, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (m->parsed()) return cmd_majorize(majorize, out);
    return cmd_sample(smp, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (...) {
    err << "error: unknown failure\n";
    return kInputError;
  }
}

}  // namespace stochord::cli
