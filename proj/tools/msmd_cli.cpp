// msmd: experiments on multiset metric dimension.
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 input error
// (malformed file or parameter), 4 exact-search budget refused,
// 5 verification failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "json_config.hpp"
#include "msmd/msmd.hpp"
#include "msmd/report.hpp"

namespace {

using namespace msmd;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kInternal = 1, kUsage = 2, kInput = 3, kBudget = 4, kVerification = 5 };

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Substreams of the master seed. The graph itself is drawn from the master
// seed; everything else uses one of these so no stream is shared.
enum class Stream : std::uint64_t { sensors = 1, construction, failure, expansion, campaign };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
  return derive_seed(seed, (std::uint64_t{1} << 48) + static_cast<std::uint64_t>(s));
}

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  unsigned threads = 0;
  bool rational = false;

  bool json_output(bool default_json) const { return format.empty() ? default_json : format == "json"; }
};

// --graph FILE | --family NAME [--n N] | --n N (--p P | --x X)
struct GraphSource {
  std::string file;
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  double x = 0.0;
  CLI::Option* p_opt = nullptr;
  CLI::Option* x_opt = nullptr;

  void add(CLI::App* sub) {
    sub->add_option("--graph", file, "Edge-list file");
    sub->add_option("--family", family, "Named graph: path, cycle, complete, star, petersen, empty")
        ->check(CLI::IsMember({"path", "cycle", "complete", "star", "petersen", "empty"}));
    // No recorded defaults: an unset --p or --x must stay unset when a
    // written configuration is read back.
    sub->add_option("--n", n, "Number of vertices")->default_str("");
    p_opt = sub->add_option("--p", p, "Edge probability of G(n,p)")->default_str("");
    x_opt = sub->add_option("--x", x, "Density exponent: p = n^x/(n-1)")->default_str("");
    p_opt->excludes(x_opt);
  }

  std::optional<double> exponent() const {
    if (file.empty() && family.empty() && x_opt->count() > 0) return x;
    return std::nullopt;
  }

  Graph build(const Common& c) const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw InputError("cannot open graph file '" + file + "'");
      return read_edge_list(in);
    }
    if (!family.empty()) {
      if (family == "petersen") return families::petersen();
      if (n == 0) throw InputError("--family " + family + " needs --n");
      if (family == "path") return families::path(n);
      if (family == "cycle") return families::cycle(n);
      if (family == "complete") return families::complete(n);
      if (family == "star") return families::star(n - 1);
      return families::empty(n);
    }
    if (n == 0) throw InputError("no graph given: use --graph, --family, or --n with --p or --x");
    if (x_opt->count() > 0) return generate_gnp(RandomGraphSpec::with_exponent(n, x, c.seed), c.threads);
    if (p_opt->count() > 0) return generate_gnp(RandomGraphSpec::with_probability(n, p, c.seed), c.threads);
    throw InputError("--n needs --p or --x");
  }
};

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  for (const auto& item : CLI::detail::split(text, ',')) {
    const auto t = CLI::detail::trim_copy(item);
    if (t.empty()) continue;
    Vertex v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size()) throw InputError("bad vertex '" + t + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty vertex list");
  return out;
}

std::string join(const std::vector<std::uint32_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  GraphSource graph;
};

void run_gen(const GenArgs& a, const Common& c, std::ostream& os) {
  const Graph g = a.graph.build(c);
  if (c.format == "json") {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    os << json{{"n", g.order()}, {"m", g.size()}, {"edges", edges}}.dump(2) << '\n';
  } else if (c.format == "csv") {
    CsvWriter out(os, {"u", "v"});
    for (const auto& e : g.edges()) out.row({std::to_string(e.u), std::to_string(e.v)});
  } else {
    write_edge_list(os, g);
  }
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
  GraphSource graph;
  std::size_t budget = kDefaultBudget;
};

void run_exact(const ExactArgs& a, const Common& c, std::ostream& os) {
  const Graph g = a.graph.build(c);
  SolverOptions opt;
  opt.budget = a.budget;
  opt.threads = c.threads;
  const auto r = dimension_report(g, opt);
  if (c.json_output(true)) {
    os << dimension_json(r).dump(2) << '\n';
  } else {
    CsvWriter out(os, {"beta", "beta_ms_out", "beta_ms", "subsets_examined"});
    out.row({std::to_string(r.beta), std::to_string(r.beta_ms_out), r.beta_ms.to_string(),
             std::to_string(r.subsets_examined())});
  }
}

// ---------------------------------------------------------------- curves

struct CurvesArgs {
  std::string x_min;
  std::string x_max = "1/2";
  std::string step = "1/2000";
  std::string jump_offset = "1/1000000";
  std::vector<std::string> levels{"1", "4"};
  double tol = 1e-12;
  std::int64_t max_k = 20;
};

double parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad number '" + s + "'");
  }
  if (used != s.size()) throw InputError("bad number '" + s + "'");
  return v;
}

template <Exponent Real>
Real parse_exponent(const std::string& s) {
  if constexpr (std::same_as<Real, Rational>) {
    return Rational::parse(s);
  } else {
    return parse_real(s);
  }
}

template <Exponent Real>
void emit_curves_as(const CurvesArgs& a, const Common& c, std::ostream& os) {
  const Real step = parse_exponent<Real>(a.step);
  const Real lo = a.x_min.empty() ? step : parse_exponent<Real>(a.x_min);
  const Real hi = parse_exponent<Real>(a.x_max);
  const Real offset = parse_exponent<Real>(a.jump_offset);
  std::vector<Real> levels;
  for (const auto& l : a.levels) levels.push_back(parse_exponent<Real>(l));
  const auto grid = curve_grid(lo, hi, step, offset, a.max_k);
  const auto curves = emit_curves(grid, levels, a.tol);
  if (c.json_output(false)) {
    json arr = json::array();
    for (const auto& cv : curves) {
      json pts = json::array();
      for (const auto& p : cv.points) pts.push_back({format_exponent(p.x), format_exponent(p.y)});
      arr.push_back({{"level", format_exponent(cv.level)}, {"points", pts}});
    }
    os << json{{"curves", arr}}.dump(2) << '\n';
  } else {
    write_curves_csv(os, curves);
  }
}

void run_curves(const CurvesArgs& a, const Common& c, std::ostream& os) {
  if (c.rational) {
    emit_curves_as<Rational>(a, c, os);
  } else {
    emit_curves_as<double>(a, c, os);
  }
}

// ---------------------------------------------------------------- randomized

struct RandomizedArgs {
  GraphSource graph;
  double r = 0.0;
  CLI::Option* r_opt = nullptr;
  double growth = 2.0;
  std::size_t max_rounds = 12;
};

CandidateSpec candidate_spec(const Graph& g, std::optional<double> x, std::optional<double> r, double growth,
                             std::size_t rounds, std::uint64_t seed) {
  CandidateSpec s;
  s.r = r ? *r : default_initial_r(g.order(), x);
  s.growth = growth;
  s.max_rounds = rounds;
  s.seed = seed;
  return s;
}

void run_randomized(const RandomizedArgs& a, const Common& c, std::ostream& os) {
  const Graph g = a.graph.build(c);
  const auto spec = candidate_spec(g, a.graph.exponent(), a.r_opt->count() ? std::optional(a.r) : std::nullopt,
                                   a.growth, a.max_rounds, stream_seed(c.seed, Stream::construction));
  const auto res = construct_resolving(g, spec, c.threads);
  if (c.json_output(true)) {
    json j{{"n", g.order()},
           {"initial_r", spec.r},
           {"succeeded", res.succeeded()},
           {"resolving_set", res.succeeded() ? json(*res.resolving_set) : json(nullptr)},
           {"size", res.succeeded() ? json(res.resolving_set->size()) : json(nullptr)},
           {"rounds_used", res.rounds_used()},
           {"saturated", res.saturated},
           {"last_witness", witness_json(res.last_witness)},
           {"rounds", round_log_json(res)}};
    os << j.dump(2) << '\n';
  } else {
    CsvWriter out(os, {"round", "r", "sample_size", "verdict", "witness_u", "witness_v"});
    for (const auto& rec : res.rounds) {
      const std::string verdict = rec.resolving ? "resolving" : (rec.sample_size == 0 ? "empty" : "collision");
      out.row({std::to_string(rec.round), format_real(rec.r), std::to_string(rec.sample_size), verdict,
               rec.witness ? std::to_string(rec.witness->first) : "", rec.witness ? std::to_string(rec.witness->second) : ""});
    }
  }
}

// ---------------------------------------------------------------- localize

struct LocalizeArgs {
  GraphSource graph;
  std::string sensors = "auto";
  std::string source = "sweep";
  std::size_t budget = kDefaultBudget;
};

void run_localize(const LocalizeArgs& a, const Common& c, std::ostream& os) {
  const Graph g = a.graph.build(c);
  if (!is_connected(g)) throw DisconnectedGraphError("localization requires a connected graph");
  std::vector<Vertex> R;
  std::string method;
  if (a.sensors == "auto") {
    if (g.order() <= a.budget) {
      SolverOptions opt;
      opt.budget = a.budget;
      opt.threads = c.threads;
      const auto best = beta_ms_exact(g, opt);
      if (best.size.is_infinite()) throw VerificationFailure("graph has no multiset resolving set");
      R = best.witness;
      method = "exact";
    } else {
      const auto spec = candidate_spec(g, a.graph.exponent(), std::nullopt, 2.0, 12,
                                       stream_seed(c.seed, Stream::construction));
      const auto res = construct_resolving(g, spec, c.threads);
      if (!res.succeeded()) throw VerificationFailure("no multiset resolving set found within the round limit");
      R = *res.resolving_set;
      method = "randomized";
    }
  } else {
    R = parse_vertex_list(a.sensors);
    method = "given";
  }
  const bool resolving = verify_resolving(g, R, ResolvingKind::multiset, {std::nullopt, c.threads}).resolving;
  std::vector<Vertex> sources;
  if (a.source == "sweep") {
    for (Vertex v = 0; v < g.order(); ++v) sources.push_back(v);
  } else {
    sources = parse_vertex_list(a.source);
  }
  const SignatureIndex index(g, R, c.threads);
  const bool as_json = c.json_output(true);
  std::optional<CsvWriter> csv;
  if (as_json) {
    os << json{{"sensors", R}, {"method", method}, {"resolving", resolving}}.dump() << '\n';
  } else {
    csv.emplace(os, std::vector<std::string>{"source", "observation", "recovered", "unique"});
  }
  std::size_t exact = 0;
  for (Vertex v0 : sources) {
    if (!g.contains(v0)) throw InputError("source " + std::to_string(v0) + " out of range");
    const auto obs = observe(g, R, v0);
    const auto id = index.identify(obs);
    const bool unique = id.candidates == std::vector<Vertex>{v0};
    exact += unique;
    if (as_json) {
      os << json{{"source", v0}, {"observation", obs.counts}, {"recovered", id.candidates}, {"unique", unique}}.dump()
         << '\n';
    } else {
      csv->row({std::to_string(v0), join(obs.counts, ';'), join(id.candidates, ';'), unique ? "1" : "0"});
    }
  }
  if (as_json) os << json{{"sources", sources.size()}, {"recovered_exactly", exact}}.dump() << '\n';
  if (resolving && exact != sources.size()) {
    throw VerificationFailure("a resolving sensor set failed to recover every source");
  }
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  GraphSource graph;
  std::string sensors = "sqrt";
  std::size_t k = 0;
  CLI::Option* k_opt = nullptr;
};

std::vector<Vertex> census_sensors(const std::string& spec, std::size_t n, std::uint64_t seed) {
  if (spec == "sqrt") {
    return sample_fixed_size(n, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))), seed);
  }
  if (spec.rfind("size:", 0) == 0) {
    std::size_t size = 0;
    const auto t = spec.substr(5);
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), size);
    if (ec != std::errc{} || p != t.data() + t.size()) throw InputError("bad sensor size '" + t + "'");
    return sample_fixed_size(n, size, seed);
  }
  return parse_vertex_list(spec);
}

// k = predicted diameter - 1 for G(n, n^x/(n-1)), else diam - 1; never above diam.
std::size_t census_level(const Graph& g, std::optional<double> x, unsigned threads) {
  const auto diam = diameter(g, threads);
  if (diam == kUnreachable) throw DisconnectedGraphError("census requires a connected graph");
  std::size_t k = diam == 0 ? 0 : diam - 1;
  if (x) {
    const double n = static_cast<double>(g.order());
    k = static_cast<std::size_t>(std::max(0, predicted_diameter(n, std::pow(n, *x)) - 1));
  }
  return std::min<std::size_t>(k, diam);
}

void run_census(const CensusArgs& a, const Common& c, std::ostream& os) {
  const Graph g = a.graph.build(c);
  const auto R = census_sensors(a.sensors, g.order(), stream_seed(c.seed, Stream::sensors));
  const std::size_t k = a.k_opt->count() ? a.k : census_level(g, a.graph.exponent(), c.threads);
  const auto rep = typicality_census(g, R, k, c.threads);
  if (c.json_output(false)) {
    json levels = json::array();
    for (const auto& l : rep.levels) {
      levels.push_back({{"level", l.level},
                        {"atypical", l.atypical},
                        {"typical", l.typical},
                        {"allowed_coords", l.allowed_coords},
                        {"atypical_sensor_pairs", l.atypical_sensor_pairs},
                        {"sensor_ball_total", l.sensor_ball_total}});
    }
    os << json{{"n", rep.n},
               {"k", rep.k},
               {"sensors", R},
               {"levels", levels},
               {"typical", rep.typical},
               {"signature_space_bound", rep.signature_space_bound},
               {"signatures_determined", rep.signatures_determined},
               {"collision_forced", rep.collision_forced},
               {"double_count_holds", rep.double_count_holds()}}
              .dump(2)
       << '\n';
  } else {
    write_census_csv(os, rep);
  }
}

// ---------------------------------------------------------------- expansion

struct ExpansionArgs {
  std::size_t n = 0;
  double x = 0.0;
  std::size_t samples = 100;
  double multiplier = 3.0;
  bool measured_degree = false;
};

void run_expansion(const ExpansionArgs& a, const Common& c, std::ostream& os) {
  const Graph g = generate_gnp(RandomGraphSpec::with_exponent(a.n, a.x, c.seed), c.threads);
  const double n = static_cast<double>(a.n);
  const auto params = a.measured_degree ? regime_with_degree(n, g.average_degree(), a.x) : regime(n, a.x);
  const auto rep = audit_expansion(g, params, a.samples, stream_seed(c.seed, Stream::expansion), a.multiplier, c.threads);
  if (c.json_output(false)) {
    json levels = json::array();
    for (const auto& l : rep.levels) {
      levels.push_back({{"level", l.level},
                        {"set_size", l.set_size},
                        {"predicted", l.predicted},
                        {"tolerance", l.tolerance},
                        {"samples", l.samples},
                        {"within", l.within},
                        {"empty_layers", l.empty_layers},
                        {"min_ratio", l.min_ratio},
                        {"mean_ratio", l.mean_ratio},
                        {"max_ratio", l.max_ratio},
                        {"max_abs_deviation", l.max_abs_deviation}});
    }
    os << json{{"n", a.n},
               {"x", a.x},
               {"d", params.d},
               {"measured_degree", rep.measured_degree},
               {"i_star", params.i_star},
               {"c", params.c},
               {"gamma", params.gamma},
               {"multiplier", rep.multiplier},
               {"partial", rep.partial},
               {"levels", levels}}
              .dump(2)
       << '\n';
  } else {
    write_expansion_csv(os, rep);
  }
}

// ---------------------------------------------------------------- campaign

struct CampaignArgs {
  std::string quantity = "resolving_size";
  std::size_t n = 0;
  double x = 0.0;
  std::size_t trials = 10;
  double r = 0.0;
  CLI::Option* r_opt = nullptr;
  std::size_t inner_trials = 50;
  std::size_t samples = 100;
  bool timing = false;
};

std::string campaign_value(const CampaignArgs& a, const Graph& g, std::uint64_t trial_seed) {
  const double n = static_cast<double>(a.n);
  const std::optional<double> r = a.r_opt->count() ? std::optional(a.r) : std::nullopt;
  try {
    if (a.quantity == "diameter") {
      const auto d = diameter(g, 1);
      return d == kUnreachable ? "inf" : std::to_string(d);
    }
    if (a.quantity == "resolving_size") {
      const auto spec = candidate_spec(g, a.x, r, 2.0, 12, stream_seed(trial_seed, Stream::construction));
      const auto res = construct_resolving(g, spec, 1);
      return res.succeeded() ? std::to_string(res.resolving_set->size()) : "NA";
    }
    if (a.quantity == "failure_rate") {
      const double rr = r ? *r : default_initial_r(a.n, a.x);
      if (!is_connected(g)) return "disconnected";
      return format_real(estimate_failure_rate(g, rr, a.inner_trials, stream_seed(trial_seed, Stream::failure), 1).rate());
    }
    if (a.quantity == "census_atypical") {
      const auto R = census_sensors("sqrt", a.n, stream_seed(trial_seed, Stream::sensors));
      const auto rep = typicality_census(g, R, census_level(g, a.x, 1), 1);
      std::size_t worst = 0;
      for (const auto& l : rep.levels) worst = std::max(worst, l.atypical);
      return format_real(static_cast<double>(worst) / n);
    }
    // expansion_deviation
    const auto params = regime(n, a.x);
    const auto rep = audit_expansion(g, params, a.samples, stream_seed(trial_seed, Stream::expansion), 3.0, 1);
    return format_real(rep.at(1, 1).max_abs_deviation);
  } catch (const DisconnectedGraphError&) {
    return "disconnected";
  }
}

void run_campaign(const CampaignArgs& a, const Common& c, std::ostream& os) {
  if (a.n < 3) throw InputError("campaign needs --n of at least 3");
  if (!(a.x > 0.0 && a.x < 1.0)) throw InputError("campaign needs --x in (0,1)");
  const std::uint64_t master = stream_seed(c.seed, Stream::campaign);
  struct Row {
    std::uint64_t seed = 0;
    std::string value;
    double wall_ms = 0.0;
  };
  std::vector<Row> rows(a.trials);
  // Trials fan out; each trial is single-threaded and rows keep trial order.
  parallel_for(a.trials, c.threads, [&](std::size_t t) {
    const auto start = std::chrono::steady_clock::now();
    rows[t].seed = derive_seed(master, t);
    const Graph g = generate_gnp(RandomGraphSpec::with_exponent(a.n, a.x, rows[t].seed), 1);
    rows[t].value = campaign_value(a, g, rows[t].seed);
    rows[t].wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
  if (c.json_output(false)) {
    json arr = json::array();
    for (std::size_t t = 0; t < rows.size(); ++t) {
      json row{{"trial", t}, {"seed", rows[t].seed}, {"n", a.n}, {"x", a.x}, {"quantity", a.quantity},
               {"value", rows[t].value}};
      if (a.timing) row["wall_ms"] = rows[t].wall_ms;
      arr.push_back(std::move(row));
    }
    os << arr.dump(2) << '\n';
    return;
  }
  CsvWriter out(os, {"trial", "seed", "n", "x", "quantity", "value", "wall_ms"});
  for (std::size_t t = 0; t < rows.size(); ++t) {
    out.row({std::to_string(t), std::to_string(rows[t].seed), std::to_string(a.n), format_real(a.x), a.quantity,
             rows[t].value, a.timing ? format_real(rows[t].wall_ms) : ""});
  }
}

// ---------------------------------------------------------------- main

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiset metric dimension experiments on random graphs"};
  app.config_formatter(std::make_shared<msmd::cli::JsonConfig>());
  app.set_config("--config", "", "JSON configuration; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Master seed");
  app.add_option("--out", common.out, "Output file (default: standard output); the configuration goes to <out>.config.json");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", common.threads, "Worker threads (0: all cores); never changes results");
  app.add_flag("--rational", common.rational, "Exact rational exponents (curves)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a graph as an edge list");
  gen_args.graph.add(gen);

  ExactArgs exact_args;
  auto* exact = app.add_subcommand("exact", "Exact beta, beta_ms_out and beta_ms of a small graph");
  exact_args.graph.add(exact);
  exact->add_option("--budget", exact_args.budget, "Largest n searched")->check(CLI::Range(std::size_t{2}, kHardBudgetCap));

  CurvesArgs curves_args;
  auto* curves = app.add_subcommand("curves", "Threshold curves f_x(y) = level");
  curves->add_option("--x-min", curves_args.x_min, "Smallest x (default: the step)");
  curves->add_option("--x-max", curves_args.x_max, "Largest x");
  curves->add_option("--step", curves_args.step, "Grid spacing");
  curves->add_option("--jump-offset", curves_args.jump_offset, "Offset of the right-hand sample at each 1/k");
  curves->add_option("--levels", curves_args.levels, "Levels to solve for");
  curves->add_option("--tol", curves_args.tol, "Bisection tolerance");
  curves->add_option("--max-k", curves_args.max_k, "Largest k with 1/k added to the grid");

  RandomizedArgs rand_args;
  auto* randomized = app.add_subcommand("randomized", "Randomized construction of a multiset resolving set");
  rand_args.graph.add(randomized);
  rand_args.r_opt = randomized->add_option("--r", rand_args.r, "Initial expected size (default n^y4(x) or sqrt n)")->default_str("");
  randomized->add_option("--growth", rand_args.growth, "Multiplier for r after a failed round");
  randomized->add_option("--max-rounds", rand_args.max_rounds, "Round limit");

  LocalizeArgs loc_args;
  auto* localize = app.add_subcommand("localize", "Source localization transcripts");
  loc_args.graph.add(localize);
  localize->add_option("--sensors", loc_args.sensors, "'auto' or a comma-separated vertex list");
  localize->add_option("--source", loc_args.source, "'sweep' or a comma-separated vertex list");
  localize->add_option("--budget", loc_args.budget, "Largest n for the exact sensor search in auto mode")
      ->check(CLI::Range(std::size_t{2}, kHardBudgetCap));

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "Typicality census of a sensor set");
  census_args.graph.add(census);
  census->add_option("--sensors", census_args.sensors, "'sqrt', 'size:N' or a comma-separated vertex list");
  census_args.k_opt = census->add_option("--k", census_args.k, "Top level (default: predicted diameter - 1)")->default_str("");

  ExpansionArgs exp_args;
  auto* expansion = app.add_subcommand("expansion", "Audit BFS layer sizes of G(n, n^x/(n-1))");
  expansion->add_option("--n", exp_args.n, "Number of vertices")->required();
  expansion->add_option("--x", exp_args.x, "Density exponent")->required();
  expansion->add_option("--samples", exp_args.samples, "Sampled vertices (and vertex pairs)");
  expansion->add_option("--multiplier", exp_args.multiplier, "Tolerance multiplier of gamma");
  expansion->add_flag("--measured-degree", exp_args.measured_degree, "Use the measured average degree for d");

  CampaignArgs camp_args;
  auto* campaign = app.add_subcommand("campaign", "Repeat a measurement over seeded G(n,p) trials");
  campaign->add_option("--quantity", camp_args.quantity, "Measured quantity")
      ->check(CLI::IsMember({"resolving_size", "failure_rate", "census_atypical", "expansion_deviation", "diameter"}));
  campaign->add_option("--n", camp_args.n, "Number of vertices");
  campaign->add_option("--x", camp_args.x, "Density exponent");
  campaign->add_option("--trials", camp_args.trials, "Number of trials");
  camp_args.r_opt = campaign->add_option("--r", camp_args.r, "Expected sample size (default n^y4(x) or sqrt n)")->default_str("");
  campaign->add_option("--inner-trials", camp_args.inner_trials, "Samples per failure-rate estimate");
  campaign->add_option("--samples", camp_args.samples, "Sampled vertices per expansion audit");
  campaign->add_flag("--timing", camp_args.timing, "Fill the wall_ms column (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kOk;
    if (dynamic_cast<const CLI::FileError*>(&e) || dynamic_cast<const CLI::ConfigError*>(&e)) return kInput;
    return kUsage;
  }

  std::ostringstream out;
  int status = kOk;
  try {
    if (*gen) run_gen(gen_args, common, out);
    if (*exact) run_exact(exact_args, common, out);
    if (*curves) run_curves(curves_args, common, out);
    if (*randomized) run_randomized(rand_args, common, out);
    if (*localize) run_localize(loc_args, common, out);
    if (*census) run_census(census_args, common, out);
    if (*expansion) run_expansion(exp_args, common, out);
    if (*campaign) run_campaign(camp_args, common, out);
  } catch (const VerificationFailure& e) {
    // The transcript so far is still written.
    std::cerr << "msmd: verification failure: " << e.what() << '\n';
    status = kVerification;
  } catch (const BudgetExceeded& e) {
    std::cerr << "msmd: refused: " << e.what() << '\n';
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "msmd: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "msmd: internal error: " << e.what() << '\n';
    return kInternal;
  }

  try {
    if (common.out.empty()) {
      std::cout << out.str();
    } else {
      write_file(common.out, out.str());
      write_file(common.out + ".config.json", app.config_to_str(true, false));
    }
  } catch (const InputError& e) {
    std::cerr << "msmd: " << e.what() << '\n';
    return kInput;
  }
  return status;
}
