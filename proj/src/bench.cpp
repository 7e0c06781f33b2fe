#include "mvibench/bench.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "mvibench/baselines.hpp"
#include "mvibench/problems.hpp"
#include "mvibench/solver.hpp"

namespace mvibench {

namespace {

const std::vector<std::string> kMethods = {"alg33", "pcm_he", "pcm_dong",
                                           "ppa_kim", "ppa_mainge"};

// Section keys that take a single real value and flow into
// ExperimentSpec::overrides.
const std::vector<std::string> kOverrideKeys = {
    "alpha", "delta", "theta", "gamma", "sigma", "mu", "lambda0"};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string tok =
        trim(comma == std::string::npos ? s.substr(start)
                                        : s.substr(start, comma - start));
    if (!tok.empty()) out.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    // stoull wraps negative input instead of rejecting it
    if (!tok.empty() && tok[0] == '-') throw std::invalid_argument(tok);
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected an unsigned integer, got '" + tok +
                      "'");
  }
}

double parse_real(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected a real number, got '" + tok + "'");
  }
}

int parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected an integer, got '" + tok + "'");
  }
}

void validate_methods(const std::vector<std::string>& methods,
                      const std::string& label) {
  for (const auto& m : methods) {
    if (m == "alg_jol")
      throw ConfigError("[" + label +
                        "] method 'alg_jol' is unavailable in this build");
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
      throw ConfigError("[" + label + "] unknown method '" + m + "'");
  }
}

void finalize_section(ExperimentSpec& spec, bool dim_given) {
  if (spec.problem.empty())
    throw ConfigError("[" + spec.label + "] missing required key 'problem'");
  if (spec.problem == "ex1") {
    if (dim_given && spec.dim != 3)
      throw ConfigError("[" + spec.label + "] ex1 has fixed dim 3");
    spec.dim = 3;
  } else if (spec.problem == "ex2") {
    if (dim_given && spec.dim != 2)
      throw ConfigError("[" + spec.label + "] ex2 has fixed dim 2");
    spec.dim = 2;
  } else if (spec.problem == "ex3") {
    if (!dim_given)
      throw ConfigError("[" + spec.label + "] ex3 requires 'dim'");
    if (spec.dim < 1)
      throw ConfigError("[" + spec.label + "] dim must be >= 1");
  } else {
    throw ConfigError("[" + spec.label + "] unknown problem '" + spec.problem +
                      "' (expected ex1, ex2, or ex3)");
  }
  if (!(spec.epsilon > 0.0))
    throw ConfigError("[" + spec.label + "] epsilon must be positive");
  if (spec.max_iter < 0)
    throw ConfigError("[" + spec.label + "] max_iter must be nonnegative");
  validate_methods(spec.methods, spec.label);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

double override_or(const ExperimentSpec& spec, const std::string& key,
                   double dflt) {
  const auto it = spec.overrides.find(key);
  return it == spec.overrides.end() ? dflt : it->second;
}

}  // namespace

const std::vector<std::string>& known_methods() { return kMethods; }

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& tok : split_commas(text)) {
    const std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_u64(tok, "seeds"));
      continue;
    }
    const std::uint64_t first = parse_u64(trim(tok.substr(0, dots)), "seeds");
    const std::uint64_t last = parse_u64(trim(tok.substr(dots + 2)), "seeds");
    if (last < first)
      throw ConfigError("seeds: descending range '" + tok + "'");
    for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::vector<ExperimentSpec> parse_config_text(const std::string& text) {
  std::vector<ExperimentSpec> specs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_section = false;
  bool dim_given = false;

  auto close_section = [&] {
    if (in_section) finalize_section(specs.back(), dim_given);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      const std::string label = trim(s.substr(1, s.size() - 2));
      if (label.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section label");
      for (const auto& sp : specs)
        if (sp.label == label)
          throw ConfigError("duplicate section [" + label + "]");
      close_section();
      specs.emplace_back();
      specs.back().label = label;
      in_section = true;
      dim_given = false;
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + s + "'");
    if (!in_section)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    ExperimentSpec& spec = specs.back();

    if (key == "problem") {
      spec.problem = value;
    } else if (key == "dim") {
      spec.dim = parse_int(value, "dim");
      dim_given = true;
    } else if (key == "seeds") {
      spec.seeds = parse_seed_list(value);
    } else if (key == "methods") {
      spec.methods = split_commas(value);
    } else if (key == "epsilon") {
      spec.epsilon = parse_real(value, "epsilon");
    } else if (key == "max_iter") {
      spec.max_iter = parse_int(value, "max_iter");
    } else if (std::find(kOverrideKeys.begin(), kOverrideKeys.end(), key) !=
               kOverrideKeys.end()) {
      spec.overrides[key] = parse_real(value, key);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
  }
  close_section();
  return specs;
}

std::vector<ExperimentSpec> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

StartPoints draw_starts(int dim, std::uint64_t seed) {
  SeededRng rng(derive_seed(seed, 3));
  StartPoints st;
  st.x0 = rng.uniform_vec(dim, -5.0, 5.0);
  st.x_minus1 = rng.uniform_vec(dim, -5.0, 5.0);
  st.w_minus1 = rng.uniform_vec(dim, -5.0, 5.0);
  return st;
}

RunResult run_single(const ExperimentSpec& spec, const std::string& method,
                     std::uint64_t seed) {
  MviProblem prob;
  double lambda0 = 1.0;
  if (spec.problem == "ex3") {
    Ex3Instance inst = make_ex3_instance(spec.dim, seed);
    lambda0 = 0.99 / (2.0 * inst.rho_B);
    prob = std::move(inst.problem);
  } else if (spec.problem == "ex1") {
    prob = make_ex1();
  } else if (spec.problem == "ex2") {
    prob = make_ex2();
  } else {
    throw ConfigError("unknown problem '" + spec.problem + "'");
  }
  lambda0 = override_or(spec, "lambda0", lambda0);

  const StartPoints st = draw_starts(prob.dim, seed);
  RunResult run;
  if (method == "alg33") {
    const PcParams p = validate_params(
        override_or(spec, "alpha", 0.5), override_or(spec, "delta", 0.9),
        override_or(spec, "theta", 0.4), override_or(spec, "gamma", 1.5),
        override_or(spec, "mu", 0.5), lambda0,
        override_or(spec, "sigma", 1.5));
    SolveOptions opts;
    opts.epsilon = spec.epsilon;
    opts.max_iter = spec.max_iter;
    opts.monitors.distance = true;
    run = solve(prob, p, st.x0, st.x_minus1, st.w_minus1, opts).run;
  } else if (method == "pcm_he") {
    StepsizeRule rule;
    rule.lambda0 = lambda0;
    rule.mu = 0.5;
    run = run_pcm_he(prob, rule, 1.5, st.x0, spec.epsilon, spec.max_iter);
  } else if (method == "pcm_dong") {
    PcmDongParams p;
    p.lambda = lambda0;
    run = run_pcm_dong(prob, p, st.x0, spec.epsilon, spec.max_iter);
  } else if (method == "ppa_kim") {
    run = run_ppa_kim(prob, lambda0, st.x0, spec.epsilon, spec.max_iter);
  } else if (method == "ppa_mainge") {
    PpaMaingeParams p;
    p.lambda = lambda0;
    run = run_ppa_mainge(prob, p, st.x0, spec.epsilon, spec.max_iter);
  } else if (method == "alg_jol") {
    throw ConfigError("method 'alg_jol' is unavailable in this build");
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  run.seed = seed;
  return run;
}

ResultsTable run_experiment(const ExperimentSpec& spec,
                            const std::string& out_root) {
  namespace fs = std::filesystem;
  const fs::path root(out_root);
  const fs::path trace_dir = root / spec.label;
  std::error_code ec;
  fs::create_directories(trace_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" +
                             trace_dir.string() + "': " + ec.message());

  ResultsTable table;
  for (const auto& method : spec.methods) {
    for (const auto seed : spec.seeds) {
      const RunResult run = run_single(spec, method, seed);

      const fs::path trace_path =
          trace_dir / ("trace_" + spec.problem + "_" + method + "_seed" +
                       std::to_string(seed) + ".csv");
      write_trace_csv(trace_path.string(), run.trace);

      SummaryRow row;
      row.problem = spec.problem;
      row.method = method;
      row.seed = seed;
      row.dim = run.dim;
      row.iters = run.iters;
      row.converged = run.converged;
      row.final_tol = run.final_tol;
      row.final_dist = run.final_dist;
      row.wall_ms = run.wall_ms;
      table.rows.push_back(std::move(row));
    }
  }

  for (const auto& method : spec.methods) {
    std::vector<double> iters, walls;
    for (const auto& row : table.rows) {
      if (row.method != method) continue;
      iters.push_back(static_cast<double>(row.iters));
      walls.push_back(row.wall_ms);
    }
    table.median_iters[method] = median(std::move(iters));
    table.median_wall_ms[method] = median(std::move(walls));
  }

  write_summary_csv((root / (spec.label + "_summary.csv")).string(),
                    table.rows);
  return table;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open summary file for writing: " + path);
  out << "problem,method,seed,dim,iters,converged,final_tol,final_dist,"
         "wall_ms\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.method << ',' << r.seed << ',' << r.dim << ','
        << r.iters << ',' << (r.converged ? 1 : 0) << ','
        << format_g17(r.final_tol) << ','
        << (r.final_dist ? format_g17(*r.final_dist) : std::string()) << ','
        << format_g17(r.wall_ms) << '\n';
  }
  if (!out.good())
    throw std::runtime_error("failed while writing summary file: " + path);
}

std::string render_table(const ResultsTable& table) {
  std::ostringstream os;
  os << std::left << std::setw(11) << "method" << std::setw(8) << "seed"
     << std::setw(8) << "iters" << std::setw(6) << "conv" << std::setw(14)
     << "final_tol" << std::setw(14) << "final_dist" << std::setw(12)
     << "wall_ms" << '\n';
  for (const auto& r : table.rows) {
    std::ostringstream tol, dist, wall;
    tol << std::scientific << std::setprecision(3) << r.final_tol;
    if (r.final_dist)
      dist << std::scientific << std::setprecision(3) << *r.final_dist;
    else
      dist << "-";
    wall << std::fixed << std::setprecision(3) << r.wall_ms;
    os << std::left << std::setw(11) << r.method << std::setw(8) << r.seed
       << std::setw(8) << r.iters << std::setw(6) << (r.converged ? "yes" : "no")
       << std::setw(14) << tol.str() << std::setw(14) << dist.str()
       << std::setw(12) << wall.str() << '\n';
  }
  if (!table.median_iters.empty()) {
    os << "medians:\n";
    for (const auto& [method, med] : table.median_iters) {
      std::ostringstream wall;
      wall << std::fixed << std::setprecision(3)
           << table.median_wall_ms.at(method);
      os << "  " << std::left << std::setw(11) << method << " iters "
         << std::setw(9) << med << " wall_ms " << wall.str() << '\n';
    }
  }
  return os.str();
}

}  // namespace mvibench
