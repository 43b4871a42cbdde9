#include "bgk/runio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace bgk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "invalid number '" + v + "'");
  return out;
}

int parse_int(const std::string& v, int line) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError(line, "invalid integer '" + v + "'");
  return out;
}

// Locale-independent scientific format with 17 significant digits.
std::string fmt(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
  return std::string(buf, ptr);
}

struct MacroTable {
  std::vector<double> x, rho, u, t;
};

MacroTable read_macro_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty csv '" + path.string() + "'");
  if (trim(line) != "x,rho,U,T")
    throw ValidationError("unexpected header in '" + path.string() + "'");
  MacroTable tab;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(parse_double(trim(tok), lineno));
    if (vals.size() != 4) throw ValidationError("bad row in '" + path.string() + "'");
    tab.x.push_back(vals[0]);
    tab.rho.push_back(vals[1]);
    tab.u.push_back(vals[2]);
    tab.t.push_back(vals[3]);
  }
  return tab;
}

}  // namespace

SolverConfig RunConfig::solver_config(int threads) const {
  SolverConfig sc;
  sc.cfl = cfl;
  sc.alpha = alpha;
  sc.beta = beta;
  sc.tail_tol = tol;
  sc.theta = theta;
  sc.order = order;
  sc.gas = test.gas;
  sc.threads = threads;
  sc.width_anchor = test.width_anchor;
  return sc;
}

RunConfig parse_config(const std::string& text) {
  static const std::map<std::string, int> known = {
      {"case", 0},  {"solver", 0}, {"order", 0},     {"cfl", 0},       {"nx", 0},
      {"nv0", 0},   {"alpha", 0},  {"beta", 0},      {"tol", 0},       {"theta", 0},
      {"epsilon", 0}, {"tau_C", 0}, {"tau_omega", 0}, {"t_final", 0},  {"out_dir", 0}};

  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known.count(key)) throw ParseError(lineno, "unknown key '" + key + "'");
    if (value.empty()) throw ParseError(lineno, "empty value for '" + key + "'");
    if (kv.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
    kv[key] = {value, lineno};
  }

  if (!kv.count("case")) throw ValidationError("missing required key 'case'");

  RunConfig rc;
  rc.case_name = kv["case"].first;
  rc.test = make_case(rc.case_name);  // throws ValidationError for unknown names

  rc.cfl = rc.test.default_cfl;
  rc.nx = rc.test.default_nx;
  rc.nv0 = rc.test.nv0;
  rc.t_final = rc.test.t_final;

  auto get = [&](const char* key) { return kv.find(key); };
  if (auto it = get("solver"); it != kv.end()) rc.solver = it->second.first;
  if (rc.solver != "lvg" && rc.solver != "reference")
    throw ValidationError("solver must be 'lvg' or 'reference'");
  if (auto it = get("order"); it != kv.end()) rc.order = parse_int(it->second.first, it->second.second);
  if (auto it = get("cfl"); it != kv.end()) rc.cfl = parse_double(it->second.first, it->second.second);
  if (auto it = get("nx"); it != kv.end()) rc.nx = parse_int(it->second.first, it->second.second);
  if (auto it = get("nv0"); it != kv.end()) rc.nv0 = parse_int(it->second.first, it->second.second);
  if (auto it = get("alpha"); it != kv.end()) rc.alpha = parse_double(it->second.first, it->second.second);
  if (auto it = get("beta"); it != kv.end()) rc.beta = parse_double(it->second.first, it->second.second);
  if (auto it = get("tol"); it != kv.end()) rc.tol = parse_double(it->second.first, it->second.second);
  if (auto it = get("theta"); it != kv.end()) rc.theta = parse_double(it->second.first, it->second.second);
  if (auto it = get("epsilon"); it != kv.end())
    rc.epsilon = parse_double(it->second.first, it->second.second);
  if (auto it = get("tau_C"); it != kv.end()) rc.tau_c = parse_double(it->second.first, it->second.second);
  if (auto it = get("tau_omega"); it != kv.end())
    rc.tau_omega = parse_double(it->second.first, it->second.second);
  if (auto it = get("t_final"); it != kv.end())
    rc.t_final = parse_double(it->second.first, it->second.second);
  if (auto it = get("out_dir"); it != kv.end()) rc.out_dir = it->second.first;

  if (rc.epsilon && rc.tau_c)
    throw ValidationError("epsilon and tau_C are mutually exclusive");
  if (rc.epsilon) rc.test.gas.epsilon = EpsilonModel::constant(*rc.epsilon);
  if (rc.tau_c) rc.test.gas.epsilon = EpsilonModel::tau_law(*rc.tau_c, rc.tau_omega);

  if (rc.order != 1 && rc.order != 2) throw ValidationError("order must be 1 or 2");
  if (!(rc.cfl > 0)) throw ValidationError("cfl must be positive");
  if (rc.nx < 2) throw ValidationError("nx must be at least 2");
  if (rc.nv0 < 2) throw ValidationError("nv0 must be at least 2");
  if (!(rc.alpha >= 3)) throw ValidationError("alpha must be at least 3");
  if (!(rc.beta > 0 && rc.beta <= 1)) throw ValidationError("beta must lie in (0, 1]");
  if (!(rc.tol > 0)) throw ValidationError("tol must be positive");
  if (!(rc.theta >= 1 && rc.theta <= 2)) throw ValidationError("theta must lie in [1, 2]");
  if (!(rc.t_final > 0)) throw ValidationError("t_final must be positive");
  return rc;
}

namespace {

struct FinalMacro {
  std::vector<double> x, rho, u, t;
  std::vector<VelocityGrid> grids;
  MomentField moments;
};

FinalMacro macro_of(const SpatialGrid& sp, const DistributionField& f, double gas_r) {
  FinalMacro m;
  for (int i = 0; i < sp.n_cells; ++i) {
    const MomentSet mm = discrete_moments(f[i].values, f[i].grid);
    const double u = mm.momentum / mm.rho;
    m.x.push_back(sp.center(i));
    m.rho.push_back(mm.rho);
    m.u.push_back(u);
    m.t.push_back((2.0 * mm.energy - mm.rho * u * u) / (mm.rho * gas_r));
    m.grids.push_back(f[i].grid);
    m.moments.push_back(mm);
  }
  return m;
}

}  // namespace

RunOutputs run_and_emit(const RunConfig& cfg, const std::string& out_dir_override, int threads) {
  const std::filesystem::path dir(out_dir_override.empty() ? cfg.out_dir : out_dir_override);
  std::filesystem::create_directories(dir);

  const SolverConfig sc = cfg.solver_config(threads);
  sc.validate();

  RunOutputs out;
  FinalMacro macro;
  if (cfg.solver == "lvg") {
    SolverState state = initial_lvg_state(cfg.test, cfg.nx, cfg.nv0, sc);
    out.summary = run(state, cfg.t_final, sc);
    macro = macro_of(state.space, state.f, cfg.test.gas.R);
  } else {
    TestCase tc = cfg.test;
    tc.nv0 = cfg.nv0;
    GlobalGridState state = initial_reference_state(tc, cfg.nx);
    out.summary = run_reference(state, cfg.t_final, sc);
    DistributionField field(cfg.nx);
    for (int i = 0; i < cfg.nx; ++i) {
      const int nn = state.grid.n_nodes();
      field[i].grid = state.grid;
      field[i].values.assign(state.f.begin() + static_cast<size_t>(i) * nn,
                             state.f.begin() + static_cast<size_t>(i + 1) * nn);
    }
    macro = macro_of(state.space, field, cfg.test.gas.R);
  }

  out.macro_csv = dir / "macro.csv";
  {
    std::ofstream os(out.macro_csv);
    os << "x,rho,U,T\n";
    for (size_t i = 0; i < macro.x.size(); ++i)
      os << fmt(macro.x[i]) << ',' << fmt(macro.rho[i]) << ',' << fmt(macro.u[i]) << ','
         << fmt(macro.t[i]) << '\n';
  }

  out.grids_csv = dir / "grids.csv";
  {
    std::ofstream os(out.grids_csv);
    os << "i,v_min,v_max,dv,n_v\n";
    for (size_t i = 0; i < macro.grids.size(); ++i) {
      const VelocityGrid& g = macro.grids[i];
      os << i << ',' << fmt(g.v_min) << ',' << fmt(g.v_max()) << ',' << fmt(g.dv) << ','
         << g.n_v << '\n';
    }
  }

  if (cfg.test.gas.epsilon.kind == EpsilonModel::Kind::TauLaw) {
    out.tau_csv = dir / "tau.csv";
    std::ofstream os(out.tau_csv);
    os << "x,tau\n";
    for (size_t i = 0; i < macro.x.size(); ++i)
      os << fmt(macro.x[i]) << ',' << fmt(collision_time(macro.moments[i], cfg.test.gas)) << '\n';
  }

  out.conservation_csv = dir / "conservation.csv";
  {
    std::ofstream os(out.conservation_csv);
    os << "step,t,mass,momentum,energy\n";
    for (const StepDiagnostics& d : out.summary.steps)
      os << d.step << ',' << fmt(d.t) << ',' << fmt(d.mass) << ',' << fmt(d.momentum) << ','
         << fmt(d.energy) << '\n';
  }

  out.report_txt = dir / "report.txt";
  {
    std::ofstream os(out.report_txt);
    os << "case: " << cfg.case_name << "\nsolver: " << cfg.solver << "\norder: " << cfg.order
       << "\nnx: " << cfg.nx << "\ndt: " << fmt(out.summary.dt)
       << "\nsteps: " << out.summary.steps.size() - 1
       << "\nwall_seconds: " << out.summary.wall_seconds
       << "\nmean_nv_over_steps: " << out.summary.mean_nv_time
       << "\nmean_nv_final: " << out.summary.mean_nv_final << "\nmin_f: " << fmt(out.summary.min_f)
       << "\nmax_rel_drift_mass: " << fmt(out.summary.max_rel_drift_mass)
       << "\nmax_rel_drift_momentum: " << fmt(out.summary.max_rel_drift_momentum)
       << "\nmax_rel_drift_energy: " << fmt(out.summary.max_rel_drift_energy) << "\n";
  }
  return out;
}

std::string CompareReport::render() const {
  std::ostringstream os;
  for (const ColumnDiff& c : columns) {
    os << c.name << ": L1_rel=" << fmt(c.l1_rel) << " Linf_abs=" << fmt(c.linf_abs)
       << " Linf_rel=" << fmt(c.linf_rel) << "\n";
  }
  return os.str();
}

CompareReport compare_macro_csv(const std::filesystem::path& a, const std::filesystem::path& b) {
  const MacroTable ta = read_macro_csv(a);
  const MacroTable tb = read_macro_csv(b);
  if (ta.x.size() != tb.x.size()) throw ValidationError("compare: meshes have different sizes");
  for (size_t i = 0; i < ta.x.size(); ++i)
    if (std::abs(ta.x[i] - tb.x[i]) > 1e-9 * std::max(1.0, std::abs(tb.x[i])))
      throw ValidationError("compare: meshes do not match");

  auto diff = [](const std::string& name, const std::vector<double>& u,
                 const std::vector<double>& v) {
    ColumnDiff d;
    d.name = name;
    double num = 0.0, den = 0.0, vmax = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      num += std::abs(u[i] - v[i]);
      den += std::abs(v[i]);
      d.linf_abs = std::max(d.linf_abs, std::abs(u[i] - v[i]));
      vmax = std::max(vmax, std::abs(v[i]));
    }
    d.l1_rel = den > 0 ? num / den : num;
    d.linf_rel = vmax > 0 ? d.linf_abs / vmax : d.linf_abs;
    return d;
  };
  CompareReport rep;
  rep.columns.push_back(diff("rho", ta.rho, tb.rho));
  rep.columns.push_back(diff("U", ta.u, tb.u));
  rep.columns.push_back(diff("T", ta.t, tb.t));
  return rep;
}

}  // namespace bgk
