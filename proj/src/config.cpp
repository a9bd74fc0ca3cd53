#include "kinnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "kinnet/error.hpp"
#include "kinnet/io.hpp"

namespace kinnet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw Error(ErrorCode::config, "key '" + key + "': not a number: '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw Error(ErrorCode::config, "key '" + key + "': not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::config, "key '" + key + "': expected true or false");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + format_double(xs[k]);
  return s;
}

// "name:arg" split
std::pair<std::string, std::string> split_arg(const std::string& v) {
  const auto p = v.find(':');
  if (p == std::string::npos) return {v, ""};
  return {v.substr(0, p), v.substr(p + 1)};
}

OpinionKernel parse_h(const std::string& v) {
  const auto [name, arg] = split_arg(v);
  if (name == "unity") return OpinionKernel::unity();
  if (name == "local") return OpinionKernel::local();
  if (name == "bounded_confidence") return OpinionKernel::bounded_confidence(to_double("kernel_h", arg));
  if (name == "bounded_confidence_scaled") return OpinionKernel::bounded_confidence_scaled(to_double("kernel_h", arg));
  throw Error(ErrorCode::config, "key 'kernel_h': unknown kernel '" + v + "'");
}

std::string str_h(const OpinionKernel& h) {
  switch (h.kind()) {
    case OpinionKernel::Kind::unity: return "unity";
    case OpinionKernel::Kind::local: return "local";
    case OpinionKernel::Kind::bounded_confidence:
      return (h.scaled() ? "bounded_confidence_scaled:" : "bounded_confidence:") + format_double(h.delta());
  }
  return "?";
}

ConnectivityKernel parse_k(const std::string& v) {
  const auto [name, arg] = split_arg(v);
  if (name == "unity") return ConnectivityKernel::unity();
  if (name == "power" || name == "power_unclamped") {
    const auto ab = to_list("kernel_k", arg);
    if (ab.size() != 2) throw Error(ErrorCode::config, "key 'kernel_k': expected power:<a>,<b>");
    return ConnectivityKernel::power(ab[0], ab[1], name == "power");
  }
  throw Error(ErrorCode::config, "key 'kernel_k': unknown kernel '" + v + "'");
}

std::string str_k(const ConnectivityKernel& k) {
  if (k.kind() == ConnectivityKernel::Kind::unity) return "unity";
  return std::string(k.clamped() ? "power:" : "power_unclamped:") + format_double(k.a()) + "," + format_double(k.b());
}

DiffusionFunction parse_d(const std::string& v) {
  const auto [name, arg] = split_arg(v);
  if (name == "one_minus_w2") return DiffusionFunction::one_minus_w2();
  if (name == "constant") return DiffusionFunction::constant(to_double("diffusion", arg));
  if (name == "zero") return DiffusionFunction::zero();
  throw Error(ErrorCode::config, "key 'diffusion': unknown diffusion '" + v + "'");
}

std::string str_d(const DiffusionFunction& d) {
  switch (d.kind()) {
    case DiffusionFunction::Kind::one_minus_w2: return "one_minus_w2";
    case DiffusionFunction::Kind::constant: return "constant:" + format_double(d.value());
    case DiffusionFunction::Kind::zero: return "zero";
  }
  return "?";
}

// Table 1 values shared by every test.
ExperimentConfig table_base() {
  ExperimentConfig c;
  c.solver = SolverKind::fp;
  c.N = 80;
  c.c_max = 250;
  c.params.rate_mode = RateMode::constant;
  c.params.rate_r = 1.0;
  c.params.rate_a = 1.0;
  c.params.alpha = 0.1;
  c.params.beta = 0.0;
  c.params.gamma_policy = GammaPolicy::pinned;
  c.params.gamma_ref = 30.0;
  c.initial.gamma0 = 30.0;
  c.initial.alpha = 0.1;
  c.kernel = {OpinionKernel::unity(), ConnectivityKernel::unity()};
  c.diffusion = DiffusionFunction::one_minus_w2();
  c.dt = DtPolicy::parse("auto");
  return c;
}

}  // namespace

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::fp: return "fp";
    case SolverKind::mc: return "mc";
    case SolverKind::network_only: return "network-only";
    case SolverKind::moments: return "moments";
  }
  return "?";
}

std::string to_string(OracleKind o) {
  switch (o) {
    case OracleKind::none: return "none";
    case OracleKind::g_case1: return "g_case1";
    case OracleKind::f_product: return "f_product";
    case OracleKind::rho_inf: return "rho_inf";
  }
  return "?";
}

QuadratureRule parse_quadrature(const std::string& s) {
  if (s == "midpoint") return QuadratureRule::midpoint;
  if (s == "milne") return QuadratureRule::milne;
  throw Error(ErrorCode::config, "quadrature must be midpoint or milne, got '" + s + "'");
}

std::string to_string(QuadratureRule q) { return q == QuadratureRule::midpoint ? "midpoint" : "milne"; }

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c = table_base();
  c.preset = name;
  if (name == "test1") {
    c.params.sigma2 = 5e-2;
    c.initial.kind = InitialKind::test1_g0;
    c.initial.sigma_F2 = 6e-2;
    c.T = 10.0;
    c.dt = DtPolicy::parse("diffusive");
    c.params.epsilon = 5e-4;
    c.samples = 100000;
    c.oracle = OracleKind::g_case1;
  } else if (name == "test2") {
    c.params.sigma2 = 5e-2;
    c.initial.kind = InitialKind::test2_f0;
    c.initial.sigma_F2 = 6e-2;
    c.T = 20.0;
    c.oracle = OracleKind::f_product;
    // rates are required overrides, see parse_config
  } else if (name == "test3") {
    c.params.sigma2 = 5e-3;
    c.params.alpha = 1e-4;
    c.initial.kind = InitialKind::test3_f0;
    c.initial.sigma_F2 = 4e-2;
    c.initial.sigma_L2 = 2.5e-2;
    c.initial.alpha = 1e-4;
    c.kernel = {OpinionKernel::local(), ConnectivityKernel::power(3.0, 3.0, false)};
    c.T = 2.5;
  } else if (name == "test4") {
    c.params.sigma2 = 1e-3;
    c.initial.kind = InitialKind::test4_uniform;
    c.kernel = {OpinionKernel::bounded_confidence(0.25), ConnectivityKernel::unity()};
    c.T = 100.0;
  } else if (name == "fig1") {
    c.solver = SolverKind::network_only;
    c.network_mode = NetworkMode::stationary;
    c.c_max = 1500;
    c.alpha_sweep = {1e-1, 1e-2, 1e-3};
    c.initial.kind = InitialKind::dirac;
    c.initial.dirac_c = 30;
    c.T = 100.0;
    c.oracle = OracleKind::rho_inf;
  } else {
    throw Error(ErrorCode::config, "unknown preset '" + name + "' (expected test1, test2, test3, test4, fig1)");
  }
  c.snapshots = {c.T};
  return c;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& v) {
  auto& p = c.params;
  if (key == "solver") {
    if (v == "fp") c.solver = SolverKind::fp;
    else if (v == "mc") c.solver = SolverKind::mc;
    else if (v == "network-only") c.solver = SolverKind::network_only;
    else if (v == "moments") c.solver = SolverKind::moments;
    else throw Error(ErrorCode::config, "key 'solver': expected fp, mc, network-only or moments");
  } else if (key == "alpha") {
    p.alpha = to_double(key, v);
    c.initial.alpha = p.alpha;
  } else if (key == "beta") {
    p.beta = to_double(key, v);
  } else if (key == "rate_mode") {
    if (v == "constant") p.rate_mode = RateMode::constant;
    else if (v == "remark1") p.rate_mode = RateMode::remark1;
    else throw Error(ErrorCode::config, "key 'rate_mode': expected constant or remark1");
  } else if (key == "rate") {
    p.rate_r = p.rate_a = to_double(key, v);
  } else if (key == "rate_r") {
    p.rate_r = to_double(key, v);
  } else if (key == "rate_a") {
    p.rate_a = to_double(key, v);
  } else if (key == "sigma2") {
    p.sigma2 = to_double(key, v);
  } else if (key == "epsilon") {
    p.epsilon = to_double(key, v);
  } else if (key == "eta") {
    p.eta = to_double(key, v);
  } else if (key == "lambda_freq") {
    p.lambda_freq = to_double(key, v);
  } else if (key == "gamma_policy") {
    if (v == "dynamic") p.gamma_policy = GammaPolicy::dynamic;
    else if (v == "pinned") p.gamma_policy = GammaPolicy::pinned;
    else throw Error(ErrorCode::config, "key 'gamma_policy': expected dynamic or pinned");
  } else if (key == "gamma_ref") {
    p.gamma_ref = to_double(key, v);
  } else if (key == "gamma0") {
    c.initial.gamma0 = to_double(key, v);
  } else if (key == "c_max") {
    c.c_max = static_cast<int>(to_long(key, v));
  } else if (key == "N") {
    c.N = static_cast<int>(to_long(key, v));
  } else if (key == "T") {
    c.T = to_double(key, v);
  } else if (key == "dt") {
    c.dt = DtPolicy::parse(v);
  } else if (key == "seed") {
    const long s = to_long(key, v);
    if (s < 0) throw Error(ErrorCode::config, "key 'seed' must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "out_dir") {
    c.out_dir = v;
  } else if (key == "snapshots") {
    c.snapshots = to_list(key, v);
  } else if (key == "diag_interval") {
    c.diag_interval = to_double(key, v);
  } else if (key == "kernel_h") {
    c.kernel.h = parse_h(v);
  } else if (key == "kernel_k") {
    c.kernel.k = parse_k(v);
  } else if (key == "diffusion") {
    c.diffusion = parse_d(v);
  } else if (key == "quadrature") {
    c.quadrature = parse_quadrature(v);
  } else if (key == "initial") {
    c.initial.kind = parse_initial_kind(v);
  } else if (key == "sigma_F2") {
    c.initial.sigma_F2 = to_double(key, v);
  } else if (key == "sigma_L2") {
    c.initial.sigma_L2 = to_double(key, v);
  } else if (key == "dirac_w") {
    c.initial.dirac_w = to_double(key, v);
  } else if (key == "dirac_c") {
    c.initial.dirac_c = static_cast<int>(to_long(key, v));
  } else if (key == "initial_file") {
    c.initial.path = v;
  } else if (key == "samples") {
    c.samples = to_long(key, v);
  } else if (key == "mc_dt") {
    c.mc_dt = to_double(key, v);
  } else if (key == "mc_network") {
    c.mc_network = to_bool(key, v);
  } else if (key == "network_mode") {
    if (v == "evolve") c.network_mode = NetworkMode::evolve;
    else if (v == "stationary") c.network_mode = NetworkMode::stationary;
    else throw Error(ErrorCode::config, "key 'network_mode': expected evolve or stationary");
  } else if (key == "alpha_sweep") {
    c.alpha_sweep = to_list(key, v);
  } else if (key == "oracle") {
    if (v == "none") c.oracle = OracleKind::none;
    else if (v == "g_case1") c.oracle = OracleKind::g_case1;
    else if (v == "f_product") c.oracle = OracleKind::f_product;
    else if (v == "rho_inf") c.oracle = OracleKind::rho_inf;
    else throw Error(ErrorCode::config, "key 'oracle': expected none, g_case1, f_product or rho_inf");
  } else {
    throw Error(ErrorCode::config, "unknown key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  params.validate();
  if (N < 2) throw Error(ErrorCode::config, "N must be >= 2");
  if (c_max < 1) throw Error(ErrorCode::config, "c_max must be >= 1");
  if (!(T > 0.0)) throw Error(ErrorCode::config, "T must be > 0");
  if (diag_interval < 0.0) throw Error(ErrorCode::config, "diag_interval must be >= 0");
  if (initial.kind == InitialKind::custom && initial.path.empty())
    throw Error(ErrorCode::config, "initial = custom needs initial_file");
  if (solver == SolverKind::mc) {
    if (samples <= 0 || samples % 2 != 0) throw Error(ErrorCode::config, "samples must be positive and even");
    if (mc_dt < 0.0) throw Error(ErrorCode::config, "mc_dt must be >= 0");
  }
  for (double a : alpha_sweep)
    if (!(a > 0.0)) throw Error(ErrorCode::config, "alpha_sweep entries must be > 0");
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& c) {
  const auto& p = c.params;
  std::vector<std::pair<std::string, std::string>> out = {
      {"solver", to_string(c.solver)},
      {"alpha", format_double(p.alpha)},
      {"beta", format_double(p.beta)},
      {"rate_mode", p.rate_mode == RateMode::constant ? "constant" : "remark1"},
      {"rate_r", format_double(p.rate_r)},
      {"rate_a", format_double(p.rate_a)},
      {"sigma2", format_double(p.sigma2)},
      {"epsilon", format_double(p.epsilon)},
      {"eta", format_double(p.eta)},
      {"lambda_freq", format_double(p.lambda_freq)},
      {"gamma_policy", p.gamma_policy == GammaPolicy::pinned ? "pinned" : "dynamic"},
      {"gamma_ref", format_double(p.gamma_ref)},
      {"gamma0", format_double(c.initial.gamma0)},
      {"c_max", std::to_string(c.c_max)},
      {"N", std::to_string(c.N)},
      {"T", format_double(c.T)},
      {"dt", c.dt.str()},
      {"seed", std::to_string(c.seed)},
      {"out_dir", c.out_dir.string()},
      {"snapshots", join(c.snapshots)},
      {"diag_interval", format_double(c.diag_interval)},
      {"kernel_h", str_h(c.kernel.h)},
      {"kernel_k", str_k(c.kernel.k)},
      {"diffusion", str_d(c.diffusion)},
      {"quadrature", to_string(c.quadrature)},
      {"initial", to_string(c.initial.kind)},
      {"sigma_F2", format_double(c.initial.sigma_F2)},
      {"sigma_L2", format_double(c.initial.sigma_L2)},
      {"dirac_w", format_double(c.initial.dirac_w)},
      {"dirac_c", std::to_string(c.initial.dirac_c)},
      {"initial_file", c.initial.path},
      {"samples", std::to_string(c.samples)},
      {"mc_dt", format_double(c.mc_dt)},
      {"mc_network", c.mc_network ? "true" : "false"},
      {"network_mode", c.network_mode == NetworkMode::evolve ? "evolve" : "stationary"},
      {"alpha_sweep", join(c.alpha_sweep)},
      {"oracle", to_string(c.oracle)},
  };
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  struct Entry {
    std::string key, value;
    int line;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::config, source + ":" + std::to_string(lineno) + ": expected key = value");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty() || e.value.empty())
      throw Error(ErrorCode::config, source + ":" + std::to_string(lineno) + ": empty key or value");
    if (!seen.insert(e.key).second)
      throw Error(ErrorCode::config, source + ":" + std::to_string(lineno) + ": duplicate key '" + e.key + "'");
    entries.push_back(std::move(e));
  }

  ExperimentConfig cfg;
  const auto preset = std::find_if(entries.begin(), entries.end(), [](const Entry& e) { return e.key == "preset"; });
  if (preset != entries.end()) {
    try {
      cfg = preset_config(preset->value);
    } catch (const Error& err) {
      throw Error(ErrorCode::config, source + ":" + std::to_string(preset->line) + ": " + err.what());
    }
  } else {
    for (const char* key : {"solver", "initial", "T"})
      if (!seen.count(key)) throw Error(ErrorCode::config, source + ": missing required key '" + key + "'");
  }
  if (cfg.preset == "test2") {
    const bool both = seen.count("rate_r") && seen.count("rate_a");
    if (!seen.count("rate") && !both)
      throw Error(ErrorCode::config, source + ": missing required key 'rate' (or 'rate_r' and 'rate_a') for preset test2");
  }
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    try {
      apply_setting(cfg, e.key, e.value);
    } catch (const Error& err) {
      throw Error(ErrorCode::config, source + ":" + std::to_string(e.line) + ": " + err.what());
    }
  }
  if (!seen.count("snapshots")) cfg.snapshots = {cfg.T};
  try {
    cfg.validate();
  } catch (const Error& err) {
    throw Error(ErrorCode::config, source + ": " + err.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace kinnet
