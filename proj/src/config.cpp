#include "cosmic/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "cosmic/theorems.hpp"

namespace cosmic {

namespace {

const std::set<std::string> kKeys{"operator", "n_max",     "n_coords", "v",
                                  "k_max",    "schedule",  "x0",       "seed",
                                  "out",      "q",         "samples",  "box",
                                  "eps_angle", "min_norm", "fast_path"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value for " + key + ": '" + text + "'");
  }
  return value;
}

Vec parse_vec(const std::string& key, const std::string& text) {
  Vec out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    out.push_back(parse_number<double>(key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

OperatorKind parse_operator(const std::string& text) {
  if (text == "paper2d") return OperatorKind::Paper2d;
  if (text == "seqspace") return OperatorKind::Seqspace;
  if (text == "translation") return OperatorKind::Translation;
  throw ConfigError("unknown operator '" + text +
                    "' (expected paper2d, seqspace or translation)");
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Paper2d: return "paper2d";
    case OperatorKind::Seqspace: return "seqspace";
    case OperatorKind::Translation: return "translation";
  }
  return "unknown";
}

Settings parse_settings(std::istream& in) {
  Settings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings load_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_settings(in);
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"prox", 1e-12},         // coordinate accuracy of the 2-D prox
      {"step", 1e-9},          // slack on |x - T(x)| <= 1
      {"gamma", 1e-8},         // relative |Phi(x) - Psi(y)| along iterates
      {"nonexpansive", 1e-9},
      {"firm", 1e-9},
      {"hyperplane", 1e-8},
      {"monotone", 1e-8},
      {"pairwise", 0.0},
      {"cone", 1e-9},          // radians
      {"lemma", 1e-12},        // slack on the log(k+1) sandwich
  };
  return tols;
}

ExperimentConfig resolve(const Settings& settings, Command cmd) {
  ExperimentConfig cfg;
  cfg.tol = default_tolerances();
  for (const auto& [key, value] : settings) {
    if (key.starts_with("tol.")) {
      const std::string name = key.substr(4);
      if (!cfg.tol.contains(name)) throw ConfigError("unknown tolerance '" + name + "'");
      cfg.tol[name] = parse_number<double>(key, value);
      if (!(cfg.tol[name] >= 0.0)) throw ConfigError("tolerance " + name + " must be >= 0");
    } else if (!kKeys.contains(key)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };

  const std::string* op = get("operator");
  switch (cmd) {
    case Command::Run2d:
      if (op && *op != "paper2d") throw ConfigError("run2d needs operator = paper2d");
      cfg.op = OperatorKind::Paper2d;
      break;
    case Command::RunSeq:
      if (op && *op != "seqspace") throw ConfigError("runseq needs operator = seqspace");
      cfg.op = OperatorKind::Seqspace;
      break;
    default:
      cfg.op = op ? parse_operator(*op) : OperatorKind::Paper2d;
  }

  std::size_t dim = 0;
  switch (cfg.op) {
    case OperatorKind::Paper2d: {
      const std::string* n = get("n_max");
      if (!n) throw ConfigError("n_max is required for the paper2d operator");
      cfg.n_max = parse_number<int>("n_max", *n);
      if (cfg.n_max < 2 || cfg.n_max > 100) throw ConfigError("n_max must lie in [2, 100]");
      dim = 2;
      break;
    }
    case OperatorKind::Seqspace:
      if (const auto* n = get("n_coords")) cfg.n_coords = parse_number<std::size_t>("n_coords", *n);
      if (cfg.n_coords < 1) throw ConfigError("n_coords must be >= 1");
      dim = cfg.n_coords;
      break;
    case OperatorKind::Translation: {
      const std::string* v = get("v");
      if (!v) throw ConfigError("v is required for the translation operator");
      cfg.v = parse_vec("v", *v);
      dim = cfg.v.size();
      break;
    }
  }

  if (cmd != Command::Export) {
    const std::string* k = get("k_max");
    if (!k) throw ConfigError("k_max is required");
    const auto k_max = parse_number<long long>("k_max", *k);
    if (k_max < 1) throw ConfigError("k_max must be >= 1");
    cfg.k_max = static_cast<std::size_t>(k_max);
  }

  if (const auto* s = get("schedule")) {
    try {
      cfg.schedule = parse_schedule(*s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (std::holds_alternative<LevelCrossingSchedule>(cfg.schedule) &&
        cfg.op != OperatorKind::Paper2d) {
      throw ConfigError("the levels schedule is only defined for paper2d");
    }
  } else if (cfg.op == OperatorKind::Paper2d) {
    cfg.schedule = LevelCrossingSchedule{};
  } else if (cfg.op == OperatorKind::Seqspace && cmd == Command::RunSeq) {
    cfg.schedule = GeometricSchedule{10.0};
  } else {
    cfg.schedule = GeometricSchedule{2.0};
  }

  cfg.x0.assign(dim, 0.0);
  if (const auto* x = get("x0")) {
    cfg.x0 = parse_vec("x0", *x);
    if (cfg.x0.size() != dim) {
      throw ConfigError("x0 has " + std::to_string(cfg.x0.size()) + " coordinates, expected " +
                        std::to_string(dim));
    }
  }

  cfg.seed = kDefaultSeed;
  if (const auto* s = get("seed")) cfg.seed = parse_number<std::uint64_t>("seed", *s);
  cfg.out_dir = "out";
  if (const auto* o = get("out")) cfg.out_dir = *o;
  if (const auto* s = get("samples")) cfg.samples = parse_number<std::size_t>("samples", *s);
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (const auto* b = get("box")) cfg.box = parse_number<double>("box", *b);
  if (!(cfg.box > 0.0)) throw ConfigError("box must be positive");
  if (const auto* e = get("eps_angle")) cfg.eps_angle = parse_number<double>("eps_angle", *e);
  if (!(cfg.eps_angle > 0.0 && cfg.eps_angle < 1.5707963267948966)) {
    throw ConfigError("eps_angle must lie in (0, pi/2)");
  }
  if (const auto* m = get("min_norm")) cfg.min_norm = parse_number<double>("min_norm", *m);
  if (!(cfg.min_norm > 0.0)) throw ConfigError("min_norm must be positive");
  if (const auto* f = get("fast_path")) {
    if (*f != "true" && *f != "false") throw ConfigError("fast_path must be true or false");
    cfg.fast_path = *f == "true";
  }
  if (const auto* q = get("q")) {
    std::size_t pos = 0;
    while (pos <= q->size()) {
      const auto semi = q->find(';', pos);
      Vec dir = parse_vec("q", trim(q->substr(pos, semi == std::string::npos
                                                       ? std::string::npos
                                                       : semi - pos)));
      if (dir.size() != dim) throw ConfigError("q has the wrong dimension");
      const double n = norm(dir);
      if (!(n > 0.0)) throw ConfigError("q must be nonzero");
      for (double& c : dir) c /= n;
      cfg.q.push_back(std::move(dir));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
  }
  if (!(cfg.tol.at("prox") > 0.0)) throw ConfigError("tol.prox must be positive");
  return cfg;
}

Settings describe(const ExperimentConfig& config) {
  Settings s;
  s["operator"] = to_string(config.op);
  switch (config.op) {
    case OperatorKind::Paper2d: s["n_max"] = std::to_string(config.n_max); break;
    case OperatorKind::Seqspace: s["n_coords"] = std::to_string(config.n_coords); break;
    case OperatorKind::Translation: s["v"] = fmt(config.v); break;
  }
  s["k_max"] = std::to_string(config.k_max);
  s["schedule"] = to_string(config.schedule);
  const bool all_zero =
      std::all_of(config.x0.begin(), config.x0.end(), [](double c) { return c == 0.0; });
  s["x0"] = all_zero && config.x0.size() > 16
                ? "zeros(" + std::to_string(config.x0.size()) + ")"
                : fmt(config.x0);
  s["seed"] = std::to_string(config.seed);
  s["out"] = config.out_dir;
  std::string qs;
  for (std::size_t i = 0; i < config.q.size(); ++i) {
    if (i > 0) qs += ';';
    qs += fmt(config.q[i]);
  }
  if (!qs.empty()) s["q"] = qs;
  s["samples"] = std::to_string(config.samples);
  s["box"] = fmt(config.box);
  s["eps_angle"] = fmt(config.eps_angle);
  s["min_norm"] = fmt(config.min_norm);
  s["fast_path"] = config.fast_path ? "true" : "false";
  for (const auto& [name, value] : config.tol) s["tol." + name] = fmt(value);
  return s;
}

}  // namespace cosmic
