#include "cartweno/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <set>

namespace cartweno {

namespace {

template <typename T>
T convert(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean '" + v + "' for " + key);
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, comma - pos));
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw ConfigError("empty entry in list '" + std::string(text) + "'");
    item = item.substr(b, e - b + 1);
    out.push_back(convert<int>("list", item));
    pos = comma + 1;
  }
  return out;
}

std::vector<Method> parse_method_list(std::string_view text) {
  std::vector<Method> out;
  for (int m : parse_int_list(text)) out.push_back(parse_method(std::to_string(m)));
  return out;
}

void load_run_config(const std::filesystem::path& path, RunConfig& cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  const std::set<std::string> sections = {"problem", "scheme", "output"};
  for (const auto& [section, body] : tree) {
    if (!sections.contains(section)) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, node] : body) {
      const std::string v = node.get_value<std::string>();
      const std::string k = section + "." + key;
      if (k == "problem.name") {
        cfg.problem = v;
      } else if (k == "problem.riemann_file") {
        cfg.riemann_file = std::filesystem::path(v);
      } else if (k == "problem.t_end") {
        cfg.t_end = convert<double>(k, v);
      } else if (k == "problem.grids") {
        cfg.grids = parse_int_list(v);
      } else if (k == "problem.reference") {
        cfg.reference = v;
      } else if (k == "problem.reference_grid") {
        cfg.reference_grid = convert<int>(k, v);
      } else if (k == "scheme.scheme") {
        cfg.scheme = v;
      } else if (k == "scheme.method") {
        cfg.methods = parse_method_list(v);
      } else if (k == "scheme.flux") {
        cfg.flux = v;
      } else if (k == "scheme.integrator") {
        cfg.integrator = v;
      } else if (k == "scheme.cfl") {
        cfg.cfl = convert<double>(k, v);
      } else if (k == "scheme.linear_weights") {
        cfg.linear_weights = to_bool(k, v);
      } else if (k == "output.out") {
        cfg.out = v;
      } else if (k == "output.threads") {
        cfg.threads = convert<int>(k, v);
      } else if (k == "output.perf_steps") {
        cfg.perf_steps = convert<int>(k, v);
      } else if (k == "output.perf_repetitions") {
        cfg.perf_repetitions = convert<int>(k, v);
      } else {
        throw ConfigError("unknown config key " + k);
      }
    }
  }
}

Problem resolve_problem(const RunConfig& cfg) {
  return parse_problem(cfg.problem, cfg.riemann_file);
}

ReconstructionScheme resolve_scheme(const RunConfig& cfg, const Problem& problem) {
  std::string name = cfg.scheme;
  if (name.empty()) name = problem.kind == ProblemKind::Riemann2D ? "js5" : "z5";
  ReconstructionScheme s = ReconstructionScheme::parse(name);
  if (cfg.linear_weights) s.weighting = Weighting::Linear;
  return s;
}

SchemeConfig resolve_scheme_config(const RunConfig& cfg, const Problem& problem, Method method) {
  SchemeConfig c;
  c.scheme = resolve_scheme(cfg, problem);
  c.method = method;
  std::string flux = cfg.flux;
  if (flux.empty()) flux = problem.kind == ProblemKind::Riemann2D ? "roe" : "lf";
  c.flux = parse_flux(flux, &c.alpha);
  c.cfl = cfg.cfl;
  c.bc_x = c.bc_y = problem.bc;
  c.gamma = problem.gamma;
  c.validate();
  return c;
}

ButcherTableau resolve_tableau(const RunConfig& cfg, const ReconstructionScheme& scheme) {
  std::string name = cfg.integrator;
  if (name.empty()) name = scheme.order == WenoOrder::Fifth ? "rk5" : "rk7";
  if (name == "rk5") return tableau_rk5();
  if (name == "rk7") return tableau_rk7();
  throw ConfigError("unknown integrator '" + name + "' (expected rk5 or rk7)");
}

}  // namespace cartweno
