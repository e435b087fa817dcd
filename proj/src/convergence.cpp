#include "cartweno/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include "cartweno/parallel.hpp"

namespace cartweno {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string exact_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error("malformed number '" + s + "' in report");
  return v;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string sci(double v, int digits = 5) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << v;
  return os.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_doubling(std::span<const int> grids) {
  if (grids.empty()) throw ConfigError("convergence study needs at least one grid");
  for (std::size_t k = 0; k < grids.size(); ++k) {
    if (grids[k] < 1) throw ConfigError("grid sizes must be positive");
    if (k > 0 && grids[k] != 2 * grids[k - 1]) {
      throw ConfigError("grid sequence must double: " + std::to_string(grids[k - 1]) + " then " +
                        std::to_string(grids[k]));
    }
  }
}

}  // namespace

double eoc(double coarse_error, double fine_error) {
  if (!(coarse_error > 0.0) || !(fine_error > 0.0)) {
    throw Error("eoc needs positive errors");
  }
  return std::log(coarse_error / fine_error) / std::log(2.0);
}

std::vector<std::optional<double>> ConvergenceReport::eocs() const {
  std::vector<std::optional<double>> out;
  for (std::size_t k = 1; k < rows.size(); ++k) out.push_back(rows[k].eoc);
  return out;
}

std::optional<double> ConvergenceReport::final_eoc() const {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->eoc) return it->eoc;
  }
  return std::nullopt;
}

std::optional<double> ConvergenceReport::error_at(int grid) const {
  for (const auto& r : rows) {
    if (r.grid == grid) return r.l1_error;
  }
  return std::nullopt;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << "# problem = " << problem << '\n'
     << "# scheme = " << scheme << '\n'
     << "# method = " << method << '\n'
     << "# flux = " << flux << '\n'
     << "# integrator = " << integrator << '\n'
     << "# cfl = " << exact_double(cfl) << '\n'
     << "# t_end = " << exact_double(t_end) << '\n'
     << "grid,l1_error,eoc,wall_s,steps,status\n";
  for (const auto& r : rows) {
    os << r.grid << ',' << (r.l1_error ? exact_double(*r.l1_error) : "") << ','
       << (r.eoc ? exact_double(*r.eoc) : "") << ',' << exact_double(r.wall_s) << ',' << r.steps
       << ',' << sanitize(r.status) << '\n';
  }
  return os.str();
}

ConvergenceReport ConvergenceReport::from_csv(std::string_view text) {
  ConvergenceReport rep;
  std::map<std::string, std::string> meta;
  std::istringstream is{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      meta[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    if (!header) {
      if (trim(line) != "grid,l1_error,eoc,wall_s,steps,status") {
        throw Error("unexpected report header: " + line);
      }
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw Error("report row needs 6 fields: " + line);
    StudyRow r;
    r.grid = std::stoi(f[0]);
    if (!f[1].empty()) r.l1_error = parse_double(f[1]);
    if (!f[2].empty()) r.eoc = parse_double(f[2]);
    r.wall_s = parse_double(f[3]);
    r.steps = std::stoll(f[4]);
    r.status = f[5];
    rep.rows.push_back(r);
  }
  if (!header) throw Error("report has no header line");
  rep.problem = meta["problem"];
  rep.scheme = meta["scheme"];
  rep.method = meta["method"];
  rep.flux = meta["flux"];
  rep.integrator = meta["integrator"];
  if (!meta["cfl"].empty()) rep.cfl = parse_double(meta["cfl"]);
  if (!meta["t_end"].empty()) rep.t_end = parse_double(meta["t_end"]);
  return rep;
}

std::string ConvergenceReport::to_table() const { return format_table({this, 1}); }

std::string format_table(std::span<const ConvergenceReport> reports) {
  if (reports.empty()) return {};
  std::ostringstream os;
  const auto& first = reports.front();
  os << first.problem << ", " << first.scheme << " + " << first.integrator << ", " << first.flux
     << ", cfl " << first.cfl << ", t = " << first.t_end << "\n";
  constexpr int kGrid = 10;
  constexpr int kErr = 13;
  constexpr int kEoc = 7;
  os << std::left << std::setw(kGrid) << "grid";
  for (const auto& r : reports) {
    os << "| " << std::setw(kErr + kEoc) << r.method;
  }
  os << '\n' << std::setw(kGrid) << "";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    os << "| " << std::setw(kErr) << "L1 error" << std::setw(kEoc) << "EOC";
  }
  os << '\n';
  for (std::size_t row = 0; row < first.rows.size(); ++row) {
    const int g = first.rows[row].grid;
    os << std::setw(kGrid) << (std::to_string(g) + "^2");
    for (const auto& r : reports) {
      std::string err = "-";
      std::string e = "";
      if (row < r.rows.size()) {
        const auto& sr = r.rows[row];
        err = sr.l1_error ? sci(*sr.l1_error) : "failed";
        if (sr.eoc) {
          std::ostringstream es;
          es << std::fixed << std::setprecision(2) << *sr.eoc;
          e = es.str();
        }
      }
      os << "| " << std::setw(kErr) << err << std::setw(kEoc) << e;
    }
    os << '\n';
  }
  return os.str();
}

CellField compute_reference(const Problem& problem, int n, double t_end, double cfl) {
  SchemeConfig ref;
  ref.scheme = {WenoOrder::Seventh, Weighting::Z};
  ref.method = Method::Method3;
  ref.flux = FluxKind::LaxFriedrichs;
  ref.cfl = cfl;
  ref.bc_x = ref.bc_y = problem.bc;
  ref.gamma = problem.gamma;
  CellField field = init_problem(problem, problem.grid(n, ref.required_ghost()));
  advance_inplace(field, t_end, ref, tableau_rk7());
  return field;
}

ConvergenceReport run_convergence_study(const Problem& problem, SchemeConfig config,
                                        const ButcherTableau& tableau, std::span<const int> grids,
                                        const StudyOptions& options) {
  check_doubling(grids);
  config.bc_x = config.bc_y = problem.bc;
  config.gamma = problem.gamma;
  config.validate();
  const double t_end = options.t_end.value_or(problem.t_end);

  ConvergenceReport rep;
  rep.problem = problem.name;
  rep.scheme = config.scheme.name();
  rep.method = to_string(config.method);
  rep.flux = to_string(config.flux, config.alpha);
  rep.integrator = tableau.name;
  rep.cfl = config.cfl;
  rep.t_end = t_end;

  std::optional<CellField> own_reference;
  const CellField* reference = options.reference;
  if (options.policy == ReferencePolicy::SelfRefined && reference == nullptr) {
    const int n = options.reference_grid > 0 ? options.reference_grid : 4 * grids.back();
    own_reference.emplace(compute_reference(problem, n, t_end));
    reference = &*own_reference;
  }
  if (reference != nullptr) {
    for (int g : grids) {
      if (reference->spec().nx() % g != 0 || reference->spec().ny() % g != 0) {
        throw ConfigError("reference grid is not a multiple of study grid " + std::to_string(g));
      }
    }
  }

  for (int g : grids) {
    StudyRow row;
    row.grid = g;
    const auto start = Clock::now();
    try {
      CellField field = init_problem(problem, problem.grid(g, config.required_ghost()));
      AdvanceOptions adv;
      adv.max_steps = options.max_steps;
      row.steps = advance_inplace(field, t_end, config, tableau, adv);
      row.wall_s = seconds_since(start);
      if (options.policy == ReferencePolicy::Exact) {
        row.l1_error = l1_error(field, exact_solution(problem, field.spec(), t_end), 0);
      } else {
        CellField coarse = restrict_field(*reference, reference->spec().nx() / g);
        // Compare interiors on the same spec (ghost width may differ).
        CellField ref_on_grid(field.spec());
        for (int j = 0; j < g; ++j) {
          for (int i = 0; i < g; ++i) ref_on_grid.set_state(i, j, coarse.state(i, j));
        }
        row.l1_error = l1_error(field, ref_on_grid, 0);
      }
    } catch (const std::exception& e) {
      row.wall_s = seconds_since(start);
      row.status = sanitize(std::string("failed: ") + e.what());
    }
    if (!rep.rows.empty() && row.l1_error && rep.rows.back().l1_error) {
      const double prev = *rep.rows.back().l1_error;
      if (prev > 0.0 && *row.l1_error > 0.0) row.eoc = eoc(prev, *row.l1_error);
    }
    rep.rows.push_back(row);
    if (options.on_row) options.on_row(rep.rows.back());
  }
  return rep;
}

std::string PerfReport::to_csv() const {
  std::ostringstream os;
  os << "# problem = " << problem << "\n# scheme = " << scheme << "\n# integrator = " << integrator
     << "\n# grid = " << grid << "\n# steps = " << steps << "\n# threads = " << threads << '\n'
     << "method,median_s,normalized\n";
  for (const auto& r : rows) {
    os << static_cast<int>(r.method) << ',' << exact_double(r.median_s) << ','
       << exact_double(r.normalized) << '\n';
  }
  return os.str();
}

std::string PerfReport::to_table() const {
  std::ostringstream os;
  os << problem << ", " << scheme << " + " << integrator << ", " << grid << "^2, " << steps
     << " steps, " << threads << " thread(s)\n";
  os << std::left << std::setw(10) << "method" << std::setw(14) << "median [s]"
     << "normalized\n";
  for (const auto& r : rows) {
    std::ostringstream n;
    n << std::fixed << std::setprecision(2) << r.normalized;
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << r.median_s;
    os << std::setw(10) << static_cast<int>(r.method) << std::setw(14) << s.str() << n.str()
       << '\n';
  }
  return os.str();
}

const PerfRow& PerfReport::row(Method m) const {
  for (const auto& r : rows) {
    if (r.method == m) return r;
  }
  throw Error("perf report has no row for " + to_string(m));
}

PerfReport perf_report(const Problem& problem, SchemeConfig config, const ButcherTableau& tableau,
                       int grid, int steps, int repetitions) {
  if (steps < 1 || repetitions < 1) throw ConfigError("perf needs steps >= 1, repetitions >= 1");
  config.bc_x = config.bc_y = problem.bc;
  config.gamma = problem.gamma;
  const Method methods[3] = {Method::Method1, Method::Method2, Method::Method3};
  const GridSpec spec = problem.grid(grid, 4);
  const CellField initial = init_problem(problem, spec);
  const double dt = compute_dt(initial, config);

  PerfReport rep;
  rep.problem = problem.name;
  rep.scheme = config.scheme.name();
  rep.integrator = tableau.name;
  rep.grid = grid;
  rep.steps = steps;
  rep.threads = thread_count();
  for (Method m : methods) rep.rows.push_back(PerfRow{m, {}, 0.0, 0.0});

  auto run = [&](Method m, int n) {
    SchemeConfig c = config;
    c.method = m;
    Solver solver(c);
    RkWorkspace work;
    CellField field = initial;
    const RhsOperator rhs = [&solver](CellField& stage, Tendency& out) {
      solver.evaluate_stage(stage, out);
    };
    const auto start = Clock::now();
    for (int k = 0; k < n; ++k) rk_step_inplace(field, rhs, tableau, dt, work);
    return seconds_since(start);
  };

  for (Method m : methods) run(m, 1);  // warm-up
  for (int rep_i = 0; rep_i < repetitions; ++rep_i) {
    for (std::size_t k = 0; k < 3; ++k) rep.rows[k].samples.push_back(run(methods[k], steps));
  }
  for (auto& r : rep.rows) {
    std::vector<double> s = r.samples;
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    r.median_s = n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  }
  for (auto& r : rep.rows) r.normalized = r.median_s / rep.rows[0].median_s;
  return rep;
}

}  // namespace cartweno
