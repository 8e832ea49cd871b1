#include "wn/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wn {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw ConfigError("bad numeric value for " + what + ": '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw ConfigError("bad integer value for " + what + ": '" + s + "'");
  }
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (const std::string& tok : split(s, ',')) {
    out.push_back(parse_double(tok, what));
  }
  return out;
}

// "(re,im)" tuples separated by whitespace or between-tuple commas
std::vector<std::complex<double>> parse_complex_list(const std::string& s,
                                                     const std::string& what) {
  std::vector<std::complex<double>> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    if (i >= s.size()) break;
    if (s[i] != '(') throw ConfigError("bad complex tuple in " + what + ": '" + s + "'");
    const size_t close = s.find(')', i);
    if (close == std::string::npos) {
      throw ConfigError("unterminated complex tuple in " + what);
    }
    const std::vector<std::string> parts = split(s.substr(i + 1, close - i - 1), ',');
    if (parts.size() != 2) {
      throw ConfigError("complex tuple needs (re,im) in " + what);
    }
    out.emplace_back(parse_double(parts[0], what), parse_double(parts[1], what));
    i = close + 1;
  }
  if (out.empty()) throw ConfigError("empty complex list for " + what);
  return out;
}

std::vector<int> parse_order(const std::string& value, int n, const std::string& what) {
  const std::string v = trim(value);
  if (v == "canonical") return canonical_order(n);
  if (v == "zyz") {
    if (n != 3) throw ConfigError("order 'zyz' needs N = 2");
    return zyz_order();
  }
  std::vector<int> order;
  for (const std::string& tok : split(v, ',')) {
    const int idx = parse_int(tok, what);
    if (idx < 1 || idx > n) {
      throw ConfigError("order index out of range in " + what + ": " + tok);
    }
    order.push_back(idx - 1);
  }
  if (order.empty()) throw ConfigError("empty order in " + what);
  return order;
}

std::string order_to_text(const std::vector<int>& order) {
  std::string s;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(order[k] + 1);
  }
  return s;
}

}  // namespace

std::string format_g17(double x) {
  if (x == 0.0) return "0";  // avoid "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::string* ConfigDoc::find(const std::string& section,
                                   const std::string& key) const {
  for (const Section& s : sections) {
    if (s.name != section) continue;
    for (const auto& [k, v] : s.entries) {
      if (k == key) return &v;
    }
  }
  return nullptr;
}

void ConfigDoc::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  for (Section& s : sections) {
    if (s.name != section) continue;
    for (auto& [k, v] : s.entries) {
      if (k == key) {
        v = value;
        return;
      }
    }
    s.entries.emplace_back(key, value);
    return;
  }
  sections.push_back({section, {{key, value}}});
}

void ConfigDoc::set_path(const std::string& path, const std::string& value) {
  const std::vector<std::string> parts = split(path, '.');
  if (parts.size() < 2) {
    throw ConfigError("bad sweep path: " + path);
  }
  auto join = [&parts](size_t from, size_t to) {
    std::string s;
    for (size_t k = from; k < to; ++k) {
      if (k > from) s += ".";
      s += parts[k];
    }
    return s;
  };

  // a trailing integer indexes into a comma list, 1-based; section names may
  // themselves contain dots (control.1 and friends)
  const std::string& last = parts.back();
  const bool indexed =
      parts.size() >= 3 && !last.empty() &&
      std::all_of(last.begin(), last.end(),
                  [](unsigned char c) { return std::isdigit(c); });
  if (indexed) {
    const std::string section = join(0, parts.size() - 2);
    const std::string& key = parts[parts.size() - 2];
    const std::string* cur = find(section, key);
    if (!cur) throw ConfigError("sweep path not found: " + path);
    std::vector<std::string> items = split(*cur, ',');
    const int idx = parse_int(last, "sweep path index");
    if (idx < 1 || static_cast<size_t>(idx) > items.size()) {
      throw ConfigError("sweep path index out of range: " + path);
    }
    items[static_cast<size_t>(idx - 1)] = value;
    std::string joined;
    for (size_t k = 0; k < items.size(); ++k) {
      if (k) joined += ", ";
      joined += items[k];
    }
    set(section, key, joined);
    return;
  }
  set(join(0, parts.size() - 1), parts.back(), value);
}

ConfigDoc parse_config_text(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      }
      doc.sections.push_back({section, {}});
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": entry outside a section");
    }
    doc.sections.back().entries.emplace_back(trim(line.substr(0, eq)),
                                             trim(line.substr(eq + 1)));
  }
  return doc;
}

std::string serialize_config(const ConfigDoc& doc) {
  std::ostringstream os;
  bool first = true;
  for (const ConfigDoc::Section& s : doc.sections) {
    if (!first) os << "\n";
    first = false;
    os << "[" << s.name << "]\n";
    for (const auto& [k, v] : s.entries) {
      os << k << " = " << v << "\n";
    }
  }
  return os.str();
}

namespace {

ControlChannel parse_channel(const ConfigDoc& doc, const std::string& section) {
  const std::string* type = doc.find(section, "type");
  if (!type) throw ConfigError(section + ": missing 'type'");
  if (*type == "constant") {
    const std::string* value = doc.find(section, "value");
    if (!value) throw ConfigError(section + ": constant channel needs 'value'");
    return ControlChannel::constant(parse_double(*value, section + ".value"));
  }
  const std::string* times = doc.find(section, "times");
  const std::string* values = doc.find(section, "values");
  if (!times || !values) {
    throw ConfigError(section + ": piecewise channel needs 'times' and 'values'");
  }
  try {
    if (*type == "piecewise_constant") {
      return ControlChannel::piecewise_constant(
          parse_double_list(*times, section + ".times"),
          parse_double_list(*values, section + ".values"));
    }
    if (*type == "piecewise_linear") {
      return ControlChannel::piecewise_linear(
          parse_double_list(*times, section + ".times"),
          parse_double_list(*values, section + ".values"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(section + ": " + e.what());
  }
  throw ConfigError(section + ": unknown channel type '" + *type + "'");
}

}  // namespace

ScenarioConfig config_from_doc(const ConfigDoc& doc) {
  ScenarioConfig cfg;
  cfg.doc = doc;

  const std::string* nval = doc.find("system", "N");
  if (!nval) throw ConfigError("[system] N is required");
  cfg.N = parse_int(*nval, "system.N");
  if (cfg.N < 2) throw ConfigError("system.N must be >= 2");
  const int n = cfg.N * cfg.N - 1;

  const std::string* horizon = doc.find("system", "horizon");
  if (!horizon) throw ConfigError("[system] horizon is required");
  cfg.horizon = parse_double(*horizon, "system.horizon");
  if (!(cfg.horizon > 0.0)) throw ConfigError("system.horizon must be positive");

  const std::string* step = doc.find("system", "step");
  if (!step) throw ConfigError("[system] step is required");
  cfg.step = parse_double(*step, "system.step");
  if (!(cfg.step > 0.0)) throw ConfigError("system.step must be positive");
  cfg.options.step = cfg.step;

  const std::string* order = doc.find("system", "order");
  cfg.order = order ? parse_order(*order, n, "system.order") : canonical_order(n);
  if (static_cast<int>(cfg.order.size()) != n) {
    throw ConfigError("system.order must list exactly n = N^2 - 1 factors");
  }

  cfg.drift = Eigen::VectorXd::Zero(n);
  if (const std::string* a = doc.find("drift", "a")) {
    const std::vector<double> vals = parse_double_list(*a, "drift.a");
    if (static_cast<int>(vals.size()) != n) {
      throw ConfigError("drift.a must have n = N^2 - 1 entries");
    }
    for (int k = 0; k < n; ++k) cfg.drift(k) = vals[static_cast<size_t>(k)];
  }

  cfg.controls.assign(static_cast<size_t>(n), ControlChannel());
  for (const ConfigDoc::Section& s : doc.sections) {
    if (s.name.rfind("control.", 0) != 0) continue;
    const int j = parse_int(s.name.substr(8), s.name);
    if (j < 1 || j > n) {
      throw ConfigError(s.name + ": channel index out of range (1.." +
                        std::to_string(n) + ")");
    }
    cfg.controls[static_cast<size_t>(j - 1)] = parse_channel(doc, s.name);
  }

  cfg.psi0 = Eigen::VectorXcd::Zero(cfg.N);
  cfg.psi0(0) = 1.0;
  if (const std::string* psi = doc.find("state", "psi0")) {
    const auto vals = parse_complex_list(*psi, "state.psi0");
    if (static_cast<int>(vals.size()) != cfg.N) {
      throw ConfigError("state.psi0 must have N components");
    }
    for (int k = 0; k < cfg.N; ++k) cfg.psi0(k) = vals[static_cast<size_t>(k)];
    if (cfg.psi0.norm() < 1e-12) throw ConfigError("state.psi0 is zero");
    cfg.psi0.normalize();
  }

  if (const std::string* kind = doc.find("policy", "kind")) {
    if (*kind == "reanchor") cfg.options.policy = ChartSwitchPolicy::ReAnchor;
    else if (*kind == "switch_order") cfg.options.policy = ChartSwitchPolicy::SwitchOrder;
    else if (*kind == "error") cfg.options.policy = ChartSwitchPolicy::Error;
    else throw ConfigError("policy.kind must be reanchor | switch_order | error");
  }
  if (const std::string* alts = doc.find("policy", "alternates")) {
    for (const std::string& item : split(*alts, '|')) {
      if (item.empty()) continue;
      cfg.options.alternate_orders.push_back(parse_order(item, n, "policy.alternates"));
      if (static_cast<int>(cfg.options.alternate_orders.back().size()) != n) {
        throw ConfigError("policy.alternates entries must have n factors");
      }
    }
  }
  if (const std::string* ro = doc.find("policy", "reanchor_order")) {
    if (*ro != "canonical") {
      cfg.options.reanchor_order = parse_order(*ro, n, "policy.reanchor_order");
      if (static_cast<int>(cfg.options.reanchor_order.size()) != n) {
        throw ConfigError("policy.reanchor_order must have n factors");
      }
    }
  }
  if (const std::string* eps = doc.find("policy", "eps_singular")) {
    cfg.options.eps_singular = parse_double(*eps, "policy.eps_singular");
  }
  if (const std::string* tol = doc.find("policy", "defect_tol")) {
    if (*tol != "auto") cfg.options.defect_tol = parse_double(*tol, "policy.defect_tol");
  }
  if (const std::string* tol = doc.find("policy", "consistency_tol")) {
    cfg.options.consistency_tol = parse_double(*tol, "policy.consistency_tol");
  }
  if (const std::string* f = doc.find("policy", "force_reanchor_at")) {
    cfg.options.forced_reanchor_times = parse_double_list(*f, "policy.force_reanchor_at");
  }

  if (const std::string* v = doc.find("output", "dir")) cfg.output.dir = *v;
  if (const std::string* v = doc.find("output", "gamma_csv")) cfg.output.gamma_csv = *v;
  if (const std::string* v = doc.find("output", "state_csv")) cfg.output.state_csv = *v;
  if (const std::string* v = doc.find("output", "report")) cfg.output.report = *v;

  return cfg;
}

ScenarioConfig parse_scenario(const std::string& text) {
  return config_from_doc(parse_config_text(text));
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

namespace {

std::string complex_matrix_text(const Eigen::MatrixXcd& m, const std::string& indent) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << indent;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << "  ";
      os << "(" << format_g17(m(r, c).real()) << "," << format_g17(m(r, c).imag()) << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "status: " << status << "\n";
  os << "N: " << N << "\n";
  os << "order: " << order_to_text(order) << "\n";
  os << "horizon: " << format_g17(horizon) << "\n";
  os << "step: " << format_g17(step) << "\n";
  os << "final_gamma:";
  for (Eigen::Index k = 0; k < final_gamma.size(); ++k) {
    os << " " << format_g17(final_gamma(k));
  }
  os << "\n";
  os << "final_unitary_gamma_route:\n"
     << complex_matrix_text(final_unitary_gamma_route, "  ");
  os << "final_unitary_oracle:\n" << complex_matrix_text(final_unitary_oracle, "  ");
  os << "frobenius_discrepancy: " << format_g17(frobenius_discrepancy) << "\n";
  os << "state_error_phase_insensitive: " << format_g17(state_error_phase_insensitive)
     << "\n";
  os << "min_abs_det_xi: " << format_g17(min_abs_det_xi) << "\n";
  os << "chart_switch_count: " << events.size() << "\n";
  for (const ChartEvent& e : events) {
    os << "chart_switch: t=" << format_g17(e.time) << " from=" << order_to_text(e.from_order)
       << " to=" << order_to_text(e.to_order) << " reason=" << e.reason << "\n";
  }
  os << "wall_time_s: " << format_g17(wall_time_s) << "\n";
  return os.str();
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::shared_ptr<const LieBasis> basis = make_su_basis(cfg.N);
  const int n = basis->dim();

  std::vector<ControlChannel> controls = cfg.controls;
  controls.resize(static_cast<size_t>(n));
  ControlSchedule schedule(cfg.drift, std::move(controls), cfg.horizon);
  schedule.validate();

  const GammaChart start(basis, cfg.order);

  RunResult result;
  result.psi0 = cfg.psi0;
  result.gamma_trajectory = integrate_gamma(start, schedule, cfg.options);
  result.oracle_trajectory = integrate_unitary(*basis, schedule, cfg.step);

  RunReport& rep = result.report;
  rep.N = cfg.N;
  rep.order = cfg.order;
  rep.horizon = cfg.horizon;
  rep.step = cfg.step;
  rep.final_gamma = result.gamma_trajectory.final_sample().gamma;
  rep.final_unitary_gamma_route = result.gamma_trajectory.final_unitary();
  rep.final_unitary_oracle = result.oracle_trajectory.final_unitary();
  rep.frobenius_discrepancy =
      (rep.final_unitary_gamma_route - rep.final_unitary_oracle).norm();
  const Eigen::VectorXcd s_gamma = rep.final_unitary_gamma_route * cfg.psi0;
  const Eigen::VectorXcd s_oracle = rep.final_unitary_oracle * cfg.psi0;
  rep.state_error_phase_insensitive = phase_insensitive_error(s_gamma, s_oracle);
  rep.min_abs_det_xi = result.gamma_trajectory.min_abs_det;
  rep.events = result.gamma_trajectory.events;
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::string gamma_csv_text(const GammaTrajectory& traj) {
  std::ostringstream os;
  const int n = traj.basis->dim();
  os << "t";
  for (int k = 1; k <= n; ++k) os << ",gamma_" << k;
  os << ",det_xi\n";
  for (const TrajectorySample& s : traj.samples) {
    os << format_g17(s.time);
    for (Eigen::Index k = 0; k < s.gamma.size(); ++k) {
      os << "," << format_g17(s.gamma(k));
    }
    os << "," << format_g17(s.det_xi) << "\n";
  }
  return os.str();
}

std::string state_csv_text(const GammaTrajectory& traj, const Eigen::VectorXcd& psi0) {
  std::ostringstream os;
  const int N = traj.basis->dim_rep();
  os << "t";
  for (int k = 1; k <= N; ++k) os << ",re(y_" << k << "),im(y_" << k << ")";
  os << "\n";
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const Eigen::VectorXcd psi = traj.unitary_at(i) * psi0;
    os << format_g17(traj.samples[i].time);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      os << "," << format_g17(psi(k).real()) << "," << format_g17(psi(k).imag());
    }
    os << "\n";
  }
  return os.str();
}

std::string write_outputs(const ScenarioConfig& cfg, const RunResult& result,
                          const std::string& dir_override) {
  namespace fs = std::filesystem;
  const fs::path dir = dir_override.empty() ? fs::path(cfg.output.dir)
                                            : fs::path(dir_override);
  fs::create_directories(dir);

  auto write = [&dir](const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    return p.string();
  };

  write(cfg.output.gamma_csv, gamma_csv_text(result.gamma_trajectory));
  write(cfg.output.state_csv, state_csv_text(result.gamma_trajectory, result.psi0));
  return write(cfg.output.report, result.report.to_text());
}

std::string SweepResult::to_csv() const {
  std::ostringstream os;
  for (size_t k = 0; k < param_names.size(); ++k) {
    if (k) os << ",";
    os << param_names[k];
  }
  os << ",status,frobenius_discrepancy,state_error_phase_insensitive,"
        "min_abs_det_xi,chart_switch_count,first_chart_switch_t\n";
  for (const SweepRow& r : rows) {
    for (size_t k = 0; k < r.values.size(); ++k) {
      if (k) os << ",";
      os << r.values[k];
    }
    os << "," << r.status << "," << format_g17(r.frobenius_discrepancy) << ","
       << format_g17(r.state_error) << "," << format_g17(r.min_abs_det_xi) << ","
       << r.chart_switches << ",";
    if (std::isnan(r.first_switch_time)) {
      os << "";
    } else {
      os << format_g17(r.first_switch_time);
    }
    os << "\n";
  }
  return os.str();
}

SweepResult sweep_scenario(const ScenarioConfig& base,
                           const std::vector<SweepParameter>& params) {
  if (params.size() > 2) {
    throw ConfigError("sweep supports at most two parameters");
  }
  SweepResult result;
  for (const SweepParameter& p : params) result.param_names.push_back(p.path);
  if (params.empty()) return result;

  std::vector<std::vector<std::string>> grid;
  if (params.size() == 1) {
    for (const std::string& v : params[0].values) grid.push_back({v});
  } else {
    for (const std::string& v0 : params[0].values) {
      for (const std::string& v1 : params[1].values) grid.push_back({v0, v1});
    }
  }

  for (const std::vector<std::string>& point : grid) {
    SweepRow row;
    row.values = point;
    try {
      ConfigDoc doc = base.doc;
      for (size_t k = 0; k < params.size(); ++k) {
        doc.set_path(params[k].path, point[k]);
      }
      const ScenarioConfig cfg = config_from_doc(doc);
      const RunResult run = run_scenario(cfg);
      row.status = "ok";
      row.frobenius_discrepancy = run.report.frobenius_discrepancy;
      row.state_error = run.report.state_error_phase_insensitive;
      row.min_abs_det_xi = run.report.min_abs_det_xi;
      row.chart_switches = run.report.events.size();
      if (!run.report.events.empty()) {
        row.first_switch_time = run.report.events.front().time;
      }
    } catch (const UnrecoverableSingularity& e) {
      row.status = "unrecoverable_singularity";
      (void)e;
    } catch (const ConfigError&) {
      row.status = "config_error";
    } catch (const std::exception&) {
      row.status = "error";
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace wn
