#include "rvvport/pressure.hpp"

#include <sstream>

#include "rvvport/error.hpp"

namespace rvvport {

PressureReport compute_pressure(const FunctionIr& ir, const LivenessResult& live, FootprintMode mode) {
  PressureReport r;
  r.function = ir.name;
  r.mode = mode;
  const std::size_t n = ir.stmts.size();
  r.per_stmt_pressure.assign(n, Rational(0));

  auto footprint = [&](const std::string& v) { return register_footprint(ir.symbols.at(v), mode); };

  for (std::size_t i = 0; i < n; ++i) {
    VarSet both = live.live_in[i];
    both.insert(live.live_out[i].begin(), live.live_out[i].end());
    Rational sum{0};
    for (const auto& v : both) sum += footprint(v);
    r.per_stmt_pressure[i] = sum;
    if (!r.hot_stmt || sum > r.pressure) {
      r.pressure = sum;
      r.hot_stmt = static_cast<int>(i);
    }
  }

  if (r.hot_stmt) {
    const auto& hot = ir.stmts[*r.hot_stmt];
    r.hot_line = hot.span.line;
    r.hot_text = hot.text;
    VarSet both = live.live_in[*r.hot_stmt];
    both.insert(live.live_out[*r.hot_stmt].begin(), live.live_out[*r.hot_stmt].end());
    for (const auto& v : both) r.live_at_hot.push_back({v, vector_type_name(ir.symbols.at(v)), footprint(v)});
  }
  r.spills_predicted = r.pressure > Rational(r.register_budget);

  VarSet defined, used;
  for (const auto& s : ir.stmts) {
    defined.insert(s.defs.begin(), s.defs.end());
    used.insert(s.uses.begin(), s.uses.end());
  }
  for (const auto& v : defined) {
    if (!used.count(v)) r.dead_defs.push_back(v);
  }
  return r;
}

PressureReport analyze_function(const FunctionIr& ir, FootprintMode mode) {
  return compute_pressure(ir, solve_liveness(ir), mode);
}

std::string render_pressure(const PressureReport& r) {
  std::ostringstream os;
  os << "function: " << r.function << "\n";
  os << "vector register pressure: " << format_trimmed(r.pressure) << " of " << r.register_budget
     << " registers (" << to_string(r.mode) << " footprint)\n";
  if (r.hot_stmt) {
    os << "peak at statement s" << *r.hot_stmt << " (line " << r.hot_line << "): " << r.hot_text << "\n";
  } else {
    os << "peak at statement: none (no statements)\n";
  }
  os << "live at peak:";
  if (r.live_at_hot.empty()) os << " none";
  os << "\n";
  for (const auto& v : r.live_at_hot) {
    os << "  " << v.name << " : " << v.type << " footprint " << format_trimmed(v.footprint) << "\n";
  }
  if (r.spills_predicted) {
    os << "verdict: exceeds the register file by " << format_trimmed(r.pressure - Rational(r.register_budget))
       << "; spills predicted\n";
  } else {
    os << "verdict: fits, headroom " << format_trimmed(Rational(r.register_budget) - r.pressure)
       << " registers\n";
  }
  if (!r.dead_defs.empty()) {
    os << "dead definitions:";
    for (const auto& d : r.dead_defs) os << " " << d;
    os << "\n";
  }
  return os.str();
}

nlohmann::json pressure_to_json(const PressureReport& r) {
  nlohmann::json j;
  j["function"] = r.function;
  j["mode"] = std::string(to_string(r.mode));
  j["pressure"] = to_string(r.pressure);
  j["hot_stmt"] = r.hot_stmt ? nlohmann::json(*r.hot_stmt) : nlohmann::json(nullptr);
  j["hot_line"] = r.hot_line;
  j["hot_text"] = r.hot_text;
  auto& per = j["per_stmt_pressure"] = nlohmann::json::array();
  for (const auto& p : r.per_stmt_pressure) per.push_back(to_string(p));
  auto& live = j["live_at_hot"] = nlohmann::json::array();
  for (const auto& v : r.live_at_hot) {
    live.push_back({{"name", v.name}, {"type", v.type}, {"footprint", to_string(v.footprint)}});
  }
  j["register_budget"] = r.register_budget;
  j["spills_predicted"] = r.spills_predicted;
  j["dead_defs"] = r.dead_defs;
  return j;
}

PressureReport pressure_from_json(const nlohmann::json& j) {
  try {
    PressureReport r;
    r.function = j.at("function").get<std::string>();
    auto mode = parse_footprint_mode(j.at("mode").get<std::string>());
    if (!mode) throw Error("unknown footprint mode");
    r.mode = *mode;
    r.pressure = parse_rational(j.at("pressure").get<std::string>());
    if (!j.at("hot_stmt").is_null()) r.hot_stmt = j.at("hot_stmt").get<int>();
    r.hot_line = j.at("hot_line").get<int>();
    r.hot_text = j.at("hot_text").get<std::string>();
    for (const auto& p : j.at("per_stmt_pressure")) r.per_stmt_pressure.push_back(parse_rational(p.get<std::string>()));
    for (const auto& v : j.at("live_at_hot")) {
      r.live_at_hot.push_back({v.at("name").get<std::string>(), v.at("type").get<std::string>(),
                               parse_rational(v.at("footprint").get<std::string>())});
    }
    r.register_budget = j.at("register_budget").get<int>();
    r.spills_predicted = j.at("spills_predicted").get<bool>();
    r.dead_defs = j.at("dead_defs").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed pressure report: ") + e.what());
  }
}

}  // namespace rvvport
