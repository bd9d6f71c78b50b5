#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "futgame/errors.hpp"
#include "futgame/market.hpp"
#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"
#include "futgame/wealth.hpp"

namespace futgame {

using Json = nlohmann::ordered_json;

enum class TrajectoryFormat { Structured, Tabular };

inline std::string to_string(TieBreak rule) {
  switch (rule) {
    case TieBreak::MaxMinPayoff: return "max_min_payoff";
    case TieBreak::MaxTotalPayoff: return "max_total_payoff";
    case TieBreak::Canonical: return "canonical";
  }
  return "max_min_payoff";
}

inline TieBreak tie_break_from_string(const std::string& name) {
  if (name == "max_min_payoff") return TieBreak::MaxMinPayoff;
  if (name == "max_total_payoff") return TieBreak::MaxTotalPayoff;
  if (name == "canonical") return TieBreak::Canonical;
  throw ValidationError("tie_break must be one of max_min_payoff, "
                        "max_total_payoff, canonical (got \"" +
                        name + "\")");
}

namespace detail {

inline const Json& require_field(const Json& obj, const char* field,
                                 const std::string& ctx) {
  if (!obj.contains(field)) {
    throw ValidationError(ctx + field + " is required");
  }
  return obj.at(field);
}

inline void reject_unknown(const Json& obj,
                           std::initializer_list<const char*> allowed,
                           const std::string& ctx) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) known = true;
    }
    if (!known) throw ValidationError(ctx + "unknown field \"" + key + "\"");
  }
}

inline Money as_int(const Json& value, const std::string& what) {
  if (!value.is_number_integer()) {
    throw ValidationError(what + " must be an integer");
  }
  return value.get<Money>();
}

inline bool as_bool(const Json& value, const std::string& what) {
  if (!value.is_boolean()) throw ValidationError(what + " must be a boolean");
  return value.get<bool>();
}

inline std::vector<Money> as_int_vector(const Json& value,
                                        const std::string& what) {
  if (!value.is_array()) throw ValidationError(what + " must be an array");
  std::vector<Money> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_int(value[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<std::vector<Money>> as_int_table(const Json& value,
                                                    const std::string& what) {
  if (!value.is_array()) {
    throw ValidationError(what + " must be an array of arrays");
  }
  std::vector<std::vector<Money>> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_int_vector(value[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace detail

inline Scenario scenario_from_json(const Json& doc) {
  using detail::as_bool;
  using detail::as_int;
  using detail::as_int_table;
  using detail::as_int_vector;
  using detail::reject_unknown;
  using detail::require_field;

  if (!doc.is_object()) {
    throw ValidationError("scenario document must be an object");
  }
  reject_unknown(doc,
                 {"horizon", "contracts", "agents", "initial_prices",
                  "operator", "cash_prices", "require_trade_at_start",
                  "enforce_terminal_nonneg", "tie_break"},
                 "");

  Scenario scenario;
  scenario.horizon =
      static_cast<int>(as_int(require_field(doc, "horizon", ""), "horizon"));

  const Json& contracts = require_field(doc, "contracts", "");
  if (!contracts.is_array()) {
    throw ValidationError("contracts must be an array");
  }
  for (std::size_t j = 0; j < contracts.size(); ++j) {
    const std::string ctx = "contracts[" + std::to_string(j) + "].";
    const Json& item = contracts[j];
    if (!item.is_object()) {
      throw ValidationError("contracts[" + std::to_string(j) +
                            "] must be an object");
    }
    reject_unknown(item,
                   {"id", "quantity", "margin", "commission", "max_position"},
                   ctx);
    ContractSpec spec;
    spec.id = item.contains("id")
                  ? static_cast<int>(as_int(item.at("id"), ctx + "id"))
                  : static_cast<int>(j);
    spec.quantity = as_int(require_field(item, "quantity", ctx),
                           ctx + "quantity");
    spec.margin = as_int(require_field(item, "margin", ctx), ctx + "margin");
    spec.commission =
        as_int(require_field(item, "commission", ctx), ctx + "commission");
    spec.max_position = static_cast<int>(
        as_int(require_field(item, "max_position", ctx), ctx + "max_position"));
    scenario.contracts.push_back(spec);
  }

  const Json& agents = require_field(doc, "agents", "");
  if (!agents.is_array()) throw ValidationError("agents must be an array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string ctx = "agents[" + std::to_string(i) + "].";
    const Json& item = agents[i];
    if (!item.is_object()) {
      throw ValidationError("agents[" + std::to_string(i) +
                            "] must be an object");
    }
    reject_unknown(item, {"id", "initial_capital"}, ctx);
    AgentSpec spec;
    spec.id = item.contains("id")
                  ? static_cast<int>(as_int(item.at("id"), ctx + "id"))
                  : static_cast<int>(i);
    spec.initial_capital = as_int(require_field(item, "initial_capital", ctx),
                                  ctx + "initial_capital");
    scenario.agents.push_back(spec);
  }

  scenario.initial_prices = as_int_vector(
      require_field(doc, "initial_prices", ""), "initial_prices");

  const Json& op = require_field(doc, "operator", "");
  if (!op.is_object()) throw ValidationError("operator must be an object");
  const Json& type = require_field(op, "type", "operator.");
  if (!type.is_string()) {
    throw ValidationError("operator.type must be a string");
  }
  const std::string kind = type.get<std::string>();
  if (kind == "exogenous") {
    reject_unknown(op, {"type", "path"}, "operator.");
    scenario.transition = ExogenousPath{
        as_int_table(require_field(op, "path", "operator."), "operator.path")};
  } else if (kind == "linear_impact") {
    reject_unknown(op, {"type", "alpha", "drift", "floor"}, "operator.");
    LinearImpact impact;
    impact.alpha = as_int_vector(require_field(op, "alpha", "operator."),
                                 "operator.alpha");
    impact.drift = op.contains("drift")
                       ? as_int_vector(op.at("drift"), "operator.drift")
                       : std::vector<Money>(impact.alpha.size(), 0);
    impact.floor = op.contains("floor")
                       ? as_int_vector(op.at("floor"), "operator.floor")
                       : std::vector<Money>(impact.alpha.size(), 1);
    scenario.transition = std::move(impact);
  } else {
    throw ValidationError(
        "operator.type must be \"exogenous\" or \"linear_impact\" (got \"" +
        kind + "\")");
  }

  if (doc.contains("cash_prices")) {
    scenario.cash_prices = as_int_table(doc.at("cash_prices"), "cash_prices");
  }
  if (doc.contains("require_trade_at_start")) {
    scenario.require_trade_at_start =
        as_bool(doc.at("require_trade_at_start"), "require_trade_at_start");
  }
  if (doc.contains("enforce_terminal_nonneg")) {
    scenario.enforce_terminal_nonneg =
        as_bool(doc.at("enforce_terminal_nonneg"), "enforce_terminal_nonneg");
  }
  if (doc.contains("tie_break")) {
    const Json& rule = doc.at("tie_break");
    if (!rule.is_string()) throw ValidationError("tie_break must be a string");
    scenario.tie_break = tie_break_from_string(rule.get<std::string>());
  }

  validate(scenario);
  return scenario;
}

inline Scenario load_scenario_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw ParseError(std::string("malformed scenario document: ") +
                     error.what());
  }
  return scenario_from_json(doc);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str());
}

inline Json scenario_to_json(const Scenario& scenario) {
  Json doc;
  doc["horizon"] = scenario.horizon;
  doc["contracts"] = Json::array();
  for (const ContractSpec& c : scenario.contracts) {
    Json item;
    item["id"] = c.id;
    item["quantity"] = c.quantity;
    item["margin"] = c.margin;
    item["commission"] = c.commission;
    item["max_position"] = c.max_position;
    doc["contracts"].push_back(std::move(item));
  }
  doc["agents"] = Json::array();
  for (const AgentSpec& a : scenario.agents) {
    Json item;
    item["id"] = a.id;
    item["initial_capital"] = a.initial_capital;
    doc["agents"].push_back(std::move(item));
  }
  doc["initial_prices"] = scenario.initial_prices;
  Json op;
  if (const auto* exo = std::get_if<ExogenousPath>(&scenario.transition)) {
    op["type"] = "exogenous";
    op["path"] = exo->path;
  } else {
    const auto& impact = std::get<LinearImpact>(scenario.transition);
    op["type"] = "linear_impact";
    op["alpha"] = impact.alpha;
    op["drift"] = impact.drift;
    op["floor"] = impact.floor;
  }
  doc["operator"] = std::move(op);
  if (scenario.cash_prices) doc["cash_prices"] = *scenario.cash_prices;
  doc["require_trade_at_start"] = scenario.require_trade_at_start;
  doc["enforce_terminal_nonneg"] = scenario.enforce_terminal_nonneg;
  doc["tie_break"] = to_string(scenario.tie_break);
  return doc;
}

inline void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json(scenario).dump(2) << "\n";
}

inline Json trajectory_to_json(const Trajectory& trajectory) {
  Json doc;
  doc["schema"] = "futgame.trajectory.v1";
  doc["steps"] = Json::array();
  for (const TrajectoryStep& step : trajectory.steps) {
    Json item;
    item["step"] = step.step;
    item["prices"] = step.state.prices;
    if (step.state.cash_prices) item["cash_prices"] = *step.state.cash_prices;
    Json controls = Json::array();
    for (const Control& control : step.joint.controls) {
      controls.push_back(control.positions);
    }
    item["controls"] = std::move(controls);
    item["wealth"] = step.wealth;
    if (step.diagnostics) {
      const StepDiagnostics& diag = *step.diagnostics;
      Json d;
      d["ideal"] = diag.ideal;
      d["regrets"] = diag.regrets;
      d["compromise_indices"] = diag.compromise_indices;
      d["compromise_size"] = diag.compromise_indices.size();
      d["selected"] = diag.selected;
      Json profiles = Json::array();
      for (const JointControl& joint : diag.profiles) {
        Json profile = Json::array();
        for (const Control& control : joint.controls) {
          profile.push_back(control.positions);
        }
        profiles.push_back(std::move(profile));
      }
      d["profiles"] = std::move(profiles);
      d["payoffs"] = diag.payoffs;
      item["diagnostics"] = std::move(d);
    }
    doc["steps"].push_back(std::move(item));
  }
  doc["terminal"]["wealth"] = trajectory.terminal_wealth;
  doc["terminal"]["efficiency"] = trajectory.efficiency;
  return doc;
}

/// Canonical machine-readable form: stable key order, two-space indent,
/// trailing newline. Byte-identical across runs for equal trajectories.
inline std::string trajectory_structured(const Trajectory& trajectory) {
  return trajectory_to_json(trajectory).dump(2) + "\n";
}

/// One row per (step, agent): step, agent, prices, the agent's control, and
/// the agent's wealth. All fields numeric, comma-delimited, no quoting.
inline std::string trajectory_tabular(const Trajectory& trajectory) {
  std::ostringstream out;
  const std::size_t s =
      trajectory.steps.empty() ? 0 : trajectory.steps[0].state.prices.size();
  out << "step,agent";
  for (std::size_t j = 0; j < s; ++j) out << ",price_" << j;
  for (std::size_t j = 0; j < s; ++j) out << ",control_" << j;
  out << ",wealth\n";
  for (const TrajectoryStep& step : trajectory.steps) {
    for (std::size_t i = 0; i < step.wealth.size(); ++i) {
      out << step.step << "," << i;
      for (std::size_t j = 0; j < s; ++j) out << "," << step.state.prices[j];
      for (std::size_t j = 0; j < s; ++j) {
        out << "," << step.joint.controls[i].positions[j];
      }
      out << "," << step.wealth[i] << "\n";
    }
  }
  return out.str();
}

inline std::string render_trajectory(const Trajectory& trajectory,
                                     TrajectoryFormat format) {
  return format == TrajectoryFormat::Structured
             ? trajectory_structured(trajectory)
             : trajectory_tabular(trajectory);
}

/// Serialize to file. The conservation identity is checked first; a
/// violation means solver or caller corruption and aborts the write.
inline void write_trajectory(const Scenario& scenario,
                             const Trajectory& trajectory,
                             const std::string& path,
                             TrajectoryFormat format) {
  if (!check_conservation(scenario, trajectory)) {
    throw std::logic_error(
        "refusing to write trajectory: conservation identity violated");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
  out << render_trajectory(trajectory, format);
}

}  // namespace futgame
