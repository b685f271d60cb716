#include "rising_bai/config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace rbai {

using nlohmann::json;

namespace {

ArmModel parse_arm(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "parametric") {
    ParametricArm arm;
    arm.c = j.at("c").get<double>();
    arm.b = j.at("b").get<double>();
    arm.psi = j.at("psi").get<double>();
    return ArmModel(arm);
  }
  if (kind == "tabulated") {
    TabulatedArm arm;
    arm.values = j.at("values").get<std::vector<double>>();
    return ArmModel(std::move(arm));
  }
  throw std::invalid_argument("setting: unknown arm kind '" + kind + "'");
}

Setting parse_setting_json(const json& j) {
  Setting out;
  for (const json& arm : j.at("arms")) out.arms.push_back(parse_arm(arm));
  if (out.arms.empty()) throw std::invalid_argument("setting: at least one arm required");
  out.sigma = j.at("sigma").get<double>();
  if (!(out.sigma >= 0.0)) throw std::invalid_argument("setting: sigma must be >= 0");
  return out;
}

PolicyConfig parse_policy(const json& j) {
  PolicyConfig out;
  out.id = j.at("id").get<std::string>();
  static const std::set<std::string> known = {"r_ucbe", "r_sr", "uniform",
                                              "uniform_window", "sr", "ucb_e"};
  if (!known.contains(out.id)) throw std::invalid_argument("policies: unknown id '" + out.id + "'");
  out.name = j.value("name", out.id);

  if (j.contains("a")) {
    const json& a = j.at("a");
    if (a.is_string()) {
      if (a.get<std::string>() != "auto")
        throw std::invalid_argument("policies: 'a' must be a number, \"auto\", or {\"scale\": s}");
      out.a_mode = PolicyConfig::ExplorationMode::Auto;
    } else if (a.is_number()) {
      out.a_mode = PolicyConfig::ExplorationMode::Literal;
      out.a_literal = a.get<double>();
    } else if (a.is_object() && a.contains("scale")) {
      out.a_mode = PolicyConfig::ExplorationMode::ScaledAuto;
      out.a_scale = a.at("scale").get<double>();
    } else {
      throw std::invalid_argument("policies: malformed 'a'");
    }
  }
  if (j.contains("beta")) out.beta = j.at("beta").get<double>();
  if (j.contains("epsilon")) out.epsilon = j.at("epsilon").get<double>();
  return out;
}

}  // namespace

Setting parse_setting(const std::string& json_text) {
  return parse_setting_json(json::parse(json_text));
}

std::string setting_to_json(const Setting& setting) {
  json arms = json::array();
  for (const ArmModel& arm : setting.arms) {
    if (const auto* p = arm.as_parametric()) {
      arms.push_back({{"kind", "parametric"}, {"c", p->c}, {"b", p->b}, {"psi", p->psi}});
    } else {
      arms.push_back({{"kind", "tabulated"}, {"values", arm.as_tabulated()->values}});
    }
  }
  return json{{"arms", arms}, {"sigma", setting.sigma}}.dump(2);
}

ExperimentSpec parse_experiment(const std::string& json_text) {
  const json j = json::parse(json_text);
  ExperimentSpec out;
  out.setting = parse_setting_json(j.at("setting"));
  for (const json& p : j.at("policies")) out.policies.push_back(parse_policy(p));
  if (out.policies.empty()) throw std::invalid_argument("config: at least one policy required");

  std::set<std::string> names;
  for (const PolicyConfig& p : out.policies)
    if (!names.insert(p.name).second)
      throw std::invalid_argument("config: duplicate policy name '" + p.name +
                                  "' (set distinct \"name\" fields)");

  out.budgets = j.at("budgets").get<std::vector<std::size_t>>();
  if (out.budgets.empty()) throw std::invalid_argument("config: at least one budget required");
  for (std::size_t k = 0; k < out.budgets.size(); ++k) {
    if (out.budgets[k] < out.setting.arms.size())
      throw std::invalid_argument("config: every budget must be >= the arm count");
    if (k > 0 && out.budgets[k] <= out.budgets[k - 1])
      throw std::invalid_argument("config: budgets must be strictly increasing");
  }

  out.runs = j.at("runs").get<std::size_t>();
  if (out.runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  out.master_seed = j.at("master_seed").get<std::uint64_t>();
  out.epsilon = j.value("epsilon", 0.25);
  if (!(out.epsilon > 0.0 && out.epsilon < 0.5))
    throw std::invalid_argument("config: epsilon must be in (0, 1/2)");
  if (j.contains("sigma_override"))
    out.sigma_override = j.at("sigma_override").get<std::vector<double>>();
  return out;
}

ExperimentSpec parse_experiment_or_setting(const std::string& json_text) {
  const json j = json::parse(json_text);
  if (j.contains("setting")) return parse_experiment(json_text);
  // bare setting: wrap it with placeholder grid parameters
  ExperimentSpec out;
  out.setting = parse_setting_json(j);
  out.budgets = {std::max<std::size_t>(out.setting.arms.size() + 1, 3200)};
  out.runs = 1;
  return out;
}

ExperimentSpec builtin_setting_a() {
  ExperimentSpec spec;
  spec.setting.sigma = 0.01;
  spec.setting.arms = {
      ArmModel(ParametricArm{1.0, 37.0, 1.0}),
      ArmModel(ParametricArm{0.88, 10.0, 1.0}),
      ArmModel(ParametricArm{0.78, 1.0, 1.0}),
      ArmModel(ParametricArm{0.7, 10.0, 1.0}),
      ArmModel(ParametricArm{0.5, 20.0, 1.0}),
  };

  PolicyConfig rucbe;
  rucbe.id = rucbe.name = "r_ucbe";
  rucbe.a_mode = PolicyConfig::ExplorationMode::Auto;
  rucbe.beta = 1.3;  // largest feasible beta reported for this setting
  spec.policies.push_back(rucbe);
  for (const char* id : {"r_sr", "uniform", "uniform_window", "sr", "ucb_e"}) {
    PolicyConfig p;
    p.id = p.name = id;
    spec.policies.push_back(p);
  }

  spec.budgets = {100, 200, 400, 800, 1600, 3200};
  spec.runs = 100;
  spec.master_seed = 42;
  spec.epsilon = 0.25;
  return spec;
}

}  // namespace rbai
