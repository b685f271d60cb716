#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rising_bai/arms.hpp"

namespace rbai {

/// An environment: the arm curves plus the Gaussian noise scale.
struct Setting {
  std::vector<ArmModel> arms;
  double sigma = 0.0;
};

/// Schema: {"arms":[{"kind":"parametric","c":..,"b":..,"psi":..},
///                  {"kind":"tabulated","values":[..]}], "sigma":..}
Setting parse_setting(const std::string& json_text);
std::string setting_to_json(const Setting& setting);

/// One policy entry of an experiment config. For "r_ucbe" the exploration
/// parameter may be "auto" (closed-form threshold at the cell's budget), a literal
/// number, or {"scale": s} for s times the auto value; "ucb_e" accepts a
/// literal "a" or derives the oracle value from the ground-truth gaps.
struct PolicyConfig {
  std::string id;
  std::string name;  ///< row label in outputs; defaults to id, must be unique

  enum class ExplorationMode { Auto, Literal, ScaledAuto };
  ExplorationMode a_mode = ExplorationMode::Auto;
  double a_literal = 0.0;
  double a_scale = 1.0;
  std::optional<double> beta;     ///< beta for the auto value; default: max feasible beta
  std::optional<double> epsilon;  ///< window fraction override
};

/// Declarative experiment: run every (policy, budget) cell `runs` times.
struct ExperimentSpec {
  Setting setting;
  std::vector<PolicyConfig> policies;
  std::vector<std::size_t> budgets;
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  double epsilon = 0.25;
  std::vector<double> sigma_override;  ///< optional noise-sensitivity sweep
};

/// Schema: {"setting":{...}, "policies":[...], "budgets":[...], "runs":..,
///          "master_seed":.., "epsilon":.., "sigma_override":[..]?}
ExperimentSpec parse_experiment(const std::string& json_text);

/// Accepts either a full experiment config or a bare setting document.
ExperimentSpec parse_experiment_or_setting(const std::string& json_text);

/// The paper's synthetic benchmark: five parametric arms
/// (b, c, psi) = (37,1,1), (10,0.88,1), (1,0.78,1), (10,0.7,1), (20,0.5,1),
/// sigma = 0.01, epsilon = 0.25, budgets 100..3200, 100 runs per cell,
/// and all six policies (r_ucbe with a = auto at beta = 1.3).
ExperimentSpec builtin_setting_a();

}  // namespace rbai
