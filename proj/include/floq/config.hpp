#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "floq/adapt.hpp"
#include "floq/drive.hpp"
#include "floq/oracle.hpp"

namespace floq {

inline constexpr int kConfigSchemaVersion = 1;

struct ModelConfig {
  /// "xyz" or "single_qubit".
  std::string type = "xyz";
  XYZParams xyz;
  double d1 = 1.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

struct ObservableSpec {
  std::string name;
  PauliSum op;
};

struct ExperimentConfig {
  /// adapt | spectrum | deflation | observe | oracle | decompose | build
  std::string task = "adapt";
  ModelConfig model;
  double omega = 5.0;
  int n_a = 4;
  /// Reference descriptors: product labels ("+++", "ddd"), up/down/plus/minus,
  /// "uniform" (|+> on every qubit) or "random".
  std::vector<std::string> references{"down"};
  AdaptConfig adapt;
  /// Empty selects the default grid.
  std::vector<double> lambda_grid;
  int k_states = 8;
  double shift = 0.6;
  std::vector<std::string> observables{"sum_z", "sum_zz"};
  int points = 101;
  TrotterConfig trotter;
  /// diagonal | shift | asym | symmetric | observable
  std::string decompose_matrix = "asym";
  int decompose_r = 1;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string label;
};

/// Parses and validates JSON config text; throws ConfigError carrying the key path.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Full form with every default filled in.
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Physical register size implied by the model.
int physical_qubits(const ExperimentConfig& c);
DriveSpec make_drive(const ExperimentConfig& c);
StateVector make_reference(const ExperimentConfig& c, const std::string& descriptor, std::uint64_t salt = 0);
ObservableSpec make_observable(const std::string& name, int L);

}  // namespace floq
