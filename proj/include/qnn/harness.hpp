#pragma once

// Experiment orchestration: configuration files, pattern ingestion, training
// curves, the contraction-law verification report and optical decomposition
// of trained weights.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnn/classical.hpp"
#include "qnn/optics.hpp"
#include "qnn/perceptron.hpp"

namespace qnn {

enum class Mode { train_quantum, train_classical, verify_convergence, decompose };

std::string_view to_string(Mode m);
/// Accepts the CLI spelling ("train-quantum", ...). Throws ValidationError.
Mode parse_mode(std::string_view text);

/// Process exit codes.
enum class ExitCode : int {
  success = 0,
  verification_failed = 1,
  not_converged = 2,
  validation_error = 3,
  io_error = 4,
};

struct ExperimentConfig {
  Mode mode = Mode::train_quantum;
  /// 0 = take the arity from the pattern file.
  int n_inputs = 0;
  double eta = 0.1;
  int max_steps = 1000;
  double tolerance = 1e-20;
  std::uint64_t seed = 1;
  double init_radius = 0.1;
  std::string pattern_path;
  std::string output_path;

  LearningConfig learning() const;
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Sets one field from its textual value. Throws ValidationError for an
/// unknown key or a value of the wrong type.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` lines; `#` starts a comment. Errors carry the line number.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

struct QuantumPattern {
  std::vector<Qubit> inputs;
  StateVector desired;
};

struct PatternFile {
  std::vector<QuantumPattern> patterns;
  /// Inputs that had to be rescaled by more than 1e-9 to reach unit norm.
  std::vector<std::string> warnings;

  std::size_t arity() const { return patterns.empty() ? 0 : patterns.front().inputs.size(); }
};

/// JSON: either {"inputs": [...], "desired": [...]} or
/// {"patterns": [{"inputs": ..., "desired": ...}, ...]}; each complex number
/// is [re, im] and each state a pair of complex numbers.
PatternFile parse_patterns(std::string_view text);
PatternFile load_patterns(const std::filesystem::path& path);

/// JSON: {"patterns": [{"x": [...], "d": 0 or 1}, ...]}.
std::vector<ClassicalPattern> parse_classical_patterns(std::string_view text);
std::vector<ClassicalPattern> load_classical_patterns(const std::filesystem::path& path);

/// Seeded random single pattern with unit-norm inputs and target.
QuantumPattern random_pattern(std::size_t n, std::uint64_t seed);

/// Cycles several patterns through learn_step, one trace row per epoch with
/// the summed squared error. No predicted ratio: the contraction law does not
/// extend to interleaved patterns.
TrainResult train_patterns(const Perceptron& p, std::span<const QuantumPattern> patterns,
                           const LearningConfig& cfg);

inline constexpr std::string_view kCurveHeader = "step,error_sq,measured_ratio,predicted_ratio";

std::string render_curve(const TrainingTrace& trace);
void emit_curve(const TrainingTrace& trace, const std::filesystem::path& path);

/// Decimal rendering with 17 significant digits.
std::string format_real(double v);

struct VerificationRow {
  int t = 0;
  double error_sq = 0.0;
  std::optional<double> measured;
  double predicted = 0.0;
  std::optional<double> deviation;
  bool ok = true;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  /// Index into rows of the first violation, if any.
  std::optional<std::size_t> first_violation;
};

/// Relative tolerance between measured and predicted ratios; absolute when the
/// prediction is exactly zero.
inline constexpr double kRatioTolerance = 1e-9;

VerificationReport verify_trace(const TrainingTrace& trace);
std::string render_report(const VerificationReport& report);

/// Runs one experiment and writes its artifacts under cfg.output_path
/// (created if missing). Diagnostics go to log. Library exceptions are mapped
/// to exit codes here.
ExitCode run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace qnn
