#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qnn/error.hpp"
#include "qnn/harness.hpp"

namespace qnn {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string{};
}

json complex_json(const Complex& z) { return json::array({z.re.to_double(), z.im.to_double()}); }

json weights_json(const Perceptron& p) {
  json weights = json::array();
  for (const auto& w : p.weights()) {
    weights.push_back(json::array({json::array({complex_json(w(0, 0)), complex_json(w(0, 1))}),
                                   json::array({complex_json(w(1, 0)), complex_json(w(1, 1))})}));
  }
  return json{{"output_operator", p.output_op().label}, {"weights", weights}};
}

struct QuantumRun {
  TrainResult result;
  PatternFile patterns;
};

QuantumRun run_quantum_training(const ExperimentConfig& cfg, bool single_pattern_only,
                                std::ostream& log) {
  PatternFile patterns;
  if (cfg.pattern_path.empty()) {
    patterns.patterns.push_back(random_pattern(static_cast<std::size_t>(cfg.n_inputs), cfg.seed));
  } else {
    patterns = load_patterns(cfg.pattern_path);
    for (const auto& w : patterns.warnings) {
      log << "warning: " << w << '\n';
    }
    if (cfg.n_inputs != 0 && static_cast<std::size_t>(cfg.n_inputs) != patterns.arity()) {
      throw ValidationError("n_inputs = " + std::to_string(cfg.n_inputs) +
                            " but the pattern file has " + std::to_string(patterns.arity()) +
                            " inputs");
    }
  }
  if (single_pattern_only && patterns.patterns.size() != 1) {
    throw ValidationError("verify-convergence needs a single-pattern file, got " +
                          std::to_string(patterns.patterns.size()) + " patterns");
  }

  const LearningConfig lc = cfg.learning();
  const Perceptron start(init_weights(patterns.arity(), lc.init_radius, lc.seed));
  QuantumRun run{{start, {}}, patterns};
  if (patterns.patterns.size() == 1) {
    const auto& pat = patterns.patterns.front();
    run.result = train(start, pat.inputs, pat.desired, lc);
  } else {
    run.result = train_patterns(start, patterns.patterns, lc);
  }
  if (run.result.trace.eta_warning) {
    log << "warning: eta * S >= 1; convergence is not guaranteed\n";
  }
  return run;
}

ExitCode convergence_code(const TrainingTrace& trace, std::ostream& log) {
  log << "steps: " << trace.learning_steps()
      << ", final error_sq: " << format_real(trace.final_error_sq()) << '\n';
  if (!trace.converged) {
    log << "not converged: max_steps reached\n";
    return ExitCode::not_converged;
  }
  return ExitCode::success;
}

ExitCode run_train_quantum(const ExperimentConfig& cfg, const std::filesystem::path& out,
                           std::ostream& log) {
  const auto run = run_quantum_training(cfg, false, log);
  emit_curve(run.result.trace, out / "curve.csv");
  write_file(out / "weights.json", weights_json(run.result.perceptron).dump(2) + "\n");
  return convergence_code(run.result.trace, log);
}

ExitCode run_train_classical(const ExperimentConfig& cfg, const std::filesystem::path& out,
                             std::ostream& log) {
  const auto patterns = load_classical_patterns(cfg.pattern_path);
  const std::size_t n = patterns.front().x.size();
  if (cfg.n_inputs != 0 && static_cast<std::size_t>(cfg.n_inputs) != n) {
    throw ValidationError("n_inputs = " + std::to_string(cfg.n_inputs) +
                          " but the pattern file has " + std::to_string(n) + " inputs");
  }
  const ClassicalPerceptron start(std::vector<double>(n, 0.0));
  const auto result = cl_train(start, patterns, cfg.learning());
  emit_curve(result.trace, out / "curve.csv");
  const json doc{{"activation", std::string(to_string(result.perceptron.activation()))},
                 {"weights", result.perceptron.weights()}};
  write_file(out / "weights.json", doc.dump(2) + "\n");
  return convergence_code(result.trace, log);
}

ExitCode run_verify(const ExperimentConfig& cfg, const std::filesystem::path& out,
                    std::ostream& log) {
  const auto run = run_quantum_training(cfg, true, log);
  const auto report = verify_trace(run.result.trace);
  write_file(out / "report.csv", render_report(report));
  if (report.first_violation) {
    const auto& row = report.rows[*report.first_violation];
    log << "contraction law violated at step " << row.t << ": measured "
        << optional_field(row.measured) << ", predicted " << format_real(row.predicted) << '\n';
    return ExitCode::verification_failed;
  }
  log << "contraction law verified over " << run.result.trace.learning_steps()
      << " steps (predicted ratio " << format_real(report.rows.front().predicted) << ")\n";
  return ExitCode::success;
}

ExitCode run_decompose(const ExperimentConfig& cfg, const std::filesystem::path& out,
                       std::ostream& log) {
  const auto run = run_quantum_training(cfg, false, log);
  std::ostringstream csv;
  csv << "index";
  for (auto key : kCircuitRecordKeys) {
    csv << ',' << key;
  }
  csv << ",passive,unitarity_deviation,recompose_error\n";
  const auto& weights = run.result.perceptron.weights();
  std::size_t active = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const OpticalCircuit c = decompose_weight(weights[j]);
    const bool passive = is_passive(c, 0.0);
    active += passive ? 0 : 1;
    csv << j;
    for (const auto& [key, value] : to_record(c)) {
      csv << ',' << format_real(value);
    }
    csv << ',' << (passive ? "true" : "false") << ',' << format_real(unitarity_deviation(weights[j]))
        << ',' << format_real((recompose(c) - weights[j]).frobenius().to_double()) << '\n';
  }
  write_file(out / "circuits.csv", csv.str());
  write_file(out / "weights.json", weights_json(run.result.perceptron).dump(2) + "\n");
  log << weights.size() << " weights decomposed, " << active << " need amplification\n";
  return ExitCode::success;
}

}  // namespace

TrainResult train_patterns(const Perceptron& p, std::span<const QuantumPattern> patterns,
                           const LearningConfig& cfg) {
  cfg.validate();
  if (patterns.empty()) {
    throw ValidationError("train_patterns needs at least one pattern");
  }
  const auto epoch_error = [&](const Perceptron& cur) {
    Real sum(0.0);
    for (const auto& pat : patterns) {
      sum += residual_sq(cur, as_states(pat.inputs), pat.desired);
    }
    return sum;
  };

  TrainResult result{p, {}};
  Real error = epoch_error(p);
  result.trace.steps.push_back({0, error.to_double(), std::nullopt, std::nullopt});
  if (error < Real(cfg.tolerance)) {
    result.trace.converged = true;
    return result;
  }
  for (int t = 1; t <= cfg.max_steps; ++t) {
    for (const auto& pat : patterns) {
      result.perceptron = learn_step(result.perceptron, pat.inputs, pat.desired, cfg.eta);
    }
    const Real next = epoch_error(result.perceptron);
    std::optional<double> measured;
    if (error >= Real(kRatioFloor)) {
      measured = (next / error).to_double();
    }
    result.trace.steps.push_back({t, next.to_double(), measured, std::nullopt});
    error = next;
    if (error < Real(cfg.tolerance)) {
      result.trace.converged = true;
      break;
    }
  }
  return result;
}

std::string render_curve(const TrainingTrace& trace) {
  std::string out(kCurveHeader);
  out += '\n';
  for (const auto& s : trace.steps) {
    out += std::to_string(s.t);
    out += ',';
    out += format_real(s.error_sq);
    out += ',';
    out += optional_field(s.measured_ratio);
    out += ',';
    out += optional_field(s.predicted_ratio);
    out += '\n';
  }
  return out;
}

void emit_curve(const TrainingTrace& trace, const std::filesystem::path& path) {
  if (trace.steps.empty()) {
    throw ValidationError("emit_curve: trace is empty");
  }
  write_file(path, render_curve(trace));
}

VerificationReport verify_trace(const TrainingTrace& trace) {
  VerificationReport report;
  for (const auto& s : trace.steps) {
    VerificationRow row;
    row.t = s.t;
    row.error_sq = s.error_sq;
    row.measured = s.measured_ratio;
    row.predicted = s.predicted_ratio.value_or(0.0);
    if (s.measured_ratio) {
      if (!s.predicted_ratio) {
        throw ValidationError("verify_trace: trace has no predicted ratio at step " +
                              std::to_string(s.t));
      }
      const double diff = std::abs(*s.measured_ratio - row.predicted);
      row.deviation = row.predicted > 0.0 ? diff / row.predicted : diff;
      row.ok = *row.deviation < kRatioTolerance;
    }
    if (!row.ok && !report.first_violation) {
      report.first_violation = report.rows.size();
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string render_report(const VerificationReport& report) {
  std::string out = "step,error_sq,measured_ratio,predicted_ratio,deviation,status\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.t) + ',' + format_real(r.error_sq) + ',' + optional_field(r.measured) +
           ',' + format_real(r.predicted) + ',' + optional_field(r.deviation) + ',';
    out += !r.measured ? "skipped" : (r.ok ? "ok" : "violation");
    out += '\n';
  }
  return out;
}

ExitCode run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  try {
    cfg.validate();
    const std::filesystem::path out(cfg.output_path);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) {
      throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
    }
    switch (cfg.mode) {
      case Mode::train_quantum:
        return run_train_quantum(cfg, out, log);
      case Mode::train_classical:
        return run_train_classical(cfg, out, log);
      case Mode::verify_convergence:
        return run_verify(cfg, out, log);
      case Mode::decompose:
        return run_decompose(cfg, out, log);
    }
    throw ValidationError("unknown mode");
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::io_error;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::validation_error;
  }
}

}  // namespace qnn
