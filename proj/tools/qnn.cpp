// qnn: command line front end for the quantum perceptron experiments.
//
//   qnn train-quantum      --config run.cfg [--eta 0.2 ...]
//   qnn train-classical    --config run.cfg
//   qnn verify-convergence --n 3 --eta 0.1 --seed 7 --output_path out/
//   qnn decompose          --config run.cfg

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qnn/error.hpp"
#include "qnn/harness.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;
};

CLI::App* add_mode(CLI::App& app, qnn::Mode mode, const std::string& description,
                   Overrides& ov, std::vector<std::pair<CLI::Option*, std::string>>& options) {
  CLI::App* sub = app.add_subcommand(std::string(qnn::to_string(mode)), description);
  sub->add_option("--config", ov.config_path, "key = value configuration file");
  const bool verify = mode == qnn::Mode::verify_convergence;
  const std::pair<std::string, std::string> keys[] = {
      {verify ? "--n_inputs,--n" : "--n_inputs", "n_inputs"},
      {"--eta", "eta"},
      {verify ? "--max_steps,--steps" : "--max_steps", "max_steps"},
      {"--tolerance", "tolerance"},
      {"--seed", "seed"},
      {"--init_radius", "init_radius"},
      {"--pattern_path", "pattern_path"},
      {"--output_path", "output_path"},
  };
  for (const auto& [flags, key] : keys) {
    auto* opt = sub->add_option(flags);
    opt->description("override '" + key + "' from the config file")->type_name("VALUE");
    options.emplace_back(opt, key);
  }
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum perceptron training, contraction-law verification and optical "
               "decomposition"};
  app.require_subcommand(1);

  Overrides ov;
  std::vector<std::pair<CLI::Option*, std::string>> options;
  const std::pair<qnn::Mode, std::string> modes[] = {
      {qnn::Mode::train_quantum, "train the quantum perceptron and write curve + weights"},
      {qnn::Mode::train_classical, "train the classical baseline perceptron"},
      {qnn::Mode::verify_convergence, "check every measured contraction ratio against (1-eta S)^2"},
      {qnn::Mode::decompose, "train, then factor each weight into optical elements"},
  };
  std::vector<std::pair<CLI::App*, qnn::Mode>> subs;
  for (const auto& [mode, description] : modes) {
    subs.emplace_back(add_mode(app, mode, description, ov, options), mode);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(qnn::ExitCode::validation_error);
  }

  qnn::ExperimentConfig cfg;
  try {
    if (!ov.config_path.empty()) {
      cfg = qnn::load_config(ov.config_path);
    }
    for (const auto& [sub, mode] : subs) {
      if (sub->parsed()) {
        cfg.mode = mode;
      }
    }
    for (const auto& [opt, key] : options) {
      if (opt->count() > 0) {
        qnn::apply_setting(cfg, key, opt->as<std::string>());
      }
    }
  } catch (const qnn::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(qnn::ExitCode::io_error);
  } catch (const qnn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(qnn::ExitCode::validation_error);
  }

  return static_cast<int>(qnn::run_experiment(cfg, std::cerr));
}
