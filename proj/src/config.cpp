#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qnn/error.hpp"
#include "qnn/harness.hpp"

namespace qnn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::train_quantum:
      return "train-quantum";
    case Mode::train_classical:
      return "train-classical";
    case Mode::verify_convergence:
      return "verify-convergence";
    case Mode::decompose:
      return "decompose";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::train_quantum, Mode::train_classical, Mode::verify_convergence,
                 Mode::decompose}) {
    if (text == to_string(m)) {
      return m;
    }
  }
  throw ValidationError("unknown mode '" + std::string(text) + "'");
}

LearningConfig ExperimentConfig::learning() const {
  LearningConfig lc;
  lc.eta = eta;
  lc.max_steps = max_steps;
  lc.tolerance = tolerance;
  lc.seed = seed;
  lc.init_radius = init_radius;
  return lc;
}

void ExperimentConfig::validate() const {
  learning().validate();
  if (n_inputs < 0) {
    throw ValidationError("n_inputs must be non-negative");
  }
  if (output_path.empty()) {
    throw ValidationError("output_path is required");
  }
  if (mode == Mode::train_classical) {
    if (pattern_path.empty()) {
      throw ValidationError("train-classical requires pattern_path");
    }
    if (!(eta < 1.0)) {
      throw ValidationError("train-classical requires 0 < eta < 1");
    }
  } else if (pattern_path.empty() && n_inputs < 1) {
    throw ValidationError("n_inputs must be at least 1 when no pattern_path is given");
  }
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "mode") {
    cfg.mode = parse_mode(value);
  } else if (key == "n_inputs") {
    cfg.n_inputs = parse_number<int>(key, value);
  } else if (key == "eta") {
    cfg.eta = parse_number<double>(key, value);
  } else if (key == "max_steps") {
    cfg.max_steps = parse_number<int>(key, value);
  } else if (key == "tolerance") {
    cfg.tolerance = parse_number<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "init_radius") {
    cfg.init_radius = parse_number<double>(key, value);
  } else if (key == "pattern_path") {
    cfg.pattern_path = std::string(value);
  } else if (key == "output_path") {
    cfg.output_path = std::string(value);
  } else {
    throw ValidationError("unknown configuration key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      apply_setting(cfg, key, value);
    } catch (const ValidationError& e) {
      throw ParseError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "mode = " << to_string(cfg.mode) << '\n';
  out << "n_inputs = " << cfg.n_inputs << '\n';
  out << "eta = " << format_real(cfg.eta) << '\n';
  out << "max_steps = " << cfg.max_steps << '\n';
  out << "tolerance = " << format_real(cfg.tolerance) << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "init_radius = " << format_real(cfg.init_radius) << '\n';
  out << "pattern_path = " << cfg.pattern_path << '\n';
  out << "output_path = " << cfg.output_path << '\n';
  return out.str();
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qnn
