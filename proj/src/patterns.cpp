#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qnn/error.hpp"
#include "qnn/harness.hpp"
#include "qnn/random.hpp"

namespace qnn {

namespace {

using nlohmann::json;

constexpr double kNormSlack = 1e-9;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open pattern file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("pattern file is not valid JSON: ") + e.what());
  }
}

double read_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ParseError(where + ": expected a number, got " + std::string(j.type_name()));
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(where + ": value is not finite");
  }
  return v;
}

Complex read_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(where + ": expected a complex number [re, im], got " +
                     (j.is_array() ? std::to_string(j.size()) + " elements" : j.dump()));
  }
  return {read_number(j[0], where + "[0]"), read_number(j[1], where + "[1]")};
}

StateVector read_state(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(where + ": expected an amplitude pair [[re, im], [re, im]], got " +
                     (j.is_array() ? std::to_string(j.size()) + " amplitudes" : j.dump()));
  }
  return {read_complex(j[0], where + "[0]"), read_complex(j[1], where + "[1]")};
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

QuantumPattern read_pattern(const json& obj, const std::string& where,
                            std::vector<std::string>& warnings) {
  const json& inputs = require(obj, "inputs", where);
  const std::string inputs_where = where.empty() ? "inputs" : where + ".inputs";
  if (!inputs.is_array() || inputs.empty()) {
    throw ParseError(inputs_where + ": expected a non-empty list of amplitude pairs");
  }
  QuantumPattern pat;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string at = inputs_where + "[" + std::to_string(i) + "]";
    const StateVector raw = read_state(inputs[i], at);
    try {
      pat.inputs.push_back(make_qubit(raw));
    } catch (const UnnormalizableError&) {
      throw UnnormalizableError(at + ": unnormalizable input (both amplitudes are zero)");
    }
    const double n2 = raw.norm_sq().to_double();
    if (std::abs(std::sqrt(n2) - 1.0) > kNormSlack) {
      warnings.push_back(at + ": renormalized input with norm " + format_real(std::sqrt(n2)));
    }
  }
  const std::string desired_where = where.empty() ? "desired" : where + ".desired";
  pat.desired = read_state(require(obj, "desired", where), desired_where);
  const double dn = std::sqrt(pat.desired.norm_sq().to_double());
  if (std::abs(dn - 1.0) > kNormSlack) {
    throw ValidationError(desired_where + ": desired state must have unit norm, got " +
                          format_real(dn));
  }
  return pat;
}

}  // namespace

PatternFile parse_patterns(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) {
    throw ParseError("pattern file: top level must be an object");
  }
  PatternFile out;
  if (doc.contains("patterns")) {
    const json& list = doc.at("patterns");
    if (!list.is_array() || list.empty()) {
      throw ParseError("patterns: expected a non-empty list");
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      out.patterns.push_back(
          read_pattern(list[k], "patterns[" + std::to_string(k) + "]", out.warnings));
    }
  } else {
    out.patterns.push_back(read_pattern(doc, "", out.warnings));
  }
  const std::size_t n = out.arity();
  for (std::size_t k = 0; k < out.patterns.size(); ++k) {
    if (out.patterns[k].inputs.size() != n) {
      throw ParseError("patterns[" + std::to_string(k) + "].inputs: expected " +
                       std::to_string(n) + " inputs like the first pattern, got " +
                       std::to_string(out.patterns[k].inputs.size()));
    }
  }
  return out;
}

PatternFile load_patterns(const std::filesystem::path& path) {
  return parse_patterns(read_file(path));
}

std::vector<ClassicalPattern> parse_classical_patterns(std::string_view text) {
  const json doc = parse_json(text);
  const json& list = require(doc, "patterns", "pattern file");
  if (!list.is_array() || list.empty()) {
    throw ParseError("patterns: expected a non-empty list");
  }
  std::vector<ClassicalPattern> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string at = "patterns[" + std::to_string(k) + "]";
    const json& x = require(list[k], "x", at);
    if (!x.is_array() || x.empty()) {
      throw ParseError(at + ".x: expected a non-empty list of numbers");
    }
    ClassicalPattern pat;
    for (std::size_t j = 0; j < x.size(); ++j) {
      pat.x.push_back(read_number(x[j], at + ".x[" + std::to_string(j) + "]"));
    }
    pat.d = read_number(require(list[k], "d", at), at + ".d");
    if (!out.empty() && pat.x.size() != out.front().x.size()) {
      throw ParseError(at + ".x: expected " + std::to_string(out.front().x.size()) +
                       " values like the first pattern, got " + std::to_string(pat.x.size()));
    }
    out.push_back(std::move(pat));
  }
  return out;
}

std::vector<ClassicalPattern> load_classical_patterns(const std::filesystem::path& path) {
  return parse_classical_patterns(read_file(path));
}

QuantumPattern random_pattern(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 1));
  QuantumPattern pat;
  for (std::size_t j = 0; j < n; ++j) {
    pat.inputs.push_back(random_qubit(rng));
  }
  pat.desired = random_qubit(rng).state();
  return pat;
}

}  // namespace qnn
