#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fringekit/geometry.hpp"

namespace testsupport {

inline fringekit::ApparatusConfig bench_config() {
  fringekit::ApparatusConfig c;
  c.wavelength = 632.8e-9;
  c.slit_width = 10e-6;
  c.slit_separation = 200e-6;
  c.screen_distance = 10.4e-2;
  c.pixel_pitch = 7e-6;
  c.pixel_count = 3000;
  c.beam_power = 0.5e-3;
  c.beam_diameter = 0.8e-3;
  return c;
}

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

inline std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

inline RunResult run_command(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
    r.output.append(buf, n);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

inline std::filesystem::path make_temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("fringekit_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

// Structural validator for the subset of JSON Schema the shipped schemas
// use: type, properties, required, additionalProperties (boolean), items,
// enum, minimum, maximum.
inline void schema_errors(const nlohmann::json& value, const nlohmann::json& schema,
                          const std::string& where, std::vector<std::string>* out) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "boolean" && value.is_boolean()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number());
    if (!ok) {
      out->push_back(where + ": expected " + type);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& candidate : schema["enum"]) {
      if (value == candidate) hit = true;
    }
    if (!hit) out->push_back(where + ": value not in enum");
  }
  if (schema.contains("minimum") && value.is_number() &&
      value.get<double>() < schema["minimum"].get<double>()) {
    out->push_back(where + ": below minimum");
  }
  if (schema.contains("maximum") && value.is_number() &&
      value.get<double>() > schema["maximum"].get<double>()) {
    out->push_back(where + ": above maximum");
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          out->push_back(where + ": missing required key " + key.get<std::string>());
        }
      }
    }
    const auto& props = schema.contains("properties")
                            ? schema["properties"]
                            : nlohmann::json::object();
    for (const auto& [key, sub] : value.items()) {
      if (props.contains(key)) {
        schema_errors(sub, props[key], where + "." + key, out);
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_boolean() &&
                 !schema["additionalProperties"].get<bool>()) {
        out->push_back(where + ": unexpected key " + key);
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_object()) {
        schema_errors(sub, schema["additionalProperties"], where + "." + key, out);
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    int i = 0;
    for (const auto& item : value) {
      schema_errors(item, schema["items"], where + "[" + std::to_string(i++) + "]",
                    out);
    }
  }
}

inline std::vector<std::string> validate_against_schema(
    const std::string& json_text, const std::filesystem::path& schema_path) {
  std::vector<std::string> errors;
  const auto value = nlohmann::json::parse(json_text);
  const auto schema = nlohmann::json::parse(read_file(schema_path));
  schema_errors(value, schema, "$", &errors);
  return errors;
}

}  // namespace testsupport
