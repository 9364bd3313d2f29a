#include "fringekit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "fringekit/errors.hpp"

namespace fringekit {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& what) {
  throw io_error(path + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& text, const std::string& path, int line,
                    std::string* unit_out) {
  const std::string t = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr == t.data()) {
    fail_at(path, line, "expected a number, got '" + t + "'");
  }
  *unit_out = trim(std::string(ptr, t.data() + t.size()));
  return value;
}

double unit_factor_length(const std::string& unit, const std::string& path, int line) {
  if (unit == "m") return 1.0;
  if (unit == "cm") return 1e-2;
  if (unit == "mm") return 1e-3;
  if (unit == "um" || unit == "\xc2\xb5m" || unit == "\xce\xbcm") return 1e-6;
  if (unit == "nm") return 1e-9;
  fail_at(path, line, "expected a length unit (nm, um, mm, cm, m), got '" + unit + "'");
}

double unit_factor_power(const std::string& unit, const std::string& path, int line) {
  if (unit == "W") return 1.0;
  if (unit == "mW") return 1e-3;
  fail_at(path, line, "expected a power unit (W, mW), got '" + unit + "'");
}

struct KeyValue {
  std::string value;
  int line = 0;
  bool used = false;
};

std::map<std::string, KeyValue> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::map<std::string, KeyValue> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail_at(path, line, "expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail_at(path, line, "empty key");
    if (value.empty()) fail_at(path, line, "empty value for key '" + key + "'");
    if (entries.count(key)) fail_at(path, line, "duplicate key '" + key + "'");
    entries[key] = KeyValue{value, line, false};
  }
  return entries;
}

class KeyValueReader {
 public:
  KeyValueReader(std::string path) : path_(std::move(path)), entries_(read_key_values(path_)) {}

  double length(const std::string& key) {
    const KeyValue& kv = require(key);
    std::string unit;
    const double v = parse_number(kv.value, path_, kv.line, &unit);
    return v * unit_factor_length(unit, path_, kv.line);
  }

  double power(const std::string& key) {
    const KeyValue& kv = require(key);
    std::string unit;
    const double v = parse_number(kv.value, path_, kv.line, &unit);
    return v * unit_factor_power(unit, path_, kv.line);
  }

  double number(const std::string& key) {
    const KeyValue& kv = require(key);
    return bare(kv);
  }

  double number_or(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return bare(it->second);
  }

  std::optional<double> number_opt(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return bare(it->second);
  }

  int integer(const std::string& key) { return round_int(key, number(key)); }

  int integer_or(const std::string& key, int fallback) {
    return round_int(key, number_or(key, fallback));
  }

  bool boolean_or(const std::string& key, bool fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    if (it->second.value == "true") return true;
    if (it->second.value == "false") return false;
    fail_at(path_, it->second.line, "expected true or false for key '" + key + "'");
  }

  void finish() const {
    for (const auto& [key, kv] : entries_) {
      if (!kv.used) fail_at(path_, kv.line, "unknown key '" + key + "'");
    }
  }

 private:
  const KeyValue& require(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw io_error(path_ + ": missing required key '" + key + "'");
    }
    it->second.used = true;
    return it->second;
  }

  double bare(const KeyValue& kv) {
    std::string unit;
    const double v = parse_number(kv.value, path_, kv.line, &unit);
    if (!unit.empty()) {
      fail_at(path_, kv.line, "unexpected unit '" + unit + "'");
    }
    return v;
  }

  int round_int(const std::string& key, double v) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw io_error(path_ + ": key '" + key + "' must be an integer");
    }
    return i;
  }

  std::string path_;
  std::map<std::string, KeyValue> entries_;
};

std::string format_csv(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ordered_json check_to_json(const AuditCheck& c) {
  ordered_json j;
  j["name"] = c.name;
  j["formula"] = c.formula;
  j["expected"] = c.expected;
  j["observed"] = c.observed;
  j["units"] = c.units;
  j["discrepancy"] = c.discrepancy;
  j["verdict"] = to_string(c.verdict);
  j["note"] = c.note;
  return j;
}

}  // namespace

ApparatusConfig load_apparatus_config(const std::string& path) {
  KeyValueReader r(path);
  ApparatusConfig c;
  c.wavelength = r.length("wavelength");
  c.slit_width = r.length("slit_width");
  c.slit_separation = r.length("slit_separation");
  c.screen_distance = r.length("screen_distance");
  c.pixel_pitch = r.length("pixel_pitch");
  c.pixel_count = r.integer("pixel_count");
  c.beam_power = r.power("beam_power");
  c.beam_diameter = r.length("beam_diameter");
  r.finish();
  c.validate();
  return c;
}

FeatureFile load_features(const std::string& path) {
  KeyValueReader r(path);
  FeatureFile f;
  ObservedFeatures& o = f.features;
  r.integer_or("version", 1);
  o.center_pixel = r.number_or("center_pixel", 1500.0);
  o.recenter_shift_px = r.number_or("recenter_shift_px", 0.0);
  o.fringe_spacing_px = r.number("fringe_spacing_px");
  o.fringe_spacing_px_alt = r.number_opt("fringe_spacing_px_alt");
  o.fringe_count_in_principal = r.integer("fringe_count_in_principal");
  o.missing_order_left = r.integer("missing_order_left");
  o.missing_order_right = r.integer("missing_order_right");
  o.principal_width_px = r.number("principal_width_px");
  o.secondary_max_visible = r.boolean_or("secondary_max_visible", false);
  o.secondary_max_height = r.number_or("secondary_max_height", 0.0);
  o.secondary_max_position_px = r.number_or("secondary_max_position_px", 0.0);
  o.i_max = r.number("i_max");
  o.i_min = r.number("i_min");
  o.i_elev = r.number("i_elev");
  o.fft_peak_k = r.integer("fft_peak_k");
  o.r_value = r.number("r_value");
  f.envelope_a = r.number_opt("envelope_a");
  r.finish();
  o.validate();
  return f;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (trim(line) != "pixel_index,intensity") {
    fail_at(path, 1, "expected header 'pixel_index,intensity'");
  }
  Trace t;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto comma = stripped.find(',');
    if (comma == std::string::npos) fail_at(path, line_no, "expected two columns");
    std::string unit;
    const double idx = parse_number(stripped.substr(0, comma), path, line_no, &unit);
    if (!unit.empty()) fail_at(path, line_no, "malformed pixel index");
    const double value = parse_number(stripped.substr(comma + 1), path, line_no, &unit);
    if (!unit.empty()) fail_at(path, line_no, "malformed intensity");
    if (static_cast<int>(idx) != static_cast<int>(t.samples.size())) {
      fail_at(path, line_no, "pixel index out of sequence");
    }
    t.samples.push_back(value);
  }
  if (t.samples.empty()) throw io_error(path + ": no samples");
  t.center_pixel = t.samples.size() / 2.0;
  return t;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ostringstream os;
  os << "pixel_index,intensity\n";
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    os << i << ',' << format_csv(trace.samples[i]) << '\n';
  }
  atomic_write(path, os.str());
}

void write_spectrum_csv(const PowerSpectrum& spectrum, const std::string& path,
                        double wavenumber_scale) {
  std::ostringstream os;
  os << "wavenumber,power\n";
  for (int k = 0; k < spectrum.bins(); ++k) {
    os << format_csv(k * wavenumber_scale) << ','
       << format_csv(spectrum.powers[k]) << '\n';
  }
  atomic_write(path, os.str());
}

std::string audit_report_json(const AuditReport& report) {
  ordered_json j;
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) j["checks"].push_back(check_to_json(c));
  j["inferred_distance"] = {
      {"from_width_m", report.inferred_distance.from_width},
      {"from_spacing_m", report.inferred_distance.from_spacing},
      {"mean_m", report.inferred_distance.mean},
  };
  j["visibility_reconciliation"] = {
      {"v_pattern", report.visibility_reconciliation.v_pattern},
      {"v_from_r", report.visibility_reconciliation.v_from_r},
      {"compatible", report.visibility_reconciliation.compatible},
  };
  j["summary"] = {
      {"pass", report.count(Verdict::Pass)},
      {"warn", report.count(Verdict::Warn)},
      {"fail", report.count(Verdict::Fail)},
      {"verdict", report.any_fail() ? "fail" : "pass"},
  };
  return j.dump(2) + "\n";
}

std::string visibility_json(const std::vector<VisibilityEstimate>& estimates) {
  ordered_json j;
  j["estimates"] = ordered_json::array();
  for (const auto& e : estimates) {
    ordered_json je;
    je["method"] = to_string(e.method);
    je["value"] = e.value;
    je["raw_value"] = e.raw_value;
    je["clamped"] = e.clamped;
    ordered_json inputs;
    for (const auto& [name, value] : e.inputs) inputs[name] = value;
    je["inputs"] = inputs;
    j["estimates"].push_back(je);
  }
  return j.dump(2) + "\n";
}

std::string fit_json(const EnvelopeFit& fit) {
  ordered_json j;
  j["a"] = fit.a;
  j["residual_rms"] = fit.residual;
  j["warn"] = fit.warn;
  return j.dump(2) + "\n";
}

std::string spectrum_summary_json(const PowerSpectrum& spectrum,
                                  const SpectralPeak& peak, double r_value,
                                  double wavenumber_scale) {
  ordered_json j;
  j["n_samples"] = spectrum.n_samples;
  j["bins"] = spectrum.bins();
  j["peak"] = {
      {"k", peak.k},
      {"wavenumber", peak.k * wavenumber_scale},
      {"power", peak.power},
  };
  j["r_value"] = r_value;
  return j.dump(2) + "\n";
}

std::string audit_report_table(const AuditReport& report) {
  std::ostringstream os;
  os << "check                     verdict  expected      observed      units\n";
  os << "------------------------- -------- ------------- ------------- -----\n";
  for (const auto& c : report.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-25s %-8s %-13.6g %-13.6g %s\n",
                  c.name.c_str(), to_string(c.verdict), c.expected, c.observed,
                  c.units.c_str());
    os << buf;
    if (!c.note.empty()) os << "    " << c.note << '\n';
  }
  os << (report.any_fail() ? "verdict: fail\n" : "verdict: pass\n");
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw io_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw io_error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace fringekit
