#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fringekit/audit.hpp"
#include "fringekit/fringe_metrics.hpp"
#include "fringekit/geometry.hpp"
#include "fringekit/spectral.hpp"
#include "fringekit/synthesis.hpp"

namespace fringekit {

/// Apparatus description parsed from a key = value file. Length values carry
/// an explicit unit suffix (nm, um, mm, cm, m), powers W or mW; pixel_count
/// is a bare integer. Unknown keys, duplicate keys, missing keys, and
/// malformed numbers are all errors, each reported with its line number.
ApparatusConfig load_apparatus_config(const std::string& path);

/// Observed-feature override file, same key = value format as the apparatus
/// config but with bare numbers (pixel and intensity units are implicit).
/// The optional envelope_a entry rides along for the visibility
/// reconciliation; it is not part of the feature set itself.
struct FeatureFile {
  ObservedFeatures features;
  std::optional<double> envelope_a;
};

FeatureFile load_features(const std::string& path);

/// Trace CSV: header row `pixel_index,intensity`, one row per sample.
/// Reading checks the header and numbers every parse error with its line.
Trace read_trace_csv(const std::string& path);
void write_trace_csv(const Trace& trace, const std::string& path);

/// Spectrum CSV: header row `wavenumber,power`. The wavenumber column is
/// k * wavenumber_scale, so integer-bin output uses scale 1 and traces with
/// a physical axis pass 1/(n * axis_step).
void write_spectrum_csv(const PowerSpectrum& spectrum, const std::string& path,
                        double wavenumber_scale = 1.0);

/// JSON documents (two-space indent, stable key order, trailing newline).
std::string audit_report_json(const AuditReport& report);
std::string visibility_json(const std::vector<VisibilityEstimate>& estimates);
std::string fit_json(const EnvelopeFit& fit);
std::string spectrum_summary_json(const PowerSpectrum& spectrum,
                                  const SpectralPeak& peak, double r_value,
                                  double wavenumber_scale = 1.0);

/// Plain-text audit table, one row per check.
std::string audit_report_table(const AuditReport& report);

/// Write-temp-then-rename so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace fringekit
