#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fringekit/geometry.hpp"
#include "fringekit/synthesis.hpp"

namespace fringekit {

/// Pattern features measured from a trace (or transcribed by hand from a
/// published figure via the features override file).
struct ObservedFeatures {
  double center_pixel = 0;
  double recenter_shift_px = 0;
  std::vector<double> fringe_peak_positions;
  double fringe_spacing_px = 0;
  // Second spacing estimate when a source offers one (for example a
  // wider-baseline count); informational only.
  std::optional<double> fringe_spacing_px_alt;
  int fringe_count_in_principal = 0;
  int missing_order_left = 0;
  int missing_order_right = 0;
  double principal_width_px = 0;
  bool secondary_max_visible = false;
  double secondary_max_height = 0;
  double secondary_max_position_px = 0;
  double i_max = 0;
  double i_min = 0;
  double i_elev = 0;
  int fft_peak_k = 0;
  double r_value = 0;

  void validate() const;
};

enum class Verdict { Pass, Warn, Fail };

const char* to_string(Verdict v);

/// One expected-vs-observed comparison inside an audit report.
struct AuditCheck {
  std::string name;
  std::string formula;
  double expected = 0;
  double observed = 0;
  std::string units;
  double discrepancy = 0;  // observed - expected
  Verdict verdict = Verdict::Pass;
  std::string note;
};

struct InferredDistance {
  double from_width = 0;
  double from_spacing = 0;
  double mean = 0;
};

struct VisibilityReconciliation {
  double v_pattern = 0;  // elevation-corrected extrema estimate
  double v_from_r = 0;   // envelope-corrected spectral estimate
  bool compatible = false;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  InferredDistance inferred_distance;
  VisibilityReconciliation visibility_reconciliation;

  bool any_fail() const;
  int count(Verdict v) const;
};

struct RecenterResult {
  Trace trace;
  double shift_px = 0;
};

/// Shifts the trace so the two anchor-order fringe crests straddle the
/// anchor pixels symmetrically, putting the zero-order fringe at their
/// midpoint. Defaults follow the 3000-pixel protocol: 13th-order crests at
/// pixels 600 and 2400, center 1500.
RecenterResult recenter_trace(const Trace& trace, int anchor_left_px = 600,
                              int anchor_right_px = 2400, int anchor_order = 13);

/// Measures fringe features from a trace: crest positions (2% prominence,
/// parabolic sub-pixel refinement), spacing from the 13th-order (or widest
/// available) crest pair, missing orders from the first local minimum of the
/// per-order crest heights, principal width between the missing-fringe
/// centers, intensity extrema, and the spectral peak and R value.
ObservedFeatures extract_features(const Trace& trace);

/// Compares geometry predictions for the config against observed features.
/// envelope_a feeds the visibility reconciliation (fitted from the trace or
/// supplied by the features file); without it the raised-cosine value 0 is
/// used.
AuditReport audit(const ApparatusConfig& config, const ObservedFeatures& features,
                  std::optional<double> envelope_a = std::nullopt);

struct EnvelopeFit {
  double a = 0;
  double residual = 0;  // RMS over the fitted crest heights
  bool warn = false;    // fit failed to beat the raised-cosine baseline
};

/// Least-squares fit of the extended window envelope to the fringe-crest
/// upper envelope: golden-section search of A over [0, 0.9] to 1e-4, with
/// scale and offset fitted linearly at each step.
EnvelopeFit fit_envelope_A(const Trace& trace);

}  // namespace fringekit
