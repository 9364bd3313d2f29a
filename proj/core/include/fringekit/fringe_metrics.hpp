#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fringekit {

enum class VisibilityMethod {
  Extrema,             // (Imax - Imin)/(Imax + Imin)
  ElevationCorrected,  // extrema after subtracting the pattern baseline
  FromR,               // sqrt(R)
  FromREnvelope,       // sqrt(R)/(1 - A)
  Coherence,           // 2 sqrt(I1 I2)/(I1 + I2) · γ
};

const char* to_string(VisibilityMethod method);

/// A visibility value, its provenance, and the inputs it came from.
/// Estimates outside [0, 1] (possible for noisy inputs through the R-based
/// formulas) are clamped and flagged; raw_value keeps the unclamped number.
struct VisibilityEstimate {
  double value = 0;
  double raw_value = 0;
  bool clamped = false;
  VisibilityMethod method = VisibilityMethod::Extrema;
  std::vector<std::pair<std::string, double>> inputs;
};

VisibilityEstimate visibility_extrema(double i_max, double i_min);

VisibilityEstimate visibility_elevation_corrected(double i_max, double i_min,
                                                  double i_elev);

VisibilityEstimate visibility_from_r(double r);

VisibilityEstimate visibility_from_r_envelope(double r, double a);

VisibilityEstimate visibility_from_coherence(double i1, double i2, double gamma);

/// Which-path predictability of an unbalanced pair: |I1 - I2|/(I1 + I2).
double distinguishability_balanced(double i1, double i2);

struct ComplementarityResult {
  double lhs = 0;  // p² + v²
  bool satisfied = false;
  bool saturated = false;
};

/// The duality bound p² + v² ≤ 1, with saturation detected at 1e-9.
ComplementarityResult complementarity_check(double p, double v);

}  // namespace fringekit
