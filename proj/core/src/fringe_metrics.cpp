#include "fringekit/fringe_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fringekit/errors.hpp"

namespace fringekit {
namespace {

VisibilityEstimate make_estimate(double raw, VisibilityMethod method,
                                 std::vector<std::pair<std::string, double>> inputs) {
  VisibilityEstimate e;
  e.raw_value = raw;
  e.value = std::clamp(raw, 0.0, 1.0);
  e.clamped = e.value != raw;
  e.method = method;
  e.inputs = std::move(inputs);
  return e;
}

}  // namespace

const char* to_string(VisibilityMethod method) {
  switch (method) {
    case VisibilityMethod::Extrema: return "extrema";
    case VisibilityMethod::ElevationCorrected: return "elevation-corrected";
    case VisibilityMethod::FromR: return "from-R";
    case VisibilityMethod::FromREnvelope: return "from-R-envelope";
    case VisibilityMethod::Coherence: return "coherence";
  }
  return "unknown";
}

VisibilityEstimate visibility_extrema(double i_max, double i_min) {
  if (i_min < 0 || i_max <= 0) {
    throw domain_error("visibility: intensities must be non-negative, i_max positive");
  }
  if (i_max < i_min) {
    throw domain_error("visibility: i_max below i_min, arguments swapped?");
  }
  const double v = (i_max - i_min) / (i_max + i_min);
  return make_estimate(v, VisibilityMethod::Extrema,
                       {{"i_max", i_max}, {"i_min", i_min}});
}

VisibilityEstimate visibility_elevation_corrected(double i_max, double i_min,
                                                  double i_elev) {
  if (i_elev < 0 || i_max <= i_elev) {
    throw domain_error("visibility: need i_max > i_elev >= 0");
  }
  if (i_min < i_elev) {
    throw domain_error("visibility: i_min below the pattern elevation");
  }
  if (i_max < i_min) {
    throw domain_error("visibility: i_max below i_min, arguments swapped?");
  }
  const double up = i_max - i_elev;
  const double down = i_min - i_elev;
  const double v = (up - down) / (up + down);
  return make_estimate(v, VisibilityMethod::ElevationCorrected,
                       {{"i_max", i_max}, {"i_min", i_min}, {"i_elev", i_elev}});
}

VisibilityEstimate visibility_from_r(double r) {
  if (r < 0) throw domain_error("visibility: R must be non-negative");
  return make_estimate(std::sqrt(r), VisibilityMethod::FromR, {{"r", r}});
}

VisibilityEstimate visibility_from_r_envelope(double r, double a) {
  if (r < 0) throw domain_error("visibility: R must be non-negative");
  if (a < 0 || a >= 1) {
    throw domain_error("visibility: envelope coefficient must be in [0, 1)");
  }
  // The model's envelope Fourier coefficients give a0/a1 = 1 - A, so the
  // measured sqrt(R) understates V by that factor.
  return make_estimate(std::sqrt(r) / (1.0 - a), VisibilityMethod::FromREnvelope,
                       {{"r", r}, {"a", a}});
}

VisibilityEstimate visibility_from_coherence(double i1, double i2, double gamma) {
  if (i1 <= 0 || i2 <= 0) throw domain_error("visibility: beam intensities must be positive");
  if (gamma < 0 || gamma > 1) throw domain_error("visibility: gamma must be in [0, 1]");
  const double v = 2.0 * std::sqrt(i1 * i2) / (i1 + i2) * gamma;
  return make_estimate(v, VisibilityMethod::Coherence,
                       {{"i1", i1}, {"i2", i2}, {"gamma", gamma}});
}

double distinguishability_balanced(double i1, double i2) {
  if (i1 < 0 || i2 < 0 || (i1 == 0 && i2 == 0)) {
    throw domain_error("distinguishability: intensities must be non-negative, not both zero");
  }
  return std::abs(i1 - i2) / (i1 + i2);
}

ComplementarityResult complementarity_check(double p, double v) {
  if (p < 0 || p > 1 || v < 0 || v > 1) {
    throw domain_error("complementarity: p and v must be in [0, 1]");
  }
  ComplementarityResult r;
  r.lhs = p * p + v * v;
  r.satisfied = r.lhs <= 1.0 + 1e-12;
  r.saturated = std::abs(r.lhs - 1.0) <= 1e-9;
  return r;
}

}  // namespace fringekit
