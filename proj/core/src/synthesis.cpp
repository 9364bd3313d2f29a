#include "fringekit/synthesis.hpp"

#include <cmath>
#include <random>

#include "fringekit/errors.hpp"

namespace fringekit {
namespace {

double sinc_sq(double beta) {
  if (beta == 0.0) return 1.0;
  const double s = std::sin(beta) / beta;
  return s * s;
}

}  // namespace

void Trace::validate() const {
  if (size() < 16) {
    throw domain_error("trace: need at least 16 samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v) || v < 0) {
      throw domain_error("trace: samples must be finite and non-negative");
    }
  }
}

void SynthesisParams::validate() const {
  if (v < 0 || v > 1) throw domain_error("synthesis: visibility must be in [0, 1]");
  if (i0 <= 0) throw domain_error("synthesis: i0 must be positive");
  if (i_dc < 0) throw domain_error("synthesis: i_dc must be non-negative");
  if (k <= 1) throw domain_error("synthesis: wavenumber must exceed 1");
  if (envelope == EnvelopeModel::Extended && (extended_a < 0 || extended_a >= 1)) {
    throw domain_error("synthesis: extended envelope coefficient must be in [0, 1)");
  }
  if (noise_sigma < 0) throw domain_error("synthesis: noise sigma must be non-negative");
}

double intensity_exact(const ApparatusConfig& config, double theta) {
  // (1 + cos φ)/2 = cos²(φ/2), so the v = 1 form is sinc²(β)·cos²(π d sinθ/λ).
  return intensity_exact_v(config, theta, 1.0);
}

double intensity_exact_v(const ApparatusConfig& config, double theta, double v) {
  if (std::abs(theta) >= M_PI / 2) {
    throw domain_error("intensity: |theta| must be below pi/2");
  }
  if (v < 0 || v > 1) {
    throw domain_error("intensity: visibility must lie in [0, 1]");
  }
  const double s = std::sin(theta);
  const double beta = M_PI * config.slit_width * s / config.wavelength;
  const double phi = 2.0 * M_PI * config.slit_separation * s / config.wavelength;
  return sinc_sq(beta) * (1.0 + v * std::cos(phi)) / 2.0;
}

Trace synthesize_physical(const ApparatusConfig& config, double v, double i0,
                          double i_dc, double noise_sigma,
                          std::uint64_t rng_seed) {
  config.validate();
  if (v < 0 || v > 1) throw domain_error("synthesis: visibility must be in [0, 1]");
  Trace t;
  t.pixel_pitch = config.pixel_pitch;
  t.center_pixel = config.center_pixel();
  t.samples.resize(config.pixel_count);
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> noise(0.0, noise_sigma);
  for (int i = 0; i < config.pixel_count; ++i) {
    const double theta = std::atan((i - t.center_pixel) * config.pixel_pitch /
                                   config.screen_distance);
    // intensity_exact_v has peak 1/2 at θ=0 for v=1; scale so the center
    // reaches i0 + i_dc like the window model does.
    double y = 2.0 * i0 * intensity_exact_v(config, theta, v) / (1.0 + v) + i_dc;
    if (noise_sigma > 0) y += noise(rng);
    t.samples[i] = std::max(y, 0.0);
  }
  return t;
}

double envelope(EnvelopeModel model, double x, double extended_a) {
  switch (model) {
    case EnvelopeModel::RaisedCosine:
      return (1.0 + std::cos(x)) / 2.0;
    case EnvelopeModel::Extended: {
      if (extended_a < 0 || extended_a >= 1) {
        throw domain_error("envelope: extended coefficient must be in [0, 1)");
      }
      return (1.0 - extended_a) / 2.0 + std::cos(x) / 2.0 +
             extended_a * std::cos(2.0 * x) / 2.0;
    }
    case EnvelopeModel::ExactSinc2:
      throw domain_error("envelope: exact model needs apparatus geometry, not x");
  }
  throw domain_error("envelope: unknown model");
}

Trace synthesize_trace(const SynthesisParams& params, int n_pixels) {
  params.validate();
  if (n_pixels < 16) throw domain_error("synthesis: need at least 16 pixels");
  if (params.envelope == EnvelopeModel::ExactSinc2) {
    throw domain_error("synthesis: exact model requires synthesize_physical");
  }
  Trace t;
  t.center_pixel = n_pixels / 2.0;
  t.samples.resize(n_pixels);
  std::mt19937_64 rng(params.rng_seed);
  std::normal_distribution<double> noise(0.0, params.noise_sigma);
  for (int i = 0; i < n_pixels; ++i) {
    const double x = 2.0 * M_PI * (i - t.center_pixel) / n_pixels;
    const double f = envelope(params.envelope, x, params.extended_a);
    double y = f * params.i0 * (1.0 + params.v * std::cos(params.k * x)) + params.i_dc;
    if (params.noise_sigma > 0) y += noise(rng);
    t.samples[i] = std::max(y, 0.0);
  }
  return t;
}

Trace simulate_reference(int n_points, double step) {
  if (n_points < 2) throw domain_error("reference simulation: need at least 2 points");
  if (step <= 0) throw domain_error("reference simulation: step must be positive");
  Trace t;
  t.center_pixel = (n_points - 1) / 2.0;
  t.axis_step = step;
  t.angular_axis = true;
  t.samples.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double theta = (i - t.center_pixel) * step;
    const double c = std::cos(200.0 * theta);
    t.samples[i] = sinc_sq(10.0 * theta) * c * c;
  }
  return t;
}

Trace apply_defects(const Trace& trace, double tilt_skew,
                    const std::set<int>& dead_pixels,
                    double apodization_strength) {
  trace.validate();
  if (apodization_strength < 0) {
    throw domain_error("defects: apodization strength must be non-negative");
  }
  const int n = trace.size();
  for (int p : dead_pixels) {
    if (p < 0 || p >= n) throw domain_error("defects: dead pixel index out of range");
  }
  Trace out = trace;
  for (int i = 0; i < n; ++i) {
    const double x = 2.0 * M_PI * (i - trace.center_pixel) / n;
    double y = out.samples[i];
    if (tilt_skew != 0) {
      y *= std::max(0.0, 1.0 + tilt_skew * (i - trace.center_pixel) / n);
    }
    if (apodization_strength > 0) {
      y *= std::pow((1.0 + std::cos(x)) / 2.0, apodization_strength);
    }
    out.samples[i] = y;
  }
  for (int p : dead_pixels) out.samples[p] = 0.0;
  return out;
}

}  // namespace fringekit
