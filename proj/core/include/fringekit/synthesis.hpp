#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "fringekit/geometry.hpp"

namespace fringekit {

/// Intensity samples on the camera line.
///
/// Pixel traces use axis_step = 1 (one sample per pixel) with
/// angular_axis = false. The reference simulation is sampled on an angle
/// axis instead; it sets angular_axis and stores its step in radians.
struct Trace {
  std::vector<double> samples;
  double pixel_pitch = 7e-6;
  double center_pixel = 0;
  double axis_step = 1.0;
  bool angular_axis = false;

  int size() const { return static_cast<int>(samples.size()); }

  /// Throws domain_error on negative or non-finite samples or length < 16.
  void validate() const;
};

enum class EnvelopeModel {
  ExactSinc2,    // physical single-slit envelope
  RaisedCosine,  // (1 + cos x) / 2 across the window
  Extended,      // raised cosine plus a cos 2x correction with coefficient A
};

/// Parameters of the window-model trace
/// I(x) = F(x)·I0·[1 + V cos(Kx)] + I_DC on x = 2π(i - center)/N.
struct SynthesisParams {
  double i0 = 1.0;       // I1 + I2, arbitrary units
  double v = 1.0;        // visibility
  double i_dc = 0.0;     // detector offset
  double k = 44.0;       // fringe wavenumber, cycles per window
  EnvelopeModel envelope = EnvelopeModel::RaisedCosine;
  double extended_a = 0.0;  // A, only used by the Extended envelope
  double noise_sigma = 0.0; // additive Gaussian, 0 disables
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Normalized two-slit intensity at angle theta:
/// sinc²(π a sinθ/λ) · cos²(π d sinθ/λ), equal to 1 at θ = 0.
double intensity_exact(const ApparatusConfig& config, double theta);

/// intensity_exact with an adjustable fringe contrast:
/// sinc²(β) · (1 + v·cos(2π d sinθ/λ)) / 2.
double intensity_exact_v(const ApparatusConfig& config, double theta, double v);

/// Samples the physical model on the camera pixels:
/// i0 · intensity_exact_v(θ_i) + i_dc with θ_i = atan((i - center)·pitch/D),
/// plus optional seeded Gaussian noise clipped at zero.
Trace synthesize_physical(const ApparatusConfig& config, double v, double i0,
                          double i_dc, double noise_sigma = 0.0,
                          std::uint64_t rng_seed = 0);

/// Window envelope value at x ∈ [-π, π].
/// RaisedCosine: (1 + cos x)/2. Extended: (1-A)/2 + cos(x)/2 + A cos(2x)/2.
double envelope(EnvelopeModel model, double x, double extended_a = 0.0);

/// Window-model trace on n_pixels samples; samples are clamped at zero
/// (the extended envelope dips negative for A > 0.25).
Trace synthesize_trace(const SynthesisParams& params, int n_pixels);

/// The fixed single-slit-times-interference simulation:
/// [sin(10θ)/(10θ)]² · cos²(200θ) sampled symmetrically about θ = 0.
Trace simulate_reference(int n_points = 10004, double step = 2e-4);

/// Deterministic measurement defects: a linear left-right intensity skew,
/// pixels forced to zero, and a smooth envelope taper that suppresses the
/// side lobes (apodization_strength 0 means no taper).
Trace apply_defects(const Trace& trace, double tilt_skew,
                    const std::set<int>& dead_pixels,
                    double apodization_strength);

}  // namespace fringekit
