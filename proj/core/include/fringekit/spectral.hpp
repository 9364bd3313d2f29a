#pragma once

#include <vector>

#include "fringekit/synthesis.hpp"

namespace fringekit {

/// One-sided power spectrum, bins k = 0..N/2 (cycles per window).
///
/// Scaling: power[k] is the squared cosine coefficient of the sample
/// sequence at bin k. A trace c0 + Σ c_k cos(2πk i/N) yields power[0] = c0²
/// and power[k] = c_k² at interior bins. In DFT terms power[0] = |X0/N|²,
/// power[k] = (2|X_k|/N)² for 0 < k < N/2, and power[N/2] = |X_{N/2}/N|².
/// Under this scaling Σ w_k power[k] with w = 1 at DC/Nyquist and 1/2
/// elsewhere equals the mean square of the samples.
struct PowerSpectrum {
  std::vector<double> powers;
  int n_samples = 0;

  int bins() const { return static_cast<int>(powers.size()); }
};

/// FFT-backed power spectrum of the raw samples. No window function and no
/// detrending: spectral leakage at non-integer fringe wavenumbers is part of
/// the signal being studied.
PowerSpectrum power_spectrum(const Trace& trace);

/// Direct O(N²) summation under the identical scaling; the independent
/// reference implementation power_spectrum is checked against.
PowerSpectrum brute_force_dft(const Trace& trace);

/// Wavenumber (cycles per window) of a periodicity with the given sample
/// period: n_samples / spacing.
double spacing_to_wavenumber(double spacing_px, int n_samples);

struct SpectralPeak {
  int k = 0;
  double power = 0;
};

/// Highest-power bin at k >= k_min; ties break toward lower k. Bins 0-2 are
/// excluded by default (DC, the window-envelope line, and its second
/// harmonic).
SpectralPeak detect_interference_peak(const PowerSpectrum& spectrum, int k_min = 3);

/// R = power[k_peak] / power[1], the fringe-line to envelope-line power
/// ratio. Equals V² for raised-cosine window traces with integer wavenumber.
double r_statistic(const PowerSpectrum& spectrum, int k_peak);

struct SpectrumAlignment {
  int shift = 0;        // declared - corrected
  int corrected_k = 0;  // where the fringe line belongs
};

/// Registration check between a declared peak bin and the bin implied by the
/// observed fringe spacing. The implied n/spacing is generally fractional;
/// the corrected bin is whichever of its floor/ceil lies nearer the declared
/// peak, and the shift is what the declaration must move by.
SpectrumAlignment align_spectrum_origin(const PowerSpectrum& spectrum,
                                        int declared_peak_k, double spacing_px);

/// Session normalization (r - mean)/stddev with the sample (n-1) standard
/// deviation. Throws on fewer than 2 values or zero variance.
std::vector<double> r_z_normalize(const std::vector<double>& r_values);

/// Closed-form line powers of the raised-cosine window model.
struct LinePowers {
  double at_0 = 0;       // (I0/2 + I_DC)²
  double at_1 = 0;       // (I0/2)²
  double at_k = 0;       // (I0 V/2)²
  double at_k_side = 0;  // (I0 V/4)², both K-1 and K+1
};

LinePowers predicted_line_powers(double i0, double v, double i_dc);

}  // namespace fringekit
