#include "fringekit/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

#include "fringekit/errors.hpp"

namespace fringekit {
namespace {

// FFTW plan creation is not thread safe; execution of a created plan is.
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// |X|² of the half spectrum folded into the squared-coefficient scaling.
PowerSpectrum scale_half_spectrum(std::vector<std::complex<double>> half, int n) {
  PowerSpectrum ps;
  ps.n_samples = n;
  const int bins = n / 2 + 1;
  ps.powers.resize(bins);
  for (int k = 0; k < bins; ++k) {
    double amp = std::abs(half[k]) / n;
    const bool interior = k != 0 && !(n % 2 == 0 && k == bins - 1);
    if (interior) amp *= 2.0;
    ps.powers[k] = amp * amp;
  }
  return ps;
}

}  // namespace

PowerSpectrum power_spectrum(const Trace& trace) {
  const int n = trace.size();
  if (n < 16) throw domain_error("power spectrum: need at least 16 samples");
  const int bins = n / 2 + 1;
  std::vector<double> in(trace.samples.begin(), trace.samples.end());
  std::vector<std::complex<double>> out(bins);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  if (!plan) throw error("power spectrum: FFT plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  return scale_half_spectrum(std::move(out), n);
}

PowerSpectrum brute_force_dft(const Trace& trace) {
  const int n = trace.size();
  if (n < 16) throw domain_error("power spectrum: need at least 16 samples");
  // Twiddle lookup: exp(-2πi·j/n) for j = 0..n-1; index (k·i) mod n.
  std::vector<double> cos_tab(n), sin_tab(n);
  for (int j = 0; j < n; ++j) {
    cos_tab[j] = std::cos(2.0 * M_PI * j / n);
    sin_tab[j] = std::sin(2.0 * M_PI * j / n);
  }
  const int bins = n / 2 + 1;
  std::vector<std::complex<double>> out(bins);
  for (int k = 0; k < bins; ++k) {
    double re = 0, im = 0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      re += trace.samples[i] * cos_tab[idx];
      im -= trace.samples[i] * sin_tab[idx];
      idx += k;
      if (idx >= static_cast<std::size_t>(n)) idx -= n;
    }
    out[k] = {re, im};
  }
  return scale_half_spectrum(std::move(out), n);
}

double spacing_to_wavenumber(double spacing_px, int n_samples) {
  if (spacing_px <= 0) throw domain_error("wavenumber: spacing must be positive");
  return n_samples / spacing_px;
}

SpectralPeak detect_interference_peak(const PowerSpectrum& spectrum, int k_min) {
  if (k_min < 2) throw domain_error("peak detection: k_min must be at least 2");
  if (k_min >= spectrum.bins()) {
    throw domain_error("peak detection: empty search range");
  }
  SpectralPeak best{k_min, spectrum.powers[k_min]};
  for (int k = k_min + 1; k < spectrum.bins(); ++k) {
    if (spectrum.powers[k] > best.power) best = {k, spectrum.powers[k]};
  }
  return best;
}

double r_statistic(const PowerSpectrum& spectrum, int k_peak) {
  if (k_peak < 0 || k_peak >= spectrum.bins()) {
    throw domain_error("r statistic: peak bin out of range");
  }
  const double p1 = spectrum.powers[1];
  if (p1 <= 0) throw domain_error("r statistic: undefined, power at bin 1 is zero");
  return spectrum.powers[k_peak] / p1;
}

SpectrumAlignment align_spectrum_origin(const PowerSpectrum& spectrum,
                                        int declared_peak_k, double spacing_px) {
  const double expected = spacing_to_wavenumber(spacing_px, spectrum.n_samples);
  const int lo = static_cast<int>(std::floor(expected));
  const int hi = static_cast<int>(std::ceil(expected));
  SpectrumAlignment a;
  a.corrected_k = std::abs(declared_peak_k - lo) <= std::abs(declared_peak_k - hi)
                      ? lo
                      : hi;
  a.shift = declared_peak_k - a.corrected_k;
  return a;
}

std::vector<double> r_z_normalize(const std::vector<double>& r_values) {
  const std::size_t n = r_values.size();
  if (n < 2) throw domain_error("r_z: need at least 2 values");
  const double mean = std::accumulate(r_values.begin(), r_values.end(), 0.0) / n;
  double ss = 0;
  for (double r : r_values) ss += (r - mean) * (r - mean);
  const double sigma = std::sqrt(ss / (n - 1));
  if (sigma <= 0) throw domain_error("r_z: zero variance session");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (r_values[i] - mean) / sigma;
  return out;
}

LinePowers predicted_line_powers(double i0, double v, double i_dc) {
  if (i0 <= 0 || v < 0 || v > 1 || i_dc < 0) {
    throw domain_error("line powers: invalid model parameters");
  }
  LinePowers p;
  p.at_0 = (i0 / 2 + i_dc) * (i0 / 2 + i_dc);
  p.at_1 = (i0 / 2) * (i0 / 2);
  p.at_k = (i0 * v / 2) * (i0 * v / 2);
  p.at_k_side = (i0 * v / 4) * (i0 * v / 4);
  return p;
}

}  // namespace fringekit
