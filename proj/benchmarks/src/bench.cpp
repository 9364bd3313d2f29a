#include <benchmark/benchmark.h>

#include "fringekit/audit.hpp"
#include "fringekit/geometry.hpp"
#include "fringekit/spectral.hpp"
#include "fringekit/synthesis.hpp"

namespace {

fringekit::ApparatusConfig bench_config() {
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

fringekit::Trace window_trace(int n) {
  fringekit::SynthesisParams p;
  p.i0 = 500;
  p.v = 0.9;
  p.i_dc = 245;
  p.k = 45;
  return fringekit::synthesize_trace(p, n);
}

void BM_power_spectrum(benchmark::State& state) {
  const auto trace = window_trace(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fringekit::power_spectrum(trace));
  }
}
BENCHMARK(BM_power_spectrum)->Arg(1024)->Arg(3000)->Arg(10004);

void BM_brute_force_dft(benchmark::State& state) {
  const auto trace = window_trace(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fringekit::brute_force_dft(trace));
  }
}
BENCHMARK(BM_brute_force_dft)->Arg(256)->Arg(1024);

void BM_synthesize_physical(benchmark::State& state) {
  const auto config = bench_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fringekit::synthesize_physical(config, 1.0, 787, 0));
  }
}
BENCHMARK(BM_synthesize_physical);

void BM_extract_features(benchmark::State& state) {
  const auto trace =
      fringekit::synthesize_physical(bench_config(), 1.0, 787, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fringekit::extract_features(trace));
  }
}
BENCHMARK(BM_extract_features);

void BM_fit_envelope(benchmark::State& state) {
  fringekit::SynthesisParams p;
  p.i0 = 500;
  p.v = 0.9;
  p.i_dc = 245;
  p.k = 45;
  p.envelope = fringekit::EnvelopeModel::Extended;
  p.extended_a = 0.25;
  const auto trace = fringekit::synthesize_trace(p, 3000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fringekit::fit_envelope_A(trace));
  }
}
BENCHMARK(BM_fit_envelope);

}  // namespace

BENCHMARK_MAIN();
