#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "fringekit/audit.hpp"
#include "fringekit/errors.hpp"
#include "fringekit/io.hpp"
#include "fringekit/spectral.hpp"
#include "fringekit/synthesis.hpp"

#include "support.hpp"

using namespace fringekit;
using doctest::Approx;
namespace fs = std::filesystem;
using testsupport::bench_config;
using testsupport::make_temp_dir;
using testsupport::read_file;
using testsupport::write_file;

namespace {

std::string data_dir() { return testsupport::env_or("FRINGE_DATA_DIR", "data"); }
std::string schema_dir() { return testsupport::env_or("FRINGE_SCHEMA_DIR", "schemas"); }

}  // namespace

TEST_CASE("apparatus config loads with unit suffixes") {
  const ApparatusConfig c = load_apparatus_config(data_dir() + "/sample_apparatus.toml");
  const ApparatusConfig expected = bench_config();
  CHECK(c.wavelength == Approx(expected.wavelength).epsilon(1e-12));
  CHECK(c.slit_width == Approx(expected.slit_width).epsilon(1e-12));
  CHECK(c.slit_separation == Approx(expected.slit_separation).epsilon(1e-12));
  CHECK(c.screen_distance == Approx(expected.screen_distance).epsilon(1e-12));
  CHECK(c.pixel_pitch == Approx(expected.pixel_pitch).epsilon(1e-12));
  CHECK(c.pixel_count == 3000);
  CHECK(c.beam_power == Approx(0.5e-3).epsilon(1e-12));
  CHECK(c.beam_diameter == Approx(0.8e-3).epsilon(1e-12));
}

TEST_CASE("config parser failure modes carry line numbers") {
  const auto dir = make_temp_dir("io_cfg");
  const std::string base =
      "wavelength = 632.8 nm\nslit_width = 10 um\nslit_separation = 200 um\n"
      "screen_distance = 10.4 cm\npixel_pitch = 7 um\npixel_count = 3000\n"
      "beam_power = 0.5 mW\nbeam_diameter = 0.8 mm\n";

  write_file(dir / "good.toml", base);
  CHECK_NOTHROW(load_apparatus_config((dir / "good.toml").string()));

  write_file(dir / "unknown.toml", base + "slit_hight = 1 um\n");
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "unknown.toml").string()),
                       doctest::Contains("unknown key 'slit_hight'"), io_error);
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "unknown.toml").string()),
                       doctest::Contains(":9:"), io_error);

  write_file(dir / "dup.toml", base + "wavelength = 500 nm\n");
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "dup.toml").string()),
                       doctest::Contains("duplicate key"), io_error);

  write_file(dir / "missing.toml",
             "wavelength = 632.8 nm\nslit_width = 10 um\n");
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "missing.toml").string()),
                       doctest::Contains("missing required key"), io_error);

  write_file(dir / "badunit.toml",
             base.substr(0, base.find("632.8 nm")) + "632.8 furlong\n" +
                 base.substr(base.find("slit_width")));
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "badunit.toml").string()),
                       doctest::Contains("length unit"), io_error);

  write_file(dir / "badnum.toml",
             "wavelength = red nm\n" + base.substr(base.find("slit_width")));
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "badnum.toml").string()),
                       doctest::Contains("expected a number"), io_error);

  write_file(dir / "noeq.toml", base + "pixel pitch 7 um\n");
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "noeq.toml").string()),
                       doctest::Contains("key = value"), io_error);

  write_file(dir / "fracpx.toml",
             base.substr(0, base.find("pixel_count")) + "pixel_count = 3000.5\n" +
                 base.substr(base.find("beam_power")));
  CHECK_THROWS_WITH_AS(load_apparatus_config((dir / "fracpx.toml").string()),
                       doctest::Contains("integer"), io_error);

  CHECK_THROWS_AS(load_apparatus_config((dir / "absent.toml").string()), io_error);
}

TEST_CASE("micrometer suffix spellings") {
  const auto dir = make_temp_dir("io_um");
  for (const std::string um : {"um", "\xc2\xb5m", "\xce\xbcm"}) {
    write_file(dir / "c.toml",
               "wavelength = 632.8 nm\nslit_width = 10 " + um +
                   "\nslit_separation = 200 um\nscreen_distance = 10.4 cm\n"
                   "pixel_pitch = 7 um\npixel_count = 3000\n"
                   "beam_power = 0.5 mW\nbeam_diameter = 0.8 mm\n");
    CHECK(load_apparatus_config((dir / "c.toml").string()).slit_width ==
          Approx(10e-6).epsilon(1e-12));
  }
}

TEST_CASE("published features load with defaults and extras") {
  const FeatureFile f = load_features(data_dir() + "/sample_features.toml");
  CHECK(f.features.fringe_spacing_px == 69.0);
  CHECK(f.features.fringe_spacing_px_alt.has_value());
  CHECK(*f.features.fringe_spacing_px_alt == 70.0);
  CHECK(f.features.fringe_count_in_principal == 32);
  CHECK(f.features.missing_order_left == 17);
  CHECK(f.features.missing_order_right == 16);
  CHECK(f.features.principal_width_px == 2308.0);
  CHECK_FALSE(f.features.secondary_max_visible);
  CHECK(f.features.i_max == 1045.0);
  CHECK(f.features.i_min == 270.0);
  CHECK(f.features.i_elev == 262.0);
  CHECK(f.features.fft_peak_k == 45);
  CHECK(f.features.r_value == 0.32);
  CHECK(f.features.center_pixel == 1500.0);
  CHECK(f.features.recenter_shift_px == 19.0);
  REQUIRE(f.envelope_a.has_value());
  CHECK(*f.envelope_a == 0.25);

  const auto dir = make_temp_dir("io_feat");
  write_file(dir / "minimal.toml",
             "fringe_spacing_px = 47\nfringe_count_in_principal = 39\n"
             "missing_order_left = 20\nmissing_order_right = 20\n"
             "principal_width_px = 1884\ni_max = 787\ni_min = 0\ni_elev = 0\n"
             "fft_peak_k = 64\nr_value = 0.5\n");
  const FeatureFile minimal = load_features((dir / "minimal.toml").string());
  CHECK(minimal.features.center_pixel == 1500.0);
  CHECK(minimal.features.recenter_shift_px == 0.0);
  CHECK_FALSE(minimal.features.fringe_spacing_px_alt.has_value());
  CHECK_FALSE(minimal.envelope_a.has_value());
}

TEST_CASE("trace CSV round trip and parse errors") {
  const auto dir = make_temp_dir("io_csv");
  const Trace t = synthesize_physical(bench_config(), 1.0, 787.0, 0.0);
  const std::string path = (dir / "t.csv").string();
  write_trace_csv(t, path);

  const std::string text = read_file(path);
  CHECK(text.rfind("pixel_index,intensity\n", 0) == 0);

  const Trace back = read_trace_csv(path);
  REQUIRE(back.size() == t.size());
  for (int i = 0; i < t.size(); i += 101) {
    CHECK(back.samples[i] == Approx(t.samples[i]).epsilon(1e-8));
  }

  write_file(dir / "nohdr.csv", "0,1.0\n1,2.0\n");
  CHECK_THROWS_WITH_AS(read_trace_csv((dir / "nohdr.csv").string()),
                       doctest::Contains("header"), io_error);

  write_file(dir / "badrow.csv",
             "pixel_index,intensity\n0,1.0\n1,2.0\n2,oops\n");
  CHECK_THROWS_WITH_AS(read_trace_csv((dir / "badrow.csv").string()),
                       doctest::Contains(":4:"), io_error);

  write_file(dir / "gap.csv", "pixel_index,intensity\n0,1.0\n2,2.0\n");
  CHECK_THROWS_WITH_AS(read_trace_csv((dir / "gap.csv").string()),
                       doctest::Contains("out of sequence"), io_error);

  write_file(dir / "empty.csv", "");
  CHECK_THROWS_AS(read_trace_csv((dir / "empty.csv").string()), io_error);

  write_file(dir / "onlyhdr.csv", "pixel_index,intensity\n");
  CHECK_THROWS_WITH_AS(read_trace_csv((dir / "onlyhdr.csv").string()),
                       doctest::Contains("no samples"), io_error);
}

TEST_CASE("spectrum CSV carries the scaled wavenumber axis") {
  const auto dir = make_temp_dir("io_spec");
  PowerSpectrum ps;
  ps.n_samples = 16;
  ps.powers = {1.0, 0.5, 0.25};
  const std::string path = (dir / "s.csv").string();
  write_spectrum_csv(ps, path, 0.5);
  CHECK(read_file(path) == "wavenumber,power\n0,1\n0.5,0.5\n1,0.25\n");
}

TEST_CASE("atomic write replaces content and leaves no temp file") {
  const auto dir = make_temp_dir("io_atomic");
  const std::string path = (dir / "out.txt").string();
  atomic_write(path, "first");
  atomic_write(path, "second");
  CHECK(read_file(path) == "second");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  CHECK_THROWS_AS(atomic_write((dir / "nodir" / "out.txt").string(), "x"), io_error);
}

TEST_CASE("JSON documents validate against the shipped schemas") {
  const ApparatusConfig c = bench_config();
  const FeatureFile fixture = load_features(data_dir() + "/sample_features.toml");
  const AuditReport report = audit(c, fixture.features, fixture.envelope_a);

  const std::string report_json = audit_report_json(report);
  CHECK(testsupport::validate_against_schema(
            report_json, schema_dir() + "/audit_report.schema.json")
            .empty());

  const auto parsed = nlohmann::json::parse(report_json);
  CHECK(parsed["summary"]["fail"] == 4);
  CHECK(parsed["summary"]["verdict"] == "fail");
  CHECK(parsed["checks"].size() == 9);
  CHECK(parsed["visibility_reconciliation"]["compatible"] == false);

  std::vector<VisibilityEstimate> estimates{
      visibility_extrema(1045, 270),
      visibility_elevation_corrected(1045, 270, 262),
      visibility_from_r(0.32),
      visibility_from_r_envelope(0.32, 0.25),
  };
  CHECK(testsupport::validate_against_schema(
            visibility_json(estimates), schema_dir() + "/visibility.schema.json")
            .empty());

  EnvelopeFit fit;
  fit.a = 0.25;
  fit.residual = 0.01;
  CHECK(testsupport::validate_against_schema(
            fit_json(fit), schema_dir() + "/fit_result.schema.json")
            .empty());

  const Trace t = synthesize_physical(c, 1.0, 787.0, 0.0);
  const PowerSpectrum ps = power_spectrum(t);
  const SpectralPeak peak = detect_interference_peak(ps);
  CHECK(testsupport::validate_against_schema(
            spectrum_summary_json(ps, peak, r_statistic(ps, peak.k)),
            schema_dir() + "/spectrum_summary.schema.json")
            .empty());
}

TEST_CASE("audit table lists one row per check") {
  const FeatureFile fixture = load_features(data_dir() + "/sample_features.toml");
  const AuditReport report = audit(bench_config(), fixture.features, fixture.envelope_a);
  const std::string table = audit_report_table(report);
  CHECK(table.find("fringe-spacing") != std::string::npos);
  CHECK(table.find("verdict: fail") != std::string::npos);
}
