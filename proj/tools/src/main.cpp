#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fringekit/audit.hpp"
#include "fringekit/errors.hpp"
#include "fringekit/fringe_metrics.hpp"
#include "fringekit/geometry.hpp"
#include "fringekit/io.hpp"
#include "fringekit/spectral.hpp"
#include "fringekit/synthesis.hpp"

#include "svg.hpp"

namespace fs = std::filesystem;
using namespace fringekit;

namespace {

// The fixed angular step of the reference simulation; spectra of reference
// traces report wavenumbers per unit of the angular axis.
constexpr double kReferenceStep = 2e-4;
constexpr int kReferencePeakMin = 8;

struct CommonArgs {
  std::string config_path;
  std::string trace_path;
  std::string features_path;
  std::string out_dir = ".";
  bool reference = false;
  bool plots = false;
  double v = 1.0;
  double a = 0.0;
  bool a_given = false;
  std::uint64_t seed = 0;
};

void check_input(const std::string& path, const char* what) {
  if (!path.empty() && !fs::exists(path)) {
    throw io_error(std::string(what) + " file not found: " + path);
  }
}

std::string out_file(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  return (fs::path(args.out_dir) / name).string();
}

void emit(const std::string& path, const std::string& content) {
  atomic_write(path, content);
  std::cout << "wrote " << path << "\n";
}

void plot_trace(const CommonArgs& args, const Trace& trace) {
  std::vector<double> xs(trace.samples.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
  const std::string path = out_file(args, "trace.svg");
  atomic_write(path, svg::line_plot(xs, trace.samples, "pixel", "intensity (a.u.)"));
  std::cout << "wrote " << path << "\n";
}

void plot_spectrum(const CommonArgs& args, const PowerSpectrum& ps, double scale) {
  double p_max = 0;
  for (double p : ps.powers) p_max = std::max(p_max, p);
  if (p_max <= 0) p_max = 1;
  std::vector<double> xs(ps.powers.size()), ys(ps.powers.size());
  for (std::size_t k = 0; k < ps.powers.size(); ++k) {
    xs[k] = k * scale;
    ys[k] = std::log10(std::max(ps.powers[k], p_max * 1e-16));
  }
  const std::string path = out_file(args, "spectrum.svg");
  atomic_write(path, svg::line_plot(xs, ys, "wavenumber", "log10 power"));
  std::cout << "wrote " << path << "\n";
}

int cmd_simulate(const CommonArgs& args) {
  Trace trace;
  if (args.reference) {
    trace = simulate_reference();
  } else {
    if (args.config_path.empty()) {
      throw io_error("simulate: need --config or --reference");
    }
    const ApparatusConfig config = load_apparatus_config(args.config_path);
    trace = synthesize_physical(config, args.v, 1000.0, 0.0, 0.0, args.seed);
  }
  write_trace_csv(trace, out_file(args, "trace.csv"));
  std::cout << "wrote " << out_file(args, "trace.csv") << "\n";
  std::cout << "trace rows: " << trace.size() << "\n";
  if (args.plots) plot_trace(args, trace);
  return 0;
}

int cmd_spectrum(const CommonArgs& args) {
  if (args.trace_path.empty()) throw io_error("spectrum: need --trace");
  const Trace trace = read_trace_csv(args.trace_path);
  const PowerSpectrum ps = power_spectrum(trace);
  const double scale =
      args.reference ? 1.0 / (trace.size() * kReferenceStep) : 1.0;
  const int k_min = args.reference ? kReferencePeakMin : 3;
  const SpectralPeak peak = detect_interference_peak(ps, k_min);
  const double r = r_statistic(ps, peak.k);
  write_spectrum_csv(ps, out_file(args, "spectrum.csv"), scale);
  std::cout << "wrote " << out_file(args, "spectrum.csv") << "\n";
  emit(out_file(args, "spectrum_summary.json"),
       spectrum_summary_json(ps, peak, r, scale));
  if (args.plots) plot_spectrum(args, ps, scale);
  std::cout << "peak wavenumber " << peak.k * scale << " (bin " << peak.k
            << "), R = " << r << "\n";
  return 0;
}

struct VisibilityInputs {
  double i_max = 0;
  double i_min = 0;
  double i_elev = 0;
  double r = 0;
  std::optional<double> a;
};

VisibilityInputs gather_inputs(const CommonArgs& args) {
  VisibilityInputs in;
  if (!args.features_path.empty()) {
    const FeatureFile f = load_features(args.features_path);
    in.i_max = f.features.i_max;
    in.i_min = f.features.i_min;
    in.i_elev = f.features.i_elev;
    in.r = f.features.r_value;
    in.a = f.envelope_a;
  } else if (!args.trace_path.empty()) {
    const ObservedFeatures f = extract_features(read_trace_csv(args.trace_path));
    in.i_max = f.i_max;
    in.i_min = f.i_min;
    in.i_elev = f.i_elev;
    in.r = f.r_value;
  } else {
    throw io_error("visibility: need --features or --trace");
  }
  if (args.a_given) in.a = args.a;
  return in;
}

int cmd_visibility(const CommonArgs& args) {
  const VisibilityInputs in = gather_inputs(args);
  std::vector<VisibilityEstimate> estimates;
  estimates.push_back(visibility_extrema(in.i_max, in.i_min));
  try {
    estimates.push_back(
        visibility_elevation_corrected(in.i_max, in.i_min, in.i_elev));
  } catch (const domain_error&) {
    // Elevation above the trough: the corrected estimate has no meaning.
  }
  estimates.push_back(visibility_from_r(in.r));
  if (in.a) estimates.push_back(visibility_from_r_envelope(in.r, *in.a));
  emit(out_file(args, "visibility.json"), visibility_json(estimates));
  for (const auto& e : estimates) {
    std::cout << to_string(e.method) << ": " << e.value
              << (e.clamped ? " (clamped)" : "") << "\n";
  }
  return 0;
}

int cmd_audit(const CommonArgs& args) {
  if (args.config_path.empty()) throw io_error("audit: need --config");
  if (args.trace_path.empty() == args.features_path.empty()) {
    throw io_error("audit: need exactly one of --trace or --features");
  }
  const ApparatusConfig config = load_apparatus_config(args.config_path);

  ObservedFeatures features;
  std::optional<double> envelope_a;
  if (!args.features_path.empty()) {
    FeatureFile f = load_features(args.features_path);
    features = f.features;
    envelope_a = f.envelope_a;
  } else {
    features = extract_features(read_trace_csv(args.trace_path));
  }
  if (args.a_given) envelope_a = args.a;

  const AuditReport report = audit(config, features, envelope_a);
  std::cout << audit_report_table(report);
  emit(out_file(args, "audit_report.json"), audit_report_json(report));
  return report.any_fail() ? 1 : 0;
}

int cmd_fit(const CommonArgs& args) {
  if (args.trace_path.empty()) throw io_error("fit: need --trace");
  const EnvelopeFit fit = fit_envelope_A(read_trace_csv(args.trace_path));
  emit(out_file(args, "fit.json"), fit_json(fit));
  std::cout << "a = " << fit.a << ", residual rms = " << fit.residual
            << (fit.warn ? " (no improvement over a = 0)" : "") << "\n";
  return 0;
}

int cmd_report(const CommonArgs& args) {
  if (args.config_path.empty() || args.trace_path.empty()) {
    throw io_error("report: need --config and --trace");
  }
  const ApparatusConfig config = load_apparatus_config(args.config_path);
  const Trace trace = read_trace_csv(args.trace_path);
  const ObservedFeatures features = extract_features(trace);

  const PowerSpectrum ps = power_spectrum(trace);
  const SpectralPeak peak = detect_interference_peak(ps);
  const double r = r_statistic(ps, peak.k);
  write_spectrum_csv(ps, out_file(args, "spectrum.csv"));
  std::cout << "wrote " << out_file(args, "spectrum.csv") << "\n";
  emit(out_file(args, "spectrum_summary.json"),
       spectrum_summary_json(ps, peak, r));

  const EnvelopeFit fit = fit_envelope_A(trace);
  emit(out_file(args, "fit.json"), fit_json(fit));

  std::optional<double> envelope_a;
  if (args.a_given) envelope_a = args.a;

  std::vector<VisibilityEstimate> estimates;
  estimates.push_back(visibility_extrema(features.i_max, features.i_min));
  try {
    estimates.push_back(visibility_elevation_corrected(
        features.i_max, features.i_min, features.i_elev));
  } catch (const domain_error&) {
  }
  estimates.push_back(visibility_from_r(features.r_value));
  if (envelope_a) {
    estimates.push_back(visibility_from_r_envelope(features.r_value, *envelope_a));
  }
  emit(out_file(args, "visibility.json"), visibility_json(estimates));

  const AuditReport report = audit(config, features, envelope_a);
  std::cout << audit_report_table(report);
  emit(out_file(args, "audit_report.json"), audit_report_json(report));

  if (args.plots) {
    plot_trace(args, trace);
    plot_spectrum(args, ps, 1.0);
  }
  return report.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-slit fringe synthesis, spectral analysis, and audit"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&](CLI::App* sub, bool with_config, bool with_trace,
                              bool with_features) {
    if (with_config) sub->add_option("--config", args.config_path, "apparatus config file");
    if (with_trace) sub->add_option("--trace", args.trace_path, "trace CSV");
    if (with_features) {
      sub->add_option("--features", args.features_path, "observed-features file");
    }
    sub->add_option("--out", args.out_dir, "output directory")
        ->envname("FRINGEKIT_OUT_DIR")
        ->capture_default_str();
  };

  CLI::App* simulate = app.add_subcommand("simulate", "synthesize a trace CSV");
  add_common(simulate, true, false, false);
  simulate->add_flag("--reference", args.reference,
                     "fixed 10004-point angular-axis simulation");
  simulate->add_option("--v", args.v, "fringe visibility")->capture_default_str();
  simulate->add_option("--seed", args.seed, "noise RNG seed")->capture_default_str();
  simulate->add_flag("--plots", args.plots, "emit SVG plots");

  CLI::App* spectrum = app.add_subcommand("spectrum", "power spectrum of a trace");
  add_common(spectrum, false, true, false);
  spectrum->add_flag("--reference", args.reference,
                     "trace uses the reference angular axis");
  spectrum->add_flag("--plots", args.plots, "emit SVG plots");

  CLI::App* visibility =
      app.add_subcommand("visibility", "visibility estimates from features or trace");
  add_common(visibility, false, true, true);
  visibility->add_option("--a", args.a, "envelope coefficient A")
      ->check(CLI::Range(0.0, 0.999999));

  CLI::App* audit_cmd = app.add_subcommand("audit", "check a trace or features against a config");
  add_common(audit_cmd, true, true, true);
  audit_cmd->add_option("--a", args.a, "envelope coefficient A")
      ->check(CLI::Range(0.0, 0.999999));

  CLI::App* fit = app.add_subcommand("fit", "fit the extended envelope coefficient");
  add_common(fit, false, true, false);

  CLI::App* report = app.add_subcommand("report", "full analysis of a trace");
  add_common(report, true, true, false);
  report->add_option("--a", args.a, "envelope coefficient A")
      ->check(CLI::Range(0.0, 0.999999));
  report->add_flag("--plots", args.plots, "emit SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  args.a_given = visibility->count("--a") || audit_cmd->count("--a") ||
                 report->count("--a");

  try {
    check_input(args.config_path, "config");
    check_input(args.trace_path, "trace");
    check_input(args.features_path, "features");
    if (simulate->parsed()) return cmd_simulate(args);
    if (spectrum->parsed()) return cmd_spectrum(args);
    if (visibility->parsed()) return cmd_visibility(args);
    if (audit_cmd->parsed()) return cmd_audit(args);
    if (fit->parsed()) return cmd_fit(args);
    if (report->parsed()) return cmd_report(args);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
