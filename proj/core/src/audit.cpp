#include "fringekit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "fringekit/errors.hpp"
#include "fringekit/fringe_metrics.hpp"
#include "fringekit/spectral.hpp"

namespace fringekit {
namespace {

struct RefinedPeak {
  double pos = 0;
  double height = 0;
};

// Parabolic refinement of the argmax over samples [lo, hi).
std::optional<RefinedPeak> refined_argmax(const std::vector<double>& y, int lo,
                                          int hi) {
  const int n = static_cast<int>(y.size());
  lo = std::max(lo, 1);
  hi = std::min(hi, n - 1);
  if (lo >= hi) return std::nullopt;
  int best = lo;
  for (int i = lo + 1; i < hi; ++i) {
    if (y[i] > y[best]) best = i;
  }
  const double den = y[best - 1] - 2.0 * y[best] + y[best + 1];
  if (den == 0) return RefinedPeak{static_cast<double>(best), y[best]};
  double delta = 0.5 * (y[best - 1] - y[best + 1]) / den;
  delta = std::clamp(delta, -0.5, 0.5);
  const double height = y[best] - 0.25 * (y[best - 1] - y[best + 1]) * delta;
  return RefinedPeak{best + delta, height};
}

// Local maxima above 2% prominence relative to the trace range.
std::vector<RefinedPeak> prominent_peaks(const Trace& trace) {
  const auto& y = trace.samples;
  const int n = trace.size();
  const auto [min_it, max_it] = std::minmax_element(y.begin(), y.end());
  const double threshold = *min_it + 0.02 * (*max_it - *min_it);
  std::vector<RefinedPeak> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (y[i] >= y[i - 1] && y[i] > y[i + 1] && y[i] >= threshold) {
      if (auto p = refined_argmax(y, i - 1, i + 2)) peaks.push_back(*p);
    }
  }
  return peaks;
}

struct FringeGrid {
  double center = 0;
  double i_max = 0;
  double spacing = 0;
  int anchor_order = 0;
  std::vector<RefinedPeak> peaks;
};

// Center, anchor-pair spacing, and the refined peak list.
FringeGrid detect_grid(const Trace& trace) {
  trace.validate();
  auto peaks = prominent_peaks(trace);
  if (peaks.size() < 5) {
    throw extraction_error("feature extraction: fewer than 5 detectable fringes");
  }
  const auto central = std::max_element(
      peaks.begin(), peaks.end(),
      [](const RefinedPeak& a, const RefinedPeak& b) { return a.height < b.height; });
  FringeGrid g;
  g.center = central->pos;
  g.i_max = central->height;
  g.peaks = peaks;

  std::vector<double> left, right;
  for (const auto& p : peaks) {
    if (p.pos < g.center - 1) left.push_back(p.pos);
    if (p.pos > g.center + 1) right.push_back(p.pos);
  }
  if (left.empty() || right.empty()) {
    throw extraction_error("feature extraction: fringes missing on one side of center");
  }
  std::sort(left.begin(), left.end(), std::greater<>());
  std::sort(right.begin(), right.end());
  g.anchor_order = static_cast<int>(std::min({std::size_t{13}, left.size(), right.size()}));
  const int m = g.anchor_order;
  g.spacing = (right[m - 1] - left[m - 1]) / (2.0 * m);
  if (g.spacing <= 1) {
    throw extraction_error("feature extraction: fringe spacing below one pixel");
  }
  return g;
}

// Windowed crest for signed interference order j.
std::optional<RefinedPeak> crest_at_order(const Trace& trace, const FringeGrid& g,
                                          int j) {
  const int lo = static_cast<int>(std::lround(g.center + (j - 0.5) * g.spacing));
  const int hi = static_cast<int>(std::lround(g.center + (j + 0.5) * g.spacing));
  return refined_argmax(trace.samples, lo, hi);
}

// First order whose crest height is a strict local minimum of the
// per-order height sequence, scanning outward; 0 when none exists.
int find_missing_order(const Trace& trace, const FringeGrid& g, int sign) {
  std::vector<double> heights;
  for (int j = 1;; ++j) {
    const double far_edge = g.center + sign * (j + 0.5) * g.spacing;
    if (far_edge < 0 || far_edge >= trace.size()) break;
    const auto crest = crest_at_order(trace, g, sign * j);
    if (!crest) break;
    heights.push_back(crest->height);
  }
  for (std::size_t k = 1; k + 1 < heights.size(); ++k) {
    if (heights[k - 1] > heights[k] && heights[k] < heights[k + 1]) {
      return static_cast<int>(k) + 1;
    }
  }
  return 0;
}

// Center of the (dark) missing fringe: midpoint of the two neighboring
// crests. Their envelope-slope pulls are antisymmetric about the envelope
// zero, so the midpoint cancels the bias that each crest position carries.
double missing_fringe_center(const Trace& trace, const FringeGrid& g, int sign,
                             int order) {
  const auto inner = crest_at_order(trace, g, sign * (order - 1));
  const auto outer = crest_at_order(trace, g, sign * (order + 1));
  if (inner && outer) return (inner->pos + outer->pos) / 2.0;
  return g.center + sign * order * g.spacing;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

AuditCheck make_check(std::string name, std::string formula, double expected,
                      double observed, std::string units, Verdict verdict,
                      std::string note = {}) {
  AuditCheck c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  c.expected = expected;
  c.observed = observed;
  c.units = std::move(units);
  c.discrepancy = observed - expected;
  c.verdict = verdict;
  c.note = std::move(note);
  return c;
}

}  // namespace

void ObservedFeatures::validate() const {
  if (fringe_spacing_px <= 1) {
    throw domain_error("features: fringe spacing must exceed 1 pixel");
  }
  // Width 0 means "not measured" (no missing order in view).
  if (principal_width_px != 0 && principal_width_px <= fringe_spacing_px) {
    throw domain_error("features: principal width must exceed the fringe spacing");
  }
  if (i_min < 0 || i_max < i_min) {
    throw domain_error("features: need i_max >= i_min >= 0");
  }
  if (missing_order_left < 0 || missing_order_right < 0 ||
      fringe_count_in_principal < 0 || fft_peak_k < 0 || r_value < 0) {
    throw domain_error("features: counts, orders, peak bin and R must be non-negative");
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Warn: return "warn";
    case Verdict::Fail: return "fail";
  }
  return "unknown";
}

bool AuditReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.verdict == Verdict::Fail; });
}

int AuditReport::count(Verdict v) const {
  return static_cast<int>(std::count_if(
      checks.begin(), checks.end(),
      [v](const AuditCheck& c) { return c.verdict == v; }));
}

RecenterResult recenter_trace(const Trace& trace, int anchor_left_px,
                              int anchor_right_px, int anchor_order) {
  if (anchor_order < 1) throw domain_error("recenter: anchor order must be at least 1");
  if (anchor_left_px < 0 || anchor_right_px >= trace.size() ||
      anchor_left_px >= anchor_right_px) {
    throw domain_error("recenter: anchors must be ordered and inside the trace");
  }
  const FringeGrid g = detect_grid(trace);

  std::vector<double> left, right;
  for (const auto& p : g.peaks) {
    if (p.pos < g.center - 1) left.push_back(p.pos);
    if (p.pos > g.center + 1) right.push_back(p.pos);
  }
  std::sort(left.begin(), left.end(), std::greater<>());
  std::sort(right.begin(), right.end());
  if (static_cast<int>(left.size()) < anchor_order ||
      static_cast<int>(right.size()) < anchor_order) {
    throw extraction_error("recenter: anchor-order fringe peaks not detectable");
  }
  const double midpoint =
      (left[anchor_order - 1] + right[anchor_order - 1]) / 2.0;
  const double target = (anchor_left_px + anchor_right_px) / 2.0;
  const int shift = static_cast<int>(std::lround(target - midpoint));

  RecenterResult r;
  r.shift_px = shift;
  r.trace = trace;
  r.trace.center_pixel = target;
  const int n = trace.size();
  for (int i = 0; i < n; ++i) {
    const int src = std::clamp(i - shift, 0, n - 1);
    r.trace.samples[i] = trace.samples[src];
  }
  return r;
}

ObservedFeatures extract_features(const Trace& trace) {
  if (trace.size() < 64) {
    throw domain_error("feature extraction: need at least 64 samples");
  }
  const FringeGrid g = detect_grid(trace);
  const int n = trace.size();

  ObservedFeatures f;
  f.center_pixel = g.center;
  f.i_max = g.i_max;
  f.fringe_spacing_px = g.spacing;
  for (const auto& p : g.peaks) f.fringe_peak_positions.push_back(p.pos);

  f.missing_order_left = find_missing_order(trace, g, -1);
  f.missing_order_right = find_missing_order(trace, g, +1);

  double left_missing = 0, right_missing = 0;
  if (f.missing_order_left > 0 && f.missing_order_right > 0) {
    left_missing = missing_fringe_center(trace, g, -1, f.missing_order_left);
    right_missing = missing_fringe_center(trace, g, +1, f.missing_order_right);
    f.principal_width_px = right_missing - left_missing;
    f.fringe_count_in_principal =
        f.missing_order_left + f.missing_order_right - 1;
  } else {
    // No envelope zero in view; report what was detected.
    f.principal_width_px = 0;
    f.fringe_count_in_principal = static_cast<int>(g.peaks.size());
  }

  // Troughs adjacent to the central crest.
  double i_min = g.i_max;
  for (int sign : {-1, +1}) {
    const int lo = static_cast<int>(std::lround(
        sign < 0 ? g.center - g.spacing : g.center));
    const int hi = static_cast<int>(std::lround(
        sign < 0 ? g.center : g.center + g.spacing));
    for (int i = std::max(lo, 0); i <= std::min(hi, n - 1); ++i) {
      i_min = std::min(i_min, trace.samples[i]);
    }
  }
  f.i_min = i_min;

  if (f.principal_width_px > 0) {
    const int li = std::clamp(static_cast<int>(std::lround(left_missing)), 0, n - 1);
    const int ri = std::clamp(static_cast<int>(std::lround(right_missing)), 0, n - 1);
    f.i_elev = (trace.samples[li] + trace.samples[ri]) / 2.0;
  } else {
    f.i_elev = *std::min_element(trace.samples.begin(), trace.samples.end());
  }

  // First side lobe beyond the right missing fringe.
  f.secondary_max_visible = false;
  if (f.missing_order_right > 0) {
    const int start = static_cast<int>(std::lround(
        g.center + (f.missing_order_right + 0.5) * g.spacing));
    if (start < n - 2) {
      if (auto side = refined_argmax(trace.samples, start, n)) {
        const auto [min_it, max_it] =
            std::minmax_element(trace.samples.begin(), trace.samples.end());
        const double threshold = *min_it + 0.02 * (*max_it - *min_it);
        const int ipos = static_cast<int>(std::lround(side->pos));
        const bool interior = ipos > start && ipos < n - 1;
        if (interior && side->height >= threshold) {
          f.secondary_max_visible = true;
          f.secondary_max_height = side->height;
          f.secondary_max_position_px = side->pos;
        }
      }
    }
  }

  const PowerSpectrum ps = power_spectrum(trace);
  const SpectralPeak peak = detect_interference_peak(ps);
  f.fft_peak_k = peak.k;
  f.r_value = r_statistic(ps, peak.k);
  return f;
}

AuditReport audit(const ApparatusConfig& config, const ObservedFeatures& features,
                  std::optional<double> envelope_a) {
  config.validate();
  features.validate();
  const FringePrediction p = predict_fringes(config);
  AuditReport report;

  // 1. Missing order.
  {
    const int expected_m = static_cast<int>(std::lround(p.missing_order));
    const double observed_m =
        (features.missing_order_left + features.missing_order_right) / 2.0;
    Verdict verdict = Verdict::Pass;
    std::string note = "left " + std::to_string(features.missing_order_left) +
                       ", right " + std::to_string(features.missing_order_right);
    if (!p.missing_order_integral) {
      verdict = Verdict::Fail;
      note = "d/a = " + format_double(p.missing_order) +
             " is not integral; no interference order coincides with an envelope zero";
    } else if (features.missing_order_left == 0 ||
               features.missing_order_right == 0) {
      verdict = Verdict::Warn;
      note += "; missing order not observed";
    } else if (features.missing_order_left != expected_m ||
               features.missing_order_right != expected_m) {
      verdict = Verdict::Warn;
      note += "; observed orders disagree with d/a";
    }
    report.checks.push_back(make_check("missing-order", "m = d/a", p.missing_order,
                                       observed_m, "order", verdict, note));
  }

  // 2. Fringe count inside the principal maximum.
  {
    Verdict verdict = Verdict::Pass;
    std::string note;
    if (!p.missing_order_integral) {
      verdict = Verdict::Warn;
      note = "count prediction needs an integral missing order";
    } else if (features.fringe_count_in_principal != p.fringe_count) {
      verdict = Verdict::Fail;
    }
    report.checks.push_back(make_check(
        "fringe-count", "N = 2(m-1)+1", p.fringe_count,
        features.fringe_count_in_principal, "fringes", verdict, note));
  }

  // 3. Fringe spacing.
  {
    const double diff = features.fringe_spacing_px - p.fringe_spacing_px;
    report.checks.push_back(make_check(
        "fringe-spacing", "w = D*lambda/d", p.fringe_spacing_px,
        features.fringe_spacing_px, "px",
        std::abs(diff) <= 1.0 ? Verdict::Pass : Verdict::Fail));
  }

  // 4. Principal maximum width.
  {
    const double expected = 2.0 * p.principal_half_width_px;
    Verdict verdict;
    std::string note;
    if (features.principal_width_px == 0) {
      verdict = Verdict::Warn;
      note = "width not measurable without missing orders in view";
    } else {
      verdict = std::abs(features.principal_width_px - expected) <= 2.0
                    ? Verdict::Pass
                    : Verdict::Fail;
    }
    report.checks.push_back(make_check(
        "principal-width", "2X = 2*D*tan(asin(lambda/a))", expected,
        features.principal_width_px, "px", verdict, note));
  }

  // 5. First secondary maximum.
  {
    const double i0 = features.i_max - features.i_elev;
    const double expected_height = secondary_max_height(i0, features.i_elev);
    Verdict verdict = Verdict::Pass;
    std::string note = "predicted at pixel " + format_double(p.secondary_abs_pixel);
    double observed_height = 0;
    if (!p.secondary_in_view) {
      verdict = Verdict::Warn;
      note += "; outside camera view";
      observed_height = features.secondary_max_visible
                            ? features.secondary_max_height
                            : 0.0;
    } else if (!features.secondary_max_visible) {
      verdict = Verdict::Warn;
      note += "; expected in view but not observed";
    } else {
      observed_height = features.secondary_max_height;
      const bool pos_ok =
          std::abs(features.secondary_max_position_px - p.secondary_abs_pixel) <= 5.0;
      const bool height_ok = std::abs(observed_height - expected_height) <=
                             std::max(2.0, 0.05 * expected_height);
      if (!pos_ok || !height_ok) {
        verdict = Verdict::Warn;
        note += pos_ok ? "; height off prediction" : "; position off prediction";
      }
    }
    report.checks.push_back(make_check(
        "secondary-maximum", "sin(theta2) = 1.45*lambda/a; h = 0.047*I0 + base",
        expected_height, observed_height, "a.u.", verdict, note));
  }

  // 6. Far-field condition.
  {
    report.checks.push_back(make_check(
        "fraunhofer-condition", "a^2/(D*lambda) < 0.01", 0.01,
        p.fraunhofer_number, "",
        p.fraunhofer_number < 0.01 ? Verdict::Pass : Verdict::Fail));
  }

  // 7. Spectral peak position.
  {
    const double expected_k =
        spacing_to_wavenumber(features.fringe_spacing_px, config.pixel_count);
    PowerSpectrum stub;
    stub.n_samples = config.pixel_count;
    const SpectrumAlignment a =
        align_spectrum_origin(stub, features.fft_peak_k, features.fringe_spacing_px);
    std::string note = "registration shift " + std::to_string(a.shift) +
                       ", corrected peak " + std::to_string(a.corrected_k);
    report.checks.push_back(make_check(
        "spectral-peak", "k = n/spacing", expected_k, features.fft_peak_k,
        "wavenumbers",
        std::abs(features.fft_peak_k - expected_k) <= 1.0 ? Verdict::Pass
                                                          : Verdict::Fail,
        note));
  }

  // 8. Distance inferred back from the observations.
  {
    InferredDistance d;
    d.from_spacing = infer_distance_from_spacing(
        features.fringe_spacing_px, config.pixel_pitch, config.slit_separation,
        config.wavelength);
    if (features.principal_width_px > 0) {
      d.from_width = infer_distance_from_width(
          features.principal_width_px / 2.0 * config.pixel_pitch,
          config.slit_width, config.wavelength);
      d.mean = (d.from_width + d.from_spacing) / 2.0;
    } else {
      d.from_width = 0;
      d.mean = d.from_spacing;
    }
    report.inferred_distance = d;
    const double rel = std::abs(d.mean - config.screen_distance) /
                       config.screen_distance;
    report.checks.push_back(make_check(
        "inferred-distance",
        "D = x/tan(asin(lambda/a)); D = s*pitch*d/lambda",
        config.screen_distance, d.mean, "m",
        rel <= 0.05 ? Verdict::Pass : Verdict::Warn,
        "from width " + format_double(d.from_width) + " m, from spacing " +
            format_double(d.from_spacing) + " m"));
  }

  // 9. Do the two visibility routes agree?
  {
    VisibilityReconciliation rec;
    if (features.i_min >= features.i_elev && features.i_max > features.i_elev) {
      rec.v_pattern = visibility_elevation_corrected(features.i_max, features.i_min,
                                                     features.i_elev)
                          .value;
    } else {
      rec.v_pattern = visibility_extrema(features.i_max, features.i_min).value;
    }
    const double a = envelope_a.value_or(0.0);
    const VisibilityEstimate from_r = visibility_from_r_envelope(features.r_value, a);
    rec.v_from_r = from_r.value;
    rec.compatible = std::abs(rec.v_pattern - rec.v_from_r) <= 0.1;
    report.visibility_reconciliation = rec;
    std::string note = "envelope coefficient " + format_double(a);
    if (from_r.clamped) {
      note += "; spectral estimate " + format_double(from_r.raw_value) +
              " clamped to [0, 1]";
    }
    report.checks.push_back(make_check(
        "visibility-reconciliation", "V0 vs sqrt(R)/(1-A)", rec.v_pattern,
        rec.v_from_r, "", rec.compatible ? Verdict::Pass : Verdict::Warn, note));
  }

  return report;
}

EnvelopeFit fit_envelope_A(const Trace& trace) {
  const FringeGrid g = detect_grid(trace);
  const int n = trace.size();
  const double window_center = n / 2.0;
  std::vector<double> xs, hs;
  xs.reserve(g.peaks.size());
  hs.reserve(g.peaks.size());
  for (const auto& p : g.peaks) {
    xs.push_back(2.0 * M_PI * (p.pos - window_center) / n);
    hs.push_back(p.height);
  }

  // RMS residual of the best linear (scale, offset) fit of the extended
  // envelope to the crest heights at a given A.
  const auto rms_at = [&](double a) {
    double sff = 0, sf = 0, sfh = 0, sh = 0;
    const double m = static_cast<double>(xs.size());
    std::vector<double> f(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      f[i] = envelope(EnvelopeModel::Extended, xs[i], a);
      sff += f[i] * f[i];
      sf += f[i];
      sfh += f[i] * hs[i];
      sh += hs[i];
    }
    const double det = m * sff - sf * sf;
    double scale = 0, offset = sh / m;
    if (det > 1e-12 * m * sff) {
      scale = (m * sfh - sf * sh) / det;
      offset = (sh - scale * sf) / m;
    }
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = scale * f[i] + offset - hs[i];
      ss += r * r;
    }
    return std::sqrt(ss / m);
  };

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 0.9;
  double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
  double f1 = rms_at(c1), f2 = rms_at(c2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      hi = c2; c2 = c1; f2 = f1;
      c1 = hi - gr * (hi - lo);
      f1 = rms_at(c1);
    } else {
      lo = c1; c1 = c2; f1 = f2;
      c2 = lo + gr * (hi - lo);
      f2 = rms_at(c2);
    }
  }
  const double a_star = (lo + hi) / 2.0;
  const double rms_star = rms_at(a_star);
  const double rms0 = rms_at(0.0);

  EnvelopeFit fit;
  if (rms_star >= rms0) {
    fit.a = 0.0;
    fit.residual = rms0;
    fit.warn = a_star > 0.02;
  } else {
    fit.a = a_star;
    fit.residual = rms_star;
  }
  return fit;
}

}  // namespace fringekit
