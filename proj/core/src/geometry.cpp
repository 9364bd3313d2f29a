#include "fringekit/geometry.hpp"

#include <cmath>

#include "fringekit/errors.hpp"

namespace fringekit {
namespace {

constexpr double kPlanck = 6.62607015e-34;       // J s
constexpr double kLightSpeed = 2.99792458e8;     // m/s
constexpr double kSlitLength = 200e-6;           // long slit dimension, m
constexpr double kSecondaryMaxSine = 1.45;       // sin θ₂ = 1.45 λ/a
constexpr double kSecondaryRelHeight = 0.047;    // first sinc² side lobe
constexpr double kIntegralTol = 1e-9;

}  // namespace

void ApparatusConfig::validate() const {
  if (wavelength <= 0 || slit_width <= 0 || slit_separation <= 0 ||
      screen_distance <= 0 || pixel_pitch <= 0 || beam_power <= 0 ||
      beam_diameter <= 0) {
    throw domain_error("apparatus config: all lengths and power must be positive");
  }
  if (slit_separation <= slit_width) {
    throw domain_error("apparatus config: slit separation must exceed slit width");
  }
  if (pixel_count < 16) {
    throw domain_error("apparatus config: pixel count must be at least 16");
  }
}

double missing_order(double slit_separation, double slit_width) {
  if (slit_width <= 0 || slit_separation <= slit_width) {
    throw domain_error("missing order: need separation > width > 0");
  }
  return slit_separation / slit_width;
}

int fringe_count(int missing_order) {
  if (missing_order < 1) {
    throw domain_error("fringe count: missing order must be at least 1");
  }
  return 2 * (missing_order - 1) + 1;
}

FringeSpacing fringe_spacing(const ApparatusConfig& config) {
  config.validate();
  FringeSpacing s;
  s.meters = config.screen_distance * config.wavelength / config.slit_separation;
  s.pixels = s.meters / config.pixel_pitch;
  return s;
}

PrincipalHalfWidth principal_half_width(const ApparatusConfig& config) {
  config.validate();
  if (config.wavelength >= config.slit_width) {
    throw domain_error("principal half width: wavelength must be below slit width");
  }
  PrincipalHalfWidth w;
  w.theta = std::asin(config.wavelength / config.slit_width);
  w.meters = config.screen_distance * std::tan(w.theta);
  w.pixels = w.meters / config.pixel_pitch;
  return w;
}

SecondaryMaxGeometry secondary_max_geometry(const ApparatusConfig& config) {
  config.validate();
  const double s = kSecondaryMaxSine * config.wavelength / config.slit_width;
  if (s >= 1.0) {
    throw domain_error("secondary maximum: 1.45 λ/a must be below 1");
  }
  SecondaryMaxGeometry g;
  g.theta = std::asin(s);
  g.meters = config.screen_distance * std::tan(g.theta);
  g.pixels = g.meters / config.pixel_pitch;
  g.abs_pixel = config.center_pixel() + g.pixels;
  g.in_view = g.abs_pixel < config.pixel_count;
  g.rel_height = kSecondaryRelHeight;
  return g;
}

double secondary_max_height(double i0, double baseline) {
  if (i0 < 0 || baseline < 0) {
    throw domain_error("secondary max: amplitude and baseline must be non-negative");
  }
  return kSecondaryRelHeight * i0 + baseline;
}

double fraunhofer_number(const ApparatusConfig& config) {
  config.validate();
  return config.slit_width * config.slit_width /
         (config.screen_distance * config.wavelength);
}

double infer_distance_from_width(double observed_half_width, double slit_width,
                                 double wavelength) {
  if (observed_half_width <= 0) {
    throw domain_error("infer distance: observed half width must be positive");
  }
  if (wavelength >= slit_width) {
    throw domain_error("infer distance: wavelength must be below slit width");
  }
  return observed_half_width / std::tan(std::asin(wavelength / slit_width));
}

double infer_distance_from_spacing(double observed_spacing_px, double pixel_pitch,
                                   double slit_separation, double wavelength) {
  if (observed_spacing_px <= 0) {
    throw domain_error("infer distance: observed spacing must be positive");
  }
  return observed_spacing_px * pixel_pitch * slit_separation / wavelength;
}

PhotonFlux photon_flux_per_slit(const ApparatusConfig& config) {
  config.validate();
  PhotonFlux f;
  f.photon_energy = kPlanck * kLightSpeed / config.wavelength;
  f.total_rate = config.beam_power / f.photon_energy;
  const double slit_area = config.slit_width * kSlitLength;
  const double beam_radius = config.beam_diameter / 2.0;
  const double beam_area = M_PI * beam_radius * beam_radius;
  f.per_slit_rate = f.total_rate * slit_area / beam_area;
  f.transit_time = config.screen_distance / kLightSpeed;
  return f;
}

FringePrediction predict_fringes(const ApparatusConfig& config) {
  config.validate();
  FringePrediction p;
  p.missing_order = missing_order(config.slit_separation, config.slit_width);
  p.missing_order_integral =
      std::abs(p.missing_order - std::round(p.missing_order)) <= kIntegralTol;
  p.fringe_count = p.missing_order_integral
                       ? fringe_count(static_cast<int>(std::round(p.missing_order)))
                       : 0;
  const FringeSpacing s = fringe_spacing(config);
  p.fringe_spacing_m = s.meters;
  p.fringe_spacing_px = s.pixels;
  const PrincipalHalfWidth w = principal_half_width(config);
  p.half_angle_theta = w.theta;
  p.principal_half_width_m = w.meters;
  p.principal_half_width_px = w.pixels;
  const SecondaryMaxGeometry g = secondary_max_geometry(config);
  p.secondary_angle = g.theta;
  p.secondary_offset_m = g.meters;
  p.secondary_offset_px = g.pixels;
  p.secondary_abs_pixel = g.abs_pixel;
  p.secondary_in_view = g.in_view;
  p.secondary_rel_height = g.rel_height;
  p.fraunhofer_number = fraunhofer_number(config);
  return p;
}

}  // namespace fringekit
