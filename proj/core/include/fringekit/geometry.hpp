#pragma once

#include <string>

namespace fringekit {

/// Physical description of the bench: laser, double slit, line camera.
/// All lengths in meters, power in watts.
struct ApparatusConfig {
  double wavelength = 0;         // λ
  double slit_width = 0;         // a
  double slit_separation = 0;    // d, center to center
  double screen_distance = 0;    // D, slit plane to camera
  double pixel_pitch = 0;
  int pixel_count = 0;
  double beam_power = 0;
  double beam_diameter = 0;

  /// Throws domain_error when any invariant is violated.
  void validate() const;

  /// Index of the pattern center on the camera line.
  double center_pixel() const { return pixel_count / 2.0; }
};

/// Everything the slit geometry predicts about the pattern.
struct FringePrediction {
  double missing_order = 0;             // d/a, dimensionless
  bool missing_order_integral = false;  // |d/a - round(d/a)| <= 1e-9
  int fringe_count = 0;                 // 2(m-1)+1 when integral
  double fringe_spacing_m = 0;
  double fringe_spacing_px = 0;
  double half_angle_theta = 0;          // asin(λ/a), radians
  double principal_half_width_m = 0;    // X = D tan(θ)
  double principal_half_width_px = 0;
  double secondary_angle = 0;           // asin(1.45 λ/a)
  double secondary_offset_m = 0;        // X₂ = D tan(θ₂)
  double secondary_offset_px = 0;
  double secondary_abs_pixel = 0;       // center + offset
  bool secondary_in_view = false;
  double secondary_rel_height = 0;      // 0.047, first sinc² side lobe
  double fraunhofer_number = 0;         // a²/(Dλ)
};

/// Photon bookkeeping for the beam/slit combination.
struct PhotonFlux {
  double photon_energy = 0;   // J
  double total_rate = 0;      // photons/s in the whole beam
  double per_slit_rate = 0;   // photons/s through one slit
  double transit_time = 0;    // slit-to-camera flight time, s
};

/// Interference order suppressed by the diffraction envelope, m = d/a.
/// Returns a real; callers check integrality (1e-9) to decide whether an
/// exactly missing fringe exists.
double missing_order(double slit_separation, double slit_width);

/// Fringes inside the principal maximum for an integral missing order:
/// 2(m-1)+1.
int fringe_count(int missing_order);

struct FringeSpacing {
  double meters = 0;
  double pixels = 0;
};

/// w = Dλ/d.
FringeSpacing fringe_spacing(const ApparatusConfig& config);

struct PrincipalHalfWidth {
  double theta = 0;   // radians
  double meters = 0;  // X
  double pixels = 0;
};

/// Half width of the principal maximum: θ = asin(λ/a), X = D tan(θ).
/// The full width is 2X.
PrincipalHalfWidth principal_half_width(const ApparatusConfig& config);

struct SecondaryMaxGeometry {
  double theta = 0;       // asin(1.45 λ/a)
  double meters = 0;      // X₂
  double pixels = 0;      // offset from center
  double abs_pixel = 0;   // center + offset
  bool in_view = false;   // abs_pixel < pixel_count
  double rel_height = 0;  // 0.047 relative to the principal peak
};

/// First side lobe of the single-slit envelope, sin θ₂ = 1.45 λ/a with
/// relative height 0.047.
SecondaryMaxGeometry secondary_max_geometry(const ApparatusConfig& config);

/// Absolute side-lobe peak height on top of a display baseline:
/// 0.047·i0 + baseline.
double secondary_max_height(double i0, double baseline);

/// a²/(Dλ). Far-field formulas hold when this is well below 1; the audit
/// passes the condition below 0.01.
double fraunhofer_number(const ApparatusConfig& config);

/// Camera distance implied by an observed principal half width:
/// D = X / tan(asin(λ/a)).
double infer_distance_from_width(double observed_half_width, double slit_width,
                                 double wavelength);

/// Camera distance implied by an observed fringe spacing:
/// D = (spacing_px · pitch) · d / λ.
double infer_distance_from_spacing(double observed_spacing_px, double pixel_pitch,
                                   double slit_separation, double wavelength);

/// Photon rate through each slit plus the slit-to-camera transit time.
/// The beam is modeled as a uniform disk; the long slit dimension is 200 μm.
PhotonFlux photon_flux_per_slit(const ApparatusConfig& config);

/// All geometric predictions bundled.
FringePrediction predict_fringes(const ApparatusConfig& config);

}  // namespace fringekit
