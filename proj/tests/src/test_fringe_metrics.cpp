#include <cmath>
#include <random>
#include <string>

#include "doctest.h"

#include "fringekit/errors.hpp"
#include "fringekit/fringe_metrics.hpp"

using namespace fringekit;
using doctest::Approx;

TEST_CASE("method names") {
  CHECK(std::string(to_string(VisibilityMethod::Extrema)) == "extrema");
  CHECK(std::string(to_string(VisibilityMethod::ElevationCorrected)) ==
        "elevation-corrected");
  CHECK(std::string(to_string(VisibilityMethod::FromR)) == "from-R");
  CHECK(std::string(to_string(VisibilityMethod::FromREnvelope)) == "from-R-envelope");
  CHECK(std::string(to_string(VisibilityMethod::Coherence)) == "coherence");
}

TEST_CASE("extrema visibility") {
  const auto e = visibility_extrema(1045.0, 270.0);
  CHECK(e.value == Approx(775.0 / 1315.0).epsilon(1e-12));
  CHECK(e.raw_value == e.value);
  CHECK_FALSE(e.clamped);
  CHECK(e.method == VisibilityMethod::Extrema);
  REQUIRE(e.inputs.size() == 2);
  CHECK(e.inputs[0].first == "i_max");
  CHECK(e.inputs[0].second == 1045.0);

  CHECK(visibility_extrema(1.0, 1.0).value == Approx(0.0).scale(1));
  CHECK(visibility_extrema(1.0, 0.0).value == Approx(1.0));
  CHECK_THROWS_AS(visibility_extrema(270.0, 1045.0), domain_error);
  CHECK_THROWS_AS(visibility_extrema(0.0, 0.0), domain_error);
  CHECK_THROWS_AS(visibility_extrema(1.0, -0.5), domain_error);
}

TEST_CASE("elevation-corrected visibility matches the published numbers") {
  const auto e = visibility_elevation_corrected(1045.0, 270.0, 262.0);
  CHECK(e.value == Approx(0.979772).epsilon(1e-5));
  CHECK_FALSE(e.clamped);

  // Zero elevation reduces to the plain extrema estimate.
  CHECK(visibility_elevation_corrected(1045.0, 270.0, 0.0).value ==
        Approx(visibility_extrema(1045.0, 270.0).value).epsilon(1e-12));

  CHECK_THROWS_AS(visibility_elevation_corrected(1045.0, 270.0, 280.0), domain_error);
  CHECK_THROWS_AS(visibility_elevation_corrected(200.0, 270.0, 0.0), domain_error);
  CHECK_THROWS_AS(visibility_elevation_corrected(100.0, 90.0, 110.0), domain_error);
}

TEST_CASE("visibility from the spectral power ratio") {
  const double r = std::pow(10.0, 7.4) / std::pow(10.0, 7.9);
  CHECK(r == Approx(0.316228).epsilon(1e-5));
  const auto v = visibility_from_r(r);
  CHECK(v.value == Approx(0.562341).epsilon(1e-5));
  CHECK(visibility_from_r(0.32).value == Approx(0.565685).epsilon(1e-6));
  CHECK(visibility_from_r(0.0).value == 0.0);
  CHECK_THROWS_AS(visibility_from_r(-0.1), domain_error);

  // R beyond 1 is a noisy-input case: clamped, raw kept.
  const auto noisy = visibility_from_r(4.0);
  CHECK(noisy.value == 1.0);
  CHECK(noisy.raw_value == Approx(2.0));
  CHECK(noisy.clamped);
}

TEST_CASE("envelope-corrected spectral visibility") {
  CHECK(visibility_from_r_envelope(0.32, 0.25).value == Approx(0.754247).epsilon(1e-6));
  CHECK(visibility_from_r_envelope(0.32, 0.0).value ==
        Approx(visibility_from_r(0.32).value).epsilon(1e-12));
  const auto clamped = visibility_from_r_envelope(0.9, 0.5);
  CHECK(clamped.clamped);
  CHECK(clamped.value == 1.0);
  CHECK(clamped.raw_value == Approx(std::sqrt(0.9) / 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(visibility_from_r_envelope(0.32, 1.0), domain_error);
  CHECK_THROWS_AS(visibility_from_r_envelope(-0.1, 0.25), domain_error);
}

TEST_CASE("visibility from beam balance and coherence") {
  CHECK(visibility_from_coherence(1.0, 1.0, 1.0).value == Approx(1.0).epsilon(1e-12));
  CHECK(visibility_from_coherence(1.0, 1.0, 0.5).value == Approx(0.5).epsilon(1e-12));
  CHECK(visibility_from_coherence(4.0, 1.0, 1.0).value == Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(visibility_from_coherence(0.0, 1.0, 1.0), domain_error);
  CHECK_THROWS_AS(visibility_from_coherence(1.0, 1.0, 1.5), domain_error);
}

TEST_CASE("distinguishability of unbalanced beams") {
  CHECK(distinguishability_balanced(1.0, 1.0) == Approx(0.0).scale(1));
  CHECK(distinguishability_balanced(4.0, 1.0) == Approx(0.6).epsilon(1e-12));
  CHECK(distinguishability_balanced(1.0, 0.0) == Approx(1.0));
  CHECK_THROWS_AS(distinguishability_balanced(0.0, 0.0), domain_error);
  CHECK_THROWS_AS(distinguishability_balanced(-1.0, 1.0), domain_error);
}

TEST_CASE("complementarity saturates for pure coherence") {
  const double p = distinguishability_balanced(4.0, 1.0);
  const double v = visibility_from_coherence(4.0, 1.0, 1.0).value;
  const auto r = complementarity_check(p, v);
  CHECK(r.lhs == Approx(1.0).epsilon(1e-12));
  CHECK(r.satisfied);
  CHECK(r.saturated);

  const double v_partial = visibility_from_coherence(4.0, 1.0, 0.9).value;
  const auto partial = complementarity_check(p, v_partial);
  CHECK(partial.lhs < 1.0);
  CHECK(partial.satisfied);
  CHECK_FALSE(partial.saturated);

  const auto violating = complementarity_check(0.8, 0.8);
  CHECK_FALSE(violating.satisfied);
  CHECK(violating.lhs == Approx(1.28).epsilon(1e-12));

  CHECK_THROWS_AS(complementarity_check(1.2, 0.0), domain_error);
  CHECK_THROWS_AS(complementarity_check(0.0, -0.1), domain_error);
}

TEST_CASE("saturation identity over random beam pairs") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double i1 = dist(rng), i2 = dist(rng);
    const double p = distinguishability_balanced(i1, i2);
    const double v = visibility_from_coherence(i1, i2, 1.0).value;
    const auto r = complementarity_check(p, v);
    CHECK(std::abs(r.lhs - 1.0) <= 1e-12);
    CHECK(r.saturated);
  }
}
