#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "dacfir/error.hpp"
#include "dacfir/fir_types.hpp"

using namespace dacfir;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

FirFilter random_filter(LinearPhaseType t, int order, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> e(expansion_length(t, order));
  for (double& v : e) v = u(rng);
  return FirFilter::from_expansion(t, order, e);
}

}  // namespace

TEST_CASE("zero-phase response examples") {
  const FirFilter f1(LinearPhaseType::I, {0.25, 0.5, 0.25});
  CHECK(zero_phase_response(f1, 0.0) == Approx(1.0).epsilon(1e-15));

  const FirFilter id(LinearPhaseType::I, {1.0});
  for (double w : {0.0, 0.3, 2.0, 17.0}) {
    const auto h = frequency_response(id, w);
    CHECK(h.real() == 1.0);
    CHECK(h.imag() == 0.0);
  }

  const FirFilter f4(LinearPhaseType::IV, {0.5, -0.5});
  const auto h = frequency_response(f4, pi);
  CHECK(std::abs(h - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("magnitude and phase agree with the zero-phase form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uw(0.0, 6.0 * pi);
  std::uniform_int_distribution<int> um(0, 30);
  for (LinearPhaseType t : kAllTypes) {
    for (int trial = 0; trial < 1000; ++trial) {
      int order = 2 * um(rng) + (requires_even_order(t) ? 0 : 1);
      order = std::max(order, smallest_valid_order(t));
      const FirFilter f = random_filter(t, order, rng);
      for (int k = 0; k < 64; ++k) {
        const double w = uw(rng);
        const std::complex<double> H = frequency_response(f, w);
        const double hr = zero_phase_response(f, w);
        REQUIRE(std::abs(std::abs(H) - std::abs(hr)) < 1e-10);
        const std::complex<double> rot = std::polar(1.0, -w * order / 2.0) *
                                         (is_symmetric(t) ? std::complex<double>(1.0, 0.0)
                                                          : std::complex<double>(0.0, 1.0));
        REQUIRE(std::abs(H - rot * hr) < 1e-10);
      }
    }
  }
}

TEST_CASE("structural zeros") {
  CHECK(structural_zeros(LinearPhaseType::I).empty());
  CHECK(structural_zeros(LinearPhaseType::II) == std::vector<double>{pi});
  CHECK(structural_zeros(LinearPhaseType::III) == std::vector<double>{0.0, pi});
  CHECK(structural_zeros(LinearPhaseType::IV) == std::vector<double>{0.0});

  std::mt19937_64 rng(3);
  for (LinearPhaseType t : kAllTypes) {
    for (int trial = 0; trial < 200; ++trial) {
      const int order = smallest_valid_order(t) + 2 * (trial % 20);
      const FirFilter f = random_filter(t, order, rng);
      for (double z : structural_zeros(t)) {
        CHECK(std::abs(zero_phase_response(f, z)) < 1e-12);
        CHECK(std::abs(frequency_response(f, z)) < 1e-12);
      }
    }
  }
}

TEST_CASE("multiplier counts") {
  CHECK(multiplier_count(LinearPhaseType::I, 12) == 7);
  CHECK(multiplier_count(LinearPhaseType::III, 38) == 19);
  CHECK(multiplier_count(LinearPhaseType::II, 37) == 19);
  CHECK(multiplier_count(LinearPhaseType::IV, 37) == 19);
  CHECK_THROWS_AS(multiplier_count(LinearPhaseType::I, 13), Error);
  for (LinearPhaseType t : kAllTypes) {
    for (int n = smallest_valid_order(t); n < 40; n += 2) {
      CHECK(multiplier_count(t, n) == expansion_length(t, n));
    }
  }
}

TEST_CASE("equalized-system delays") {
  CHECK(delay_K(LinearPhaseType::I, 12, PulseKind::RTZ).value() == 6.25);
  CHECK(delay_K(LinearPhaseType::II, 37, PulseKind::NRTZ).value() == 19.0);
  CHECK(delay_K(LinearPhaseType::III, 38, PulseKind::RTCZ).value() == 19.25);
  CHECK(delay_K(LinearPhaseType::I, 12, PulseKind::NRTZ).value() == 6.5);
  CHECK(delay_K(LinearPhaseType::II, 37, PulseKind::RTZ).value() == 18.75);
  CHECK(delay_K(LinearPhaseType::III, 38, PulseKind::RTC).value() == 19.5);
  CHECK(delay_K(LinearPhaseType::IV, 37, PulseKind::RTC).value() == 19.0);
  CHECK(delay_K(LinearPhaseType::IV, 37, PulseKind::RTCZ).value() == 18.75);
  try {
    delay_K(LinearPhaseType::II, 37, PulseKind::RTC);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCombination);
  }
}

TEST_CASE("pulse and type compatibility") {
  CHECK(compatible(PulseKind::NRTZ, LinearPhaseType::I));
  CHECK_FALSE(compatible(PulseKind::RTC, LinearPhaseType::II));
  CHECK(compatible(PulseKind::RTCZ, LinearPhaseType::IV));
  CHECK_FALSE(compatible(PulseKind::RTZ, LinearPhaseType::III));
}

TEST_CASE("filter validation and expansion round trip") {
  CHECK_THROWS_AS(FirFilter(LinearPhaseType::I, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(FirFilter(LinearPhaseType::I, {1.0, 2.0, 1.5}), Error);
  CHECK_THROWS_AS(FirFilter(LinearPhaseType::III, {1.0, 0.0, -1.0 + 1e-9}), Error);
  CHECK_NOTHROW(FirFilter(LinearPhaseType::III, {1.0, 0.0, -1.0}));
  CHECK(parse_filter_type("iii") == LinearPhaseType::III);
  CHECK(parse_filter_type("4") == LinearPhaseType::IV);
  CHECK_FALSE(parse_filter_type("V").has_value());

  std::mt19937_64 rng(5);
  for (LinearPhaseType t : kAllTypes) {
    const int order = smallest_valid_order(t) + 10;
    const FirFilter f = random_filter(t, order, rng);
    const FirFilter g = FirFilter::from_expansion(t, order, f.expansion());
    for (int n = 0; n <= order; ++n) CHECK(g.coefficients()[n] == Approx(f.coefficients()[n]).epsilon(1e-14));
  }
}
