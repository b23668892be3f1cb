#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dacfir/band_geometry.hpp"
#include "dacfir/error.hpp"

using namespace dacfir;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("band intervals") {
  auto b = band_interval({1, 0.5 * pi});
  CHECK(b.lo == 0.0);
  CHECK(b.hi == Approx(0.5 * pi));
  b = band_interval({2, 0.8 * pi});
  CHECK(b.lo == Approx(1.1 * pi).epsilon(1e-14));
  CHECK(b.hi == Approx(1.9 * pi).epsilon(1e-14));
  b = band_interval({3, 0.5 * pi});
  CHECK(b.lo == Approx(2.25 * pi).epsilon(1e-14));
  CHECK(b.hi == Approx(2.75 * pi).epsilon(1e-14));
}

TEST_CASE("upper bands are centred and avoid multiples of pi") {
  for (int nb = 2; nb <= 6; ++nb) {
    for (double frac : {0.04, 0.5, 0.96, 0.999}) {
      const auto b = band_interval({nb, frac * pi});
      CHECK(std::abs(0.5 * (b.lo + b.hi) - (nb - 0.5) * pi) < 1e-14 * nb * pi);
      CHECK(std::floor(b.lo / pi) == std::floor(b.hi / pi));
      CHECK(b.lo > (nb - 1) * pi);
    }
  }
}

TEST_CASE("grid sizes and endpoints") {
  auto g = make_grid({1, 0.5 * pi}, 8, 16);
  CHECK(g.points.size() == 256);
  CHECK(g.points.front() == 0.0);
  CHECK(g.points.back() == Approx(0.5 * pi).epsilon(1e-15));

  g = make_grid({2, 0.8 * pi}, 20, 16);
  CHECK(g.points.size() == 320);
  const auto b = band_interval({2, 0.8 * pi});
  CHECK(g.points.front() == b.lo);
  CHECK(g.points.back() == b.hi);
  for (std::size_t i = 1; i < g.points.size(); ++i) CHECK(g.points[i] > g.points[i - 1]);
}

TEST_CASE("invalid band specifications") {
  CHECK_THROWS_AS(validate(BandSpec{0, 0.5}), Error);
  CHECK_THROWS_AS(validate(BandSpec{1, 0.0}), Error);
  CHECK_THROWS_AS(validate(BandSpec{1, pi}), Error);
  CHECK_THROWS_AS(make_grid({1, 0.5}, 0), Error);
  try {
    band_interval({2, 4.0});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
