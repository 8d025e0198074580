#include <catch2/catch_amalgamated.hpp>

#include "fbtopo/dual.hpp"

using fbtopo::Dual;

TEST_CASE("dual arithmetic matches finite differences") {
  auto f = [](auto x, auto y) {
    return sqrt(x * x + y * y) * 3.0 + x / y - log(x + 2.0 * y);
  };
  const double x0 = 1.3, y0 = 0.7, h = 1e-7;

  auto dx = Dual<2>::seed(x0, 0);
  auto dy = Dual<2>::seed(y0, 1);
  auto r = f(dx, dy);

  const double fdx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h);
  const double fdy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2 * h);
  CHECK(r.v == Catch::Approx(f(x0, y0)).epsilon(1e-14));
  CHECK(r.d[0] == Catch::Approx(fdx).epsilon(1e-7));
  CHECK(r.d[1] == Catch::Approx(fdy).epsilon(1e-7));
}

TEST_CASE("dual division and scalar mixing") {
  auto a = Dual<1>::seed(2.0, 0);
  auto r = (3.0 - a) / (a * a) + 1.0;
  // d/da [(3-a)/a^2] = (a-6)/a^3 = -1/2 at a=2
  CHECK(r.v == Catch::Approx((3.0 - 2.0) / 4.0 + 1.0));
  CHECK(r.d[0] == Catch::Approx(-0.5));
}
