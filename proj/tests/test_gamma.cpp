#include <doctest.h>

#include <cmath>

#include "spf/gamma.hpp"
#include "test_util.hpp"

using namespace spf;

TEST_CASE("gamma at integers and half-integers")
{
    CHECK(complex_gamma(cplx(1, 0)).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(complex_gamma(cplx(5, 0)).real() == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(complex_gamma(cplx(10, 0)).real() == doctest::Approx(362880.0).epsilon(1e-12));
    CHECK(complex_gamma(cplx(0.5, 0)).real() ==
          doctest::Approx(1.7724538509055160273).epsilon(1e-13));
    CHECK(complex_gamma(cplx(-0.5, 0)).real() ==
          doctest::Approx(-3.5449077018110320546).epsilon(1e-12));
}

TEST_CASE("functional equation Gamma(z+1) = z Gamma(z) across the plane")
{
    auto& gen = oracle::rng();
    std::uniform_real_distribution<double> comp(-8.0, 8.0);
    for (int i = 0; i < 50; ++i) {
        cplx z(comp(gen), comp(gen));
        if (is_gamma_pole(z) || std::abs(z) < 0.05) { --i; continue; }
        const cplx lhs = complex_gamma(z + cplx(1.0));
        const cplx rhs = z * complex_gamma(z);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("reciprocal gamma is zero at the poles and 1/Gamma elsewhere")
{
    for (double n : {0.0, -1.0, -2.0, -7.0}) CHECK(recip_gamma(cplx(n, 0.0)) == cplx(0.0));
    for (double v : {0.3, 1.7, 4.2}) {
        CHECK(recip_gamma(cplx(v, 0)).real() ==
              doctest::Approx(1.0 / complex_gamma(cplx(v, 0)).real()).epsilon(1e-12));
    }
    // 12-digit claim on |z| <= 10: reflection consistency Gamma(z)Gamma(1-z) = pi/sin(pi z)
    auto& gen = oracle::rng();
    std::uniform_real_distribution<double> comp(-3.0, 3.0);
    for (int i = 0; i < 25; ++i) {
        cplx z(comp(gen) + 0.5, comp(gen));
        const cplx lhs = complex_gamma(z) * complex_gamma(cplx(1.0) - z);
        const cplx rhs = M_PI / std::sin(M_PI * z);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
    }
}
