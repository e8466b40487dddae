#include <doctest.h>

#include <cmath>

#include "spf/euler_products.hpp"
#include "spf/sieve_counts.hpp"
#include "test_util.hpp"

using namespace spf;

namespace {
const PrimeTable& table()
{
    static PrimeTable t(10'000'000);
    return t;
}
} // namespace

TEST_CASE("selberg g at special points")
{
    CHECK(selberg_g(cplx(1, 0), table()).value.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(selberg_g(cplx(0, 0), table()).value.real() == doctest::Approx(1.0).epsilon(1e-14));
    // g(1,2) = prod (1 - 1/p^2) = 6/pi^2
    CHECK(selberg_g(cplx(2, 0), table()).value.real() ==
          doctest::Approx(6.0 / (M_PI * M_PI)).epsilon(1e-12));
    // vanishing factor at z = -(p-1)
    CHECK(selberg_g(cplx(-1, 0), table()).value == cplx(0.0));
    CHECK(selberg_g(cplx(-4, 0), table()).value == cplx(0.0));
}

TEST_CASE("ell at special points")
{
    CHECK(ell(cplx(1, 0), table()).value.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ell(cplx(0, 0), table()).value.real() ==
          doctest::Approx(std::exp(-euler_gamma)).epsilon(1e-13));
    CHECK(ell(cplx(-1, 0), table()).value == cplx(0.0)); // z = 1 - 2
    // ell(2) = e^gamma prod (1 - 1/p^2) = e^gamma * 6/pi^2
    CHECK(ell(cplx(2, 0), table()).value.real() ==
          doctest::Approx(std::exp(euler_gamma) * 6.0 / (M_PI * M_PI)).epsilon(1e-12));
    CHECK(ell(cplx(2, 0), table()).tail_bound < 1e-10);
}

TEST_CASE("truncation is stable between P = 10^5 and P = 10^6")
{
    for (double zr : {0.3, 0.5, 2.0, 3.0}) {
        const cplx a = ell(cplx(zr, 0), table(), 100'000).value;
        const cplx b = ell(cplx(zr, 0), table(), 1'000'000).value;
        CHECK(std::abs(a - b) < 1e-9);
    }
}

TEST_CASE("mertens constant")
{
    const double c1 = mertens_constant(table());
    CHECK(c1 > 0.2614);
    CHECK(c1 < 0.2616);
    // definitional convergence: partial sums approach c1
    const double gap6 = mertens_sum(1'000'000, table()) - std::log(std::log(1e6)) - c1;
    CHECK(std::abs(gap6) < 0.01);
    const double v7 = mertens_sum(10'000'000, table()) - std::log(std::log(1e7));
    CHECK(v7 > 0.26);
    CHECK(v7 < 0.263);
    CHECK(std::abs(v7 - c1) < std::abs(gap6));
    // gamma constant used by the series
    CHECK(euler_gamma == doctest::Approx(0.5772156649015329).epsilon(1e-16));
}
