#include <doctest.h>

#include <cmath>

#include "spf/sieve_counts.hpp"
#include "test_util.hpp"

using namespace spf;

namespace {
const PrimeTable& table()
{
    static PrimeTable t(200'000);
    return t;
}
} // namespace

TEST_CASE("hand example: S_z(10,2) = S_z(10,3) + (1-z) S_z(5,2)")
{
    // S_z(10,3) = 5z + 5, S_z(5,2) = 5, so the right side is 10 for every z.
    auto c3 = count_nk(10, 3, table());
    CHECK(sum_sz_exact(c3, 2) == 15);
    for (int64_t z : {-3, -1, 0, 1, 2, 3}) {
        double h = std::log(3.0) / std::log(2.0);
        CHECK(buchstab_identity_residual(10, 2, h, cplx(double(z), 0.0), table()) == 0.0);
    }
}

TEST_CASE("h = 1 gives an empty prime range")
{
    CHECK(buchstab_identity_residual(5000, 17, 1.0, cplx(2.5, 0.5), table()) == 0.0);
}

TEST_CASE("exact-mode identity at (10^4, 10, y^h = 100, z = 2)")
{
    const double h = 2.0; // 10^2 = 100
    CHECK(buchstab_identity_residual(10000, 10, h, cplx(2.0, 0.0), table()) == 0.0);
}

TEST_CASE("identity residual is exactly zero for 100 random integer cases")
{
    auto& gen = oracle::rng();
    std::uniform_int_distribution<int64_t> xs(10, 100000), zs(-3, 3);
    std::uniform_real_distribution<double> hs(1.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const int64_t x = xs(gen);
        std::uniform_int_distribution<int64_t> ys(2, std::max<int64_t>(2, isqrt64(x)));
        const int64_t y = ys(gen);
        double h = hs(gen);
        // keep y^h <= x
        h = std::min(h, std::log(double(x)) / std::log(double(y)));
        if (h < 1.0) h = 1.0;
        const int64_t z = zs(gen);
        CAPTURE(x);
        CAPTURE(y);
        CAPTURE(h);
        CAPTURE(z);
        CHECK(buchstab_identity_residual(x, y, h, cplx(double(z), 0.0), table()) == 0.0);
    }
}

TEST_CASE("floating-point mode stays within the stated residual envelope")
{
    auto& gen = oracle::rng();
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const int64_t x = 20000 + i * 1000, y = 7;
        const double h = 2.0;
        const cplx z(re(gen), re(gen));
        const double res = buchstab_identity_residual(x, y, h, z, table());
        const double bound =
            1e-9 * std::pow(1.0 + std::abs(z), std::log2(double(x))) * double(x);
        CHECK(res <= bound);
    }
}
