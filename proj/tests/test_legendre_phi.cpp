#include <doctest.h>

#include "spf/legendre_phi.hpp"
#include "spf/sieve_counts.hpp"
#include "test_util.hpp"

using namespace spf;

namespace {
const PrimeTable& table()
{
    static PrimeTable t(1'000'000);
    return t;
}
} // namespace

TEST_CASE("phi examples")
{
    CHECK(legendre_phi(100, 10, table()) == 22);
    CHECK(legendre_phi(100, 10, table()) == oracle::phi_inclusion_exclusion(100, 10));
    CHECK(legendre_phi(100, 11, table()) == 22); // 1 + pi(100) - pi(10)
    CHECK(legendre_phi(100, 11, table()) == 1 + table().pi(100) - table().pi(10));
    for (int64_t x : {1LL, 2LL, 77LL, 5000LL}) CHECK(legendre_phi(x, 2, table()) == x);
    CHECK(legendre_phi(1, 97, table()) == 1);
}

TEST_CASE("phi against inclusion-exclusion for small y")
{
    auto& gen = oracle::rng();
    std::uniform_int_distribution<int64_t> xs(1, 300000), ys(2, 30);
    for (int i = 0; i < 25; ++i) {
        const int64_t x = xs(gen), y = ys(gen);
        CHECK(legendre_phi(x, y, table()) == oracle::phi_inclusion_exclusion(x, y));
    }
}

TEST_CASE("phi consistent with the histogram route")
{
    auto& gen = oracle::rng();
    std::uniform_int_distribution<int64_t> xs(1, 500000), ys(2, 9000);
    for (int i = 0; i < 15; ++i) {
        const int64_t x = xs(gen), y = ys(gen);
        CHECK(legendre_phi(x, y, table()) == count_nk(x, y, table()).counts[0]);
    }
}

TEST_CASE("phi domain errors")
{
    CHECK_THROWS_AS(legendre_phi(0, 10, table()), domain_error);
    CHECK_THROWS_AS(legendre_phi(10, 1, table()), domain_error);
    PrimeTable small(100);
    CHECK_THROWS_AS(legendre_phi(1000, 10, small), domain_error);
}
