#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spf/prime_table.hpp"
#include "test_util.hpp"

using namespace spf;

TEST_CASE("prime table basics")
{
    PrimeTable t(100);
    CHECK(t.primes().size() == 25);
    CHECK(t.primes().front() == 2);
    CHECK(t.primes().back() == 97);
    CHECK(t.pi(100) == 25);
    CHECK(t.pi(1) == 0);
    CHECK(t.is_prime(2));
    CHECK(!t.is_prime(1));
    CHECK(!t.is_prime(91)); // 7*13
}

TEST_CASE("smallest case bound = 2")
{
    PrimeTable t(2);
    REQUIRE(t.primes().size() == 1);
    CHECK(t.primes()[0] == 2);
}

TEST_CASE("bound below 2 rejected")
{
    CHECK_THROWS_AS(PrimeTable(1), domain_error);
}

TEST_CASE("pi(10^6) against an independent sieve")
{
    PrimeTable t(1'000'000);
    CHECK(t.pi(1'000'000) == 78498);

    // second, unrelated implementation: plain byte sieve
    std::vector<char> comp(1'000'001, 0);
    int64_t count = 0;
    for (int64_t n = 2; n <= 1'000'000; ++n) {
        if (comp[size_t(n)]) continue;
        ++count;
        for (int64_t m = n * n; m <= 1'000'000; m += n) comp[size_t(m)] = 1;
    }
    CHECK(count == 78498);

    // trial-division spot checks on stored entries
    auto& gen = oracle::rng();
    std::uniform_int_distribution<size_t> pick(0, t.primes().size() - 1);
    for (int i = 0; i < 50; ++i) CHECK(oracle::is_prime_trial(t.primes()[pick(gen)]));
}

TEST_CASE("spf invariants")
{
    PrimeTable t(100000, /*spf_limit=*/4096);
    for (int64_t p : {2LL, 3LL, 97LL, 4093LL}) CHECK(t.spf(p) == p); // dense range
    CHECK(t.spf(99991) == 99991);                                    // above the dense cap
    CHECK(t.spf(91) == 7);
    CHECK(t.spf(4100) == 2); // beyond cap, composite
    CHECK(t.spf(99989 * 1) == 99989);
    // composite n has spf(n)^2 <= n
    auto& gen = oracle::rng();
    std::uniform_int_distribution<int64_t> pick(4, 100000);
    for (int i = 0; i < 200; ++i) {
        int64_t n = pick(gen);
        int64_t s = t.spf(n);
        if (!t.is_prime(n)) CHECK(s * s <= n);
        CHECK(n % s == 0);
    }
}

TEST_CASE("cache round trip, insufficiency, corruption")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spf-cache-test";
    fs::remove_all(dir);

    cache_status st = cache_status::none;
    PrimeTable a = build_prime_table_cached(10000, dir, &st);
    CHECK(st == cache_status::miss_built);

    PrimeTable b = build_prime_table_cached(10000, dir, &st);
    CHECK(st == cache_status::hit);
    CHECK(b.primes() == a.primes());

    PrimeTable c = build_prime_table_cached(5000, dir, &st); // smaller request, same file
    CHECK(st == cache_status::hit);
    CHECK(c.pi(5000) == a.pi(5000));

    PrimeTable d = build_prime_table_cached(20000, dir, &st); // larger: rebuild
    CHECK(st == cache_status::rebuilt_insufficient);
    CHECK(d.pi(10000) == a.pi(10000));

    {
        std::ofstream f(dir / "primes.spfl1", std::ios::binary | std::ios::trunc);
        f << "garbage data, not a cache";
    }
    PrimeTable e = build_prime_table_cached(10000, dir, &st);
    CHECK(st == cache_status::rebuilt_corrupt);
    CHECK(e.pi(10000) == a.pi(10000));

    PrimeTable f = build_prime_table_cached(10000, dir, &st); // ...and rewritten
    CHECK(st == cache_status::hit);
    fs::remove_all(dir);
}
