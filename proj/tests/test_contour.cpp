#include <doctest.h>

#include <cmath>

#include "spf/contour.hpp"
#include "spf/predictors.hpp"
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

TEST_CASE("radius policy")
{
    CHECK(radius_policy(0, 1000) == 0.5);
    const double L = std::log(std::log(1000.0));
    CHECK(radius_policy(3, 1000) == doctest::Approx(3.0 / L).epsilon(1e-15)); // ~1.552
    CHECK(radius_policy(3, 1000) == doctest::Approx(1.552).epsilon(1e-3));
    CHECK(radius_policy(1, 16) <= 10.0);
    CHECK(radius_policy(100, 16) == 10.0); // clamped
    CHECK_THROWS_AS(radius_policy(1, 15), domain_error);
}

TEST_CASE("contour extraction is exact for the polynomial S_z")
{
    const auto cv = count_nk(10000, 100, table());
    auto eval = exact_sum_evaluator(cv);
    for (double r : {0.5, 1.0, 2.0}) {
        ContourSpec spec{r, 64, cv.k_max()};
        auto res = extract_counts(spec, eval);
        for (int k = 0; k <= cv.k_max(); ++k) {
            const double exact = double(cv.counts[size_t(k)]);
            const double dev = std::abs(res.extracted[size_t(k)] - exact);
            if (exact > 0) CHECK(dev / exact <= 1e-6);
            else CHECK(dev <= 1e-6);
        }
    }
}

TEST_CASE("degenerate inputs")
{
    const auto cv = count_nk(1, 7, table());
    auto res = extract_counts(ContourSpec{0.5, 8, 1}, exact_sum_evaluator(cv));
    CHECK(res.extracted[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(res.extracted[1]) < 1e-12);

    const auto c2 = count_nk(10, 2, table()); // S identically 10
    auto r2 = extract_counts(ContourSpec{0.5, 8, 2}, exact_sum_evaluator(c2));
    CHECK(r2.extracted[0] == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(std::abs(r2.extracted[1]) < 1e-12);

    CHECK_THROWS_AS(extract_counts(ContourSpec{1.0, 8, 8}, exact_sum_evaluator(cv)),
                    domain_error);
    CHECK_THROWS_AS(extract_counts(ContourSpec{1.0, 48, 4}, exact_sum_evaluator(cv)),
                    domain_error); // not a power of two
    CHECK_THROWS_AS(extract_counts(ContourSpec{-1.0, 64, 4}, exact_sum_evaluator(cv)),
                    domain_error);
}

TEST_CASE("radius invariance within the stated conditioning envelope")
{
    const auto cv = count_nk(100000, 300, table());
    auto eval = exact_sum_evaluator(cv);
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        ContourSpec spec{r, 256, cv.k_max()};
        auto res = extract_counts(spec, eval);
        for (int k = 0; k <= cv.k_max(); ++k) {
            const double exact = double(cv.counts[size_t(k)]);
            if (exact <= 0) continue;
            const double cond = res.conditioning(k, r, exact);
            CHECK(std::abs(res.extracted[size_t(k)] - exact) / exact <=
                  1e-9 * std::max(cond, 1.0));
        }
    }
}

TEST_CASE("extraction from the small-y product estimate recovers the k-profile")
{
    // feed the contour an asymptotic evaluator instead of the exact sum:
    // at (1e6, 30) the product estimate is density-sharp, so the extracted
    // counts land well within the 15% window for k <= 4
    static PrimeTable big(1'000'000);
    static BuchstabFunction w(16.0);
    static MGridCache mg(big);
    auto ctx = PredictorContext::make(big, w, mg);
    const auto cv = count_nk(1'000'000, 30, big);
    SumEvaluator pred_eval = [&](cplx z) {
        return predict_sum_small_y(1'000'000, 30, z, ctx).value;
    };
    for (int k = 0; k <= 4; ++k) {
        const double r = radius_policy(k, 30);
        auto res = extract_counts(ContourSpec{r, 64, k}, pred_eval);
        const double exact = double(cv.at(k));
        CHECK(std::abs(res.extracted[size_t(k)] - exact) / exact < 0.15);
    }
}

TEST_CASE("first-order term vanishes at the optimal radius")
{
    // the k-th coefficient of (z - c) e^{zL} is L^{k-1}/(k-1)! - c L^k/k!,
    // which cancels exactly when c = k/L; other shifts leave a residue.
    const double L = std::log(std::log(1000.0));
    for (int k : {1, 2, 3, 5}) {
        const double r = double(k) / L;
        ContourSpec spec{r, 64, k};
        auto res = extract_counts(spec, [&](cplx z) { return (z - r) * std::exp(z * L); });
        CHECK(std::abs(res.extracted[size_t(k)]) < 1e-9);
        // the cancellation is a property of the shift, not of the circle:
        // extracting at a different radius still yields 0
        ContourSpec off{r * 1.5, 64, k};
        auto res_shifted =
            extract_counts(off, [&](cplx z) { return (z - r) * std::exp(z * L); });
        CHECK(std::abs(res_shifted.extracted[size_t(k)]) < 1e-9);
        // while a detuned shift does not cancel
        auto res_detuned =
            extract_counts(spec, [&](cplx z) { return (z - 1.5 * r) * std::exp(z * L); });
        CHECK(std::abs(res_detuned.extracted[size_t(k)]) > 1e-4);
    }
}
