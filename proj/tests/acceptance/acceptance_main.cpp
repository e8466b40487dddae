// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
//
// The heavy sieves (x = 10^8) dominate the runtime; exact histograms are
// cached across criteria. Every tolerance is pinned in this file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spf/contour.hpp"
#include "spf/euler_products.hpp"
#include "spf/harness.hpp"
#include "spf/legendre_phi.hpp"
#include "spf/predictors.hpp"
#include "spf/prime_table.hpp"
#include "spf/sieve_counts.hpp"
#include "spf/special_functions.hpp"

using namespace spf;

namespace {

struct Gate {
    int failures = 0;

    void criterion(int number, const std::string& label, double budget_seconds,
                   const std::function<bool(std::string&)>& fn)
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > budget_seconds) {
            ok = false;
            detail += " [over the " + std::to_string(int(budget_seconds)) + " s budget]";
        }
        std::printf("criterion %d: %s (%.1f s) — %s%s%s\n", number, ok ? "PASS" : "FAIL", secs,
                     label.c_str(), detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Sieves {
    const PrimeTable& table;
    std::map<std::pair<int64_t, int64_t>, CountVector> cache;

    const CountVector& get(int64_t x, int64_t y)
    {
        auto key = std::make_pair(x, y);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, count_nk(x, y, table)).first;
        return it->second;
    }
};

} // namespace

int main()
{
    std::printf("building prime table to 1e8 (cached histograms follow)\n");
    std::fflush(stdout);
    PrimeTable table(100'000'000);
    Sieves sieves{table, {}};
    BuchstabFunction wtab(64.0);
    MGridCache mgrids(table);
    PredictorContext ctx = PredictorContext::make(table, wtab, mgrids);
    Gate gate;

    // 1 ------------------------------------------------------------------
    gate.criterion(1, "exact partition and N_0 = Phi on 50 pairs (x <= 1e6)", 60.0, [&](std::string& d) {
        std::mt19937_64 gen(20260808);
        std::uniform_real_distribution<double> lx(3.0, 6.0);
        int checked = 0;
        for (int i = 0; i < 50; ++i) {
            const int64_t x = std::max<int64_t>(2, int64_t(std::pow(10.0, lx(gen))));
            int64_t y;
            switch (i % 5) {
                case 0: y = 2; break;
                case 1: y = 3 + int64_t(gen() % 28); break;
                case 2: y = isqrt64(x) + 1; break;
                case 3: y = std::max<int64_t>(2, x / 30); break;
                default: y = x; break;
            }
            const CountVector cv = count_nk(x, y, table);
            int64_t total = 0;
            for (int64_t c : cv.counts) total += c;
            if (total != x) {
                d = "partition failed at x=" + std::to_string(x) + " y=" + std::to_string(y);
                return false;
            }
            if (legendre_phi(x, y, table) != cv.counts[0]) {
                d = "phi mismatch at x=" + std::to_string(x) + " y=" + std::to_string(y);
                return false;
            }
            ++checked;
        }
        d = std::to_string(checked) + " pairs exact";
        return true;
    });

    // 2 ------------------------------------------------------------------
    gate.criterion(2, "Buchstab identity residual exactly 0 (100 random integer cases)", 30.0,
                   [&](std::string& d) {
        std::mt19937_64 gen(77);
        std::uniform_int_distribution<int64_t> xs(10, 100'000), zs(-3, 3);
        std::uniform_real_distribution<double> hs(1.0, 3.0);
        for (int i = 0; i < 100; ++i) {
            const int64_t x = xs(gen);
            std::uniform_int_distribution<int64_t> ys(2, std::max<int64_t>(2, isqrt64(x)));
            const int64_t y = ys(gen);
            double h = std::min(hs(gen), std::log(double(x)) / std::log(double(y)));
            if (h < 1.0) h = 1.0;
            const int64_t z = zs(gen);
            const double res = buchstab_identity_residual(x, y, h, cplx(double(z), 0.0), table);
            if (res != 0.0) {
                d = "nonzero residual " + fmt(res) + " at x=" + std::to_string(x) +
                    " y=" + std::to_string(y) + " z=" + std::to_string(z);
                return false;
            }
        }
        d = "all residuals exactly 0";
        return true;
    });

    // 3 ------------------------------------------------------------------
    gate.criterion(3, "contour extraction within 1e-6 (x=1e4, y=100, m=64, r in {0.5,1,2})", 5.0,
                   [&](std::string& d) {
        const CountVector& cv = sieves.get(10'000, 100);
        auto eval = exact_sum_evaluator(cv);
        double worst = 0.0;
        for (double r : {0.5, 1.0, 2.0}) {
            auto res = extract_counts(ContourSpec{r, 64, cv.k_max()}, eval);
            for (int k = 0; k <= cv.k_max(); ++k) {
                const double exact = double(cv.counts[size_t(k)]);
                const double dev = std::abs(res.extracted[size_t(k)] - exact) /
                                   std::max(exact, 1.0);
                worst = std::max(worst, dev);
            }
        }
        d = "max relative deviation " + fmt(worst);
        return worst <= 1e-6;
    });

    // 4 ------------------------------------------------------------------
    gate.criterion(4, "convolution route vs delay-equation route within 1e-6 (10x4 grid)", 60.0,
                   [&](std::string& d) {
        double worst = 0.0;
        for (double r : {0.3, 0.5, 1.0, 2.0}) {
            MFunction m(cplx(r, 0.0), 12.0, table);
            DickmanRho rho(r, 16.0);
            const double cr = selberg_g(cplx(r, 0.0), table).value.real();
            for (int a = 1; a <= 10; ++a) {
                const double conv = m_r_convolution(double(a), r, rho, wtab, cr);
                worst = std::max(worst, std::abs(conv - m(double(a)).real()));
            }
        }
        d = "max |difference| " + fmt(worst);
        return worst <= 1e-6;
    });

    // 5 ------------------------------------------------------------------
    gate.criterion(5, "m_r(40) -> l(r) within 1e-8 with monotone gaps; m_0.001 ~ w within 5e-3", 120.0,
                   [&](std::string& d) {
        double worst_gap = 0.0;
        for (double r : {0.3, 0.5, 1.0, 2.0}) {
            MFunction m(cplx(r, 0.0), 44.0, table);
            const double lr = ell(cplx(r, 0.0), table).value.real();
            double prev = 1e300;
            for (double a : {5.0, 10.0, 20.0, 40.0}) {
                const double gap = std::abs(m(a).real() - lr);
                if (gap > prev + 1e-12) {
                    d = "gap not monotone at r=" + fmt(r) + " alpha=" + fmt(a);
                    return false;
                }
                prev = gap;
            }
            worst_gap = std::max(worst_gap, std::abs(m(40.0).real() - lr));
        }
        MFunction m001(cplx(0.001, 0.0), 12.0, table);
        double worst_w = 0.0;
        for (double a = 1.05; a <= 10.0; a += 0.01)
            worst_w = std::max(worst_w, std::abs(m001(a).real() - wtab(a)));
        d = "max |m_r(40)-l(r)| " + fmt(worst_gap) + ", sup |m_0.001 - w| " + fmt(worst_w);
        return worst_gap <= 1e-8 && worst_w <= 0.005;
    });

    // 6 ------------------------------------------------------------------
    gate.criterion(6, "Dickman integral = e^{r gamma} within 1e-4; rho_1(2) = 1 - ln 2", 10.0,
                   [&](std::string& d) {
        double worst = 0.0;
        for (double r : {0.5, 1.0, 2.0}) {
            DickmanRho rho(r, 44.0);
            worst = std::max(worst,
                             std::abs(rho.integral(40.0) - std::exp(r * euler_gamma)));
        }
        DickmanRho rho1(1.0, 8.0);
        const double point = std::abs(rho1(2.0) - (1.0 - std::log(2.0)));
        d = "max integral gap " + fmt(worst) + ", |rho_1(2)-(1-ln2)| " + fmt(point);
        return worst <= 1e-4 && point <= 1e-9;
    });

    // 7 ------------------------------------------------------------------
    gate.criterion(7, "asymptotic convergence scans (thm2, thm3*, thm10, thm12, eq61)", 900.0,
                   [&](std::string& d) {
        const std::vector<int64_t> xs{100'000, 1'000'000, 10'000'000, 100'000'000};
        struct Scan {
            const char* name;
            YRule rule;
            std::function<double(int64_t, int64_t, int64_t, const CountVector&)> predict;
        };
        auto pthm11 = [&](int64_t x, int64_t y, int64_t k, const CountVector& cv) {
            return predict_thm11(x, y, k, [&](double r) { return sum_sz(cv, cplx(r, 0.0)); },
                                 ctx)
                .real();
        };
        const std::vector<Scan> scans{
            {"thm2", {YRuleKind::ratio, 30.0},
             [&](int64_t x, int64_t y, int64_t k, const CountVector&) {
                 return predict_thm2(x, y, k, ctx).real();
             }},
            {"thm3star", {YRuleKind::power, 4.0},
             [&](int64_t x, int64_t y, int64_t k, const CountVector&) {
                 return predict_thm3star(x, y, k, ctx).real();
             }},
            {"thm10", {YRuleKind::power, 4.0},
             [&](int64_t x, int64_t y, int64_t k, const CountVector&) {
                 return predict_thm10(x, y, k, ctx).real();
             }},
            {"thm12", {YRuleKind::power, 4.0},
             [&](int64_t x, int64_t y, int64_t k, const CountVector&) {
                 return predict_thm12(x, y, k, ctx).real();
             }},
            {"eq61", {YRuleKind::fixed, 1000.0}, pthm11},
        };
        bool all_ok = true;
        std::string worst_note;
        for (const auto& scan : scans) {
            for (int64_t k = 1; k <= 4; ++k) {
                std::vector<double> errs;
                for (int64_t x : xs) {
                    const int64_t y = scan.rule.derive(x);
                    const CountVector& cv = sieves.get(x, y);
                    const double exact = double(cv.at(k));
                    const double pred = scan.predict(x, y, k, cv);
                    errs.push_back(std::abs(pred - exact) / std::max(exact, 1.0));
                }
                int good_steps = 1; // the first x has no predecessor
                for (size_t i = 1; i < errs.size(); ++i)
                    if (errs[i] <= errs[i - 1] + 1e-12) ++good_steps;
                const bool final_ok = errs.back() < 0.30;
                const bool trend_ok = good_steps >= 3;
                std::printf("  scan %-8s k=%lld err: %.3f %.3f %.3f %.3f %s\n", scan.name,
                            (long long)k, errs[0], errs[1], errs[2], errs[3],
                            (final_ok && trend_ok) ? "ok" : "<-- FAIL");
                if (!(final_ok && trend_ok)) {
                    all_ok = false;
                    worst_note = std::string(scan.name) + " k=" + std::to_string(k) +
                                 " final=" + fmt(errs.back()) +
                                 " good_steps=" + std::to_string(good_steps);
                }
            }
        }
        // thm11 with exact S_r input: < 10% for x >= 1e6, y in {1e3, 1e4}, 1 <= k <= 4
        double worst11 = 0.0;
        for (int64_t x : {int64_t(1'000'000), int64_t(10'000'000), int64_t(100'000'000)})
            for (int64_t y : {int64_t(1000), int64_t(10'000)})
                for (int64_t k = 1; k <= 4; ++k) {
                    const CountVector& cv = sieves.get(x, y);
                    const double exact = double(cv.at(k));
                    const double pred = pthm11(x, y, k, cv);
                    worst11 = std::max(worst11, std::abs(pred - exact) / exact);
                }
        std::printf("  thm11 exact-S worst rel err over x>=1e6, y in {1e3,1e4}, k<=4: %.4f\n",
                    worst11);
        if (worst11 >= 0.10) {
            all_ok = false;
            worst_note += " thm11_worst=" + fmt(worst11);
        }
        d = all_ok ? "all scans within tolerance" : worst_note;
        return all_ok;
    });

    // 8 ------------------------------------------------------------------
    gate.criterion(8, "phenomenon reproduction at x=1e8 with the c=12 rule", 600.0, [&](std::string& d) {
        // the report itself comes from the phenomenon command
        if (const char* bin = std::getenv("SPF_CLI_BIN")) {
            const std::string cmd = std::string(bin) +
                                    " phenomenon --x 100000000 --c 12 --k-max 3 2>/dev/null";
            if (FILE* pipe = popen(cmd.c_str(), "r")) {
                char buf[512];
                std::printf("  cmd_phenomenon output:\n");
                while (std::fgets(buf, sizeof buf, pipe)) std::printf("    %s", buf);
                pclose(pipe);
            }
        }
        auto rep = run_phenomenon(100'000'000, 12.0, table, 3);
        const auto& row = rep.rows[1]; // k = 1
        const double r1 = row.ratio_next;
        const double r0 = row.ratio_same;
        d = "y=" + std::to_string(rep.y) + (rep.y_clamped ? " (clamped)" : "") +
            ", N1(x,y)/N2(x,x)=" + fmt(r1) + ", N1(x,y)/N1(x,x)=" + fmt(r0);
        const bool window_ok = r1 >= 0.1 && r1 <= 10.0;
        const bool separation_ok = r1 > 10.0 * r0;
        return window_ok && separation_ok;
    });

    // supplementary demonstrations at desk-scale parameters (not criteria)
    {
        auto rep = run_phenomenon(100'000'000, 2.746, table, 3);
        const auto& row = rep.rows[1];
        std::printf("info: phenomenon demo at c=2.746 (y=%lld): N1(x,y)/N2(x,x)=%.3f in "
                    "[0.2,5]=%s, N1(x,y)/N1(x,x)=%.3f leaves [0.2,5]=%s\n",
                    (long long)rep.y, row.ratio_next,
                    (row.ratio_next >= 0.2 && row.ratio_next <= 5.0) ? "yes" : "no",
                    row.ratio_same,
                    (row.ratio_same > 5.0 || row.ratio_same < 0.2) ? "yes" : "no");
    }
    {
        const int64_t x = 100'000'000, y = x / 6;
        const CountVector& cv = sieves.get(x, y);
        const double pred = predict_lemma4(x, y, ctx).real();
        std::printf("info: lemma4 at (1e8, 1e8/6): exact N_1=%lld pred=%.0f rel err=%.4f\n",
                    (long long)cv.at(1), pred,
                    std::abs(pred - double(cv.at(1))) / double(cv.at(1)));
    }
    {
        const CountVector& cv = sieves.get(100'000'000, 10'000);
        const double s2 = double(sum_sz_exact(cv, 2));
        const double pred = predict_sum_large_y(100'000'000, 10'000, cplx(2.0, 0.0), ctx).real();
        std::printf("info: sum_large_y at (1e8, 1e4, z=2): exact S_2=%.6g pred=%.6g rel err=%.4f\n",
                    s2, pred, std::abs(pred - s2) / s2);
    }
    {
        // extraction through the small-y product estimate at (1e8, 30)
        const CountVector& cv = sieves.get(100'000'000, 30);
        double worst = 0.0;
        for (int k = 0; k <= 4; ++k) {
            auto res = extract_counts(
                ContourSpec{radius_policy(k, 30), 64, k},
                [&](cplx z) { return predict_sum_small_y(100'000'000, 30, z, ctx).value; });
            worst = std::max(worst, std::abs(res.extracted[size_t(k)] - double(cv.at(k))) /
                                        double(cv.at(k)));
        }
        std::printf("info: contour profile from the product estimate at (1e8, 30), k<=4: "
                    "worst rel err=%.4f (15%% window)\n", worst);
    }

    // 9 ------------------------------------------------------------------
    // grids for the two thm12 radii are built ahead (the stated budget
    // for the comparison itself is 1 s "given grids")
    for (int64_t k : {2, 3})
        ctx.mgrids.get(cplx(double(k) / loglog(1e8), 0.0), 3.0);
    gate.criterion(9, "thm12 at y=x agrees with selberg within 2% (x=1e8, k in {2,3})", 1.0,
                   [&](std::string& d) {
        double worst = 0.0;
        for (int64_t k : {2, 3}) {
            const double a = predict_thm12(100'000'000, 100'000'000, k, ctx).real();
            const double b = predict_selberg(100'000'000, k, ctx).real();
            const double dev = std::abs(a - b) / b;
            std::printf("  k=%lld thm12=%.6g selberg=%.6g deviation=%.4f\n", (long long)k, a,
                        b, dev);
            worst = std::max(worst, dev);
        }
        d = "worst deviation " + fmt(worst);
        return worst <= 0.02;
    });

    std::printf("%d of 9 criteria failed\n", gate.failures);
    return gate.failures;
}
