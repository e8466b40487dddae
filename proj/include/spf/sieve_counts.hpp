#pragma once
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spf/common.hpp"
#include "spf/prime_table.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Exact sieve-side quantities: omega_y(n), the histogram N_k(x,y), the power
// sums S_z(x,y), the squarefree variant N_k*(x), prime(-power) sums, and the
// exact Buchstab identity residual.
//
// Everywhere "p < y" is strict. 0^0 := 1 so that S_0(x,y) = Phi(x,y).
// -----------------------------------------------------------------------------

struct OmegaTable {
    int64_t x = 0;
    int64_t y = 0;
    std::vector<uint8_t> omega; // omega[n-1] = omega_y(n), n in [1, x]

    int omega_of(int64_t n) const
    {
        if (n < 1 || n > x) throw domain_error("OmegaTable: n out of range");
        return omega[static_cast<size_t>(n - 1)];
    }
};

struct CountVector {
    int64_t x = 0;
    int64_t y = 0;
    std::vector<int64_t> counts; // counts[k] = N_k(x,y), k = 0..k_max

    int64_t at(int64_t k) const
    {
        if (k < 0) throw domain_error("CountVector: k < 0");
        return k < static_cast<int64_t>(counts.size()) ? counts[static_cast<size_t>(k)] : 0;
    }
    int k_max() const { return static_cast<int>(counts.size()) - 1; }
};

constexpr int64_t sieve_segment_length = int64_t(1) << 20;

namespace detail {

// Core segmented pass: for each segment [lo, hi) of [1, x] computes
// omega_y(n) (and squarefree flags when requested) and hands the segment to
// `consume`. Marking adds 1 per distinct prime p < y to every multiple:
// primes <= sqrt(x) walk their multiples directly, primes above sqrt(x) are
// reached by enumerating cofactors k (each n has at most one such factor,
// and k < p so the cofactor never contains p again).
template <typename Consume>
void sieve_omega_segments(int64_t x, int64_t y, const PrimeTable& table,
                          bool track_squarefree, Consume&& consume)
{
    if (x < 1) throw domain_error("sieve_omega_segments: x >= 1 required");
    if (y < 2) throw domain_error("sieve_omega_segments: y >= 2 required");
    const int64_t pmax = std::min(y - 1, x); // largest prime that can matter
    if (pmax >= 2 && table.bound() < pmax)
        throw domain_error("sieve_omega_segments: prime table too small");

    const auto& primes = table.primes();
    const int64_t root = isqrt64(x);
    size_t n_small = std::upper_bound(primes.begin(), primes.end(), std::min(root, pmax)) -
                     primes.begin();
    size_t large_end = std::upper_bound(primes.begin(), primes.end(), pmax) - primes.begin();
    // squarefree flags need p^2 marks for all p <= root even when y is small
    size_t n_sq = track_squarefree
        ? static_cast<size_t>(std::upper_bound(primes.begin(), primes.end(), root) - primes.begin())
        : 0;
    if (track_squarefree && table.bound() < root)
        throw domain_error("sieve_omega_segments: prime table too small for squarefree flags");

    std::vector<uint8_t> omega;
    std::vector<uint8_t> sqfree;
    for (int64_t lo = 1; lo <= x; lo += sieve_segment_length) {
        const int64_t hi = std::min(x + 1, lo + sieve_segment_length); // exclusive
        const size_t len = static_cast<size_t>(hi - lo);
        omega.assign(len, 0);
        if (track_squarefree) sqfree.assign(len, 1);

        for (size_t i = 0; i < n_small; ++i) {
            const int64_t p = primes[i];
            int64_t first = std::max(p, ((lo + p - 1) / p) * p);
            for (int64_t m = first; m < hi; m += p) ++omega[static_cast<size_t>(m - lo)];
        }
        for (size_t i = 0; i < n_sq; ++i) {
            const int64_t p2 = primes[i] * primes[i];
            for (int64_t m = ((lo + p2 - 1) / p2) * p2; m < hi; m += p2)
                sqfree[static_cast<size_t>(m - lo)] = 0;
        }
        if (large_end > n_small) {
            const int64_t kmax = (hi - 1) / (root + 1);
            for (int64_t k = 1; k <= kmax; ++k) {
                int64_t plo = std::max(root + 1, (lo + k - 1) / k);
                int64_t phi_k = std::min(pmax, (hi - 1) / k);
                if (plo > phi_k) continue;
                auto it = std::lower_bound(primes.begin() + n_small, primes.begin() + large_end, plo);
                auto end = std::upper_bound(it, primes.begin() + large_end, phi_k);
                for (; it != end; ++it)
                    ++omega[static_cast<size_t>(k * *it - lo)];
            }
        }
        consume(lo, std::span<const uint8_t>(omega.data(), len),
                track_squarefree ? std::span<const uint8_t>(sqfree.data(), len)
                                 : std::span<const uint8_t>());
    }
}

} // namespace detail

// omega_y(n): number of distinct primes p < y dividing n, by trial division.
// Needs table.bound >= sqrt(n) (the undivided remainder is then prime).
inline int omega_y(int64_t n, int64_t y, const PrimeTable& table)
{
    if (n < 1) throw domain_error("omega_y: n >= 1 required");
    if (y < 2) throw domain_error("omega_y: y >= 2 required");
    if (table.bound() < isqrt64(n)) throw domain_error("omega_y: prime table too small");
    int count = 0;
    int64_t m = n;
    for (int64_t p : table.primes()) {
        if (p >= y || p * p > m) break;
        if (m % p == 0) {
            ++count;
            do m /= p; while (m % p == 0);
        }
    }
    if (m > 1 && m < y) ++count; // remainder is prime
    return count;
}

// Full omega table over [1, x]; memory is O(x), capped to keep usage honest.
inline OmegaTable build_omega_table(int64_t x, int64_t y, const PrimeTable& table)
{
    if (x > (int64_t(1) << 27))
        throw resource_error("build_omega_table: x above 2^27 — use count_nk instead");
    OmegaTable t;
    t.x = x;
    t.y = y;
    t.omega.resize(static_cast<size_t>(x));
    detail::sieve_omega_segments(x, y, table, false,
        [&](int64_t lo, std::span<const uint8_t> omega, std::span<const uint8_t>) {
            std::copy(omega.begin(), omega.end(), t.omega.begin() + (lo - 1));
        });
    return t;
}

// N_k(x,y) for k = 0..k_max, exactly, by the segmented sieve.
inline CountVector count_nk(int64_t x, int64_t y, const PrimeTable& table)
{
    CountVector cv;
    cv.x = x;
    cv.y = y;
    cv.counts.assign(1, 0);
    detail::sieve_omega_segments(x, y, table, false,
        [&](int64_t, std::span<const uint8_t> omega, std::span<const uint8_t>) {
            for (uint8_t w : omega) {
                if (w >= cv.counts.size()) cv.counts.resize(w + 1, 0);
                ++cv.counts[w];
            }
        });
    return cv;
}

// Histogram against a real threshold Y (primes p < Y).
inline CountVector count_nk_real_y(int64_t x, double Y, const PrimeTable& table)
{
    if (!(Y >= 2.0)) throw domain_error("count_nk_real_y: Y >= 2 required");
    const double fl = std::floor(Y);
    const int64_t y_int = (fl == Y) ? static_cast<int64_t>(Y)
                                    : static_cast<int64_t>(fl) + 1;
    return count_nk(x, std::max<int64_t>(y_int, 2), table);
}

// Number of squarefree n <= x with exactly k prime factors (omega = Omega = k).
inline int64_t count_nk_squarefree(int64_t x, int64_t k, const PrimeTable& table)
{
    if (x < 1) throw domain_error("count_nk_squarefree: x >= 1 required");
    if (k < 0) throw domain_error("count_nk_squarefree: k >= 0 required");
    int64_t total = 0;
    detail::sieve_omega_segments(x, x + 1, table, true,
        [&](int64_t, std::span<const uint8_t> omega, std::span<const uint8_t> sqfree) {
            for (size_t i = 0; i < omega.size(); ++i)
                if (sqfree[i] && omega[i] == k) ++total;
        });
    return total;
}

// S_z from an exact histogram: Horner evaluation from the highest k down.
inline cplx sum_sz(const CountVector& counts, cplx z)
{
    cplx acc = 0.0;
    for (int k = counts.k_max(); k >= 0; --k)
        acc = acc * z + static_cast<double>(counts.counts[static_cast<size_t>(k)]);
    return acc;
}

// Exact integer evaluation for integer z (the identity tests run in this mode).
inline int64_t sum_sz_exact(const CountVector& counts, int64_t z)
{
    __int128 acc = 0;
    const __int128 guard = __int128(1) << 62;
    for (int k = counts.k_max(); k >= 0; --k) {
        acc = acc * z + counts.counts[static_cast<size_t>(k)];
        if (acc > guard || acc < -guard)
            throw resource_error("sum_sz_exact: value exceeds exact 64-bit range");
    }
    return static_cast<int64_t>(acc);
}

inline cplx sum_sz(int64_t x, int64_t y, cplx z, const PrimeTable& table)
{
    return sum_sz(count_nk(x, y, table), z);
}

// -----------------------------------------------------------------------------
// Prime sums
// -----------------------------------------------------------------------------

// sum_{p<y} 1/p, ascending.
inline double mertens_sum(int64_t y, const PrimeTable& table)
{
    if (y < 3) throw domain_error("mertens_sum: y >= 3 required");
    if (table.bound() < y - 1) throw domain_error("mertens_sum: prime table too small");
    double s = 0.0;
    for (int64_t p : table.primes()) {
        if (p >= y) break;
        s += 1.0 / static_cast<double>(p);
    }
    return s;
}

// Enumerate products P = p_1^{e_1} ... p_k^{e_k} <= bound with distinct primes
// p_1 < ... < p_k and every e_j >= 1; calls visit(P) once per product.
// Feasibility cap: bound <= 10^7 and k <= 6.
inline void enumerate_prime_power_products(double bound, int k, const PrimeTable& table,
                                           const std::function<void(int64_t)>& visit)
{
    if (k < 1) throw domain_error("enumerate_prime_power_products: k >= 1 required");
    if (bound > 1.0e7 + 0.5 || k > 6)
        throw resource_error("enumerate_prime_power_products: ranges beyond bound 1e7 "
                             "or k > 6 are not supported; shrink beta/x or k");
    const int64_t ibound = static_cast<int64_t>(bound);
    if (ibound < 2) return;
    if (table.bound() < ibound)
        throw domain_error("enumerate_prime_power_products: prime table too small "
                           "(need bound >= " + std::to_string(ibound) + ")");
    const auto& primes = table.primes();

    std::function<void(size_t, int, int64_t)> rec = [&](size_t idx, int left, int64_t prod) {
        for (size_t i = idx; i < primes.size(); ++i) {
            const int64_t p = primes[i];
            // cheapest completion from here: p and the next left-1 primes, power 1 each
            __int128 cheapest = prod;
            for (int j = 0; j < left; ++j) {
                if (i + j >= primes.size()) { cheapest = __int128(ibound) + 1; break; }
                cheapest *= primes[i + j];
                if (cheapest > ibound) break;
            }
            if (cheapest > ibound) break;
            for (__int128 q = __int128(prod) * p; q <= ibound; q *= p) {
                if (left == 1) {
                    visit(static_cast<int64_t>(q));
                } else {
                    __int128 rest = q;
                    bool fits = true;
                    for (int j = 1; j < left; ++j) {
                        if (i + j >= primes.size()) { fits = false; break; }
                        rest *= primes[i + j];
                        if (rest > ibound) { fits = false; break; }
                    }
                    if (!fits) break; // larger exponents only make it worse
                    rec(i + 1, left - 1, static_cast<int64_t>(q));
                }
            }
        }
    };
    rec(0, k, 1);
}

// sum over products of k distinct-prime prime-powers P < x of log^l(P)/P.
inline double prime_power_log_sum(int64_t x, int k, int l, const PrimeTable& table)
{
    if (x < 2) throw domain_error("prime_power_log_sum: x >= 2 required");
    if (l < 0) throw domain_error("prime_power_log_sum: l >= 0 required");
    double total = 0.0;
    enumerate_prime_power_products(static_cast<double>(x) - 0.5, k, table, [&](int64_t P) {
        double lp = std::log(static_cast<double>(P));
        double t = 1.0;
        for (int i = 0; i < l; ++i) t *= lp;
        total += t / static_cast<double>(P);
    });
    return total;
}

// -----------------------------------------------------------------------------
// Buchstab identity: S_z(x,y) = S_z(x,y^h) + (1-z) sum_{y <= p < y^h} S_z(x/p, p),
// prime range half-open. Exact integer mode for integer z, floating point
// otherwise; returns |LHS - RHS|.
// -----------------------------------------------------------------------------
inline double buchstab_identity_residual(int64_t x, int64_t y, double h, cplx z,
                                         const PrimeTable& table)
{
    if (x < y || y < 2 || h < 1.0)
        throw domain_error("buchstab_identity_residual: need x >= y >= 2, h >= 1");
    const double yh = std::pow(static_cast<double>(y), h);
    const auto& primes = table.primes();
    auto first = std::lower_bound(primes.begin(), primes.end(), y);

    if (is_exact_integer(z)) {
        const int64_t zi = static_cast<int64_t>(z.real());
        const int64_t lhs = sum_sz_exact(count_nk(x, y, table), zi);
        __int128 rhs = sum_sz_exact(count_nk_real_y(x, yh, table), zi);
        __int128 tail = 0;
        for (auto it = first; it != primes.end(); ++it) {
            const int64_t p = *it;
            if (static_cast<double>(p) >= yh || p > x) break;
            tail += sum_sz_exact(count_nk(x / p, p, table), zi);
        }
        rhs += __int128(1 - zi) * tail;
        __int128 diff = rhs - lhs;
        if (diff < 0) diff = -diff;
        return static_cast<double>(diff);
    }

    const cplx lhs = sum_sz(count_nk(x, y, table), z);
    cplx rhs = sum_sz(count_nk_real_y(x, yh, table), z);
    cplx tail = 0.0;
    for (auto it = first; it != primes.end(); ++it) {
        const int64_t p = *it;
        if (static_cast<double>(p) >= yh || p > x) break;
        tail += sum_sz(count_nk(x / p, p, table), z);
    }
    rhs += (cplx(1.0) - z) * tail;
    return std::abs(lhs - rhs);
}

} // namespace spf
