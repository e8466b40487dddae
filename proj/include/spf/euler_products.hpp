#pragma once
#include <cmath>

#include "spf/common.hpp"
#include "spf/gamma.hpp"
#include "spf/prime_table.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Euler products over primes, evaluated as log-sums over p < P with the
// p^-2 and p^-3 tails restored analytically from prime-zeta values. The
// remaining error is O(|coef| * P(4)) and is reported alongside the value.
// -----------------------------------------------------------------------------

struct ProductValue {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0; // estimate of the neglected tail magnitude

    operator cplx() const { return value; }
};

inline constexpr int64_t euler_product_default_limit = 1'000'000;
inline constexpr int64_t mertens_constant_limit = 10'000'000;

namespace detail {

struct PrimePowerSums {
    double s2 = 0.0; // sum_{p<=P} 1/p^2
    double s3 = 0.0; // sum_{p<=P} 1/p^3
};

inline PrimePowerSums partial_prime_zeta(const PrimeTable& table, int64_t P)
{
    PrimePowerSums s;
    for (int64_t p : table.primes()) {
        if (p > P) break;
        const double ip = 1.0 / static_cast<double>(p);
        s.s2 += ip * ip;
        s.s3 += ip * ip * ip;
    }
    return s;
}

} // namespace detail

// g(1,z) = prod_p (1 + z/(p-1)) (1 - 1/p)^z   (Selberg's product; also the
// C(r) normalization of the Buchstab-Dickman convolution identity).
// Vanishes exactly at z = -(p-1).
inline ProductValue selberg_g(cplx z, const PrimeTable& table,
                              int64_t P = euler_product_default_limit)
{
    P = std::min<int64_t>(P, table.bound());
    cplx log_sum = 0.0;
    for (int64_t p : table.primes()) {
        if (p > P) break;
        const double pd = static_cast<double>(p);
        const cplx factor = cplx(1.0) + z / cplx(pd - 1.0);
        if (factor == cplx(0.0)) return ProductValue{cplx(0.0), 0.0};
        log_sum += std::log(factor) + z * std::log1p(-1.0 / pd);
    }
    // tail of sum_{p>P} [ln(1 + z/(p-1)) + z ln(1-1/p)]
    //   = (z - z^2)/2 * S2 + (2z/3 - z^2 + z^3/3) * S3 + O(|z|^4 S4)
    const auto partial = detail::partial_prime_zeta(table, P);
    const double S2 = prime_zeta_2 - partial.s2;
    const double S3 = prime_zeta_3 - partial.s3;
    const cplx a2 = (z - z * z) / 2.0;
    const cplx a3 = 2.0 * z / 3.0 - z * z + z * z * z / 3.0;
    log_sum += a2 * S2 + a3 * S3;
    const double za = std::abs(z);
    const double pd = static_cast<double>(P);
    const double s4_tail = 1.0 / (3.0 * pd * pd * pd * std::log(pd));
    ProductValue out;
    out.value = std::exp(log_sum);
    out.tail_bound = std::abs(out.value) * (za + 1.0) * (za + 1.0) * (za + 1.0) * (za + 1.0) * s4_tail;
    return out;
}

// l(z) = e^{(z-1) gamma} prod_p (1 + (z-1)/p) (1 - 1/p)^{z-1}; the
// alpha -> infinity limit of m_z(alpha). Vanishes exactly at z = 1 - p.
inline ProductValue ell(cplx z, const PrimeTable& table,
                        int64_t P = euler_product_default_limit)
{
    P = std::min<int64_t>(P, table.bound());
    const cplx w = z - 1.0;
    cplx log_sum = w * euler_gamma;
    for (int64_t p : table.primes()) {
        if (p > P) break;
        const double pd = static_cast<double>(p);
        const cplx factor = cplx(1.0) + w / cplx(pd);
        if (factor == cplx(0.0)) return ProductValue{cplx(0.0), 0.0};
        log_sum += std::log(factor) + w * std::log1p(-1.0 / pd);
    }
    // tail of sum_{p>P} [ln(1 + w/p) + w ln(1-1/p)]
    //   = -(w^2 + w)/2 * S2 + (w^3 - w)/3 * S3 + O(|w|^4 S4)
    const auto partial = detail::partial_prime_zeta(table, P);
    const double S2 = prime_zeta_2 - partial.s2;
    const double S3 = prime_zeta_3 - partial.s3;
    log_sum += -(w * w + w) / 2.0 * S2 + (w * w * w - w) / 3.0 * S3;
    const double wa = std::abs(w);
    const double pd = static_cast<double>(P);
    const double s4_tail = 1.0 / (3.0 * pd * pd * pd * std::log(pd));
    ProductValue out;
    out.value = std::exp(log_sum);
    out.tail_bound = std::abs(out.value) * (wa + 1.0) * (wa + 1.0) * (wa + 1.0) * (wa + 1.0) * s4_tail;
    return out;
}

// s(z) = g(1,z)/Gamma(z), the alpha <= 1 normalization of m_z.
inline cplx selberg_s(cplx z, const PrimeTable& table,
                      int64_t P = euler_product_default_limit)
{
    return selberg_g(z, table, P).value * recip_gamma(z);
}

// Mertens constant c1 = lim (sum_{p<y} 1/p - loglog y), via the convergent
// series gamma + sum_p [ln(1 - 1/p) + 1/p] with analytic tail correction.
inline double mertens_constant(const PrimeTable& table,
                               int64_t P = mertens_constant_limit)
{
    P = std::min<int64_t>(P, table.bound());
    double sum = 0.0;
    for (int64_t p : table.primes()) {
        if (p > P) break;
        const double ip = 1.0 / static_cast<double>(p);
        sum += std::log1p(-ip) + ip;
    }
    const auto partial = detail::partial_prime_zeta(table, P);
    sum += -(prime_zeta_2 - partial.s2) / 2.0 - (prime_zeta_3 - partial.s3) / 3.0;
    return euler_gamma + sum;
}

} // namespace spf
