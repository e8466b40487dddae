#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spf {

using cplx = std::complex<double>;

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286;

// Prime zeta values P(s) = sum_p p^-s, used for Euler-product tail corrections.
inline constexpr double prime_zeta_2 = 0.45224742004106550;
inline constexpr double prime_zeta_3 = 0.17476263929944354;

// Thrown when an argument is outside an operation's stated domain.
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Thrown when a request is valid but too large for the documented limits.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// u^z for real u > 0, principal branch: exp(z ln u).
inline cplx upow(double u, cplx z)
{
    if (!(u > 0.0)) throw domain_error("upow: base must be positive");
    return std::exp(z * std::log(u));
}

inline bool is_real(cplx z, double tol = 0.0)
{
    return std::abs(z.imag()) <= tol;
}

// z is an exact integer (both components representable without rounding).
inline bool is_exact_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() == std::floor(z.real()) &&
           std::abs(z.real()) < 9.0e15;
}

inline int64_t isqrt64(int64_t n)
{
    if (n < 0) throw domain_error("isqrt64: negative argument");
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline double loglog(double x)
{
    if (!(x > 1.0)) throw domain_error("loglog: need x > 1");
    return std::log(std::log(x));
}

} // namespace spf
