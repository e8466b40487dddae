#pragma once
#include <cmath>
#include <complex>

#include "spf/common.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Complex Gamma function, Lanczos approximation (g = 7, 9 coefficients) with
// reflection for Re(z) < 0.5. Good to ~13 significant digits on |z| <= 10.
// Poles at the nonpositive integers: gamma() returns inf there, recip_gamma()
// is entire and returns exactly 0.
// -----------------------------------------------------------------------------

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline cplx lanczos_core(cplx z)
{
    // valid for Re(z) >= 0.5
    z -= 1.0;
    cplx x = lanczos_coef[0];
    for (int i = 1; i < 9; ++i) x += lanczos_coef[i] / (z + cplx(double(i), 0.0));
    const cplx t = z + (lanczos_g + 0.5);
    const double sqrt_2pi = 2.5066282746310002;
    return sqrt_2pi * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace detail

inline bool is_gamma_pole(cplx z, double tol = 1e-14)
{
    return z.imag() == 0.0 && z.real() <= 0.5 &&
           std::abs(z.real() - std::round(z.real())) <= tol;
}

inline cplx complex_gamma(cplx z)
{
    const double pi = 3.141592653589793238462643383279502884;
    if (is_gamma_pole(z))
        return cplx(std::numeric_limits<double>::infinity(), 0.0);
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    return detail::lanczos_core(z);
}

// 1/Gamma(z), entire; maps poles of Gamma to exact zeros.
inline cplx recip_gamma(cplx z)
{
    const double pi = 3.141592653589793238462643383279502884;
    if (is_gamma_pole(z)) return cplx(0.0, 0.0);
    if (z.real() < 0.5)
        return std::sin(pi * z) * complex_gamma(1.0 - z) / pi;
    return 1.0 / detail::lanczos_core(z);
}

} // namespace spf
