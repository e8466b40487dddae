#pragma once
#include <cmath>
#include <functional>
#include <vector>

#include "spf/common.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Quadrature and power-series helpers shared by the special-function code.
// -----------------------------------------------------------------------------

// 4-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double gl4_node[4] = {
    -0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
inline constexpr double gl4_weight[4] = {
    0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

template <typename F>
cplx gauss4(F&& f, double a, double b)
{
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += gl4_weight[i] * f(mid + half * gl4_node[i]);
    return s * half;
}

namespace detail {

template <typename F>
cplx adaptive_simpson_rec(F& f, double a, double b, cplx fa, cplx fm, cplx fb,
                          cplx whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol)
        return sum + (sum - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

} // namespace detail

// Adaptive Simpson; handles integrable endpoint behavior by subdivision.
template <typename F>
cplx adaptive_simpson(F&& f, double a, double b, double tol = 1e-12, int max_depth = 48)
{
    if (a == b) return 0.0;
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// -----------------------------------------------------------------------------
// Truncated power series with complex coefficients, c[0] + c[1] s + ...
// -----------------------------------------------------------------------------
struct PowerSeries {
    std::vector<cplx> c;

    cplx eval(double s) const
    {
        cplx acc = 0.0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
        return acc;
    }
};

inline constexpr int series_terms = 36;

// Coefficients of (1 + lambda s)^a, j-th term binom(a, j) lambda^j.
inline PowerSeries binomial_series(cplx a, double lambda, int n = series_terms)
{
    PowerSeries ps;
    ps.c.resize(static_cast<size_t>(n));
    cplx coef = 1.0;
    for (int j = 0; j < n; ++j) {
        ps.c[static_cast<size_t>(j)] = coef;
        coef *= (a - cplx(double(j))) / cplx(double(j + 1)) * lambda;
    }
    return ps;
}

inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b, int n = series_terms)
{
    PowerSeries out;
    out.c.assign(static_cast<size_t>(n), 0.0);
    for (size_t i = 0; i < a.c.size() && i < static_cast<size_t>(n); ++i)
        for (size_t j = 0; j < b.c.size() && i + j < static_cast<size_t>(n); ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

inline PowerSeries series_scale(PowerSeries a, cplx s)
{
    for (auto& v : a.c) v *= s;
    return a;
}

// -----------------------------------------------------------------------------
// Singular kernel integral I(z, alpha) = int_1^alpha u^{-z} (u-1)^{z-1} du,
// Re(z) > 0. The (u-1)^{z-1} endpoint is integrated analytically on
// [1, 1+eps] via the binomial expansion of (1+t)^{-z}:
//   int_0^s (1+t)^{-z} t^{z-1} dt = sum_j binom(-z, j) s^{z+j} / (z+j),
// and numerically beyond. Also valid (and used) for z = r in the rho_r seed.
// -----------------------------------------------------------------------------
inline constexpr double kernel_eps = 0.25;

// Series F with F(s) = sum_j binom(-z,j) s^{z+j}/(z+j); we store the coefficient list.
inline PowerSeries kernel_series_coeffs(cplx z, int n = series_terms)
{
    PowerSeries bin = binomial_series(-z, 1.0, n);
    for (int j = 0; j < n; ++j) bin.c[static_cast<size_t>(j)] /= (z + cplx(double(j)));
    return bin;
}

// Evaluate sum_j coef[j] s^{z+j} = s^z * sum_j coef[j] s^j.
inline cplx eval_singular_series(const PowerSeries& coef, cplx z, double s)
{
    if (s <= 0.0) return 0.0;
    return upow(s, z) * coef.eval(s);
}

inline cplx singular_kernel_integral(cplx z, double alpha, double tol = 1e-13)
{
    if (!(z.real() > 0.0))
        throw domain_error("singular_kernel_integral: Re(z) > 0 required");
    if (alpha < 1.0) throw domain_error("singular_kernel_integral: alpha >= 1 required");
    if (alpha == 1.0) return 0.0;
    const double s_end = std::min(alpha - 1.0, kernel_eps);
    const PowerSeries coef = kernel_series_coeffs(z);
    cplx total = eval_singular_series(coef, z, s_end);
    if (alpha - 1.0 > kernel_eps) {
        auto f = [&](double u) { return upow(u, -z) * upow(u - 1.0, z - 1.0); };
        total += adaptive_simpson(f, 1.0 + kernel_eps, alpha, tol);
    }
    return total;
}

} // namespace spf
