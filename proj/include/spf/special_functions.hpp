#pragma once
#include <map>
#include <memory>
#include <mutex>

#include "spf/common.hpp"
#include "spf/delay_de.hpp"
#include "spf/euler_products.hpp"
#include "spf/gamma.hpp"
#include "spf/grid_function.hpp"
#include "spf/prime_table.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Solutions of the shared delay family with accurate evaluation everywhere:
// grid interpolation in the smooth interior, closed forms in the algebraic
// zones [1, 1+eps] and (2, 2+eps] where interpolation would shed accuracy.
// -----------------------------------------------------------------------------
class DelaySolution {
public:
    DelaySolution(DelayKernel kernel, double alpha_max, double residual_tol = 1e-7)
        : kernel_(kernel), junction_(detail::build_junction_series(kernel))
    {
        if (kernel_.has_singular_seed()) seed_coeffs_ = kernel_series_coeffs(kernel_.zpar);
        DelayMarcher m(kernel_, alpha_max);
        residual_ = m.max_dde_residual();
        if (!(residual_ <= residual_tol))
            throw std::runtime_error("delay DE residual check failed: " +
                                     std::to_string(residual_));
        grid_ = m.take_grid();
        f2_ = grid_(2.0);
    }

    const GridFunction& grid() const { return grid_; }
    const DelayKernel& kernel() const { return kernel_; }
    double residual() const { return residual_; }
    double alpha_end() const { return grid_.end(); }

    cplx operator()(double a) const
    {
        if (a < 1.0 || a > grid_.end() + 1e-9)
            throw domain_error("DelaySolution: argument outside [1, alpha_max]");
        if (a <= 1.0 + kernel_eps) return seed_value(a);
        if (a > 2.0 && a <= 2.0 + junction_eps) {
            const cplx p = kernel_.p();
            return upow(2.0 / a, p) * f2_ +
                   kernel_.q * upow(a, -p) * junction_.eval(a - 2.0);
        }
        return grid_(std::min(a, grid_.end()));
    }

    // closed form on [1, 2] (the seed itself)
    cplx seed_value(double a) const
    {
        cplx v = kernel_.amp * upow(a, kernel_.zpar - 1.0);
        if (kernel_.has_singular_seed()) {
            const double s = a - 1.0;
            cplx I = (s <= kernel_eps)
                ? eval_singular_series(seed_coeffs_, kernel_.zpar, s)
                : singular_kernel_integral(kernel_.zpar, a);
            v *= cplx(1.0) + kernel_.jcoef * I;
        }
        return v;
    }

private:
    DelayKernel kernel_;
    detail::JunctionSeries junction_;
    PowerSeries seed_coeffs_;
    GridFunction grid_;
    cplx f2_{0.0, 0.0};
    double residual_ = 0.0;
};

// -----------------------------------------------------------------------------
// Buchstab w: w = 1/alpha on [1,2], (alpha w)' = w(alpha-1) beyond.
// -----------------------------------------------------------------------------
class BuchstabFunction {
public:
    explicit BuchstabFunction(double alpha_max = 64.0)
        : sol_(DelayKernel{/*zpar*/ {0.0, 0.0}, /*q*/ {1.0, 0.0}, /*amp*/ {1.0, 0.0},
                           /*jcoef*/ {0.0, 0.0}},
               alpha_max)
    {
    }

    double operator()(double alpha) const
    {
        if (alpha < 1.0) throw domain_error("buchstab_w: alpha >= 1 required");
        if (alpha <= 2.0) return 1.0 / alpha;
        return sol_(alpha).real();
    }

    const GridFunction& grid() const { return sol_.grid(); }
    double residual() const { return sol_.residual(); }
    double alpha_end() const { return sol_.alpha_end(); }

private:
    DelaySolution sol_;
};

// Shared read-only instance for casual callers (CLI, predictors default).
inline const BuchstabFunction& buchstab_table()
{
    static const BuchstabFunction w(64.0);
    return w;
}

inline double buchstab_w(double alpha) { return buchstab_table()(alpha); }

// -----------------------------------------------------------------------------
// Generalized Dickman rho_r: u^{r-1}/Gamma(r) on (0,1],
// u rho' + (1-r) rho + r rho(u-1) = 0 beyond.
// -----------------------------------------------------------------------------
class DickmanRho {
public:
    DickmanRho(double r, double u_max = 48.0)
        : r_(checked_r(r)),
          recip_gamma_r_(recip_gamma(cplx(r, 0.0)).real()),
          sol_(DelayKernel{/*zpar*/ {r, 0.0}, /*q*/ {-r, 0.0},
                           /*amp*/ {recip_gamma(cplx(r, 0.0)).real(), 0.0},
                           /*jcoef*/ {-r, 0.0}},
               u_max)
    {
    }

    double r() const { return r_; }
    double u_end() const { return sol_.alpha_end(); }
    const GridFunction& grid() const { return sol_.grid(); }
    double residual() const { return sol_.residual(); }

    double operator()(double u) const
    {
        if (!(u > 0.0)) throw domain_error("rho_r: u > 0 required");
        if (u <= 1.0) return std::pow(u, r_ - 1.0) * recip_gamma_r_;
        return sol_(u).real();
    }

    // int_0^cutoff rho_r, the (0,1] singular part integrated in closed form.
    double integral(double cutoff) const
    {
        if (!(cutoff > 0.0)) throw domain_error("rho_r integral: cutoff > 0 required");
        const double head_end = std::min(cutoff, 1.0);
        double total = std::pow(head_end, r_) * recip_gamma_r_ / r_; // = c^r / Gamma(r+1)
        if (cutoff <= 1.0) return total;
        if (cutoff > u_end() + 1e-9)
            throw domain_error("rho_r integral: cutoff beyond tabulated range");
        // composite Simpson over grid nodes on [1, cutoff]
        const auto& g = sol_.grid();
        const double h = g.step();
        const size_t i1 = static_cast<size_t>(std::llround((1.0 - g.start()) / h));
        size_t i_hi = i1 + static_cast<size_t>(std::floor((cutoff - 1.0) / h + 1e-12));
        if ((i_hi - i1) % 2 == 1) --i_hi;
        for (size_t i = i1; i + 2 <= i_hi; i += 2) {
            total += h / 3.0 *
                     (g.node_value(i).real() + 4.0 * g.node_value(i + 1).real() +
                      g.node_value(i + 2).real());
        }
        const double tail_from = g.start() + h * static_cast<double>(i_hi);
        if (cutoff > tail_from) {
            total += adaptive_simpson([&](double u) { return sol_(u); }, tail_from, cutoff,
                                      1e-12)
                         .real();
        }
        return total;
    }

private:
    static double checked_r(double r)
    {
        if (!(r > 0.0)) throw domain_error("DickmanRho: r > 0 required");
        return r;
    }

    double r_;
    double recip_gamma_r_;
    DelaySolution sol_;
};

// Convenience one-shot evaluations with a small instance cache.
namespace detail {
inline const DickmanRho& rho_cache_get(double r, double u_max)
{
    static std::mutex mu;
    static std::map<std::pair<double, double>, std::unique_ptr<DickmanRho>> cache;
    std::lock_guard<std::mutex> lock(mu);
    double cap = std::max(8.0, std::ceil(u_max / 8.0) * 8.0);
    auto key = std::make_pair(r, cap);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<DickmanRho>(r, cap)).first;
    return *it->second;
}
} // namespace detail

inline double rho_r(double u, double r)
{
    if (!(u > 0.0) || !(r > 0.0)) throw domain_error("rho_r: u > 0 and r > 0 required");
    if (u <= 1.0) return std::pow(u, r - 1.0) * recip_gamma(cplx(r, 0.0)).real();
    return detail::rho_cache_get(r, u)(u);
}

inline double rho_r_integral(double r, double cutoff)
{
    if (!(r > 0.0)) throw domain_error("rho_r_integral: r > 0 required");
    if (cutoff <= 1.0) return std::pow(cutoff, r) * recip_gamma(cplx(r, 0.0)).real() / r;
    return detail::rho_cache_get(r, cutoff).integral(cutoff);
}

// -----------------------------------------------------------------------------
// m_z(alpha): singularity-split closed form on [1,2], delay equation beyond.
// Defined for Re(z) > 0.
// -----------------------------------------------------------------------------
inline DelayKernel m_kernel(cplx z, const PrimeTable& table)
{
    if (!(z.real() > 0.0)) throw domain_error("m_z: Re(z) > 0 required");
    return DelayKernel{/*zpar*/ z, /*q*/ cplx(1.0) - z,
                       /*amp*/ selberg_s(z, table), /*jcoef*/ cplx(1.0) - z};
}

// m_z on [1,2] by the singularity-split quadrature; no grid construction.
inline cplx m_z_closed(double alpha, cplx z, const PrimeTable& table)
{
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw domain_error("m_z_closed: alpha in [1,2] required");
    if (!(z.real() > 0.0)) throw domain_error("m_z_closed: Re(z) > 0 required");
    const cplx s = selberg_s(z, table);
    return s * upow(alpha, z - 1.0) *
           (cplx(1.0) + (cplx(1.0) - z) * singular_kernel_integral(z, alpha));
}

class MFunction {
public:
    MFunction(cplx z, double alpha_max, const PrimeTable& table)
        : z_(z), sol_(m_kernel(z, table), checked_alpha_max(alpha_max))
    {
    }

    cplx z() const { return z_; }
    cplx operator()(double alpha) const { return sol_(alpha); }
    cplx closed(double alpha) const { return sol_.seed_value(alpha); }
    const GridFunction& grid() const { return sol_.grid(); }
    double residual() const { return sol_.residual(); }
    double alpha_end() const { return sol_.alpha_end(); }

private:
    static double checked_alpha_max(double alpha_max)
    {
        if (alpha_max > 100.0) throw domain_error("MFunction: alpha_max <= 100 required");
        return std::max(alpha_max, 3.0);
    }

    cplx z_;
    DelaySolution sol_;
};

// Spec-shaped constructor: grid on [1, alpha_max] seeded by the closed form.
inline MFunction m_z_grid(cplx z, double alpha_max, const PrimeTable& table)
{
    return MFunction(z, alpha_max, table);
}

// -----------------------------------------------------------------------------
// The convolution route:
//   m_r(alpha) = C(r) ( int_0^{alpha-1} w(alpha - t) rho_r(t) dt + rho_r(alpha) ),
//   C(r) = selberg_g(r).
// The t -> 0 endpoint is handled by product integration against t^{r-1}
// (degree-5 polynomial fit of w(alpha - t)); the rho kink at t = 1 and the
// w kinks at alpha - t = 2, 3, ... become quadrature knots.
// -----------------------------------------------------------------------------
namespace detail {

// int_0^d P(t) t^{r-1} dt where P interpolates f at 6 equispaced nodes on [0,d].
template <typename F>
double product_integral_power_head(F&& f, double r, double d)
{
    constexpr int n = 6;
    double nodes[n], fv[n];
    for (int i = 0; i < n; ++i) {
        nodes[i] = d * double(i) / double(n - 1);
        fv[i] = f(nodes[i]);
    }
    // monomial coefficients of the Lagrange interpolant
    double coef[n] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
        double li[n] = {1, 0, 0, 0, 0, 0}; // polynomial, grows degree as we multiply
        double denom = 1.0;
        int deg = 0;
        for (int m = 0; m < n; ++m) {
            if (m == i) continue;
            denom *= nodes[i] - nodes[m];
            for (int j = deg; j >= 0; --j) {
                li[j + 1] += li[j];
                li[j] *= -nodes[m];
            }
            ++deg;
        }
        for (int j = 0; j < n; ++j) coef[j] += fv[i] * li[j] / denom;
    }
    double total = 0.0;
    double dp = std::pow(d, r);
    for (int j = 0; j < n; ++j) {
        total += coef[j] * dp / (r + double(j));
        dp *= d;
    }
    return total;
}

} // namespace detail

inline double m_r_convolution(double alpha, double r, const DickmanRho& rho,
                              const BuchstabFunction& w, double C_r)
{
    if (!(alpha >= 1.0)) throw domain_error("m_r_convolution: alpha >= 1 required");
    if (!(r > 0.0)) throw domain_error("m_r_convolution: r > 0 required");
    const double T = alpha - 1.0;
    const double rg = recip_gamma(cplx(r, 0.0)).real();
    double integral = 0.0;
    if (T > 0.0) {
        const double head = std::min(0.125, T);
        integral += rg * detail::product_integral_power_head(
                             [&](double t) { return w(alpha - t); }, r, head);
        if (T > head) {
            // knots: rho kinks at integer t, w kinks at alpha - t integer
            std::vector<double> knots{head};
            for (double t = 1.0; t < T; t += 1.0) knots.push_back(t);
            for (double a = 2.0; a < alpha - head; a += 1.0)
                if (alpha - a > head && alpha - a < T) knots.push_back(alpha - a);
            knots.push_back(T);
            std::sort(knots.begin(), knots.end());
            for (size_t i = 0; i + 1 < knots.size(); ++i) {
                if (knots[i + 1] - knots[i] < 1e-14) continue;
                integral += adaptive_simpson(
                                [&](double t) { return cplx(w(alpha - t) * rho(t), 0.0); },
                                knots[i], knots[i + 1], 1e-11)
                                .real();
            }
        }
    }
    return C_r * (integral + rho(alpha));
}

inline double m_r_convolution(double alpha, double r, const PrimeTable& table)
{
    const DickmanRho& rho = detail::rho_cache_get(r, std::max(alpha, 8.0));
    const double C_r = selberg_g(cplx(r, 0.0), table).value.real();
    return m_r_convolution(alpha, r, rho, buchstab_table(), C_r);
}

} // namespace spf
