#pragma once
#include <cmath>
#include <vector>

#include "spf/common.hpp"
#include "spf/grid_function.hpp"
#include "spf/quadrature.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Shared delay-differential-equation engine.
//
// All three special functions solve the same family
//
//     (alpha^p f(alpha))' = q * alpha^{p-1} * f(alpha - 1),   alpha >= 2,
//
// with p = 1 - zpar and a closed-form seed on [1, 2]:
//
//     f(alpha) = amp * alpha^{zpar-1} * (1 + jcoef * I(alpha)),
//     I(alpha) = int_1^alpha u^{-zpar} (u-1)^{zpar-1} du.
//
//   Buchstab w :  zpar = 0,  q = 1,    amp = 1,          jcoef = 0
//   m_z        :  zpar = z,  q = 1-z,  amp = g(1,z)/G(z), jcoef = 1-z
//   rho_r      :  zpar = r,  q = -r,   amp = 1/Gamma(r),  jcoef = -r
//   (rho's (0,1] branch u^{r-1}/Gamma(r) is handled by the caller; the [1,2]
//    closed form above is what the delay equation produces from that seed.)
//
// Marching integrates the exact update
//     f(t2) = (t1/t2)^p f(t1) + q t2^{-p} int_{t1}^{t2} u^{p-1} f(u-1) du
// step by step on a uniform grid (step 2^-10, junctions land on nodes).
// The step integral uses 4-point Gauss-Legendre except on [2, 2+eps], where
// the integrand carries a (u-2)^zpar term inherited from the seed's algebraic
// endpoint; there the integral is taken from an explicit antiderivative
// series so no accuracy is lost at the junction. Delayed values come from
// the seed closed form on [1,2], from the junction series on (2, 2+eps], and
// from cubic grid interpolation beyond.
// -----------------------------------------------------------------------------

struct DelayKernel {
    cplx zpar{0.0, 0.0};
    cplx q{1.0, 0.0};
    cplx amp{1.0, 0.0};
    cplx jcoef{0.0, 0.0};

    cplx p() const { return cplx(1.0, 0.0) - zpar; }

    bool has_singular_seed() const { return jcoef != cplx(0.0, 0.0); }

    // seed closed form, alpha in [1, 2]
    cplx seed(double alpha) const
    {
        cplx v = amp * upow(alpha, zpar - 1.0);
        if (has_singular_seed())
            v *= (cplx(1.0) + jcoef * singular_kernel_integral(zpar, alpha));
        return v;
    }
};

inline constexpr double delay_de_step = 0.0009765625; // 2^-10
inline constexpr double junction_eps = 0.25;          // series zone after alpha = 2

namespace detail {

// Antiderivative of the marching integrand on [2, 2+eps]:
//   Fj(s) = int_0^s (2+t)^{p-1} f_seed(1+t) dt = analytic(s) + s^{zpar+1}*sing(s)
struct JunctionSeries {
    PowerSeries analytic_int;  // coefficients of s^{i+1}
    PowerSeries singular_int;  // multiplies s^{zpar+1+k}
    cplx zpar;
    bool has_singular = false;

    cplx eval(double s) const
    {
        if (s <= 0.0) return 0.0;
        cplx v = 0.0;
        // analytic part: sum a_i s^{i+1}
        cplx acc = 0.0;
        for (size_t i = analytic_int.c.size(); i-- > 0;)
            acc = acc * s + analytic_int.c[i];
        v = acc * s;
        if (has_singular) {
            cplx sacc = 0.0;
            for (size_t i = singular_int.c.size(); i-- > 0;)
                sacc = sacc * s + singular_int.c[i];
            v += upow(s, zpar + 1.0) * sacc;
        }
        return v;
    }
};

inline JunctionSeries build_junction_series(const DelayKernel& k)
{
    JunctionSeries js;
    js.zpar = k.zpar;
    js.has_singular = k.has_singular_seed();
    // E(t) = (1 + t/2)^{p-1} (1 + t)^{zpar - 1}, with p - 1 = -zpar
    PowerSeries e = series_mul(binomial_series(-k.zpar, 0.5), binomial_series(k.zpar - 1.0, 1.0));
    const cplx front = k.amp * upow(2.0, k.p() - 1.0);
    // analytic integrand: front * E(t); antiderivative coeff a_i/(i+1)
    js.analytic_int.c.resize(e.c.size());
    for (size_t i = 0; i < e.c.size(); ++i)
        js.analytic_int.c[i] = front * e.c[i] / cplx(double(i + 1));
    if (js.has_singular) {
        // singular integrand: front * jcoef * E(t) * sum_j B_j t^{zpar+j},
        // B_j = binom(-zpar, j)/(zpar + j); antiderivative divides by zpar+k+1.
        PowerSeries b = kernel_series_coeffs(k.zpar);
        PowerSeries s = series_mul(e, b);
        js.singular_int.c.resize(s.c.size());
        for (size_t i = 0; i < s.c.size(); ++i)
            js.singular_int.c[i] =
                front * k.jcoef * s.c[i] / (k.zpar + cplx(double(i + 1)));
    }
    return js;
}

} // namespace detail

class DelayMarcher {
public:
    DelayMarcher(DelayKernel kernel, double alpha_max, double step = delay_de_step)
        : k_(kernel), h_(step)
    {
        if (!(alpha_max >= 2.0 + 2.0 * junction_eps))
            throw domain_error("DelayMarcher: alpha_max too small");
        // the unit delay and the junctions must land on grid nodes
        if (std::abs(1.0 / h_ - std::round(1.0 / h_)) > 1e-9)
            throw domain_error("DelayMarcher: 1/step must be an integer");
        n_ = static_cast<size_t>(std::ceil((alpha_max - 1.0) / h_ - 1e-9));
        js_ = detail::build_junction_series(k_);
        if (k_.has_singular_seed()) seed_series_ = kernel_series_coeffs(k_.zpar);
        march();
    }

    GridFunction take_grid() { return GridFunction(1.0, h_, std::move(values_)); }

    // max |finite-difference residual| of (alpha^p f)' = q alpha^{p-1} f(alpha-1),
    // measured away from the junction zones where the stencil would straddle a
    // kink of the solution (there the residual reflects the stencil, not f).
    double max_dde_residual() const
    {
        const cplx p = k_.p();
        const size_t i2 = index_of(2.0);
        double worst = 0.0;
        for (size_t i = i2 + 2; i + 2 < values_.size(); ++i) {
            const double a = pos(i);
            if (a < 2.0 + junction_eps + 2.0 * h_) continue;
            const double dist = std::abs(a - std::round(a));
            if (dist < 4.0 * h_ && std::round(a) >= 3.0) continue;
            auto G = [&](size_t j) { return upow(pos(j), p) * values_[j]; };
            const cplx d = (G(i - 2) - 8.0 * G(i - 1) + 8.0 * G(i + 1) - G(i + 2)) / (12.0 * h_);
            const cplx rhs = k_.q * upow(a, p - 1.0) * values_[i - (size_t)(1.0 / h_)];
            worst = std::max(worst, std::abs(d - rhs));
        }
        return worst;
    }

private:
    DelayKernel k_;
    double h_;
    size_t n_ = 0; // last node index; grid spans [1, 1 + n h]
    detail::JunctionSeries js_;
    PowerSeries seed_series_; // singular-kernel series, set when the seed has one
    std::vector<cplx> values_;
    std::vector<cplx> seed_kernel_integral_; // I(alpha) at seed nodes

    double pos(size_t i) const { return 1.0 + h_ * static_cast<double>(i); }
    size_t index_of(double alpha) const
    {
        return static_cast<size_t>(std::llround((alpha - 1.0) / h_));
    }

    // f on (2, 2+eps] via the junction antiderivative (exact update from 2).
    cplx junction_value(double alpha) const
    {
        const double s = alpha - 2.0;
        const cplx p = k_.p();
        return upow(2.0 / alpha, p) * values_[index_of(2.0)] +
               k_.q * upow(alpha, -p) * js_.eval(s);
    }

    cplx delayed(double t) const
    {
        if (t <= 2.0) {
            // seed: use the tabulated kernel integral at the node floor(t) and
            // bridge the remainder with Gauss-Legendre (cheap, smooth there).
            if (!k_.has_singular_seed())
                return k_.amp * upow(t, k_.zpar - 1.0);
            const size_t j = std::min(static_cast<size_t>((t - 1.0) / h_),
                                      seed_kernel_integral_.size() - 1);
            cplx I = seed_kernel_integral_[j];
            const double tj = pos(j);
            if (t > tj) {
                if (tj < 1.0 + junction_eps) {
                    // still inside the series zone: evaluate directly
                    I = kernel_series_value(t);
                } else {
                    I += gauss4([&](double u) { return upow(u, -k_.zpar) * upow(u - 1.0, k_.zpar - 1.0); },
                                tj, t);
                }
            }
            return k_.amp * upow(t, k_.zpar - 1.0) * (cplx(1.0) + k_.jcoef * I);
        }
        if (t <= 2.0 + junction_eps) return junction_value(t);
        return interp(t);
    }

    cplx kernel_series_value(double t) const
    {
        return eval_singular_series(seed_series_, k_.zpar, t - 1.0);
    }

    cplx interp(double t) const
    {
        const double u = (t - 1.0) / h_;
        auto j = static_cast<int64_t>(std::floor(u));
        const auto filled = static_cast<int64_t>(values_.size());
        int64_t j0 = j - 1;
        if (j0 < 0) j0 = 0;
        if (j0 > filled - 4) j0 = filled - 4;
        const double s = u - static_cast<double>(j0);
        cplx acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            double w = 1.0;
            for (int m = 0; m < 4; ++m)
                if (m != i) w *= (s - double(m)) / (double(i) - double(m));
            acc += w * values_[static_cast<size_t>(j0 + i)];
        }
        return acc;
    }

    void march()
    {
        const size_t i2 = index_of(2.0);
        const size_t ieps = index_of(2.0 + junction_eps);
        values_.reserve(n_ + 1);

        // seed nodes on [1, 2]; I(alpha) accumulated incrementally
        if (k_.has_singular_seed()) {
            seed_kernel_integral_.resize(i2 + 1);
            const size_t iser = index_of(1.0 + kernel_eps);
            for (size_t i = 0; i <= iser; ++i)
                seed_kernel_integral_[i] = kernel_series_value(pos(i));
            for (size_t i = iser + 1; i <= i2; ++i)
                seed_kernel_integral_[i] =
                    seed_kernel_integral_[i - 1] +
                    gauss4([&](double u) { return upow(u, -k_.zpar) * upow(u - 1.0, k_.zpar - 1.0); },
                           pos(i - 1), pos(i));
            for (size_t i = 0; i <= i2; ++i)
                values_.push_back(k_.amp * upow(pos(i), k_.zpar - 1.0) *
                                  (cplx(1.0) + k_.jcoef * seed_kernel_integral_[i]));
        } else {
            for (size_t i = 0; i <= i2; ++i)
                values_.push_back(k_.amp * upow(pos(i), k_.zpar - 1.0));
        }

        const cplx p = k_.p();
        for (size_t i = i2; i < n_; ++i) {
            const double t1 = pos(i), t2 = pos(i + 1);
            cplx step_integral;
            if (i + 1 <= ieps) {
                step_integral = js_.eval(t2 - 2.0) - js_.eval(t1 - 2.0);
            } else {
                step_integral = gauss4(
                    [&](double u) { return upow(u, p - 1.0) * delayed(u - 1.0); }, t1, t2);
            }
            values_.push_back(upow(t1 / t2, p) * values_[i] +
                              k_.q * upow(t2, -p) * step_integral);
        }
    }
};

// Build a validated grid for the kernel; throws if the DDE residual check fails.
inline GridFunction march_delay_de(const DelayKernel& kernel, double alpha_max,
                                   double residual_tol = 1e-7, double step = delay_de_step)
{
    DelayMarcher m(kernel, alpha_max, step);
    const double res = m.max_dde_residual();
    if (!(res <= residual_tol))
        throw std::runtime_error("delay DE residual check failed: " + std::to_string(res));
    return m.take_grid();
}

} // namespace spf
