#pragma once
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spf/common.hpp"
#include "spf/euler_products.hpp"
#include "spf/gamma.hpp"
#include "spf/sieve_counts.hpp"
#include "spf/special_functions.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Every asymptotic main-term formula as an evaluable predictor. Predictions
// echo the shape parameters (alpha, beta, r) and carry a validity flag when
// the stated range of the underlying estimate is violated; the numeric value
// is always reported alongside the flag.
// -----------------------------------------------------------------------------

enum class PredictorId {
    landau,
    selberg,
    thm2,
    thm3,
    thm3star,
    cor2,
    thm10,
    thm11,
    thm12,
    lemma4,
    sum_small_y,
    sum_large_y,
    selberg_sum,
};

inline const char* predictor_name(PredictorId id)
{
    switch (id) {
        case PredictorId::landau: return "landau";
        case PredictorId::selberg: return "selberg";
        case PredictorId::thm2: return "thm2";
        case PredictorId::thm3: return "thm3";
        case PredictorId::thm3star: return "thm3star";
        case PredictorId::cor2: return "cor2";
        case PredictorId::thm10: return "thm10";
        case PredictorId::thm11: return "thm11";
        case PredictorId::thm12: return "thm12";
        case PredictorId::lemma4: return "lemma4";
        case PredictorId::sum_small_y: return "sum_small_y";
        case PredictorId::sum_large_y: return "sum_large_y";
        case PredictorId::selberg_sum: return "selberg_sum";
    }
    return "?";
}

inline PredictorId predictor_from_name(const std::string& s)
{
    for (PredictorId id :
         {PredictorId::landau, PredictorId::selberg, PredictorId::thm2, PredictorId::thm3,
          PredictorId::thm3star, PredictorId::cor2, PredictorId::thm10, PredictorId::thm11,
          PredictorId::thm12, PredictorId::lemma4, PredictorId::sum_small_y,
          PredictorId::sum_large_y, PredictorId::selberg_sum})
        if (s == predictor_name(id)) return id;
    throw domain_error("unknown predictor: " + s);
}

struct Prediction {
    PredictorId id{};
    cplx value{0.0, 0.0};
    bool valid = true;
    std::string note;
    double x = 0, y = 0, alpha = 0, beta = 0, r = 0;
    int64_t k = -1;
    std::vector<std::pair<std::string, double>> aux;

    double real() const { return value.real(); }
};

// Thread-safe cache of m_z grids keyed by z; grids grow in alpha as needed.
class MGridCache {
public:
    explicit MGridCache(const PrimeTable& table) : table_(table) {}

    std::shared_ptr<const MFunction> get(cplx z, double alpha_max) const
    {
        const double want = std::min(100.0, std::max(8.0, std::ceil(alpha_max / 8.0) * 8.0));
        const auto key = std::make_pair(z.real(), z.imag());
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end() && it->second->alpha_end() >= alpha_max) return it->second;
        auto fn = std::make_shared<const MFunction>(z, want, table_);
        map_[key] = fn;
        return fn;
    }

private:
    const PrimeTable& table_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<double, double>, std::shared_ptr<const MFunction>> map_;
};

struct PredictorContext {
    const PrimeTable& table;
    const BuchstabFunction& w;
    MGridCache& mgrids;
    double c1;                 // Mertens constant
    double validity_C = 10.0;  // thm10 small-y range constant
    double validity_K = 10.0;  // sum_small_y range constant
    double kappa = 0.05;       // thm11/thm12 r-window

    static PredictorContext make(const PrimeTable& table, const BuchstabFunction& w,
                                 MGridCache& mgrids)
    {
        return PredictorContext{table, w, mgrids, mertens_constant(table), 10.0, 10.0, 0.05};
    }
};

namespace detail {

inline double factorial(int64_t n)
{
    double f = 1.0;
    for (int64_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

inline void check_x16(int64_t x)
{
    if (x < 16) throw domain_error("predictor: x >= 16 required (loglog must be positive)");
}

inline Prediction base(PredictorId id, int64_t x, int64_t y, int64_t k)
{
    Prediction p;
    p.id = id;
    p.x = static_cast<double>(x);
    p.y = static_cast<double>(y);
    p.k = k;
    if (y >= 2) {
        p.alpha = std::log(p.x) / std::log(p.y);
        p.beta = p.x / p.y;
    }
    return p;
}

} // namespace detail

// Landau: N_k(x) ~ x (loglog x)^{k-1} / ((k-1)! log x).
inline Prediction predict_landau(int64_t x, int64_t k)
{
    detail::check_x16(x);
    Prediction p = detail::base(PredictorId::landau, x, x, k);
    if (k == 0) {
        p.value = 1.0;
        p.valid = false;
        p.note = "k=0: formula undefined, N_0(x,x) = 1 reported";
        return p;
    }
    const double L = loglog(p.x);
    p.value = p.x * std::pow(L, double(k - 1)) / (detail::factorial(k - 1) * std::log(p.x));
    return p;
}

// Selberg-Sathe: N_k(x) ~ (x/log x) g(1,rho)/Gamma(1+rho) (loglog x)^{k-1}/(k-1)!,
// rho = (k-1)/loglog x.
inline Prediction predict_selberg(int64_t x, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 1) throw domain_error("predict_selberg: k >= 1 required");
    Prediction p = detail::base(PredictorId::selberg, x, x, k);
    const double L = loglog(p.x);
    const double rho = double(k - 1) / L;
    p.r = rho;
    const cplx coef = selberg_g(cplx(rho, 0.0), ctx.table).value * recip_gamma(cplx(1.0 + rho, 0.0));
    p.value = coef.real() * p.x / std::log(p.x) * std::pow(L, double(k - 1)) /
              detail::factorial(k - 1);
    p.valid = double(k) <= 10.0 * L;
    if (!p.valid) p.note = "k beyond R loglog x window";
    return p;
}

// thm2, the fixed-ratio regime (beta = x/y): (x/log y) sum_{P<=beta}(1/P - 1/beta)
// plus the count of y-smooth k-fold prime-power products above beta. That
// estimate is a k >= 2 statement; at k = 1 the second count is pi(y)-sized,
// so the k = 1 column uses the lemma4 term x/(beta log y) instead of x/log y
// (which would mispredict N_1 by a non-decaying margin at fixed beta).
inline Prediction predict_thm2(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 1) throw domain_error("predict_thm2: k >= 1 required");
    Prediction p = detail::base(PredictorId::thm2, x, y, k);
    if (p.beta <= 1.0) throw domain_error("predict_thm2: beta = x/y must exceed 1");
    const double logy = std::log(p.y);
    double sum = 0.0;
    enumerate_prime_power_products(p.beta, static_cast<int>(k), ctx.table, [&](int64_t P) {
        sum += 1.0 / static_cast<double>(P) - 1.0 / p.beta;
    });
    const double term1 = p.x / logy * sum;
    double term2;
    if (k == 1) {
        term2 = p.x / (p.beta * logy);
        p.note = "k=1: second term from the lemma4 form";
    } else {
        term2 = p.x * std::pow(loglog(p.y), double(k - 1)) / (logy * detail::factorial(k - 1));
    }
    p.value = term1 + term2;
    p.aux.emplace_back("term1", term1);
    p.aux.emplace_back("term2", term2);
    p.valid = p.y * p.y > p.x;
    if (!p.valid) p.note = "y <= sqrt(x): outside the prime-counting regime";
    return p;
}

// lemma4, the sharp k = 1 form: (x/log y) sum_{p^e<beta}(1/p^e - 1/beta) + x/(beta log y).
inline Prediction predict_lemma4(int64_t x, int64_t y, const PredictorContext& ctx)
{
    detail::check_x16(x);
    Prediction p = detail::base(PredictorId::lemma4, x, y, 1);
    if (p.beta <= 1.0) throw domain_error("predict_lemma4: beta = x/y must exceed 1");
    const double logy = std::log(p.y);
    double sum = 0.0;
    // p^e < beta strict; a boundary term would contribute 1/beta - 1/beta = 0 anyway
    enumerate_prime_power_products(p.beta, 1, ctx.table, [&](int64_t P) {
        if (static_cast<double>(P) < p.beta) sum += 1.0 / static_cast<double>(P) - 1.0 / p.beta;
    });
    const double term1 = p.x / logy * sum;
    const double landau_term = p.x / (p.beta * logy);
    p.value = term1 + landau_term;
    p.aux.emplace_back("term1", term1);
    p.aux.emplace_back("landau_term", landau_term);
    p.valid = p.y * p.y > p.x;
    if (!p.valid) p.note = "y <= sqrt(x): outside the prime-counting regime";
    return p;
}

// thm3, very-large y: (x/log x)(loglog beta*)^k/k! + (x/log x)(loglog x)^{k-1}/(k-1)!.
inline Prediction predict_thm3(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    Prediction p = detail::base(PredictorId::thm3, x, y, k);
    const double logx = std::log(p.x);
    const double beta_star = std::max(p.beta, 10.0);
    if (k == 0) {
        // Phi path: N_0(x,y) = 1 + pi(x) - pi(y-1) ~ x/log x - y/log y
        p.value = p.x / logx - p.y / std::log(p.y);
        p.note = "k=0 handled via the Phi/prime-counting path";
        p.valid = p.y * p.y > p.x;
        return p;
    }
    const double term1 = p.x / logx * std::pow(loglog(beta_star), double(k)) /
                         detail::factorial(k);
    const double term2 = p.x / logx * std::pow(loglog(p.x), double(k - 1)) /
                         detail::factorial(k - 1);
    p.value = term1 + term2;
    p.aux.emplace_back("term1", term1);
    p.aux.emplace_back("term2", term2);
    if (p.alpha >= 1.0 && p.alpha < 2.0) {
        // the w(alpha) = 1/alpha rewriting of the first term
        p.aux.emplace_back("term1_w_form",
                           (1.0 / p.alpha) * p.x / std::log(p.y) *
                               std::pow(loglog(beta_star), double(k)) / detail::factorial(k));
    }
    p.valid = p.y * p.y > p.x && y <= x;
    if (!p.valid) p.note = "requires sqrt(x) < y <= x";
    return p;
}

// thm3star, fixed alpha > 2: w(alpha) (x/log y) (loglog y)^k / k!.
inline Prediction predict_thm3star(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 0) throw domain_error("predict_thm3star: k >= 0 required");
    Prediction p = detail::base(PredictorId::thm3star, x, y, k);
    const double walpha = ctx.w(std::max(p.alpha, 1.0));
    p.value = walpha * p.x / std::log(p.y) * std::pow(loglog(p.y), double(k)) /
              detail::factorial(k);
    p.aux.emplace_back("w_alpha", walpha);
    p.valid = p.alpha > 2.0;
    if (!p.valid) p.note = "alpha <= 2: outside the fixed-alpha range";
    return p;
}

// cor2: same main term as thm3star, stated for
// sqrt(x) < y < x exp(-e^{(1+eps) k^{1/k} (loglog x)^{1-1/k}}).
inline Prediction predict_cor2(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    Prediction p = predict_thm3star(x, y, k, ctx);
    p.id = PredictorId::cor2;
    if (k >= 1) {
        const double e_term = std::exp(std::pow(double(k), 1.0 / double(k)) *
                                       std::pow(loglog(p.x), 1.0 - 1.0 / double(k)));
        const double y_upper = p.x * std::exp(-e_term);
        p.valid = p.y > std::sqrt(p.x) && p.y < y_upper;
        p.note = p.valid ? "" : "y outside the cor2 window";
        p.aux.emplace_back("y_upper", y_upper);
    }
    return p;
}

// thm10, small y: l(k/loglog y) (x/log y) (loglog y)^k / k!.
inline Prediction predict_thm10(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 1) throw domain_error("predict_thm10: k >= 1 required");
    Prediction p = detail::base(PredictorId::thm10, x, y, k);
    const double L = loglog(p.y);
    p.r = double(k) / L;
    const double lr = ell(cplx(p.r, 0.0), ctx.table).value.real();
    p.value = lr * p.x / std::log(p.y) * std::pow(L, double(k)) / detail::factorial(k);
    p.aux.emplace_back("ell_r", lr);
    // the N_k(x,y) ~ N_{k+1}(x) comparison, reported for inspection
    const double landau_next = predict_landau(x, k + 1).real();
    if (landau_next > 0.0) p.aux.emplace_back("ratio_to_landau_k1", p.real() / landau_next);
    p.valid = p.alpha > ctx.validity_C * loglog(p.x);
    if (!p.valid) p.note = "alpha below C loglog x (small-y regime not reached)";
    return p;
}

// thm11, the S_r-driven local law: N_k ~ S_r(x,y) (loglog y + c1)^k / (k! e^k)
// with r = k/(loglog y + c1), plus the variant with c1 dropped on both sides.
// The caller supplies S as an evaluator so exact sums and asymptotic
// estimates both fit.
inline Prediction predict_thm11(int64_t x, int64_t y, int64_t k,
                                const std::function<cplx(double)>& s_eval,
                                const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 0) throw domain_error("predict_thm11: k >= 0 required");
    Prediction p = detail::base(PredictorId::thm11, x, y, k);
    const double L = loglog(p.y);
    const double r61 = double(k) / L;
    const double r11 = double(k) / (L + ctx.c1);
    p.r = r61;
    const double ek = std::exp(double(k));
    const double eq61 = s_eval(r61).real() * std::pow(L, double(k)) /
                        (detail::factorial(k) * ek);
    const double t11 = s_eval(r11).real() * std::pow(L + ctx.c1, double(k)) /
                       (detail::factorial(k) * ek);
    p.value = eq61;
    p.aux.emplace_back("thm11_variant", t11);
    p.aux.emplace_back("r11", r11);
    const double LX = loglog(p.x);
    p.valid = (k == 0) || (r61 >= ctx.kappa && r61 <= 1.0 / ctx.kappa &&
                           p.alpha >= 1.0 && p.alpha < LX * LX);
    if (!p.valid) p.note = "r or alpha outside the thm11 window";
    return p;
}

// thm12, the m-based local law: m_r(alpha) x (loglog y)^k / (k! log y), r = k/loglog y.
inline Prediction predict_thm12(int64_t x, int64_t y, int64_t k, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (k < 0) throw domain_error("predict_thm12: k >= 0 required");
    Prediction p = detail::base(PredictorId::thm12, x, y, k);
    const double L = loglog(p.y);
    const double logy = std::log(p.y);
    if (k == 0) {
        p.value = ctx.w(std::max(p.alpha, 1.0)) * p.x / logy;
        p.note = "k=0: r=0, using the Buchstab limit m_0 = w";
        return p;
    }
    p.r = double(k) / L;
    double m_val;
    if (p.alpha <= 100.0) {
        auto m = ctx.mgrids.get(cplx(p.r, 0.0), std::max(p.alpha, 3.0));
        m_val = (*m)(std::max(p.alpha, 1.0)).real();
    } else {
        m_val = ell(cplx(p.r, 0.0), ctx.table).value.real();
        p.note = "alpha beyond tabulated range, used the limit l(r)";
    }
    p.value = m_val * p.x * std::pow(L, double(k)) / (detail::factorial(k) * logy);
    p.aux.emplace_back("m_r_alpha", m_val);
    const double LX = loglog(p.x);
    p.valid = p.r >= ctx.kappa && p.r <= 1.0 / ctx.kappa && p.alpha >= 1.0 &&
              p.alpha <= LX * LX;
    if (!p.valid && p.note.empty()) p.note = "r or alpha outside the thm12 window";
    return p;
}

// sum_small_y: S_z(x,y) ~ x prod_{p<y} (1 + (z-1)/p), the small-y product form.
inline Prediction predict_sum_small_y(int64_t x, int64_t y, cplx z, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (y < 2) throw domain_error("predict_sum_small_y: y >= 2 required");
    if (ctx.table.bound() < y - 1)
        throw domain_error("predict_sum_small_y: prime table too small");
    Prediction p = detail::base(PredictorId::sum_small_y, x, y, -1);
    cplx log_sum = 0.0;
    bool zero = false;
    for (int64_t q : ctx.table.primes()) {
        if (q >= y) break;
        const cplx factor = cplx(1.0) + (z - cplx(1.0)) / cplx(double(q));
        if (factor == cplx(0.0)) { zero = true; break; }
        log_sum += std::log(factor);
    }
    p.value = zero ? cplx(0.0) : p.x * std::exp(log_sum);
    p.valid = p.alpha >= ctx.validity_K * loglog(p.x);
    if (!p.valid) p.note = "alpha below K loglog x (small-y range not reached)";
    return p;
}

// sum_large_y: S_z(x,y) ~ m_z(alpha) x / log^{1-z}(y), Re(z) > 0.
inline Prediction predict_sum_large_y(int64_t x, int64_t y, cplx z, const PredictorContext& ctx)
{
    detail::check_x16(x);
    if (!(z.real() > 0.0)) throw domain_error("predict_sum_large_y: Re(z) > 0 required");
    Prediction p = detail::base(PredictorId::sum_large_y, x, y, -1);
    cplx m_val;
    if (p.alpha <= 100.0) {
        auto m = ctx.mgrids.get(z, std::max(p.alpha, 3.0));
        m_val = (*m)(std::max(p.alpha, 1.0));
    } else {
        m_val = ell(z, ctx.table).value;
        p.note = "alpha beyond tabulated range, used the limit l(z)";
    }
    p.value = m_val * p.x * upow(std::log(p.y), z - 1.0);
    return p;
}

// selberg_sum: S_z(x,x) = g(1,z)/Gamma(z) x / log^{1-z}(x).
inline Prediction predict_selberg_sum(int64_t x, cplx z, const PredictorContext& ctx)
{
    detail::check_x16(x);
    Prediction p = detail::base(PredictorId::selberg_sum, x, x, -1);
    p.value = selberg_s(z, ctx.table) * p.x * upow(std::log(p.x), z - 1.0);
    return p;
}

} // namespace spf
