#pragma once
#include <functional>
#include <vector>

#include "spf/common.hpp"
#include "spf/sieve_counts.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Cauchy coefficient extraction on a circle: discretizing
//   N_k = (1/2 pi i) oint S(z) / z^{k+1} dz
// at the m-th roots of unity gives
//   N_k ~= (1 / (m r^k)) sum_j S(r e^{2 pi i j / m}) e^{-2 pi i j k / m},
// which is exact (up to roundoff) whenever S is a polynomial of degree < m.
// The conditioning column max_j |S(z_j)| / (r^k N_k) shows why the radius
// choice r = k / loglog y keeps the extraction well-posed.
// -----------------------------------------------------------------------------

struct ContourSpec {
    double radius = 1.0;
    int points = 64; // m, power of two, > k_max
    int k_max = 8;
};

struct ContourResult {
    std::vector<double> extracted;  // re parts of the transform, k = 0..k_max
    std::vector<double> imag_leak;  // |imag| per k (roundoff indicator)
    double max_abs_s = 0.0;

    double conditioning(int k, double radius, double nk) const
    {
        const double denom = std::pow(radius, k) * std::max(nk, 1.0);
        return max_abs_s / denom;
    }
};

using SumEvaluator = std::function<cplx(cplx)>;

inline ContourResult extract_counts(const ContourSpec& spec, const SumEvaluator& s)
{
    if (spec.points <= spec.k_max)
        throw domain_error("extract_counts: points must exceed k_max");
    if ((spec.points & (spec.points - 1)) != 0)
        throw domain_error("extract_counts: points must be a power of two");
    if (!(spec.radius > 0.0)) throw domain_error("extract_counts: radius must be positive");

    const int m = spec.points;
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<cplx> samples(static_cast<size_t>(m));
    ContourResult out;
    for (int j = 0; j < m; ++j) {
        const double theta = two_pi * double(j) / double(m);
        const cplx zj = spec.radius * cplx(std::cos(theta), std::sin(theta));
        samples[static_cast<size_t>(j)] = s(zj);
        out.max_abs_s = std::max(out.max_abs_s, std::abs(samples[static_cast<size_t>(j)]));
    }
    out.extracted.resize(static_cast<size_t>(spec.k_max) + 1);
    out.imag_leak.resize(static_cast<size_t>(spec.k_max) + 1);
    for (int k = 0; k <= spec.k_max; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const double theta = -two_pi * double(j) * double(k) / double(m);
            acc += samples[static_cast<size_t>(j)] * cplx(std::cos(theta), std::sin(theta));
        }
        acc /= double(m) * std::pow(spec.radius, k);
        out.extracted[static_cast<size_t>(k)] = acc.real();
        out.imag_leak[static_cast<size_t>(k)] = std::abs(acc.imag());
    }
    return out;
}

// Exact-sum evaluator over a fixed histogram (cheap per contour node).
inline SumEvaluator exact_sum_evaluator(CountVector counts)
{
    return [cv = std::move(counts)](cplx z) { return sum_sz(cv, z); };
}

// Radius policy r = k / loglog y clamped to [0.05, 10]; the k = 0 coefficient
// of a polynomial is extracted exactly by any radius, 0.5 conditions best.
inline double radius_policy(int64_t k, int64_t y)
{
    if (k < 0) throw domain_error("radius_policy: k >= 0 required");
    if (y < 16) throw domain_error("radius_policy: y >= 16 required");
    if (k == 0) return 0.5;
    const double r = static_cast<double>(k) / loglog(static_cast<double>(y));
    return std::min(10.0, std::max(0.05, r));
}

} // namespace spf
