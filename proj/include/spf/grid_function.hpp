#pragma once
#include <cstdio>
#include <ostream>
#include <vector>

#include "spf/common.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// GridFunction: complex values on a uniform grid with cubic (4-point Lagrange)
// interpolation. Evaluation outside [start, end] throws; interpolation
// reproduces grid nodes exactly.
// -----------------------------------------------------------------------------
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(double start, double step, std::vector<cplx> values)
        : start_(start), step_(step), values_(std::move(values))
    {
        if (!(step_ > 0.0)) throw domain_error("GridFunction: step must be positive");
        if (values_.size() < 4) throw domain_error("GridFunction: need at least 4 nodes");
    }

    double start() const { return start_; }
    double step() const { return step_; }
    double end() const { return start_ + step_ * static_cast<double>(values_.size() - 1); }
    size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    cplx node_value(size_t i) const { return values_[i]; }
    double node_pos(size_t i) const { return start_ + step_ * static_cast<double>(i); }

    cplx operator()(double t) const
    {
        const double u = (t - start_) / step_;
        if (u < -1e-9 || u > static_cast<double>(values_.size() - 1) + 1e-9)
            throw domain_error("GridFunction: evaluation outside grid domain");
        double ju = std::floor(u);
        auto j = static_cast<int64_t>(ju);
        const int64_t n = static_cast<int64_t>(values_.size());
        if (j >= n - 1) j = n - 2;
        if (j < 0) j = 0;
        const double tau = u - static_cast<double>(j);
        if (tau == 0.0) return values_[static_cast<size_t>(j)];
        // centered 4-point stencil, clamped at the boundaries
        int64_t j0 = j - 1;
        if (j0 < 0) j0 = 0;
        if (j0 > n - 4) j0 = n - 4;
        const double s = u - static_cast<double>(j0); // position within stencil, in [0,3]
        cplx acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            double w = 1.0;
            for (int m = 0; m < 4; ++m)
                if (m != i) w *= (s - double(m)) / (double(i) - double(m));
            acc += w * values_[static_cast<size_t>(j0 + i)];
        }
        return acc;
    }

    double real_at(double t) const { return (*this)(t).real(); }

    // CSV dump: header alpha,re,im with 17-significant-digit round-trip floats.
    void dump_csv(std::ostream& os) const
    {
        char buf[96];
        os << "alpha,re,im\n";
        for (size_t i = 0; i < values_.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", node_pos(i),
                          values_[i].real(), values_[i].imag());
            os << buf;
        }
    }

private:
    double start_ = 0.0;
    double step_ = 1.0;
    std::vector<cplx> values_;
};

} // namespace spf
