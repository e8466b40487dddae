#pragma once
#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "spf/config.hpp"
#include "spf/csv.hpp"
#include "spf/legendre_phi.hpp"
#include "spf/predictors.hpp"
#include "spf/sieve_counts.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Comparison harness: one row per (x, y, k, predictor), exact column always
// from the sieve, relative error = |pred - exact| / max(exact, 1).
// Rows are ordered by (x, k, predictor name) and format deterministically,
// so identical configs produce byte-identical CSV.
// -----------------------------------------------------------------------------

struct ReportRow {
    int64_t x = 0;
    int64_t y = 0;
    double alpha = 0.0;
    int64_t k = 0;
    std::string predictor;
    double exact = 0.0;
    double predicted = 0.0;
    double rel_err = 0.0;
    bool valid = true;
    std::string note;

    bool operator==(const ReportRow&) const = default;
};

struct PredictionReport {
    std::vector<ReportRow> rows;

    bool operator==(const PredictionReport&) const = default;

    static std::string csv_header() { return "x,y,alpha,k,predictor,exact,predicted,rel_err,valid,note"; }

    std::string to_csv() const
    {
        std::string out = csv_header() + "\n";
        for (const auto& r : rows) {
            std::string note = r.note;
            for (char& c : note)
                if (c == ',' || c == '\n') c = ';';
            out += fmt_int(r.x) + "," + fmt_int(r.y) + "," + fmt_double(r.alpha) + "," +
                   fmt_int(r.k) + "," + r.predictor + "," + fmt_double(r.exact) + "," +
                   fmt_double(r.predicted) + "," + fmt_double(r.rel_err) + "," +
                   (r.valid ? "1" : "0") + "," + note + "\n";
        }
        return out;
    }

    static PredictionReport from_csv(const std::string& text)
    {
        PredictionReport rep;
        auto rows = parse_csv(text);
        for (size_t i = 1; i < rows.size(); ++i) {
            const auto& f = rows[i];
            if (f.size() != 10) throw domain_error("PredictionReport: malformed row");
            ReportRow r;
            r.x = static_cast<int64_t>(parse_double(f[0]));
            r.y = static_cast<int64_t>(parse_double(f[1]));
            r.alpha = parse_double(f[2]);
            r.k = static_cast<int64_t>(parse_double(f[3]));
            r.predictor = f[4];
            r.exact = parse_double(f[5]);
            r.predicted = parse_double(f[6]);
            r.rel_err = parse_double(f[7]);
            r.valid = f[8] == "1";
            r.note = f[9];
            rep.rows.push_back(std::move(r));
        }
        return rep;
    }
};

// Evaluate one predictor against an exact histogram.
inline Prediction evaluate_predictor(const std::string& name, int64_t x, int64_t y, int64_t k,
                                     const CountVector& exact, const PredictorContext& ctx)
{
    const PredictorId id = predictor_from_name(name);
    switch (id) {
        case PredictorId::landau: return predict_landau(x, k);
        case PredictorId::selberg: return predict_selberg(x, std::max<int64_t>(k, 1), ctx);
        case PredictorId::thm2: return predict_thm2(x, y, std::max<int64_t>(k, 1), ctx);
        case PredictorId::thm3: return predict_thm3(x, y, k, ctx);
        case PredictorId::thm3star: return predict_thm3star(x, y, k, ctx);
        case PredictorId::cor2: return predict_cor2(x, y, k, ctx);
        case PredictorId::thm10: return predict_thm10(x, y, std::max<int64_t>(k, 1), ctx);
        case PredictorId::thm11:
            return predict_thm11(x, y, k,
                                 [&](double r) { return sum_sz(exact, cplx(r, 0.0)); }, ctx);
        case PredictorId::thm12: return predict_thm12(x, y, k, ctx);
        case PredictorId::lemma4: return predict_lemma4(x, y, ctx);
        default:
            throw domain_error("predictor not usable in count comparisons: " + name);
    }
}

// Run the full sweep. `sieve` maps (x, y) to the exact histogram so callers
// can inject caching; the default just calls count_nk.
inline PredictionReport run_compare(const ExperimentConfig& cfg, const PredictorContext& ctx,
                                    const std::function<CountVector(int64_t, int64_t)>& sieve)
{
    PredictionReport rep;
    std::vector<std::string> predictors = cfg.predictors;
    std::sort(predictors.begin(), predictors.end());
    for (int64_t x : cfg.x_list) {
        const int64_t y = cfg.y_rule.derive(x);
        const CountVector cv = sieve(x, y);
        for (int64_t k : cfg.k_list) {
            const int64_t exact = cv.at(k);
            for (const auto& name : predictors) {
                Prediction p = evaluate_predictor(name, x, y, k, cv, ctx);
                ReportRow row;
                row.x = x;
                row.y = y;
                row.alpha = std::log(double(x)) / std::log(double(y));
                row.k = k;
                row.predictor = name;
                row.exact = static_cast<double>(exact);
                row.predicted = p.real();
                row.rel_err = std::abs(p.real() - row.exact) / std::max(row.exact, 1.0);
                row.valid = p.valid;
                row.note = p.note;
                rep.rows.push_back(std::move(row));
            }
        }
    }
    return rep;
}

inline PredictionReport run_compare(const ExperimentConfig& cfg, const PredictorContext& ctx)
{
    return run_compare(cfg, ctx,
                       [&](int64_t x, int64_t y) { return count_nk(x, y, ctx.table); });
}

// -----------------------------------------------------------------------------
// Phenomenon report: N_k(x,y) against the k-th and (k+1)-st Landau counts.
// -----------------------------------------------------------------------------
struct PhenomenonRow {
    int64_t k = 0;
    int64_t nk_xy = 0;
    int64_t nk_xx = 0;
    int64_t nk1_xx = 0;
    double ratio_next = 0.0; // N_k(x,y) / N_{k+1}(x,x)
    double ratio_same = 0.0; // N_k(x,y) / N_k(x,x)
};

struct PhenomenonReport {
    int64_t x = 0;
    double c = 0.0;
    int64_t y = 0;
    bool y_clamped = false;
    std::vector<PhenomenonRow> rows;

    std::string to_csv() const
    {
        std::string out = "k,nk_xy,nk_xx,nk1_xx,ratio_next,ratio_same\n";
        for (const auto& r : rows)
            out += fmt_int(r.k) + "," + fmt_int(r.nk_xy) + "," + fmt_int(r.nk_xx) + "," +
                   fmt_int(r.nk1_xx) + "," + fmt_double(r.ratio_next) + "," +
                   fmt_double(r.ratio_same) + "\n";
        return out;
    }
};

inline PhenomenonReport run_phenomenon(int64_t x, double c, const PrimeTable& table,
                                       int64_t k_max = 6)
{
    if (x < 16) throw domain_error("phenomenon: x >= 16 required");
    YRule rule{YRuleKind::exp_rule, c};
    PhenomenonReport rep;
    rep.x = x;
    rep.c = c;
    rep.y = rule.derive(x, &rep.y_clamped);
    const CountVector cv_y = count_nk(x, rep.y, table);
    const CountVector cv_x = count_nk(x, x, table);
    for (int64_t k = 0; k <= k_max; ++k) {
        PhenomenonRow row;
        row.k = k;
        row.nk_xy = cv_y.at(k);
        row.nk_xx = cv_x.at(k);
        row.nk1_xx = cv_x.at(k + 1);
        row.ratio_next = double(row.nk_xy) / std::max<double>(double(row.nk1_xx), 1.0);
        row.ratio_same = double(row.nk_xy) / std::max<double>(double(row.nk_xx), 1.0);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace spf
