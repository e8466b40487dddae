// spf command-line interface: exact counts, predictor evaluation, special
// function tables, contour checks, and the comparison harness.
//
// Exit codes: 0 success, 2 usage error, 3 resource error, 4 domain error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <new>

#include "spf/common.hpp"
#include "spf/config.hpp"
#include "spf/contour.hpp"
#include "spf/csv.hpp"
#include "spf/harness.hpp"
#include "spf/legendre_phi.hpp"
#include "spf/predictors.hpp"
#include "spf/prime_table.hpp"
#include "spf/sieve_counts.hpp"
#include "spf/special_functions.hpp"
#include "spf/svg.hpp"

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path)
    {
        if (path.empty()) return;
        file.open(path, std::ios::binary); // binary: keep LF endings everywhere
        if (!file) throw spf::domain_error("cannot open output file: " + path);
        os = &file;
    }
};

spf::PrimeTable load_table(int64_t bound, const std::string& cache_dir_flag)
{
    const auto dir = spf::resolve_cache_dir(cache_dir_flag);
    spf::cache_status status = spf::cache_status::none;
    spf::PrimeTable table = spf::build_prime_table_cached(bound, dir, &status);
    if (status == spf::cache_status::rebuilt_corrupt)
        std::cerr << "warning: prime cache was corrupt; rebuilt\n";
    return table;
}

int64_t table_bound_for(int64_t x, int64_t y)
{
    return std::max<int64_t>(2, std::min(y, x));
}

void write_svg_if_requested(const std::string& svg_path, const std::vector<double>& xs,
                            const std::vector<double>& ys, const std::string& title)
{
    if (svg_path.empty()) return;
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) throw spf::domain_error("cannot open svg file: " + svg_path);
    f << spf::svg_polyline_plot(xs, ys, title);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spf: local distribution of small prime factors, exact and asymptotic"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --cache-dir appear after the subcommand name

    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "prime table cache directory (env SPF_CACHE_DIR)");

    // shared option storage
    int64_t x = 0, y = 0, k = 0, k_max = -1, points = 0;
    double z_re = 0.0, z_im = 0.0, r = 0.0, alpha = 10.0, beta = 0.0, c_param = 12.0;
    std::string model, config_path, out_path, svg_path;

    auto* cmd_count = app.add_subcommand("count", "exact N_k(x,y) histogram as CSV");
    cmd_count->add_option("--x", x)->required();
    cmd_count->add_option("--y", y)->required();
    cmd_count->add_option("--k-max", k_max, "truncate output after this k");
    cmd_count->add_option("--out", out_path);

    auto* cmd_phi = app.add_subcommand("phi", "Phi(x,y) by the Legendre recursion");
    cmd_phi->add_option("--x", x)->required();
    cmd_phi->add_option("--y", y)->required();
    cmd_phi->add_option("--out", out_path);

    auto* cmd_sum = app.add_subcommand("sum", "exact S_z(x,y)");
    cmd_sum->add_option("--x", x)->required();
    cmd_sum->add_option("--y", y)->required();
    cmd_sum->add_option("--z-re", z_re)->required();
    cmd_sum->add_option("--z-im", z_im);
    cmd_sum->add_option("--out", out_path);

    auto* cmd_special = app.add_subcommand("special", "tabulate w, rho, m or ell as CSV");
    cmd_special->add_option("--model", model, "one of w|rho|m|ell")->required();
    cmd_special->add_option("--alpha", alpha, "upper end of the table (w/rho/m)");
    cmd_special->add_option("--r", r, "rho/m real parameter");
    cmd_special->add_option("--z-re", z_re, "m: Re z; ell: sweep upper end");
    cmd_special->add_option("--z-im", z_im);
    cmd_special->add_option("--points", points, "number of sample rows");
    cmd_special->add_option("--out", out_path);
    cmd_special->add_option("--svg", svg_path, "also write a simple line plot");

    auto* cmd_predict = app.add_subcommand("predict", "evaluate one asymptotic predictor");
    cmd_predict->add_option("--model", model)->required();
    cmd_predict->add_option("--x", x)->required();
    cmd_predict->add_option("--y", y);
    cmd_predict->add_option("--k", k);
    cmd_predict->add_option("--z-re", z_re);
    cmd_predict->add_option("--z-im", z_im);
    cmd_predict->add_option("--out", out_path);

    auto* cmd_compare = app.add_subcommand("compare", "predictor sweep vs sieve-exact counts");
    std::vector<int64_t> x_override, k_override;
    double alpha_override = 0.0, beta_override = 0.0;
    cmd_compare->add_option("--config", config_path, "key=value config file")->required();
    cmd_compare->add_option("--out", out_path, "overrides config out=");
    cmd_compare->add_option("--x", x_override, "overrides config x_list");
    cmd_compare->add_option("--k", k_override, "overrides config k_list");
    cmd_compare->add_option("--alpha", alpha_override, "overrides the power-rule exponent");
    cmd_compare->add_option("--beta", beta_override, "overrides the ratio-rule divisor");

    auto* cmd_contour = app.add_subcommand("contour-check",
                                           "Cauchy-coefficient extraction vs sieve counts");
    cmd_contour->add_option("--x", x)->required();
    cmd_contour->add_option("--y", y)->required();
    cmd_contour->add_option("--points", points, "transform nodes m (power of two)");
    cmd_contour->add_option("--r", r, "contour radius; 0 = radius policy per k");
    cmd_contour->add_option("--out", out_path);

    auto* cmd_phen = app.add_subcommand("phenomenon",
                                        "N_k(x,y) against the (k+1)-st Landau count");
    cmd_phen->add_option("--x", x)->required();
    cmd_phen->add_option("--c", c_param, "y = exp(log x / (c loglog x)), default 12");
    cmd_phen->add_option("--k-max", k_max);
    cmd_phen->add_option("--out", out_path);
    (void)beta;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        OutputTarget out;
        out.open(out_path);

        if (*cmd_count) {
            auto table = load_table(table_bound_for(x, y), cache_dir);
            auto cv = spf::count_nk(x, y, table);
            *out.os << "k,N_k\n";
            for (int kk = 0; kk <= cv.k_max(); ++kk) {
                if (k_max >= 0 && kk > k_max) break;
                *out.os << kk << "," << cv.counts[size_t(kk)] << "\n";
            }
        } else if (*cmd_phi) {
            auto table = load_table(std::max<int64_t>(x, 2), cache_dir);
            *out.os << "x,y,phi\n" << x << "," << y << "," << spf::legendre_phi(x, y, table) << "\n";
        } else if (*cmd_sum) {
            auto table = load_table(table_bound_for(x, y), cache_dir);
            const spf::cplx s = spf::sum_sz(x, y, spf::cplx(z_re, z_im), table);
            *out.os << "x,y,z_re,z_im,s_re,s_im\n"
                    << x << "," << y << "," << spf::fmt_double(z_re) << ","
                    << spf::fmt_double(z_im) << "," << spf::fmt_double(s.real()) << ","
                    << spf::fmt_double(s.imag()) << "\n";
        } else if (*cmd_special) {
            std::vector<double> xs, ys;
            std::string title;
            if (model == "w") {
                spf::BuchstabFunction w(std::max(alpha, 3.0));
                const int n = points > 1 ? int(points) : int((alpha - 1.0) * 32) + 1;
                *out.os << "alpha,re,im\n";
                for (int i = 0; i < n; ++i) {
                    const double a = 1.0 + (alpha - 1.0) * double(i) / double(n - 1);
                    const double v = w(a);
                    xs.push_back(a);
                    ys.push_back(v);
                    *out.os << spf::fmt_double(a) << "," << spf::fmt_double(v) << ",0\n";
                }
                title = "Buchstab w";
            } else if (model == "rho") {
                if (!(r > 0.0)) throw spf::domain_error("special rho: --r > 0 required");
                spf::DickmanRho rho(r, std::max(alpha, 3.0));
                const int n = points > 1 ? int(points) : int(alpha * 32);
                *out.os << "alpha,re,im\n";
                for (int i = 1; i <= n; ++i) {
                    const double u = alpha * double(i) / double(n);
                    const double v = rho(u);
                    xs.push_back(u);
                    ys.push_back(v);
                    *out.os << spf::fmt_double(u) << "," << spf::fmt_double(v) << ",0\n";
                }
                title = "generalized Dickman rho_r";
            } else if (model == "m") {
                const spf::cplx z = (z_re != 0.0 || z_im != 0.0) ? spf::cplx(z_re, z_im)
                                                                 : spf::cplx(r, 0.0);
                auto table = load_table(1'000'000, cache_dir);
                spf::MFunction m(z, std::max(alpha, 3.0), table);
                const int n = points > 1 ? int(points) : int((alpha - 1.0) * 32) + 1;
                *out.os << "alpha,re,im\n";
                for (int i = 0; i < n; ++i) {
                    const double a = 1.0 + (alpha - 1.0) * double(i) / double(n - 1);
                    const spf::cplx v = m(a);
                    xs.push_back(a);
                    ys.push_back(v.real());
                    *out.os << spf::fmt_double(a) << "," << spf::fmt_double(v.real()) << ","
                            << spf::fmt_double(v.imag()) << "\n";
                }
                title = "m_z";
            } else if (model == "ell") {
                auto table = load_table(1'000'000, cache_dir);
                const double z_hi = z_re > 0.0 ? z_re : 3.0;
                const int n = points > 1 ? int(points) : 301;
                *out.os << "z,re,im\n";
                for (int i = 0; i < n; ++i) {
                    const double zz = z_hi * double(i) / double(n - 1);
                    const spf::cplx v = spf::ell(spf::cplx(zz, z_im), table).value;
                    xs.push_back(zz);
                    ys.push_back(v.real());
                    *out.os << spf::fmt_double(zz) << "," << spf::fmt_double(v.real()) << ","
                            << spf::fmt_double(v.imag()) << "\n";
                }
                title = "ell(z)";
            } else {
                throw spf::domain_error("special: unknown --model " + model);
            }
            write_svg_if_requested(svg_path, xs, ys, title);
        } else if (*cmd_predict) {
            const int64_t yy = y >= 2 ? y : x;
            int64_t bound = std::max<int64_t>(1'000'000, table_bound_for(x, yy));
            const spf::PredictorId id = spf::predictor_from_name(model);
            if (id == spf::PredictorId::thm2 || id == spf::PredictorId::lemma4) {
                // the prime-power enumeration runs over products up to beta = x/y
                bound = std::max(bound, std::min<int64_t>(x / std::max<int64_t>(yy, 1) + 1,
                                                          int64_t(20'000'000)));
            }
            auto table = load_table(bound, cache_dir);
            spf::MGridCache mgrids(table);
            auto ctx = spf::PredictorContext::make(table, spf::buchstab_table(), mgrids);
            spf::Prediction p;
            if (id == spf::PredictorId::sum_small_y)
                p = spf::predict_sum_small_y(x, yy, spf::cplx(z_re, z_im), ctx);
            else if (id == spf::PredictorId::sum_large_y)
                p = spf::predict_sum_large_y(x, yy, spf::cplx(z_re, z_im), ctx);
            else if (id == spf::PredictorId::selberg_sum)
                p = spf::predict_selberg_sum(x, spf::cplx(z_re, z_im), ctx);
            else {
                const auto cv = spf::count_nk(x, yy, table);
                p = spf::evaluate_predictor(model, x, yy, k, cv, ctx);
            }
            *out.os << "model,x,y,k,alpha,beta,r,value_re,value_im,valid,note\n"
                    << model << "," << x << "," << yy << "," << k << ","
                    << spf::fmt_double(p.alpha) << "," << spf::fmt_double(p.beta) << ","
                    << spf::fmt_double(p.r) << "," << spf::fmt_double(p.value.real()) << ","
                    << spf::fmt_double(p.value.imag()) << "," << (p.valid ? 1 : 0) << ","
                    << p.note << "\n";
        } else if (*cmd_compare) {
            auto kv = spf::parse_key_value_file(config_path);
            auto cfg = spf::config_from_kv(kv);
            if (!out_path.empty()) cfg.out = out_path;
            if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
            if (!x_override.empty()) cfg.x_list = x_override;
            if (!k_override.empty()) cfg.k_list = k_override;
            if (alpha_override > 0.0 && cfg.y_rule.kind == spf::YRuleKind::power)
                cfg.y_rule.param = alpha_override;
            if (beta_override > 0.0 && cfg.y_rule.kind == spf::YRuleKind::ratio)
                cfg.y_rule.param = beta_override;
            if (cfg.x_list.empty()) throw spf::domain_error("compare: empty x_list");
            if (cfg.k_list.empty()) throw spf::domain_error("compare: empty k_list");
            int64_t bound = 1'000'000;
            for (int64_t xi : cfg.x_list) {
                const int64_t need = table_bound_for(xi, cfg.y_rule.derive(xi));
                if (need > spf::max_table_bound)
                    throw spf::resource_error("compare: x=" + std::to_string(xi) +
                                              " needs a prime table beyond the supported bound");
                bound = std::max(bound, need);
            }
            auto table = load_table(bound, cfg.cache_dir.empty() ? cache_dir : cfg.cache_dir);
            spf::MGridCache mgrids(table);
            auto ctx = spf::PredictorContext::make(table, spf::buchstab_table(), mgrids);
            auto rep = spf::run_compare(cfg, ctx);
            if (!cfg.out.empty() && out_path.empty()) out.open(cfg.out);
            *out.os << rep.to_csv();
        } else if (*cmd_contour) {
            auto table = load_table(table_bound_for(x, y), cache_dir);
            const auto cv = spf::count_nk(x, y, table);
            const int m = points > 0 ? int(points) : 64;
            if (m <= cv.k_max())
                throw spf::domain_error("contour-check: points must exceed observed k_max");
            auto eval = spf::exact_sum_evaluator(cv);
            *out.os << "k,exact,extracted,abs_err\n";
            double worst = 0.0;
            for (int kk = 0; kk <= cv.k_max(); ++kk) {
                const double radius = r > 0.0 ? r : spf::radius_policy(kk, std::max<int64_t>(y, 16));
                spf::ContourSpec spec{radius, m, kk};
                auto res = spf::extract_counts(spec, eval);
                const double got = res.extracted[size_t(kk)];
                const double err = std::abs(got - double(cv.counts[size_t(kk)]));
                worst = std::max(worst, err);
                *out.os << kk << "," << cv.counts[size_t(kk)] << "," << spf::fmt_double(got)
                        << "," << spf::fmt_double(err) << "\n";
            }
            *out.os << "max_abs_deviation," << spf::fmt_double(worst) << ",,\n";
        } else if (*cmd_phen) {
            auto table = load_table(std::max<int64_t>(x, 2), cache_dir);
            auto rep = spf::run_phenomenon(x, c_param, table, k_max >= 0 ? k_max : 6);
            if (rep.y_clamped)
                std::cerr << "warning: derived y clamped into [2, x] (y = " << rep.y << ")\n";
            *out.os << "# x=" << x << " c=" << spf::fmt_double(c_param) << " y=" << rep.y << "\n";
            *out.os << rep.to_csv();
        }
        return 0;
    } catch (const spf::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return 3;
    } catch (const spf::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
