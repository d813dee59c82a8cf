#pragma once

// End-to-end experiment runner: for each n in the configured range, solve
// for the approximant through both routes, extract the zeros of 1 - p_n f,
// and evaluate the asymptotic diagnostics; then emit fixed-schema tables.
// The n-sweep runs on a worker pool, but every n writes into its own
// preassigned slot, so outputs are byte-identical for any --jobs value.

#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "asymptotics.hpp"
#include "config.hpp"
#include "opa.hpp"
#include "report.hpp"
#include "zeros.hpp"

namespace opalab {

struct run_record {
    std::size_t n = 0;
    bool ok = false;
    std::string error;

    // approximant
    double d0 = 0.0;
    double wiener = 0.0;
    double route_gap = 0.0;
    std::vector<double> a_abs;       // |A_l| per zero of f
    std::vector<double> a_scaled_s;  // |sigma_l A_l| * S_{n+d} per zero

    // zeros of 1 - p_n f
    std::vector<std::complex<double>> zero_points;
    std::size_t trimmed_leading = 0;
    double discrepancy = 0.0;
    bool discrepancy_exact = true;
    std::vector<double> weyl;
    double weyl_max = 0.0;
    double radial_max_dev = 0.0;
    double radial_shell_fraction = 0.0;

    // asymptotic diagnostics
    double max_on_circle = 0.0;
    double dlead_abs = 0.0;
    bool h_defined = false;
    double h = 0.0;
    double log_h_over_n = 0.0;
    bool has_g = false;
    std::complex<double> g{0.0, 0.0};
    bool dn_skipped = true;
    std::complex<double> dn_ratio{0.0, 0.0};
    double det_ratio = 0.0;
};

struct run_verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct run_report {
    experiment_config config;
    std::vector<run_record> records;  // sorted by n (slot order)
    std::vector<run_verdict> verdicts;
    std::size_t failed = 0;
};

/// Which pipeline stages an invocation needs; the approximant solve itself
/// always runs, everything downstream is opt-in.
struct run_parts {
    bool zeros = true;
    bool asymptotics = true;
};

namespace detail {

constexpr double kRadialEps = 0.1;
constexpr std::size_t kWeylMax = 10;

template <class P>
run_record compute_record(const weight_model<P>& w, const target_polynomial<P>& f,
                          std::size_t n, const run_parts& parts) {
    using R = typename P::real;
    run_record rec;
    rec.n = n;

    const auto sol = opa_kernel_route<P>(w, f, n);
    const auto alt = opa_normal_equations<P>(w, f, n);
    rec.route_gap = to_double(route_agreement_gap<P>(sol, alt));
    rec.d0 = to_double(residual_norm_sq<P>(sol));
    rec.wiener = to_double(wiener_norm<P>(sol));

    const R s_nd = w.partial_sum(n + f.degree());
    for (std::size_t l = 0; l < sol.a.size(); ++l) {
        using std::abs;
        rec.a_abs.push_back(to_double(abs(sol.a[l])));
        rec.a_scaled_s.push_back(to_double(abs(sol.a_scaled[l]) * s_nd));
    }

    if (parts.zeros) {
        const auto measure = find_roots<P>(sol.residual);
        rec.trimmed_leading = measure.trimmed_leading;
        for (const auto& z : measure.points) rec.zero_points.push_back(to_complex_double(z));
        const auto disc = discrepancy<P>(measure);
        rec.discrepancy = to_double(disc.value);
        rec.discrepancy_exact = !disc.approximate;
        for (const auto& m : weyl_moments<P>(measure, kWeylMax)) {
            const double v = to_double(m);
            rec.weyl.push_back(v);
            if (v > rec.weyl_max) rec.weyl_max = v;
        }
        const auto radial = radial_report<P>(measure, R(kRadialEps));
        rec.radial_max_dev = to_double(radial.max_deviation);
        rec.radial_shell_fraction = to_double(radial.shell_fraction);
    }

    if (!parts.asymptotics) {
        rec.ok = true;
        return rec;
    }
    rec.max_on_circle =
        to_double(circle_max_detail<P>(sol.residual,
                                       std::max<std::size_t>(4096, 8 * (sol.residual.size() - 1)))
                      .max_on_circle);
    {
        using std::abs;
        rec.dlead_abs = to_double(abs(sol.residual.back()));
    }
    try {
        const auto mh = monic_h<P>(sol);
        rec.h_defined = true;
        rec.h = to_double(mh.h);
        rec.log_h_over_n = to_double(mh.log_h_over_n);
    } catch (const numeric_error&) {
        rec.h_defined = false;  // no phase alignment at this n; reported as nan
    }

    if (f.boundary_count() > 0) {
        rec.has_g = true;
        rec.g = to_complex_double(g_determinant<P>(f, n));
        const auto dn = dn_correlation<P>(w, f, {n}).front();
        rec.dn_skipped = dn.skipped;
        if (!dn.skipped) rec.dn_ratio = to_complex_double(dn.ratio);
    }
    rec.det_ratio = to_double(det_lower_bound_ratio<P>(w, f, n));

    rec.ok = true;
    return rec;
}

inline double nan_value() { return std::nan(""); }

}  // namespace detail

template <class P>
run_report run_experiment(const experiment_config& cfg, std::size_t jobs = 1,
                          const run_parts& parts = run_parts{}) {
    const auto w = cfg.weight.instantiate<P>();
    const auto f = cfg.instantiate_target<P>();
    const auto ns = cfg.n_values();

    run_report report;
    report.config = cfg;
    report.records.resize(ns.size());

    // Warm the shared partial-sum cache once; the sweep then only reads it.
    w.partial_sum(cfg.n_end + f.degree());

    std::atomic<std::size_t> next{0};
    const std::size_t workers = jobs == 0 ? 1 : std::min(jobs, std::max<std::size_t>(ns.size(), 1));
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ns.size()) return;
            run_record& rec = report.records[i];
            try {
                rec = detail::compute_record<P>(w, f, ns[i], parts);
            } catch (const std::exception& e) {
                rec = run_record{};
                rec.n = ns[i];
                rec.ok = false;
                rec.error = e.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (const auto& rec : report.records)
        if (!rec.ok) ++report.failed;
    if (2 * report.failed > report.records.size())
        throw numeric_error("more than half of the n-sweep failed (" +
                            std::to_string(report.failed) + " of " +
                            std::to_string(report.records.size()) +
                            "); first error: " + [&]() -> std::string {
                                for (const auto& r : report.records)
                                    if (!r.ok) return r.error;
                                return "none";
                            }());

    // Summary verdicts over the records that completed.
    double max_gap = 0.0, max_adecay = 0.0;
    for (const auto& rec : report.records) {
        if (!rec.ok) continue;
        if (rec.route_gap > max_gap) max_gap = rec.route_gap;
        for (const double v : rec.a_scaled_s)
            if (v > max_adecay) max_adecay = v;
    }
    report.verdicts.push_back({"all_n_completed", report.failed == 0,
                               std::to_string(report.records.size() - report.failed) + " of " +
                                   std::to_string(report.records.size()) + " succeeded"});
    report.verdicts.push_back({"route_agreement_1e-8", max_gap <= 1e-8,
                               "max relative gap " + fmt17(max_gap)});
    report.verdicts.push_back({"a_decay_bounded", max_adecay <= 1e3,
                               "max |sigma A| * S " + fmt17(max_adecay)});
    return report;
}

// ---------------------------------------------------------------------------
// Fixed-schema emission.  Columns are append-only; see README for the list.

inline void write_approximant_csv(const std::string& path, const run_report& rep) {
    std::vector<std::string> head{"n", "d0", "wiener"};
    const std::size_t d = rep.config.zeros.size();
    for (std::size_t l = 0; l < d; ++l) head.push_back("a_abs_" + fmt_index(l + 1));
    head.push_back("route_gap");
    csv_writer csv(path, head);
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        std::vector<std::string> row{fmt_index(rec.n), fmt17(rec.d0), fmt17(rec.wiener)};
        for (std::size_t l = 0; l < d; ++l)
            row.push_back(fmt17(l < rec.a_abs.size() ? rec.a_abs[l] : detail::nan_value()));
        row.push_back(fmt17(rec.route_gap));
        csv.write_row(row);
    }
}

inline void write_zeros_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "re", "im", "modulus", "argument"});
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        for (const auto& z : rec.zero_points) {
            const double arg = std::atan2(z.imag(), z.real());
            csv.write_row({fmt_index(rec.n), fmt17(z.real()), fmt17(z.imag()),
                           fmt17(std::abs(z)), fmt17(arg)});
        }
    }
}

inline ordered_json zeros_json_payload(const run_report& rep) {
    ordered_json arr = ordered_json::array();
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        ordered_json o;
        o["n"] = rec.n;
        o["discrepancy"] = rec.discrepancy;
        o["exact"] = rec.discrepancy_exact;
        o["weyl"] = rec.weyl;
        o["radial"] = {{"max_deviation", rec.radial_max_dev},
                       {"shell_fraction", rec.radial_shell_fraction}};
        o["trimmed_leading"] = rec.trimmed_leading;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline void write_equidist_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "num_zeros", "discrepancy", "exact", "weyl_max",
                          "radial_max_dev", "radial_shell_fraction"});
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        csv.write_row({fmt_index(rec.n), fmt_index(rec.zero_points.size()),
                       fmt17(rec.discrepancy), rec.discrepancy_exact ? "1" : "0",
                       fmt17(rec.weyl_max), fmt17(rec.radial_max_dev),
                       fmt17(rec.radial_shell_fraction)});
    }
}

inline void write_hn_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "maxcircle", "d0", "dlead", "H", "logH_over_n"});
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        csv.write_row({fmt_index(rec.n), fmt17(rec.max_on_circle), fmt17(rec.d0),
                       fmt17(rec.dlead_abs),
                       fmt17(rec.h_defined ? rec.h : detail::nan_value()),
                       fmt17(rec.h_defined ? rec.log_h_over_n : detail::nan_value())});
    }
}

inline void write_gn_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "re_g", "im_g", "ratio"});
    for (const auto& rec : rep.records) {
        if (!rec.ok || !rec.has_g) continue;
        csv.write_row({fmt_index(rec.n), fmt17(rec.g.real()), fmt17(rec.g.imag()),
                       fmt17(rec.dn_skipped ? detail::nan_value() : std::abs(rec.dn_ratio))});
    }
}

inline void write_adecay_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "zero_index", "value"});
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        for (std::size_t l = 0; l < rec.a_scaled_s.size(); ++l)
            csv.write_row({fmt_index(rec.n), fmt_index(l + 1), fmt17(rec.a_scaled_s[l])});
    }
}

inline void write_detratio_csv(const std::string& path, const run_report& rep) {
    csv_writer csv(path, {"n", "ratio"});
    for (const auto& rec : rep.records) {
        if (!rec.ok) continue;
        csv.write_row({fmt_index(rec.n), fmt17(rec.det_ratio)});
    }
}

inline ordered_json run_json_payload(const run_report& rep) {
    ordered_json env;
    env["library"] = "opalab 0.1.0";
    env["precision_bits"] = rep.config.precision_bits;
    if (rep.config.weight.family == weight_family::dirichlet)
        env["weight"] = {{"kind", "dirichlet"}, {"alpha", rep.config.weight.alpha}};
    else
        env["weight"] = {{"kind", "table"},
                         {"length", rep.config.weight.values.size()}};
    ordered_json zs = ordered_json::array();
    for (const auto& z : rep.config.zeros) zs.push_back({z.real(), z.imag()});
    env["zeros"] = std::move(zs);
    env["n_range"] = {{"start", rep.config.n_start},
                      {"end", rep.config.n_end},
                      {"step", rep.config.n_step}};
    env["seeds"] = rep.config.seeds;

    ordered_json records = ordered_json::array();
    for (const auto& rec : rep.records) {
        ordered_json o;
        o["n"] = rec.n;
        o["ok"] = rec.ok;
        if (!rec.ok) {
            o["error"] = rec.error;
            records.push_back(std::move(o));
            continue;
        }
        o["d0"] = rec.d0;
        o["wiener"] = rec.wiener;
        o["route_gap"] = rec.route_gap;
        if (rec.h_defined) o["H"] = rec.h;
        else o["H"] = nullptr;
        o["discrepancy"] = rec.discrepancy;
        o["weyl_max"] = rec.weyl_max;
        if (rec.has_g) o["g"] = {rec.g.real(), rec.g.imag()};
        else o["g"] = nullptr;
        if (rec.has_g && !rec.dn_skipped)
            o["dn_ratio"] = {rec.dn_ratio.real(), rec.dn_ratio.imag()};
        else o["dn_ratio"] = nullptr;
        o["det_ratio"] = rec.det_ratio;
        records.push_back(std::move(o));
    }

    ordered_json verdicts = ordered_json::array();
    for (const auto& v : rep.verdicts)
        verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});

    ordered_json out;
    out["environment"] = std::move(env);
    out["records"] = std::move(records);
    out["verdicts"] = std::move(verdicts);
    return out;
}

inline ordered_json plan_json_payload(const subsequence_plan& plan) {
    ordered_json out;
    out["angles"] = plan.angles;
    out["eps"] = plan.eps;
    out["indices"] = plan.indices;
    return out;
}

/// Write every output the config requests into cfg.output_dir.  run.json is
/// always written: it is the report of record; the formats list selects the
/// per-n table outputs.
inline void write_outputs(const run_report& rep) {
    const experiment_config& cfg = rep.config;
    ensure_directory(cfg.output_dir);
    const auto path = [&](const char* name) { return cfg.output_dir + "/" + name; };

    write_json_file(path("run.json"), run_json_payload(rep));
    if (cfg.want_csv) {
        write_approximant_csv(path("approximant.csv"), rep);
        write_zeros_csv(path("zeros.csv"), rep);
        write_equidist_csv(path("equidist.csv"), rep);
        write_hn_csv(path("hn.csv"), rep);
        write_gn_csv(path("gn.csv"), rep);
        write_adecay_csv(path("adecay.csv"), rep);
        write_detratio_csv(path("detratio.csv"), rep);
    }
    if (cfg.want_json) write_json_file(path("zeros.json"), zeros_json_payload(rep));

    if (cfg.has_subsequence) {
        std::vector<double> angles;
        for (const auto& z : cfg.zeros)
            if (std::abs(std::abs(z) - 1.0) <= 1e-9)
                angles.push_back(std::atan2(z.imag(), z.real()));
        if (!angles.empty()) {
            const auto plan = plan_subsequence(
                angles, cfg.subsequence_eps, cfg.n_start,
                std::min(cfg.n_end, cfg.n_start + cfg.subsequence_max_scan));
            write_json_file(path("plan.json"), plan_json_payload(plan));
        }
    }
}

}  // namespace opalab
