// Command-line front end: declarative experiment configs in, fixed-schema
// CSV/JSON tables out.  Exit codes: 0 success, 1 config error, 2 numerical
// failure, 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opalab/config.hpp"
#include "opalab/run.hpp"
#include "opalab/verify.hpp"
#include "opalab/weights.hpp"

namespace {

using namespace opalab;

struct cli_options {
    std::string config_path;
    std::string out_dir;       // overrides config outputs.dir when nonempty
    std::string format;        // "", "csv", or "json"
    unsigned precision = 0;    // overrides config precision.bits when nonzero
    std::size_t jobs = 1;
};

experiment_config effective_config(const cli_options& opt) {
    experiment_config cfg = load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
    if (!opt.format.empty()) {
        cfg.want_csv = opt.format == "csv";
        cfg.want_json = opt.format == "json";
    }
    if (opt.precision != 0) {
        if (opt.precision != 53 && opt.precision != 113 && opt.precision != 256)
            throw config_error("--precision must be one of 53, 113, 256");
        cfg.precision_bits = opt.precision;
    }
    return cfg;
}

template <class P>
run_report sweep(const experiment_config& cfg, std::size_t jobs, const run_parts& parts) {
    return run_experiment<P>(cfg, jobs, parts);
}

run_report sweep_any(const experiment_config& cfg, std::size_t jobs, const run_parts& parts) {
    switch (cfg.precision_bits) {
        case 113: return sweep<p113>(cfg, jobs, parts);
        case 256: return sweep<p256>(cfg, jobs, parts);
        default: return sweep<p53>(cfg, jobs, parts);
    }
}

void write_plan_if_requested(const run_report& rep) {
    const experiment_config& cfg = rep.config;
    if (!cfg.has_subsequence) return;
    std::vector<double> angles;
    for (const auto& z : cfg.zeros)
        if (std::abs(std::abs(z) - 1.0) <= 1e-9)
            angles.push_back(std::atan2(z.imag(), z.real()));
    if (angles.empty()) return;
    const auto plan = plan_subsequence(angles, cfg.subsequence_eps, cfg.n_start,
                                       std::min(cfg.n_end,
                                                cfg.n_start + cfg.subsequence_max_scan));
    write_json_file(cfg.output_dir + "/plan.json", plan_json_payload(plan));
}

int do_validate_weight(const cli_options& opt) {
    const experiment_config cfg = effective_config(opt);
    const auto w = cfg.weight.instantiate<p53>();
    const auto rep = check_admissibility<p53>(w, std::max<std::size_t>(cfg.n_end, 16), 0.5);

    const char* divergence =
        rep.verdict == divergence_verdict::diverges_analytically
            ? "diverges"
            : (rep.verdict == divergence_verdict::converges_analytically ? "converges"
                                                                         : "inconclusive");
    const double growth_last =
        rep.growth_samples.empty() ? 0.0
                                   : to_double(rep.growth_samples.back().sup_over_power);
    std::printf("normalized:        %s\n", rep.normalized ? "yes" : "no");
    std::printf("monotone:          %s\n", rep.monotone ? "yes" : "no");
    std::printf("ratio_trend_ok:    %s\n", rep.ratio_trend_ok ? "yes" : "no");
    std::printf("sum_1/w:           %s\n", divergence);
    std::printf("growth_vs_n^1.5:   %.6g\n", growth_last);
    const bool pass = rep.hard_pass();
    std::printf("admissible:        %s\n", pass ? "PASS" : "FAIL");

    if (!opt.out_dir.empty() && cfg.want_json) {
        ensure_directory(cfg.output_dir);
        ordered_json j;
        j["normalized"] = rep.normalized;
        j["monotone"] = rep.monotone;
        j["ratio_trend_ok"] = rep.ratio_trend_ok;
        j["divergence"] = divergence;
        j["growth_vs_power"] = growth_last;
        j["admissible"] = pass;
        write_json_file(cfg.output_dir + "/weight.json", j);
    }
    return pass ? 0 : 3;
}

int do_table_command(const cli_options& opt, const std::string& which) {
    const experiment_config cfg = effective_config(opt);
    run_parts parts;
    parts.zeros = which == "zeros" || which == "equidist" || which == "run";
    parts.asymptotics = which == "asymptotics" || which == "run";
    run_report rep = sweep_any(cfg, opt.jobs, parts);

    ensure_directory(cfg.output_dir);
    const auto path = [&](const char* name) { return cfg.output_dir + "/" + name; };
    if (which == "approximant") {
        if (cfg.want_csv) write_approximant_csv(path("approximant.csv"), rep);
        if (cfg.want_json) write_json_file(path("run.json"), run_json_payload(rep));
    } else if (which == "zeros") {
        if (cfg.want_csv) write_zeros_csv(path("zeros.csv"), rep);
        if (cfg.want_json) write_json_file(path("zeros.json"), zeros_json_payload(rep));
    } else if (which == "equidist") {
        if (cfg.want_csv) write_equidist_csv(path("equidist.csv"), rep);
        if (cfg.want_json) write_json_file(path("zeros.json"), zeros_json_payload(rep));
    } else if (which == "asymptotics") {
        if (cfg.want_csv) {
            write_hn_csv(path("hn.csv"), rep);
            write_gn_csv(path("gn.csv"), rep);
            write_adecay_csv(path("adecay.csv"), rep);
            write_detratio_csv(path("detratio.csv"), rep);
        }
        write_plan_if_requested(rep);
    } else {  // run
        write_outputs(rep);
    }

    std::printf("%s: %zu of %zu n-values completed -> %s\n", which.c_str(),
                rep.records.size() - rep.failed, rep.records.size(),
                cfg.output_dir.c_str());
    return 0;
}

int do_verify(const std::string& criteria_arg, bool criteria_given,
              const std::string& out_dir) {
    std::vector<verify::criterion_result> results;
    if (!criteria_given) {
        results = verify::run_all();
    } else {
        std::vector<int> ids;
        std::size_t pos = 0;
        while (pos < criteria_arg.size()) {
            const std::size_t comma = criteria_arg.find(',', pos);
            const std::string tok =
                criteria_arg.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
            try {
                ids.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw config_error("--criteria expects comma-separated integers, got \"" +
                                   tok + "\"");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        results = verify::run_selected(ids);
    }

    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    if (!out_dir.empty()) {
        ensure_directory(out_dir);
        ordered_json arr = ordered_json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail}});
        write_json_file(out_dir + "/verify.json", arr);
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opalab: optimal polynomial approximants in weighted Hardy spaces"};
    app.require_subcommand(1);

    cli_options opt;
    std::string criteria_arg;
    bool criteria_given = false;

    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opt.config_path, "experiment config (JSON)");
        if (needs_config) c->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
        sub->add_option("--format", opt.format, "csv or json (overrides config)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--precision", opt.precision,
                        "floating-point precision in bits: 53, 113, 256");
        sub->add_option("--jobs", opt.jobs, "worker threads for the n-sweep");
    };

    add_common(app.add_subcommand("validate-weight",
                                  "check the configured weight sequence for admissibility"),
               true);
    add_common(app.add_subcommand("approximant",
                                  "per-n approximant table: d0, wiener norm, kernel "
                                  "weights, route agreement"),
               true);
    add_common(app.add_subcommand("zeros", "zeros of 1 - p_n f per n"), true);
    add_common(app.add_subcommand("equidist",
                                  "discrepancy, Weyl moments and radial stats per n"),
               true);
    add_common(app.add_subcommand("asymptotics",
                                  "H functional, G determinant, kernel-weight decay, "
                                  "Gram determinant ratio"),
               true);
    add_common(app.add_subcommand("run", "full pipeline: all tables plus run.json"), true);

    auto* verify_cmd =
        app.add_subcommand("verify", "run the built-in acceptance scenarios");
    auto* criteria_opt =
        verify_cmd->add_option("--criteria", criteria_arg,
                               "comma-separated criterion ids 1..11 (default: all)");
    verify_cmd->add_option("--out", opt.out_dir, "directory for verify.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    criteria_given = criteria_opt->count() > 0;

    try {
        if (app.got_subcommand("validate-weight")) return do_validate_weight(opt);
        if (app.got_subcommand("approximant")) return do_table_command(opt, "approximant");
        if (app.got_subcommand("zeros")) return do_table_command(opt, "zeros");
        if (app.got_subcommand("equidist")) return do_table_command(opt, "equidist");
        if (app.got_subcommand("asymptotics")) return do_table_command(opt, "asymptotics");
        if (app.got_subcommand("run")) return do_table_command(opt, "run");
        if (app.got_subcommand("verify"))
            return do_verify(criteria_arg, criteria_given, opt.out_dir);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
