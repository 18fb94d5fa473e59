// Command-line driver: symbolic identity printing, randomized verification
// campaigns, Gaussian moment evaluation, set-system checks, and the
// naive-vs-Gray enumeration benchmark.
//
// Exit codes: 0 success, 1 identity violation (a reproducer is printed),
// 2 usage or input error, 3 field-capability refusal.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polar/bench.hpp"
#include "polar/identity_text.hpp"
#include "polar/inclexcl.hpp"
#include "polar/json_io.hpp"
#include "polar/verify.hpp"
#include "polar/wick.hpp"

namespace {

using nlohmann::json;

polar::FieldDescriptor parse_field(const std::string& text) {
    if (text == "rational") {
        return polar::FieldDescriptor::rationals();
    }
    if (text.rfind("gfp:", 0) == 0) {
        const std::string digits = text.substr(4);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw polar::ParseError("invalid field \"" + text + "\": expected gfp:<prime>");
        }
        std::uint64_t p = 0;
        try {
            p = std::stoull(digits);
        } catch (const std::exception&) {
            throw polar::ParseError("invalid field \"" + text + "\": prime out of range");
        }
        try {
            return polar::FieldDescriptor::gf(p);
        } catch (const std::invalid_argument& e) {
            throw polar::ParseError("invalid field \"" + text + "\": " + e.what());
        }
    }
    throw polar::ParseError("invalid field \"" + text + "\" (expected rational or gfp:<prime>)");
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        out.push_back(item);
    }
    return out;
}

std::vector<std::uint32_t> parse_indices(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (const std::string& item : split_commas(text)) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw polar::ParseError("invalid index list \"" + text + "\"");
        }
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (out.empty()) {
        throw polar::ParseError("empty index list");
    }
    return out;
}

int cmd_expand(std::uint32_t n, const std::string& style) {
    std::cout << polar::expand_identity(n, polar::parse_expand_style(style)) << "\n";
    return 0;
}

int cmd_verify(const polar::VerifyOptions& options, bool as_json) {
    const polar::RunReport report = polar::run_verify_campaign(options);
    if (as_json) {
        std::cout << polar::report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << "campaign: n=" << report.options.order << " d=" << report.options.dim
                  << " trials=" << report.options.trials
                  << " field=" << report.options.field.str()
                  << " seed=" << report.options.seed << "\n";
        std::cout << "methods:";
        for (polar::Method m : report.options.methods) {
            std::cout << " " << polar::method_name(m);
        }
        std::cout << "\n";
        for (const auto& [m, ns] : report.engine_ns) {
            std::cout << "  " << polar::method_name(m) << ": " << ns << " ns total\n";
        }
        if (!report.capability_error.empty()) {
            std::cout << "capability error: " << report.capability_error << "\n";
        } else if (report.failures > 0) {
            std::cout << "FAILURES: " << report.failures << " of " << report.options.trials
                      << "\n";
            std::cout << "reproducer: " << report.reproducer.dump() << "\n";
        } else {
            std::cout << "all " << report.options.trials << " trials agreed\n";
        }
    }
    if (!report.capability_error.empty()) {
        return 3;
    }
    return report.failures == 0 ? 0 : 1;
}

int cmd_wick(const std::string& cov_file, const std::string& indices,
             std::uint64_t mc_samples, std::uint64_t seed, bool serial, bool as_json) {
    const polar::Covariance cov = polar::covariance_from_json(polar::load_json_file(cov_file));
    const std::vector<std::uint32_t> idx = parse_indices(indices);
    const polar::Scalar exact = polar::isserlis(cov, idx);
    json out{{"exact", exact.str()}};
    if (mc_samples > 0) {
        const polar::MonteCarloResult mc =
            polar::monte_carlo_estimate(cov, idx, mc_samples, seed, !serial);
        out["estimate"] = mc.mean;
        out["stderr"] = mc.stderr_of_mean;
        out["samples"] = mc.samples;
        const double dev = mc.stderr_of_mean > 0.0
                               ? std::abs(exact.rat().get_d() - mc.mean) / mc.stderr_of_mean
                               : 0.0;
        out["deviation_in_stderrs"] = dev;
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << exact.str() << "\n";
        if (mc_samples > 0) {
            std::cout << "estimate " << out["estimate"].get<double>() << " +- "
                      << out["stderr"].get<double>() << " (" << out["samples"].get<std::uint64_t>()
                      << " samples, seed " << seed << ", deviation "
                      << out["deviation_in_stderrs"].get<double>() << " stderr)\n";
        }
    }
    return 0;
}

int cmd_inclexcl(const std::string& sets_file, bool as_json) {
    const polar::SetSystem s = polar::set_system_from_json(polar::load_json_file(sets_file));
    const std::int64_t direct = polar::complement_intersection_count(s);
    const std::int64_t alternating = polar::inclusion_exclusion(s);
    const bool pointwise = polar::verify_indicator_identity(s);
    const bool terms = polar::shift_terms_match_indicator(s.subset_count());
    const bool ok = direct == alternating && pointwise && terms;
    if (as_json) {
        std::cout << json{{"direct_count", direct},
                          {"alternating_sum", alternating},
                          {"indicator_identity", pointwise},
                          {"shift_terms_match", terms},
                          {"ok", ok}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "direct count:    " << direct << "\n";
        std::cout << "alternating sum: " << alternating << "\n";
        std::cout << "indicator identity: " << (pointwise ? "holds" : "VIOLATED") << "\n";
        std::cout << "shift terms match:  " << (terms ? "yes" : "NO") << "\n";
        std::cout << (ok ? "ok" : "MISMATCH") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_bench(const polar::BenchConfig& config, bool as_json) {
    const std::vector<polar::BenchRow> rows = polar::run_bench(config);
    bool all_equal = true;
    if (as_json) {
        json arr = json::array();
        for (const polar::BenchRow& r : rows) {
            arr.push_back(json{{"n", r.n},
                               {"equal", r.results_equal},
                               {"naive_vector_ops", r.naive_vector_ops},
                               {"gray_vector_ops", r.gray_vector_ops},
                               {"naive_ns", r.naive_ns},
                               {"gray_ns", r.gray_ns}});
            all_equal = all_equal && r.results_equal;
        }
        std::cout << json{{"seed", config.seed}, {"dim", config.dim}, {"rows", arr}}.dump(2)
                  << "\n";
    } else {
        std::cout << "seed " << config.seed << ", d=" << config.dim << ", "
                  << config.repetitions << " repetitions (median)\n";
        std::cout << "  n  equal      naive ops       gray ops        naive ns         gray ns\n";
        for (const polar::BenchRow& r : rows) {
            std::printf("%3u  %5s %14llu %14llu %15llu %15llu\n", r.n,
                        r.results_equal ? "yes" : "NO",
                        static_cast<unsigned long long>(r.naive_vector_ops),
                        static_cast<unsigned long long>(r.gray_vector_ops),
                        static_cast<unsigned long long>(r.naive_ns),
                        static_cast<unsigned long long>(r.gray_ns));
            all_equal = all_equal && r.results_equal;
        }
    }
    return all_equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarization identities: expansion, verification, Gaussian moments"};
    app.require_subcommand(1);
    int rc = 0;

    // expand
    auto* expand = app.add_subcommand("expand", "print a polarization identity symbolically");
    std::uint32_t expand_n = 2;
    std::string expand_style = "subset";
    expand->add_option("--n", expand_n, "number of arguments (1..8)")->required();
    expand->add_option("--style", expand_style, "subset|offset|signed");
    expand->callback([&] { rc = cmd_expand(expand_n, expand_style); });

    // verify
    auto* verify = app.add_subcommand("verify", "randomized engine-agreement campaign");
    std::uint32_t verify_n = 3, verify_d = 2;
    std::uint64_t verify_trials = 100, verify_seed = 0;
    std::string verify_field = "rational", verify_methods, verify_x0;
    bool verify_json = false, verify_serial = false;
    verify->add_option("--n", verify_n, "tensor order (1..10)");
    verify->add_option("--d", verify_d, "dimension (1..6)");
    verify->add_option("--trials", verify_trials, "number of random instances (<= 10^6)");
    verify->add_option("--field", verify_field, "rational or gfp:<prime>");
    verify->add_option("--methods", verify_methods,
                       "comma list of operator|subset|gray|offset|signed|derivative|recover; "
                       "default: all engines valid for the field; 'all' adds recover");
    verify->add_option("--seed", verify_seed, "master seed (printed; replays the campaign)");
    verify->add_option("--x0", verify_x0,
                       "JSON vector used as the offset base point (default: random per trial)");
    verify->add_flag("--json", verify_json, "machine-readable report");
    verify->add_flag("--serial", verify_serial, "disable concurrent trials");
    verify->callback([&] {
        polar::VerifyOptions options;
        options.order = verify_n;
        options.dim = verify_d;
        options.trials = verify_trials;
        options.field = parse_field(verify_field);
        options.seed = verify_seed;
        options.parallel = !verify_serial;
        if (!verify_methods.empty() && verify_methods != "default") {
            if (verify_methods == "all") {
                options.methods = polar::default_methods(options.field);
                options.methods.push_back(polar::Method::recover);
            } else {
                for (const std::string& name : split_commas(verify_methods)) {
                    options.methods.push_back(polar::parse_method(name));
                }
            }
        }
        if (!verify_x0.empty()) {
            options.x0 = polar::vector_from_json(polar::parse_json_text(verify_x0),
                                                 options.field);
        }
        rc = cmd_verify(options, verify_json);
    });

    // wick
    auto* wick = app.add_subcommand("wick", "exact Gaussian product moments");
    std::string wick_cov, wick_indices;
    std::uint64_t wick_mc = 0, wick_seed = 0;
    bool wick_json = false, wick_serial = false;
    wick->add_option("--cov", wick_cov, "covariance JSON file")->required();
    wick->add_option("--indices", wick_indices, "comma list of variable indices")->required();
    wick->add_option("--mc", wick_mc, "Monte Carlo cross-check with this many samples");
    wick->add_option("--seed", wick_seed, "Monte Carlo seed");
    wick->add_flag("--json", wick_json, "machine-readable output");
    wick->add_flag("--serial", wick_serial, "disable concurrent sampling");
    wick->callback(
        [&] { rc = cmd_wick(wick_cov, wick_indices, wick_mc, wick_seed, wick_serial, wick_json); });

    // inclexcl
    auto* incl = app.add_subcommand("inclexcl", "inclusion-exclusion checks on a set system");
    std::string incl_sets;
    bool incl_json = false;
    incl->add_option("--sets", incl_sets, "set-system JSON file")->required();
    incl->add_flag("--json", incl_json, "machine-readable output");
    incl->callback([&] { rc = cmd_inclexcl(incl_sets, incl_json); });

    // bench
    auto* bench = app.add_subcommand("bench", "naive vs Gray-code subset enumeration");
    polar::BenchConfig config;
    bool bench_json = false;
    bench->add_option("--n-min", config.n_min, "smallest order");
    bench->add_option("--n-max", config.n_max, "largest order");
    bench->add_option("--d", config.dim, "dimension");
    bench->add_option("--reps", config.repetitions, "timing repetitions (median reported)");
    bench->add_option("--seed", config.seed, "instance seed");
    bench->add_flag("--json", bench_json, "machine-readable output");
    bench->callback([&] { rc = cmd_bench(config, bench_json); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const polar::CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const polar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
