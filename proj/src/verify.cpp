#include "polar/verify.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>

#include "polar/json_io.hpp"
#include "polar/rng.hpp"

namespace polar {

namespace {

void check_bounds(const VerifyOptions& o) {
    if (o.order < 1 || o.order > 10) {
        throw std::invalid_argument("verify campaigns support 1 <= n <= 10");
    }
    if (o.dim < 1 || o.dim > 6) {
        throw std::invalid_argument("verify campaigns support 1 <= d <= 6");
    }
    if (o.trials > 1000000) {
        throw std::invalid_argument("verify campaigns support at most 10^6 trials");
    }
    if (o.x0.has_value()) {
        if (o.x0->dim() != o.dim) {
            throw DimensionMismatch("base point dimension does not match the campaign");
        }
        if (o.x0->field() != o.field) {
            throw FieldMismatch("base point from a different field");
        }
    }
}

Scalar run_method(Method m, const TrialInstance& inst, const DiagonalFn& diag) {
    switch (m) {
        case Method::operator_calculus:
            return polarize_operator(diag, inst.xs);
        case Method::subset:
            return polarize_subset_sum(diag, inst.xs);
        case Method::gray:
            return polarize_subset_sum_gray(diag, inst.xs);
        case Method::offset:
            return polarize_offset(diag, inst.xs, inst.x0);
        case Method::signed_sum:
            return polarize_signed(diag, inst.xs);
        case Method::derivative:
            return coefficient_extraction(inst.tensor, inst.xs);
        case Method::recover:
            return recover(diag, inst.xs, Method::subset);
    }
    throw std::logic_error("unreachable method");
}

}  // namespace

TrialInstance make_trial_instance(const VerifyOptions& options, std::uint64_t trial_seed) {
    SymMultiMap tensor = random_symmetric(options.order, options.dim, options.field,
                                          derive_seed(trial_seed, 0), options.tensor_options);
    std::vector<Vector> xs;
    xs.reserve(options.order);
    for (std::uint32_t i = 0; i < options.order; ++i) {
        xs.push_back(random_vector(options.dim, options.field, derive_seed(trial_seed, i + 1),
                                   options.tensor_options));
    }
    Vector x0 = options.x0.has_value()
                    ? *options.x0
                    : random_vector(options.dim, options.field,
                                    derive_seed(trial_seed, options.order + 1),
                                    options.tensor_options);
    return TrialInstance{std::move(tensor), std::move(xs), std::move(x0)};
}

RunReport run_verify_campaign(const VerifyOptions& options) {
    check_bounds(options);
    RunReport report;
    report.options = options;
    if (report.options.methods.empty()) {
        report.options.methods = default_methods(options.field);
    }
    const std::vector<Method>& methods = report.options.methods;
    report.trials.resize(options.trials);
    std::vector<std::atomic<std::uint64_t>> method_ns(methods.size());
    for (auto& a : method_ns) {
        a.store(0);
    }

    const Scalar n_factorial =
        Scalar::from_integer(factorial(options.order), options.field);
    const Scalar two_pow_n = Scalar::from_integer(2, options.field).pow(options.order);

    const auto run_trial = [&](std::uint64_t t) {
        TrialRecord& rec = report.trials[t];
        rec.index = t;
        rec.seed = derive_seed(options.seed, t);
        try {
            const TrialInstance inst = make_trial_instance(report.options, rec.seed);
            const DiagonalFn diag = inst.tensor.diagonal();
            const Scalar direct = inst.tensor.eval_direct(inst.xs);
            const Scalar expected = n_factorial * direct;
            for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                const Method m = methods[mi];
                const auto started = std::chrono::steady_clock::now();
                Scalar got = run_method(m, inst, diag);
                const auto elapsed = std::chrono::steady_clock::now() - started;
                method_ns[mi].fetch_add(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()));
                Scalar want = expected;
                if (m == Method::signed_sum) {
                    want = expected * two_pow_n;
                } else if (m == Method::recover) {
                    want = direct;
                }
                if (got != want) {
                    rec.agreed = false;
                    rec.detail = "method " + method_name(m) + " returned " + got.str() +
                                 ", expected " + want.str();
                    return;
                }
            }
        } catch (const CapabilityError& e) {
            rec.agreed = false;
            rec.capability_refused = true;
            rec.detail = e.what();
        }
    };

#ifdef _OPENMP
    if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(options.trials); ++t) {
            run_trial(static_cast<std::uint64_t>(t));
        }
    } else
#endif
    {
        for (std::uint64_t t = 0; t < options.trials; ++t) {
            run_trial(t);
        }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        report.engine_ns.emplace_back(methods[mi], method_ns[mi].load());
    }
    for (const TrialRecord& rec : report.trials) {
        if (rec.agreed) {
            continue;
        }
        if (rec.capability_refused) {
            if (report.capability_error.empty()) {
                report.capability_error = rec.detail;
            }
            continue;
        }
        ++report.failures;
        if (!report.first_failure.has_value()) {
            report.first_failure = rec.index;
            const TrialInstance inst = make_trial_instance(report.options, rec.seed);
            nlohmann::json vectors = nlohmann::json::array();
            for (const Vector& x : inst.xs) {
                vectors.push_back(vector_to_json(x));
            }
            report.reproducer = nlohmann::json{{"seed", options.seed},
                                               {"trial", rec.index},
                                               {"trial_seed", rec.seed},
                                               {"tensor", tensor_to_json(inst.tensor)},
                                               {"vectors", std::move(vectors)},
                                               {"x0", vector_to_json(inst.x0)},
                                               {"detail", rec.detail}};
        }
    }
    return report;
}

nlohmann::json report_to_json(const RunReport& report) {
    const VerifyOptions& o = report.options;
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : o.methods) {
        methods.push_back(method_name(m));
    }
    nlohmann::json timing = nlohmann::json::object();
    for (const auto& [m, ns] : report.engine_ns) {
        timing[method_name(m)] = ns;
    }
    // Per-trial listing capped: campaigns can run 10^6 trials and the seeds
    // are re-derivable from the master seed.
    constexpr std::size_t kMaxListed = 1000;
    nlohmann::json trials = nlohmann::json::array();
    for (const TrialRecord& rec : report.trials) {
        if (trials.size() >= kMaxListed) {
            break;
        }
        trials.push_back(nlohmann::json{
            {"index", rec.index}, {"seed", rec.seed}, {"agreed", rec.agreed}});
    }
    nlohmann::json out{{"order", o.order},
                       {"dim", o.dim},
                       {"trials", o.trials},
                       {"field", field_to_json(o.field)},
                       {"methods", std::move(methods)},
                       {"seed", o.seed},
                       {"parallel", o.parallel},
                       {"engine_ns", std::move(timing)},
                       {"failures", report.failures},
                       {"trials_listed", std::move(trials)},
                       {"ok", report.ok()}};
    if (report.first_failure.has_value()) {
        out["first_failure"] = *report.first_failure;
        out["reproducer"] = report.reproducer;
    }
    if (!report.capability_error.empty()) {
        out["capability_error"] = report.capability_error;
    }
    return out;
}

}  // namespace polar
