#ifndef POLAR_VERIFY_HPP
#define POLAR_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polar/polarize.hpp"
#include "polar/symtensor.hpp"

namespace polar {

// Randomized agreement campaign: per trial, draw a tensor and argument
// vectors, run every requested engine, and compare against n! times the
// definitional evaluation (the recover method compares against the
// definitional evaluation itself).
struct VerifyOptions {
    std::uint32_t order = 2;
    std::uint32_t dim = 2;
    std::uint64_t trials = 100;
    FieldDescriptor field = FieldDescriptor::rationals();
    std::vector<Method> methods;  // empty = all methods valid for the field
    std::uint64_t seed = 0;
    std::optional<Vector> x0;     // fixed base point; random per trial if absent
    bool parallel = true;
    RandomTensorOptions tensor_options;
};

struct TrialRecord {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;  // per-trial derived seed; replays the instance
    bool agreed = true;
    bool capability_refused = false;
    std::string detail;  // mismatch or refusal description
};

struct RunReport {
    VerifyOptions options;                 // with methods resolved
    std::vector<TrialRecord> trials;       // in trial order
    std::vector<std::pair<Method, std::uint64_t>> engine_ns;  // cumulative
    std::uint64_t failures = 0;
    std::optional<std::uint64_t> first_failure;
    nlohmann::json reproducer;     // full instance JSON for the first failure
    std::string capability_error;  // set when a method refuses the field

    bool ok() const { return failures == 0 && capability_error.empty(); }
};

// The exact instance a given trial works on (also used to rebuild
// reproducers from a report).
struct TrialInstance {
    SymMultiMap tensor;
    std::vector<Vector> xs;
    Vector x0;
};
TrialInstance make_trial_instance(const VerifyOptions& options, std::uint64_t trial_seed);

RunReport run_verify_campaign(const VerifyOptions& options);

nlohmann::json report_to_json(const RunReport& report);

}  // namespace polar

#endif
