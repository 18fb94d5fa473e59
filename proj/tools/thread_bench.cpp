// Compares the concurrent execution paths against their serial reference
// implementations: the verification campaign (trials fanned out across
// threads) and the Monte Carlo estimator (fixed-size blocks). Both must
// return bit-identical results either way; this reports the wall-clock win.

#include <chrono>
#include <cstdio>
#include <cstdint>

#include "polar/verify.hpp"
#include "polar/wick.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename F>
std::uint64_t time_ms(const F& f) {
    const auto started = std::chrono::steady_clock::now();
    f();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
}

bool same_outcome(const polar::RunReport& a, const polar::RunReport& b) {
    if (a.trials.size() != b.trials.size() || a.failures != b.failures) {
        return false;
    }
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        if (a.trials[i].seed != b.trials[i].seed || a.trials[i].agreed != b.trials[i].agreed) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif
    int rc = 0;

    {
        polar::VerifyOptions options;
        options.order = 5;
        options.dim = 3;
        options.trials = 400;
        options.seed = 2026;
        options.parallel = false;
        polar::RunReport serial, parallel;
        const std::uint64_t serial_ms = time_ms([&] { serial = polar::run_verify_campaign(options); });
        options.parallel = true;
        const std::uint64_t parallel_ms =
            time_ms([&] { parallel = polar::run_verify_campaign(options); });
        const bool identical = same_outcome(serial, parallel);
        std::printf("verify campaign (n=5 d=3, 400 trials): serial %llu ms, parallel %llu ms, "
                    "outcomes %s\n",
                    static_cast<unsigned long long>(serial_ms),
                    static_cast<unsigned long long>(parallel_ms),
                    identical ? "identical" : "DIFFER");
        if (!identical || !serial.ok() || !parallel.ok()) {
            rc = 1;
        }
    }

    {
        const polar::Covariance cov = polar::Covariance::identity(2);
        const std::vector<std::uint32_t> idx{0, 0, 1, 1};
        const std::uint64_t samples = 4000000;
        polar::MonteCarloResult serial, parallel;
        const std::uint64_t serial_ms =
            time_ms([&] { serial = polar::monte_carlo_estimate(cov, idx, samples, 7, false); });
        const std::uint64_t parallel_ms =
            time_ms([&] { parallel = polar::monte_carlo_estimate(cov, idx, samples, 7, true); });
        const bool identical = serial.mean == parallel.mean &&
                               serial.stderr_of_mean == parallel.stderr_of_mean;
        std::printf("monte carlo (4e6 samples): serial %llu ms, parallel %llu ms, results %s\n",
                    static_cast<unsigned long long>(serial_ms),
                    static_cast<unsigned long long>(parallel_ms),
                    identical ? "bit-identical" : "DIFFER");
        if (!identical) {
            rc = 1;
        }
    }

    return rc;
}
