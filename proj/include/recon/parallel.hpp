#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "recon/report.hpp"

namespace recon {

/// Worker count: explicit value if positive, else RECON_CENSUS_JOBS, else 1.
inline int resolve_jobs(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RECON_CENSUS_JOBS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

/// Runs `body(k, report)` for k = 1..count on up to `jobs` threads, one
/// partial report per k, then merges in k order so the reported first
/// counterexample does not depend on scheduling.
template <class Body>
VerificationReport reduce_over_points(const std::string& check, int p, int count, int jobs,
                                      Body&& body) {
    std::vector<VerificationReport> partial(static_cast<std::size_t>(count),
                                            VerificationReport(check, p));
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int k = next++; k <= count; k = next++) body(k, partial[static_cast<std::size_t>(k - 1)]);
    };
    int threads = std::clamp(jobs, 1, count);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    VerificationReport merged(check, p);
    for (const auto& r : partial) merged.absorb(r);
    return merged;
}

} // namespace recon
