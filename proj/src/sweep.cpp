// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/harness/sweep.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

namespace exactkrylov {

namespace {

constexpr std::array<std::pair<SweepAlgorithm, std::string_view>, 8> kNames{{
    {SweepAlgorithm::lanczos_mgs, "lanczos-mgs"},
    {SweepAlgorithm::lanczos_cgs, "lanczos-cgs"},
    {SweepAlgorithm::arnoldi, "arnoldi"},
    {SweepAlgorithm::bilanczos, "bilanczos"},
    {SweepAlgorithm::golub_kahan, "gk"},
    {SweepAlgorithm::block_lanczos_cgs, "blocklanczos-cgs"},
    {SweepAlgorithm::block_lanczos_mgs, "blocklanczos-mgs"},
    {SweepAlgorithm::deficient, "deficient"},
}};

}  // namespace

std::string to_string(SweepAlgorithm a) {
    for (const auto& [alg, name] : kNames)
        if (alg == a) return std::string(name);
    return "unknown";
}

SweepAlgorithm parse_sweep_algorithm(std::string_view text) {
    for (const auto& [alg, name] : kNames)
        if (name == text) return alg;
    std::string known;
    for (const auto& entry : kNames) known += (known.empty() ? "" : ", ") + std::string(entry.second);
    throw PreconditionViolation("unknown sweep algorithm '" + std::string(text) + "' (expected one of " + known + ")");
}

std::string ExactnessReport::reproducer() const {
    std::string s = "algorithm=" + to_string(algorithm) + " n=" + std::to_string(n);
    if (algorithm == SweepAlgorithm::block_lanczos_cgs || algorithm == SweepAlgorithm::block_lanczos_mgs) {
        s += " p=" + std::to_string(p);
    }
    s += " seed=" + std::to_string(seed) + " precision=" + std::string(to_string(precision));
    return s;
}

std::vector<ExactnessReport> exactness_sweep(const SweepConfig& config) {
    std::vector<ExactnessReport> reports;
    for (Precision prec : config.precisions)
        for (std::size_t n : config.sizes)
            for (std::uint64_t seed : config.seeds) {
                if (prec == Precision::binary64) {
                    reports.push_back(run_exactness_instance<double>(config.algorithm, n, seed, config.block_size));
                } else {
                    reports.push_back(run_exactness_instance<float>(config.algorithm, n, seed, config.block_size));
                }
            }
    std::sort(reports.begin(), reports.end());
    return reports;
}

}  // namespace exactkrylov
