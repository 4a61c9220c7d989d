#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uebkit {

inline constexpr std::uint64_t kDefaultSeed = 20201;

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    // Worst value of the suite's tolerance-sensitive quantity and its meaning.
    double worst = 0.0;
    std::string worst_label;
    std::string first_violation;

    bool passed() const { return violations == 0; }
};

/// Suite names in default run order.
const std::vector<std::string_view>& suite_names();

/// Default instance count for a suite (grid suites ignore counts).
std::size_t default_count(std::string_view suite);

/// Runs one invariant battery over seeds seed, seed+1, ... Throws
/// Error(BadParam) for an unknown suite.
SuiteResult run_suite(std::string_view suite, std::optional<std::size_t> count = std::nullopt,
                      std::uint64_t seed = kDefaultSeed);

}  // namespace uebkit
