#pragma once

#include "relbell/dynamics.hpp"

#include <string>
#include <vector>

namespace relbell {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    /// Guidance law under test; tests swap in a faulty one to see the suite catch it.
    GuidanceFn guidance = guidance_velocity;
    std::size_t equivariance_samples = 10000;
    std::uint64_t seed = 20240611;
};

/// Fast invariant suite: exact proper times, closed form vs spectral evolver,
/// equivariance in every mode, singlet weights.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace relbell
