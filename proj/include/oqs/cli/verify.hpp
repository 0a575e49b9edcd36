// verify.hpp: seeded invariant suites behind `oqs verify`

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace oqs::cli {

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Negative control: random models get a non-Hermitian Hamiltonian, so
    /// every suite that builds one must report a validation failure.
    bool corrupt_hamiltonian = false;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs every suite. Each suite draws from its own generator seeded from
/// (seed, suite index), so results do not depend on execution order.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// One line per suite plus a summary; returns 0 iff every suite passed.
int cmd_verify(const VerifyOptions& options, std::ostream& out);

} // namespace oqs::cli
