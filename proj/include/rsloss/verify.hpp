#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsloss {

struct CheckReport {
    std::string family;
    int checks = 0;
    int failed = 0;
    std::vector<std::string> failures;  ///< first few failure descriptions

    [[nodiscard]] bool passed() const noexcept { return failed == 0 && checks > 0; }
};

/// Check families run by `rsloss verify`.
const std::vector<std::string>& verify_families();

/// Oracle cross-checks: closed forms against numeric minimization, analytic
/// moments against quadrature, and symmetry identities. Randomized inputs are
/// drawn from `seed`; an unknown family name throws ConfigError.
std::vector<CheckReport> run_verify(const std::optional<std::string>& family, std::uint64_t seed);

}  // namespace rsloss
