#pragma once

#include <stdexcept>
#include <string>

namespace qlocal {

// Thrown when an operation would enumerate more than 2^budget_bits objects.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kDefaultBudgetBits = 25;

inline void check_budget(long bits, int budget_bits = kDefaultBudgetBits) {
    if (bits > budget_bits) {
        throw BudgetExceeded("enumeration of 2^" + std::to_string(bits) +
                             " objects exceeds budget 2^" + std::to_string(budget_bits));
    }
}

}  // namespace qlocal
