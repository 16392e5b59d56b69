#pragma once

#include <cstddef>

namespace autostruct {

// Resource guards. Quantifier-heavy formulas can blow up during subset
// construction or product exploration; operations consult these caps and
// throw BudgetExceeded instead of thrashing. The CLI overwrites the
// singleton once at startup (from flags or AUTOSTRUCT_BUDGET) before any
// library call; after that everything only reads it.
struct Limits {
    std::size_t max_subset_states = 1'000'000;  // determinization subsets
    std::size_t max_product_states = 1'000'000; // reachable product / on-the-fly states
    int max_element_tracks = 7;                 // simultaneous first-order variables
};

Limits& limits();

} // namespace autostruct
