#pragma once

/**
 * @file oracle.hpp
 * @brief Exhaustive reference solvers for small instances.
 *
 * These use only the cycle-sum arithmetic and plain enumeration, never the
 * diagram-based solvers, so they can cross-check them.
 */

#include "dds/equations.hpp"

#include <cstdint>
#include <set>

namespace dds::oracle {

struct SearchBounds {
    std::uint64_t max_total_periodic = 30;  ///< per variable
    std::uint64_t max_card = 0;             ///< per variable; 0 means the rhs
    std::uint64_t max_period = 0;           ///< 0 means unbounded
};

/// Every assignment with values at most the bound solving eq.
std::set<CardSolution> brute_card(const CardEquation& eq, const SearchBounds& bounds = {});

/// Every X over divisors of q with C^1_p (x) X = C^n_q.
std::set<CycleSum> brute_basic(const BasicEquation& eq, const SearchBounds& bounds = {});

/// Every assignment over divisors of the rhs periods solving eq.
std::set<AAssignment> brute_a_equation(const AEquation& eq, const SearchBounds& bounds = {});

}  // namespace dds::oracle
