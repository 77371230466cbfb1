#pragma once

/**
 * @file equations.hpp
 * @brief Equation types shared by the solvers and the brute-force oracles.
 *
 * Variables are identified by dense ids starting at 1.
 */

#include "dds/cycle_sum.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace dds {

using VarId = std::size_t;

/// coeff * |x_var|^exp
struct CardMonomial {
    std::uint64_t coeff = 1;
    VarId var = 1;
    unsigned exp = 1;
};

/// Sum of monomials equal to rhs, over state counts.
struct CardEquation {
    std::vector<CardMonomial> monomials;
    std::uint64_t rhs = 0;
};

using CardSolution = std::map<VarId, std::uint64_t>;

/// coeff (x) x_var^exp over cycle sums.
struct AMonomial {
    CycleSum coeff;
    VarId var = 1;
    unsigned exp = 1;
};

/// Sum of monomials equal to rhs, over cycle sums.
struct AEquation {
    std::vector<AMonomial> monomials;
    CycleSum rhs;
};

using AAssignment = std::map<VarId, CycleSum>;

/// C^1_p (x) X = C^n_q
struct BasicEquation {
    std::uint64_t p = 1;
    std::uint64_t q = 1;
    std::uint64_t n = 1;

    auto operator<=>(const BasicEquation&) const = default;
};

/// Variables in order of first appearance.
template <class Monomial>
std::vector<VarId> variable_order(const std::vector<Monomial>& monomials) {
    std::vector<VarId> order;
    for (const auto& m : monomials) {
        bool seen = false;
        for (VarId v : order) seen = seen || v == m.var;
        if (!seen) order.push_back(m.var);
    }
    return order;
}

}  // namespace dds
