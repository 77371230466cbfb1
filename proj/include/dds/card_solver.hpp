#pragma once

/**
 * @file card_solver.hpp
 * @brief Solver for polynomial equations over state counts.
 *
 * One diagram level per variable, by increasing variable id. An edge
 * labelled d out of a level adds the contribution of every monomial of
 * that variable evaluated at d; the terminal holds the right-hand side.
 */

#include "dds/equations.hpp"
#include "dds/mdd.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dds {

/// Solves coeff * x^exp = target. exp 0 is solvable iff coeff = target
/// and yields the canonical 1.
std::optional<std::uint64_t> solve_basic_card(std::uint64_t coeff, unsigned exp, std::uint64_t target);

/// Left-hand side at an assignment, saturating at UINT64_MAX.
std::uint64_t evaluate(const CardEquation& eq, const CardSolution& s);

/// Reduced diagram with the variables it assigns, level by level.
struct CardDiagram {
    mdd::Mdd diagram;
    std::vector<VarId> order;
};

/// Builds the reduced diagram. Constant monomials are folded into the rhs
/// and everything is divided by the common gcd first. Throws
/// std::invalid_argument if some variable occurs only with exponent 0, and
/// ResourceError past the node budget.
CardDiagram build_c_mdd(const CardEquation& eq, std::size_t node_budget = mdd::kDefaultNodeBudget);

/// Decodes a path of a card diagram.
CardSolution decode_card_path(const CardDiagram& d, const mdd::Path& path);

/// Visits all solutions in path order; the visitor returns false to stop.
void for_each_card_solution(const CardEquation& eq, const CardDiagram& d,
                            const std::function<bool(const CardSolution&)>& visit);

/// All solutions, at most cap of them.
std::vector<CardSolution> enumerate_card_solutions(const CardEquation& eq,
                                                   std::optional<std::size_t> cap = std::nullopt,
                                                   std::size_t node_budget = mdd::kDefaultNodeBudget);

}  // namespace dds
