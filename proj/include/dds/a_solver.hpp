#pragma once

/**
 * @file a_solver.hpp
 * @brief Solver for polynomial equations over cycle sums.
 *
 * The equation sum_z a_z (x) x_z^{w_z} = b is split per monomial into
 * X_z = x_z^{w_z}. Each rhs count n_j is shared out among the rows
 * (z, i), one per coefficient term C^{n_zi}_{p_zi}. A row's share of
 * period p_j reduces to the basic equation C^1_{p_zi} (x) X = C^{m}_{p_j}.
 * Basic equations are solved by symmetry-broken diagrams whose paths list
 * non-increasing feasible divisors r, each standing for one cycle of
 * length (q/p) r.
 */

#include "dds/equations.hpp"
#include "dds/mdd.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace dds {

/// Merges monomials sharing (var, exp), keeping first-appearance order.
AEquation simplify(const AEquation& eq);

/// Divisors r of q with gcd(p, (q/p) r) = r and lcm(p, (q/p) r) = q,
/// ascending. Empty when p does not divide q.
std::vector<std::uint64_t> feasible_divisors(std::uint64_t p, std::uint64_t q);

/// Reduced diagram whose paths are the non-increasing divisor sequences
/// summing to n. Tails that complete n jump straight to the terminal.
mdd::Mdd build_sb_mdd(const BasicEquation& eq, std::size_t node_budget = mdd::kDefaultNodeBudget);

/// Cycle sum encoded by a divisor sequence.
CycleSum decode_sb_path(const BasicEquation& eq, const mdd::Path& path);

/// Exact solution set of C^1_p (x) X = C^n_q.
std::set<CycleSum> solve_basic(const BasicEquation& eq, std::size_t node_budget = mdd::kDefaultNodeBudget);

struct BasicEntry {
    mdd::Mdd diagram;
    std::set<CycleSum> solutions;

    bool necessary() const { return !solutions.empty(); }
};

/// Each distinct basic equation solved at most once.
class BasicRegistry {
public:
    explicit BasicRegistry(std::size_t node_budget = mdd::kDefaultNodeBudget) : budget_(node_budget) {}

    const BasicEntry& solve(const BasicEquation& eq);
    const BasicEntry* find(const BasicEquation& eq) const;

    std::size_t candidate_count() const { return entries_.size(); }
    std::size_t necessary_count() const;
    const std::map<BasicEquation, BasicEntry>& entries() const { return entries_; }

private:
    std::size_t budget_;
    std::map<BasicEquation, BasicEntry> entries_;
};

/// One coefficient term of one monomial.
struct Row {
    std::size_t monomial;
    std::uint64_t period;
    std::uint64_t count;
};

/// Rows of a simplified equation, monomial by monomial.
std::vector<Row> equation_rows(const AEquation& eq);

/// Solves every basic equation a contraction step may need.
BasicRegistry collect_necessary(const AEquation& eq, std::size_t node_budget = mdd::kDefaultNodeBudget);

/// Stacked allocation diagram; a path lists, for each rhs period in
/// increasing order, the share of every row.
mdd::Mdd build_cs(const AEquation& eq, const BasicRegistry& registry,
                  std::size_t node_budget = mdd::kDefaultNodeBudget);

/// alloc[row][j] = cycles of the j-th rhs period given to the row.
using SystemAssignment = std::vector<std::vector<std::uint64_t>>;

SystemAssignment decode_cs_path(const AEquation& eq, const mdd::Path& path);

/// Values of X_z per monomial; nothing if some monomial has no value.
std::optional<std::vector<std::set<CycleSum>>> solve_system(const AEquation& eq,
                                                            const SystemAssignment& assignment,
                                                            BasicRegistry& registry);

struct ASolveStats {
    std::size_t basic_candidates = 0;
    std::size_t basic_necessary = 0;
    std::size_t systems_explored = 0;
    std::size_t cs_nodes = 0;
    std::size_t cs_edges = 0;
};

struct ASolveResult {
    std::set<AAssignment> solutions;
    ASolveStats stats;
    std::optional<mdd::Mdd> cs;
};

/// Left-hand side at an assignment.
CycleSum evaluate(const AEquation& eq, const AAssignment& s);

/// Every assignment solving eq. Throws std::invalid_argument on an empty
/// coefficient, a zero exponent or no monomials.
ASolveResult solve_a_equation(const AEquation& eq, std::size_t node_budget = mdd::kDefaultNodeBudget);

}  // namespace dds
