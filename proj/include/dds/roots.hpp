#pragma once

/**
 * @file roots.hpp
 * @brief Exact w-th roots of cycle sums.
 *
 * The root, when it exists, is unique. It is rebuilt one period at a time
 * in increasing order. The next period is the least target period whose
 * count is not yet matched by the power of the partial root. Its count n
 * comes from the identity
 *
 *   (S + P n)^w = sum over target periods L dividing P of L * s_L
 *
 * where S is the periodic size of the chosen terms whose period divides P.
 */

#include "dds/cycle_sum.hpp"

#include <map>
#include <optional>
#include <utility>

namespace dds {

/// Returns x with x^w = target, or nothing. w = 1 returns target; w = 0
/// throws std::invalid_argument.
std::optional<CycleSum> wth_root(const CycleSum& target, unsigned w);

/// True iff candidate^w = target.
bool power_check(const CycleSum& candidate, unsigned w, const CycleSum& target);

/// Memoized wth_root keyed by (target, w).
class RootCache {
public:
    const std::optional<CycleSum>& get(const CycleSum& target, unsigned w);
    std::size_t size() const { return memo_.size(); }

private:
    struct KeyLess {
        bool operator()(const std::pair<CycleSum, unsigned>& a,
                        const std::pair<CycleSum, unsigned>& b) const {
            if (a.second != b.second) return a.second < b.second;
            return a.first < b.first;
        }
    };
    std::map<std::pair<CycleSum, unsigned>, std::optional<CycleSum>, KeyLess> memo_;
};

}  // namespace dds
