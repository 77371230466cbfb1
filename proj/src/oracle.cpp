#include "dds/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace dds::oracle {

namespace {

using u128 = unsigned __int128;

u128 card_term(const CardMonomial& m, std::uint64_t x) {
    u128 v = m.coeff;
    for (unsigned i = 0; i < m.exp && v <= std::numeric_limits<std::uint64_t>::max(); ++i) v *= x;
    return v;
}

std::vector<Period> divisors(Period q) {
    std::vector<Period> out;
    for (Period d = 1; d * d <= q; ++d) {
        if (q % d != 0) continue;
        out.push_back(d);
        if (d != q / d) out.push_back(q / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Calls emit for every cycle sum over the given periods whose periodic
// size lies in [lo, hi]. keep must be monotone: once it rejects a sum it
// rejects every larger one, which prunes the search.
void for_each_sum(const std::vector<Period>& periods, std::uint64_t lo, std::uint64_t hi,
                  const std::function<void(const CycleSum&)>& emit,
                  const std::function<bool(const CycleSum&)>& keep = {}) {
    CycleSum current;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t used) {
        if (i == periods.size()) {
            if (used >= lo) emit(current);
            return;
        }
        const Period p = periods[i];
        rec(i + 1, used);
        CycleSum saved = current;
        for (std::uint64_t c = 1; used + c * p <= hi; ++c) {
            current = saved;
            current.add(p, c);
            if (keep && !keep(current)) break;
            rec(i + 1, used + c * p);
        }
        current = saved;
    };
    rec(0, 0);
}

}  // namespace

std::set<CardSolution> brute_card(const CardEquation& eq, const SearchBounds& bounds) {
    const std::vector<VarId> vars = variable_order(eq.monomials);
    const std::uint64_t limit = bounds.max_card ? bounds.max_card : eq.rhs;
    std::set<CardSolution> out;
    CardSolution current;
    std::function<void(std::size_t, u128)> rec = [&](std::size_t i, u128 partial) {
        if (i == vars.size()) {
            if (partial == eq.rhs) out.insert(current);
            return;
        }
        for (std::uint64_t x = 0; x <= limit; ++x) {
            u128 sum = partial;
            for (const CardMonomial& m : eq.monomials) {
                if (m.var == vars[i]) sum += card_term(m, x);
            }
            // Every term is non-decreasing in x.
            if (sum > eq.rhs) break;
            current[vars[i]] = x;
            rec(i + 1, sum);
        }
        current.erase(vars[i]);
    };
    rec(0, 0);
    return out;
}

std::set<CycleSum> brute_basic(const BasicEquation& eq, const SearchBounds& bounds) {
    std::set<CycleSum> out;
    // Periodic sizes multiply, so |X| is fixed.
    if ((eq.n * eq.q) % eq.p != 0) return out;
    const std::uint64_t size = eq.n * eq.q / eq.p;
    // A cycle whose product with C_p leaves period q can never cancel out.
    std::vector<Period> periods;
    for (Period d : divisors(eq.q)) {
        if (bounds.max_period && d > bounds.max_period) continue;
        if (std::lcm(eq.p, d) == eq.q) periods.push_back(d);
    }
    const CycleSum coeff = CycleSum::term(eq.p);
    const CycleSum target = CycleSum::term(eq.q, eq.n);
    for_each_sum(periods, size, size, [&](const CycleSum& x) {
        if (cycle_mul(coeff, x) == target) out.insert(x);
    });
    return out;
}

std::set<AAssignment> brute_a_equation(const AEquation& eq, const SearchBounds& bounds) {
    const std::vector<VarId> vars = variable_order(eq.monomials);
    std::set<Period> closure;
    for (const auto& [q, n] : eq.rhs.entries()) {
        for (Period d : divisors(q)) {
            if (!bounds.max_period || d <= bounds.max_period) closure.insert(d);
        }
    }
    const std::vector<Period> periods(closure.begin(), closure.end());
    std::uint64_t limit = static_cast<std::uint64_t>(eq.rhs.total_periodic());
    if (bounds.max_total_periodic) limit = std::min(limit, bounds.max_total_periodic);

    // Values each variable may take on its own.
    std::vector<std::vector<CycleSum>> candidates(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        // Each monomial grows with x, so dominance is monotone.
        auto fits = [&](const CycleSum& x) {
            for (const AMonomial& m : eq.monomials) {
                if (m.var == vars[i] && !cycle_mul(m.coeff, cycle_pow(x, m.exp)).dominated_by(eq.rhs)) return false;
            }
            return true;
        };
        for_each_sum(periods, 0, limit, [&](const CycleSum& x) { candidates[i].push_back(x); }, fits);
    }

    std::set<AAssignment> out;
    AAssignment current;
    std::function<void(std::size_t, const CycleSum&)> rec = [&](std::size_t i, const CycleSum& partial) {
        if (i == vars.size()) {
            if (partial == eq.rhs) out.insert(current);
            return;
        }
        for (const CycleSum& x : candidates[i]) {
            CycleSum sum = partial;
            for (const AMonomial& m : eq.monomials) {
                if (m.var == vars[i]) sum = cycle_add(sum, cycle_mul(m.coeff, cycle_pow(x, m.exp)));
            }
            if (!sum.dominated_by(eq.rhs)) continue;
            current[vars[i]] = x;
            rec(i + 1, sum);
        }
        current.erase(vars[i]);
    };
    rec(0, CycleSum{});
    return out;
}

}  // namespace dds::oracle
