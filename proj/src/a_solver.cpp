#include "dds/a_solver.hpp"

#include "dds/roots.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dds {

namespace {

std::uint64_t to_u64(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

AEquation simplify(const AEquation& eq) {
    AEquation out;
    out.rhs = eq.rhs;
    for (const AMonomial& m : eq.monomials) {
        auto it = std::find_if(out.monomials.begin(), out.monomials.end(),
                               [&](const AMonomial& o) { return o.var == m.var && o.exp == m.exp; });
        if (it == out.monomials.end()) {
            out.monomials.push_back(m);
        } else {
            it->coeff = cycle_add(it->coeff, m.coeff);
        }
    }
    return out;
}

std::vector<std::uint64_t> feasible_divisors(std::uint64_t p, std::uint64_t q) {
    std::vector<std::uint64_t> out;
    if (p == 0 || q == 0 || q % p != 0) return out;
    for (std::uint64_t r = 1; r <= q; ++r) {
        if (q % r != 0) continue;
        std::uint64_t pp = (q / p) * r;
        if (std::gcd(p, pp) == r && lcm_checked(p, pp) == q) out.push_back(r);
    }
    return out;
}

mdd::Mdd build_sb_mdd(const BasicEquation& eq, std::size_t node_budget) {
    if (eq.p == 0 || eq.q == 0 || eq.n == 0) throw std::invalid_argument("basic equation needs p, q, n >= 1");
    const auto divisors = feasible_divisors(eq.p, eq.q);
    if (divisors.empty() || divisors.front() > eq.n) return mdd::Mdd(2, 0, eq.n, node_budget);

    const std::size_t levels = eq.n / divisors.front() + 1;
    mdd::Mdd m(levels, 0, eq.n, node_budget);
    struct State {
        mdd::NodeId node;
        std::uint64_t val;
        std::uint64_t last;
    };
    std::vector<State> frontier{{m.root(), 0, std::numeric_limits<std::uint64_t>::max()}};
    for (std::size_t k = 0; k + 1 < levels && !frontier.empty(); ++k) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, mdd::NodeId> next;
        std::vector<State> next_frontier;
        for (const State& s : frontier) {
            for (std::uint64_t d : divisors) {
                if (d > s.last || s.val + d > eq.n) break;
                std::uint64_t nv = s.val + d;
                if (nv == eq.n) {
                    m.add_edge(s.node, d, m.terminal());
                    continue;
                }
                if (k + 2 >= levels) continue;
                auto [it, fresh] = next.try_emplace({nv, d}, 0);
                if (fresh) {
                    it->second = m.add_node(k + 1, nv);
                    next_frontier.push_back({it->second, nv, d});
                }
                m.add_edge(s.node, d, it->second);
            }
        }
        frontier = std::move(next_frontier);
    }
    return mdd::reduce(m);
}

CycleSum decode_sb_path(const BasicEquation& eq, const mdd::Path& path) {
    CycleSum x;
    for (mdd::Label r : path) x.add((eq.q / eq.p) * r, 1);
    return x;
}

std::set<CycleSum> solve_basic(const BasicEquation& eq, std::size_t node_budget) {
    std::set<CycleSum> out;
    mdd::Mdd m = build_sb_mdd(eq, node_budget);
    const CycleSum target = CycleSum::term(eq.q, eq.n);
    const CycleSum coeff = CycleSum::term(eq.p, 1);
    mdd::for_each_path(m, [&](const mdd::Path& path) {
        CycleSum x = decode_sb_path(eq, path);
        if (!(cycle_mul(coeff, x) == target)) throw std::logic_error("basic solver emitted a non-solution");
        out.insert(std::move(x));
        return true;
    });
    return out;
}

const BasicEntry& BasicRegistry::solve(const BasicEquation& eq) {
    auto it = entries_.find(eq);
    if (it != entries_.end()) return it->second;
    mdd::Mdd m = build_sb_mdd(eq, budget_);
    BasicEntry entry{m, {}};
    mdd::for_each_path(m, [&](const mdd::Path& path) {
        entry.solutions.insert(decode_sb_path(eq, path));
        return true;
    });
    return entries_.emplace(eq, std::move(entry)).first->second;
}

const BasicEntry* BasicRegistry::find(const BasicEquation& eq) const {
    auto it = entries_.find(eq);
    return it == entries_.end() ? nullptr : &it->second;
}

std::size_t BasicRegistry::necessary_count() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [](const auto& e) { return e.second.necessary(); }));
}

std::vector<Row> equation_rows(const AEquation& eq) {
    std::vector<Row> rows;
    for (std::size_t z = 0; z < eq.monomials.size(); ++z) {
        for (const auto& [p, n] : eq.monomials[z].coeff.entries()) {
            rows.push_back({z, p, to_u64(n, "coefficient count")});
        }
    }
    return rows;
}

BasicRegistry collect_necessary(const AEquation& eq, std::size_t node_budget) {
    BasicRegistry registry(node_budget);
    const auto rows = equation_rows(eq);
    for (const auto& [q, nb] : eq.rhs.entries()) {
        const std::uint64_t n = to_u64(nb, "rhs count");
        for (const Row& row : rows) {
            for (std::uint64_t m = row.count; m <= n; m += row.count) {
                registry.solve({row.period, q, m / row.count});
            }
        }
    }
    return registry;
}

mdd::Mdd build_cs(const AEquation& eq, const BasicRegistry& registry, std::size_t node_budget) {
    const auto rows = equation_rows(eq);
    if (rows.empty()) throw std::invalid_argument("equation has no monomials");
    if (eq.rhs.is_zero()) throw std::invalid_argument("allocation diagram of an empty rhs");
    std::vector<mdd::Mdd> parts;
    for (const auto& [q, nb] : eq.rhs.entries()) {
        const std::uint64_t n = to_u64(nb, "rhs count");
        mdd::Mdd m(rows.size() + 1, 0, n, node_budget);
        std::map<std::uint64_t, mdd::NodeId> current{{0, m.root()}};
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::vector<std::uint64_t> domain{0};
            for (std::uint64_t d = rows[r].count; d <= n; d += rows[r].count) {
                const BasicEntry* e = registry.find({rows[r].period, q, d / rows[r].count});
                if (e && e->necessary()) domain.push_back(d);
            }
            std::map<std::uint64_t, mdd::NodeId> next;
            for (const auto& [val, node] : current) {
                for (std::uint64_t d : domain) {
                    std::uint64_t nv = val + d;
                    if (nv > n) break;
                    if (r + 1 == rows.size()) {
                        if (nv == n) m.add_edge(node, d, m.terminal());
                        continue;
                    }
                    auto [it, fresh] = next.try_emplace(nv, 0);
                    if (fresh) it->second = m.add_node(r + 1, nv);
                    m.add_edge(node, d, it->second);
                }
            }
            current = std::move(next);
        }
        parts.push_back(mdd::reduce(m));
    }
    return mdd::stack_product(parts);
}

SystemAssignment decode_cs_path(const AEquation& eq, const mdd::Path& path) {
    const std::size_t rows = equation_rows(eq).size();
    const std::size_t periods = eq.rhs.size();
    if (path.size() != rows * periods) throw std::logic_error("allocation path has the wrong length");
    SystemAssignment a(rows, std::vector<std::uint64_t>(periods, 0));
    for (std::size_t j = 0; j < periods; ++j) {
        for (std::size_t r = 0; r < rows; ++r) a[r][j] = path[j * rows + r];
    }
    return a;
}

std::optional<std::vector<std::set<CycleSum>>> solve_system(const AEquation& eq,
                                                            const SystemAssignment& assignment,
                                                            BasicRegistry& registry) {
    const auto rows = equation_rows(eq);
    std::vector<Period> periods;
    for (const auto& [q, n] : eq.rhs.entries()) periods.push_back(q);

    std::vector<std::set<CycleSum>> values(eq.monomials.size());
    for (std::size_t z = 0; z < eq.monomials.size(); ++z) {
        std::vector<mdd::StackedTarget> targets;
        bool zero_row = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].monomial != z) continue;
            std::vector<mdd::Mdd> components;
            for (std::size_t j = 0; j < periods.size(); ++j) {
                std::uint64_t share = assignment[r][j];
                if (share == 0) continue;
                if (share % rows[r].count != 0) return std::nullopt;
                const BasicEntry& e = registry.solve({rows[r].period, periods[j], share / rows[r].count});
                if (!e.necessary()) return std::nullopt;
                components.push_back(mdd::scale_labels(e.diagram, periods[j] / rows[r].period));
            }
            if (components.empty()) {
                zero_row = true;
                continue;
            }
            targets.push_back({mdd::stack_product(components), mdd::stack_boundaries(components)});
        }
        if (zero_row) {
            // C (x) X is empty only for X empty.
            if (!targets.empty()) return std::nullopt;
            values[z].insert(CycleSum{});
            continue;
        }
        for (const auto& items : mdd::intersect(targets)) {
            CycleSum x;
            for (const auto& [period, count] : items) x.add(period, count);
            values[z].insert(std::move(x));
        }
        if (values[z].empty()) return std::nullopt;
    }
    return values;
}

CycleSum evaluate(const AEquation& eq, const AAssignment& s) {
    CycleSum total;
    for (const AMonomial& m : eq.monomials) {
        auto it = s.find(m.var);
        if (it == s.end()) throw std::invalid_argument("assignment misses a variable");
        total = cycle_add(total, cycle_mul(m.coeff, cycle_pow(it->second, m.exp)));
    }
    return total;
}

ASolveResult solve_a_equation(const AEquation& eq, std::size_t node_budget) {
    if (eq.monomials.empty()) throw std::invalid_argument("equation has no monomials");
    for (const AMonomial& m : eq.monomials) {
        if (m.coeff.is_zero()) throw std::invalid_argument("coefficient must be nonempty");
        if (m.exp == 0) throw std::invalid_argument("exponent must be positive");
    }
    const AEquation s = simplify(eq);
    const std::vector<VarId> vars = variable_order(s.monomials);
    ASolveResult result;
    if (s.rhs.is_zero()) {
        AAssignment zero;
        for (VarId v : vars) zero[v] = CycleSum{};
        result.solutions.insert(zero);
        return result;
    }

    BasicRegistry registry = collect_necessary(s, node_budget);
    mdd::Mdd cs = build_cs(s, registry, node_budget);
    result.stats.basic_candidates = registry.candidate_count();
    result.stats.basic_necessary = registry.necessary_count();
    result.stats.cs_nodes = cs.node_count();
    result.stats.cs_edges = cs.edge_count();

    RootCache roots;
    mdd::for_each_path(cs, [&](const mdd::Path& path) {
        ++result.stats.systems_explored;
        auto xs = solve_system(s, decode_cs_path(s, path), registry);
        if (!xs) return true;

        std::map<VarId, std::set<CycleSum>> per_var;
        for (std::size_t z = 0; z < s.monomials.size(); ++z) {
            std::set<CycleSum> rooted;
            for (const CycleSum& x : (*xs)[z]) {
                const auto& r = roots.get(x, s.monomials[z].exp);
                if (r) rooted.insert(*r);
            }
            auto [it, fresh] = per_var.try_emplace(s.monomials[z].var, rooted);
            if (!fresh) {
                std::set<CycleSum> both;
                std::set_intersection(it->second.begin(), it->second.end(), rooted.begin(), rooted.end(),
                                      std::inserter(both, both.end()));
                it->second = std::move(both);
            }
        }
        for (const auto& [v, set] : per_var) {
            if (set.empty()) return true;
        }

        // Cartesian product over variables.
        std::vector<std::vector<CycleSum>> choices;
        for (VarId v : vars) choices.emplace_back(per_var[v].begin(), per_var[v].end());
        std::vector<std::size_t> idx(vars.size(), 0);
        for (;;) {
            AAssignment a;
            for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = choices[i][idx[i]];
            if (!(evaluate(s, a) == s.rhs)) throw std::logic_error("a-solver emitted a non-solution");
            result.solutions.insert(std::move(a));
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
        return true;
    });
    result.cs = std::move(cs);
    return result;
}

}  // namespace dds
