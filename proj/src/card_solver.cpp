#include "dds/card_solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dds {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return b > kMax - a ? kMax : a + b; }

std::uint64_t pow_sat(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r = mul_sat(r, base);
    return r;
}

struct Term {
    std::uint64_t coeff;
    unsigned exp;
};

std::uint64_t contribution(const std::vector<Term>& terms, std::uint64_t d) {
    std::uint64_t s = 0;
    for (const Term& t : terms) s = add_sat(s, mul_sat(t.coeff, pow_sat(d, t.exp)));
    return s;
}

}  // namespace

std::optional<std::uint64_t> solve_basic_card(std::uint64_t coeff, unsigned exp, std::uint64_t target) {
    if (coeff == 0) throw std::invalid_argument("coefficient must be positive");
    if (exp == 0) return coeff == target ? std::optional<std::uint64_t>(1) : std::nullopt;
    if (target % coeff != 0) return std::nullopt;
    auto root = integer_nth_root(BigInt(target / coeff), exp);
    if (!root) return std::nullopt;
    return static_cast<std::uint64_t>(*root);
}

std::uint64_t evaluate(const CardEquation& eq, const CardSolution& s) {
    std::uint64_t total = 0;
    for (const CardMonomial& m : eq.monomials) {
        auto it = s.find(m.var);
        if (it == s.end()) throw std::invalid_argument("assignment misses a variable");
        total = add_sat(total, mul_sat(m.coeff, pow_sat(it->second, m.exp)));
    }
    return total;
}

CardDiagram build_c_mdd(const CardEquation& eq, std::size_t node_budget) {
    if (eq.monomials.empty()) throw std::invalid_argument("equation has no monomials");
    CardDiagram out{mdd::Mdd(2, 0, 0, node_budget), variable_order(eq.monomials)};
    std::sort(out.order.begin(), out.order.end());
    const std::size_t vars = out.order.size();

    std::map<VarId, std::vector<Term>> terms;
    std::uint64_t rhs = eq.rhs;
    bool feasible = true;
    for (const CardMonomial& m : eq.monomials) {
        if (m.coeff == 0) throw std::invalid_argument("coefficient must be positive");
        if (m.exp == 0) {
            feasible = feasible && m.coeff <= rhs;
            if (feasible) rhs -= m.coeff;
        } else {
            terms[m.var].push_back({m.coeff, m.exp});
        }
    }
    for (VarId v : out.order) {
        if (!terms.count(v)) {
            throw std::invalid_argument("variable " + std::to_string(v) + " is unconstrained");
        }
    }
    std::uint64_t g = rhs;
    for (const auto& [v, ts] : terms) {
        for (const Term& t : ts) g = std::gcd(g, t.coeff);
    }
    if (g > 1) {
        rhs /= g;
        for (auto& [v, ts] : terms) {
            for (Term& t : ts) t.coeff /= g;
        }
    }
    if (!feasible) rhs = 0;

    mdd::Mdd m(vars + 1, 0, rhs, node_budget);
    if (feasible) {
        std::map<mdd::Value, mdd::NodeId> current{{0, m.root()}};
        for (std::size_t i = 0; i < vars; ++i) {
            const auto& ts = terms.at(out.order[i]);
            std::vector<std::uint64_t> gains;
            for (std::uint64_t d = 0;; ++d) {
                std::uint64_t c = contribution(ts, d);
                if (c > rhs) break;
                gains.push_back(c);
            }
            std::map<mdd::Value, mdd::NodeId> next;
            for (const auto& [val, node] : current) {
                for (std::uint64_t d = 0; d < gains.size(); ++d) {
                    std::uint64_t nv = val + gains[d];
                    if (nv > rhs) break;
                    if (i + 1 == vars) {
                        if (nv == rhs) m.add_edge(node, d, m.terminal());
                        continue;
                    }
                    auto [it, fresh] = next.try_emplace(nv, 0);
                    if (fresh) it->second = m.add_node(i + 1, nv);
                    m.add_edge(node, d, it->second);
                }
            }
            current = std::move(next);
        }
    }
    out.diagram = mdd::reduce(m);
    return out;
}

CardSolution decode_card_path(const CardDiagram& d, const mdd::Path& path) {
    if (path.size() != d.order.size()) throw std::logic_error("path length differs from variable count");
    CardSolution s;
    for (std::size_t i = 0; i < path.size(); ++i) s[d.order[i]] = path[i];
    return s;
}

void for_each_card_solution(const CardEquation& eq, const CardDiagram& d,
                            const std::function<bool(const CardSolution&)>& visit) {
    mdd::for_each_path(d.diagram, [&](const mdd::Path& p) {
        CardSolution s = decode_card_path(d, p);
        if (evaluate(eq, s) != eq.rhs) throw std::logic_error("card solver emitted a non-solution");
        return visit(s);
    });
}

std::vector<CardSolution> enumerate_card_solutions(const CardEquation& eq, std::optional<std::size_t> cap,
                                                   std::size_t node_budget) {
    std::vector<CardSolution> out;
    if (cap && *cap == 0) return out;
    CardDiagram d = build_c_mdd(eq, node_budget);
    for_each_card_solution(eq, d, [&](const CardSolution& s) {
        out.push_back(s);
        return !cap || out.size() < *cap;
    });
    return out;
}

}  // namespace dds
