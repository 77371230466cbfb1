#include "dds/pipeline.hpp"

#include "dds/errors.hpp"
#include "dds/system.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dds {

namespace {

class EquationParser {
public:
    explicit EquationParser(std::string_view text) : s_(text) {}

    SourceEquation parse() {
        SourceEquation eq;
        std::map<std::string, std::pair<std::size_t, bool>> vars;  // first offset, has exp > 0
        for (;;) {
            SourceMonomial m;
            m.coeff = coeff();
            skip_ws();
            expect('*', "'*' after a coefficient");
            skip_ws();
            std::size_t at = pos_;
            m.var = identifier();
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                m.exp = exponent();
                skip_ws();
            }
            auto [it, fresh] = vars.try_emplace(m.var, at, false);
            it->second.second = it->second.second || m.exp > 0;
            eq.monomials.push_back(std::move(m));
            if (peek() == '+') {
                ++pos_;
                continue;
            }
            expect('=', "'+' or '=' after a monomial");
            break;
        }
        eq.rhs = coeff();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected text after the right-hand side", pos_);
        for (const auto& [name, info] : vars) {
            if (!info.second) fail("variable '" + name + "' only occurs with exponent 0", info.first);
        }
        return eq;
    }

private:
    std::pair<std::size_t, std::size_t> where(std::size_t at) const {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        return {line, column};
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        auto [line, column] = where(at);
        throw ParseError(msg, line, column);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail("expected " + what, pos_);
        ++pos_;
    }

    std::uint64_t integer(const std::string& what, std::uint64_t max) {
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            unsigned digit = static_cast<unsigned>(s_[pos_] - '0');
            if (v > (max - digit) / 10) fail(what + " overflow", start);
            v = v * 10 + digit;
            ++pos_;
        }
        if (start == pos_) fail("expected " + what, start);
        return v;
    }

    unsigned exponent() {
        return static_cast<unsigned>(integer("exponent", std::numeric_limits<unsigned>::max()));
    }

    std::string identifier() {
        std::size_t start = pos_;
        auto is_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto is_rest = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        if (!is_start(peek())) fail("expected a variable name", pos_);
        while (pos_ < s_.size() && is_rest(s_[pos_])) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    CoeffRef coeff() {
        skip_ws();
        CoeffRef ref;
        const std::size_t at = pos_;
        std::tie(ref.line, ref.column) = where(at);
        if (peek() == '@') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
                   s_[pos_] != '*' && s_[pos_] != '=' && s_[pos_] != '+') {
                ++pos_;
            }
            if (start == pos_) fail("expected a file path after '@'", start);
            ref.path = std::string(s_.substr(start, pos_ - start));
            return ref;
        }
        if (peek() != '[') fail("expected a coefficient ('@file' or '[cycles;card]')", at);
        ++pos_;
        std::size_t semi = s_.find(';', pos_);
        std::size_t close = s_.find(']', pos_);
        if (semi == std::string_view::npos || close == std::string_view::npos || semi > close) {
            fail("expected '[cycles;card]'", at);
        }
        auto [line, column] = where(pos_);
        Abstraction a;
        a.cycles = parse_cycle_sum(s_.substr(pos_, semi - pos_), line, column);
        pos_ = semi + 1;
        skip_ws();
        a.card = integer("state count", std::numeric_limits<std::uint64_t>::max());
        skip_ws();
        if (pos_ != close) fail("expected ']'", pos_);
        ++pos_;
        if (a.cycles.total_periodic() > a.card) fail("cycle sum has more periodic states than the count", at);
        if ((a.card == 0) != a.cycles.is_zero()) {
            fail("a system is empty exactly when its cycle sum is", at);
        }
        ref.literal = std::move(a);
        return ref;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

Abstraction load(const CoeffRef& ref, const std::filesystem::path& base_dir) {
    if (ref.literal) return *ref.literal;
    std::filesystem::path p(ref.path);
    if (p.is_relative()) p = base_dir / p;
    Dds system = load_dds(p.string());
    return {c_abstraction(system), a_abstraction(system)};
}

std::string where(const CoeffRef& ref) {
    return "line " + std::to_string(ref.line) + ", column " + std::to_string(ref.column);
}

}  // namespace

SourceEquation parse_equation(std::string_view text) { return EquationParser(text).parse(); }

// Digit runs compare by value, so x2 comes before x10.
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ei = i, ej = j;
            while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
            while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
            std::string_view na = std::string_view(a).substr(i, ei - i);
            std::string_view nb = std::string_view(b).substr(j, ej - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ei;
            j = ej;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
    return a < b;
}

Instance resolve(const SourceEquation& eq, const std::filesystem::path& base_dir) {
    Instance inst;
    for (const SourceMonomial& m : eq.monomials) {
        if (std::find(inst.names.begin(), inst.names.end(), m.var) == inst.names.end()) inst.names.push_back(m.var);
    }
    std::sort(inst.names.begin(), inst.names.end(), natural_less);
    std::map<std::string, VarId> ids;
    for (std::size_t i = 0; i < inst.names.size(); ++i) ids[inst.names[i]] = static_cast<VarId>(i + 1);
    Abstraction rhs = load(eq.rhs, base_dir);
    inst.card.rhs = rhs.card;
    CycleSum cycle_rhs = rhs.cycles;
    std::vector<CycleSum> constants;
    for (const SourceMonomial& m : eq.monomials) {
        auto it = ids.find(m.var);
        Abstraction a = load(m.coeff, base_dir);
        if (a.card == 0) throw std::runtime_error("empty coefficient at " + where(m.coeff));
        inst.card.monomials.push_back({a.card, it->second, m.exp});
        if (m.exp == 0) {
            constants.push_back(a.cycles);
        } else {
            inst.cycles.monomials.push_back({a.cycles, it->second, m.exp});
        }
    }
    for (const CycleSum& c : constants) {
        if (!c.dominated_by(cycle_rhs)) {
            inst.cycles_feasible = false;
            break;
        }
        CycleSum::Entries left = cycle_rhs.entries();
        for (const auto& [p, n] : c.entries()) left[p] -= n;
        cycle_rhs = CycleSum(left);
    }
    inst.cycles.rhs = cycle_rhs;
    return inst;
}

std::set<Candidate> combine_abstractions(const std::vector<CardSolution>& card_solutions,
                                         const std::set<AAssignment>& cycle_solutions) {
    std::set<Candidate> out;
    for (const CardSolution& c : card_solutions) {
        for (const AAssignment& a : cycle_solutions) {
            Candidate cand;
            bool ok = true;
            for (const auto& [v, card] : c) {
                auto it = a.find(v);
                if (it == a.end()) throw std::invalid_argument("solutions disagree on variables");
                const CycleSum& cycles = it->second;
                if (cycles.total_periodic() > card || (card == 0) != cycles.is_zero()) {
                    ok = false;
                    break;
                }
                cand[v] = {card, cycles};
            }
            if (ok) out.insert(std::move(cand));
        }
    }
    return out;
}

SolveReport solve(const Instance& inst, Mode mode, const SolveOptions& options) {
    SolveReport r;
    r.mode = mode;
    if (mode != Mode::Cycles) {
        CardDiagram d = build_c_mdd(inst.card, options.node_budget);
        for_each_card_solution(inst.card, d, [&](const CardSolution& s) {
            if (options.max_solutions && r.card_solutions.size() == *options.max_solutions) {
                r.truncated = true;
                return false;
            }
            r.card_solutions.push_back(s);
            return true;
        });
        std::sort(r.card_solutions.begin(), r.card_solutions.end());
        r.stats["c_mdd_nodes"] = d.diagram.node_count();
        r.stats["c_mdd_edges"] = d.diagram.edge_count();
        r.stats["c_solution_count"] = r.card_solutions.size();
        r.card_diagram = std::move(d.diagram);
    }
    if (mode != Mode::Card) {
        ASolveStats st;
        if (inst.cycles_feasible) {
            ASolveResult a = solve_a_equation(inst.cycles, options.node_budget);
            r.cycle_solutions = std::move(a.solutions);
            st = a.stats;
            r.cycle_diagram = std::move(a.cs);
        }
        r.stats["basic_equations_candidates"] = st.basic_candidates;
        r.stats["basic_equations_necessary"] = st.basic_necessary;
        r.stats["systems_explored"] = st.systems_explored;
        r.stats["cs_nodes"] = st.cs_nodes;
        r.stats["cs_edges"] = st.cs_edges;
        r.stats["a_solution_count"] = r.cycle_solutions.size();
    }
    if (mode == Mode::Full) {
        r.candidates = combine_abstractions(r.card_solutions, r.cycle_solutions);
        r.stats["candidate_count"] = r.candidates.size();
    }
    return r;
}

nlohmann::json report_json(const Instance& inst, const SolveReport& report) {
    auto name = [&](VarId v) { return inst.names.at(v - 1); };
    nlohmann::json out;
    if (report.mode != Mode::Cycles) {
        nlohmann::json cs = nlohmann::json::array();
        for (const CardSolution& s : report.card_solutions) {
            nlohmann::json row = nlohmann::json::object();
            for (const auto& [v, x] : s) row[name(v)] = x;
            cs.push_back(row);
        }
        out["c_solutions"] = cs;
        out["truncated"] = report.truncated;
    }
    if (report.mode != Mode::Card) {
        nlohmann::json as = nlohmann::json::array();
        for (const AAssignment& s : report.cycle_solutions) {
            nlohmann::json row = nlohmann::json::object();
            for (const auto& [v, x] : s) row[name(v)] = to_string(x);
            as.push_back(row);
        }
        out["a_solutions"] = as;
    }
    if (report.mode == Mode::Full) {
        nlohmann::json cands = nlohmann::json::array();
        for (const Candidate& c : report.candidates) {
            nlohmann::json row = nlohmann::json::object();
            for (const auto& [v, x] : c) row[name(v)] = {{"card", x.card}, {"cycles", to_string(x.cycles)}};
            cands.push_back(row);
        }
        out["candidates"] = cands;
    }
    out["stats"] = report.stats;
    return out;
}

std::string report_text(const Instance& inst, const SolveReport& report) {
    auto name = [&](VarId v) { return inst.names.at(v - 1); };
    std::ostringstream os;
    if (report.mode != Mode::Cycles) {
        os << "c-solutions (" << report.card_solutions.size() << (report.truncated ? ", truncated" : "")
           << "):\n";
        for (const CardSolution& s : report.card_solutions) {
            os << ' ';
            for (const auto& [v, x] : s) os << ' ' << name(v) << '=' << x;
            os << '\n';
        }
    }
    if (report.mode != Mode::Card) {
        os << "a-solutions (" << report.cycle_solutions.size() << "):\n";
        for (const AAssignment& s : report.cycle_solutions) {
            os << ' ';
            for (const auto& [v, x] : s) os << ' ' << name(v) << " = " << to_string(x) << ';';
            os << '\n';
        }
    }
    if (report.mode == Mode::Full) {
        os << "candidates (" << report.candidates.size() << "):\n";
        for (const Candidate& c : report.candidates) {
            os << ' ';
            for (const auto& [v, x] : c) os << ' ' << name(v) << " = [" << to_string(x.cycles) << ';' << x.card << ']';
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace dds
