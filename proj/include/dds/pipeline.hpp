#pragma once

/**
 * @file pipeline.hpp
 * @brief Equation front end and end-to-end solving.
 *
 * Grammar (whitespace-insensitive):
 *
 *   equation := monomial ('+' monomial)* '=' coeff
 *   monomial := coeff '*' var ['^' int]
 *   coeff    := '@' filepath | '[' cyclesum ';' card ']'
 *
 * A file coefficient is a system in JSON; a literal gives the cycle sum
 * and the state count directly. Both abstractions are solved and paired
 * into candidates.
 */

#include "dds/a_solver.hpp"
#include "dds/card_solver.hpp"
#include "dds/equations.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dds {

/// Both abstractions of one system.
struct Abstraction {
    std::uint64_t card = 0;
    CycleSum cycles;
};

struct CoeffRef {
    std::string path;                   ///< set for '@' coefficients
    std::optional<Abstraction> literal; ///< set for '[...]' coefficients
    std::size_t line = 1;
    std::size_t column = 1;
};

struct SourceMonomial {
    CoeffRef coeff;
    std::string var;
    unsigned exp = 1;
};

struct SourceEquation {
    std::vector<SourceMonomial> monomials;
    CoeffRef rhs;
};

/// Throws ParseError with line and column.
SourceEquation parse_equation(std::string_view text);

/// Both abstracted equations. Variable ids 1..n follow the natural order
/// of the names (x2 before x10), which fixes the diagram level order.
struct Instance {
    std::vector<std::string> names;
    CardEquation card;
    AEquation cycles;          ///< constant monomials already subtracted
    bool cycles_feasible = true;  ///< false if a constant exceeds the rhs
};

/// Loads files relative to base_dir. Throws std::runtime_error on I/O or
/// validation failure, including empty coefficients.
Instance resolve(const SourceEquation& eq, const std::filesystem::path& base_dir = ".");

struct CandidateValue {
    std::uint64_t card = 0;
    CycleSum cycles;

    bool operator==(const CandidateValue&) const = default;
    friend bool operator<(const CandidateValue& a, const CandidateValue& b) {
        if (a.card != b.card) return a.card < b.card;
        return a.cycles < b.cycles;
    }
};

using Candidate = std::map<VarId, CandidateValue>;

/// Pairs solutions whose cycles fit in their state counts; empty cycles go
/// with zero states only.
std::set<Candidate> combine_abstractions(const std::vector<CardSolution>& card_solutions,
                                         const std::set<AAssignment>& cycle_solutions);

enum class Mode { Card, Cycles, Full };

struct SolveOptions {
    std::optional<std::size_t> max_solutions;  ///< caps card solutions
    std::size_t node_budget = mdd::kDefaultNodeBudget;
};

struct SolveReport {
    Mode mode = Mode::Full;
    std::vector<CardSolution> card_solutions;  ///< sorted
    bool truncated = false;
    std::set<AAssignment> cycle_solutions;
    std::set<Candidate> candidates;
    nlohmann::json stats = nlohmann::json::object();
    std::optional<mdd::Mdd> card_diagram;
    std::optional<mdd::Mdd> cycle_diagram;
};

SolveReport solve(const Instance& inst, Mode mode, const SolveOptions& options = {});

/// {"c_solutions", "a_solutions", "candidates", "stats", "truncated"}
/// restricted to what the mode computes; keys and solutions sorted.
nlohmann::json report_json(const Instance& inst, const SolveReport& report);
std::string report_text(const Instance& inst, const SolveReport& report);

}  // namespace dds
