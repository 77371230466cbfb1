#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/cli.hpp"
#include "dds/errors.hpp"
#include "dds/oracle.hpp"
#include "dds/pipeline.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <sys/wait.h>

using namespace dds;
using testsupport::cs;

namespace {

const std::string kData = DDS_DATA_DIR;
const char* const kLiteral = "[1*C4;5] * x1^2 + [1*C3;4] * x2 = [3*C6+5*C12;293]";
const char* const k593 = "[C1;2] * x3 + [C1;5] * x1^2 + [C1;4] * x2 + [C1;4] * x1^4 + [C1;4] * x3^2 = [C1;593]";

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dds-solve");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::set<Candidate> expected_candidates() {
    std::set<Candidate> out;
    for (std::uint64_t c1 : {3, 5}) {
        for (const char* x2 : {"C6 + 2*C4", "3*C2 + 2*C4"}) {
            out.insert({{1, {c1, cs("C3")}}, {2, {c1 == 3 ? 62u : 42u, cs(x2)}}});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("parse the file grammar") {
    SourceEquation eq = parse_equation("@a1.json * x1^2 + @a2.json * x2 = @b.json");
    REQUIRE(eq.monomials.size() == 2);
    CHECK(eq.monomials[0].coeff.path == "a1.json");
    CHECK(eq.monomials[0].var == "x1");
    CHECK(eq.monomials[0].exp == 2);
    CHECK(eq.monomials[1].exp == 1);
    CHECK(eq.rhs.path == "b.json");
}

TEST_CASE("parse literals, whitespace and line breaks") {
    SourceEquation eq = parse_equation(kLiteral);
    REQUIRE(eq.monomials.size() == 2);
    CHECK(eq.monomials[0].coeff.literal->card == 5);
    CHECK(eq.monomials[0].coeff.literal->cycles == cs("C4"));
    CHECK(eq.rhs.literal->cycles == cs("3*C6 + 5*C12"));
    SourceEquation spaced = parse_equation("[ 1*C4 ; 5 ]*x1 ^ 2\n+[C3;4]*x2=\n[3*C6 + 5*C12;293]");
    CHECK(spaced.monomials[1].coeff.literal->cycles == cs("C3"));
    CHECK(spaced.rhs.line == 3);
}

TEST_CASE("parse errors carry positions") {
    auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_equation(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(error_at("x1 +") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(error_at("[C1;1] * x1 +") == std::pair<std::size_t, std::size_t>{1, 14});
    CHECK(error_at("[C1;1] * x1 =\n  [C2;2] junk") == std::pair<std::size_t, std::size_t>{2, 10});
    CHECK(error_at("[C1;1] * 1x = [C1;1]").second == 10);
    CHECK(error_at("[C1;1] * x^99999999999 = [C1;1]").second == 12);
    CHECK(error_at("[C1;0] * x = [C1;1]").second == 1);
    CHECK(error_at("[C3;2] * x = [C1;1]").second == 1);
    CHECK(error_at("[C1;1] * x^0 = [C1;1]").second == 10);
    CHECK(error_at("[2*Cx;3] * x = [C1;1]").first == 1);
}

TEST_CASE("canonical cycle text round trips through the parser") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        CycleSum x = testsupport::random_sum(rng, 4, 20, 9, false);
        std::string text = "[" + to_string(x) + ";1000] * y = [" + to_string(x) + ";1000]";
        SourceEquation eq = parse_equation(text);
        CHECK(eq.rhs.literal->cycles == x);
        CHECK(to_string(eq.rhs.literal->cycles) == to_string(x));
    }
}

TEST_CASE("literal and file instances agree") {
    Instance lit = resolve(parse_equation(kLiteral));
    Instance file = resolve(parse_equation("@a1.json * x1^2 + @a2.json * x2 = @b.json"), kData + "/worked_example");
    CHECK(lit.names == std::vector<std::string>{"x1", "x2"});
    Instance named = resolve(parse_equation("[C1;1] * x10 + [C1;1] * b + [C1;1] * x2 = [C1;1]"));
    CHECK(named.names == std::vector<std::string>{"b", "x2", "x10"});
    CHECK(file.card.rhs == 293);
    CHECK(file.cycles.rhs == cs("3*C6 + 5*C12"));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(lit.card.monomials[i].coeff == file.card.monomials[i].coeff);
        CHECK(lit.cycles.monomials[i].coeff == file.cycles.monomials[i].coeff);
    }
    CHECK_THROWS_AS(resolve(parse_equation("@missing.json * x = [C1;1]"), kData), std::runtime_error);
}

TEST_CASE("end-to-end candidates") {
    Instance inst = resolve(parse_equation(kLiteral));
    SolveReport r = solve(inst, Mode::Full);
    CHECK(r.card_solutions ==
          std::vector<CardSolution>{{{1, 1}, {2, 72}}, {{1, 3}, {2, 62}}, {{1, 5}, {2, 42}}, {{1, 7}, {2, 12}}});
    CHECK(r.cycle_solutions.size() == 6);
    CHECK(r.candidates == expected_candidates());
    CHECK(r.stats["candidate_count"] == 4);

    SolveReport c = solve(inst, Mode::Card);
    SolveReport a = solve(inst, Mode::Cycles);
    CHECK(combine_abstractions(c.card_solutions, a.cycle_solutions) == r.candidates);
}

TEST_CASE("pairing rules") {
    std::vector<CardSolution> cards{{{1, 0}}, {{1, 2}}};
    CHECK(combine_abstractions(cards, {}).empty());
    CHECK(combine_abstractions(cards, {{{1, CycleSum{}}}}) == std::set<Candidate>{{{1, {0, CycleSum{}}}}});
    CHECK(combine_abstractions(cards, {{{1, cs("C2")}}}) == std::set<Candidate>{{{1, {2, cs("C2")}}}});
    CHECK(combine_abstractions(cards, {{{1, cs("C3")}}}).empty());
}

TEST_CASE("constant monomials") {
    // [C2;3] * x^0 contributes a fixed system.
    Instance inst = resolve(parse_equation("[C1;1] * x + [C2;3] * x^0 = [2*C2;7]"));
    SolveReport r = solve(inst, Mode::Full);
    CHECK(r.candidates == std::set<Candidate>{{{1, {4, cs("C2")}}}});
    Instance bad = resolve(parse_equation("[C1;1] * x + [C3;3] * x^0 = [2*C2;7]"));
    CHECK_FALSE(bad.cycles_feasible);
    CHECK(solve(bad, Mode::Full).candidates.empty());
}

TEST_CASE("cli solve-c on the 593 equation") {
    CliResult r = cli({"solve-c", k593});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["c_solutions"].size() == 10);
    CHECK(j["truncated"] == false);
    CHECK(j["stats"]["c_mdd_nodes"] == 10);
    CHECK(j["stats"]["c_mdd_edges"] == 18);
    // Variables are numbered by name, whatever their order in the text.
    Instance inst = resolve(parse_equation(k593));
    auto brute = oracle::brute_card(inst.card);
    CHECK(brute.size() == 10);
    std::set<std::vector<std::uint64_t>> seen, expected;
    for (const auto& row : j["c_solutions"]) {
        seen.insert({row["x1"].get<std::uint64_t>(), row["x2"].get<std::uint64_t>(), row["x3"].get<std::uint64_t>()});
    }
    for (const auto& s : brute) expected.insert({s.at(1), s.at(2), s.at(3)});
    CHECK(seen == expected);
}

TEST_CASE("cli solve on the file instance") {
    CliResult r = cli({"solve", "-f", kData + "/worked_example/equation.txt"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["candidates"].size() == 4);
    CHECK(j["a_solutions"].size() == 6);
    CHECK(j["stats"]["basic_equations_candidates"] == 16);
    CHECK(j["candidates"][0]["x1"]["cycles"] == "1*C3");
    CHECK(j["candidates"][0]["x1"]["card"] == 3);

    // Deterministic output.
    CHECK(cli({"solve", "-f", kData + "/worked_example/equation.txt"}).out == r.out);
    CHECK(cli({"solve", kLiteral}).out == r.out);

    CliResult text = cli({"--format", "text", "solve", kLiteral});
    CHECK(text.code == 0);
    CHECK(text.out.find("candidates (4)") != std::string::npos);
}

TEST_CASE("cli truncation, roots, oracles and diagrams") {
    CliResult capped = cli({"--max-solutions", "3", "solve-c", k593});
    auto j = nlohmann::json::parse(capped.out);
    CHECK(j["c_solutions"].size() == 3);
    CHECK(j["truncated"] == true);

    CliResult root = cli({"root", "2*C2+3*C3+2*C6", "2"});
    REQUIRE(root.code == 0);
    CHECK(nlohmann::json::parse(root.out)["root"] == "1*C2 + 1*C3");
    CHECK(nlohmann::json::parse(cli({"root", "3*C2", "2"}).out)["root"].is_null());

    auto basic = nlohmann::json::parse(cli({"oracle", "basic", "4", "12", "12"}).out);
    CHECK(basic["solutions"].size() == 16);
    auto oa = nlohmann::json::parse(cli({"oracle", "a", kLiteral}).out);
    CHECK(oa["a_solutions"].size() == 6);

    auto path = std::filesystem::temp_directory_path() / "dds_solve_mdd_test.json";
    CHECK(cli({"--emit-mdd", path.string(), "solve", kLiteral}).code == 0);
    std::ifstream in(path);
    auto dump = nlohmann::json::parse(in);
    CHECK(dump.contains("c_mdd"));
    CHECK(dump.contains("cs_mdd"));
    std::filesystem::remove(path);
}

TEST_CASE("cli exit codes") {
    CHECK(cli({"solve", "x1 +"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"solve", "-f", "/nonexistent/eq.txt"}).code == 1);
    CHECK(cli({"--node-budget", "5", "solve-c", k593}).code == 2);
    CliResult none = cli({"solve-c", "[C2;2] * x = [C1;3]"});
    CHECK(none.code == 0);
    CHECK(nlohmann::json::parse(none.out)["c_solutions"].empty());

    // The installed binary maps errors the same way.
    const std::string bin = DDS_SOLVE_BIN;
    CHECK(std::system((bin + " root '2*C2+3*C3+2*C6' 2 > /dev/null").c_str()) == 0);
    CHECK(WEXITSTATUS(std::system((bin + " solve 'x1 +' 2> /dev/null").c_str())) == 1);
    CHECK(WEXITSTATUS(std::system((bin + " --node-budget 5 solve-c '" + k593 + "' 2> /dev/null").c_str())) == 2);
}
