#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/a_solver.hpp"
#include "test_support.hpp"

#include <set>

using namespace dds;
using testsupport::cs;

namespace {

std::set<CycleSum> sums(std::initializer_list<const char*> texts) {
    std::set<CycleSum> out;
    for (const char* t : texts) out.insert(cs(t));
    return out;
}

// C^1_4 (x) X1 + C^1_2 (x) X2 = C^4_2 + C^4_4 + C^7_6 + C^7_12
AEquation registry_example() {
    return {{{cs("C4"), 1, 1}, {cs("C2"), 2, 1}}, cs("4*C2 + 4*C4 + 7*C6 + 7*C12")};
}

// C^1_4 (x) x1^2 + C^1_3 (x) x2 = C^3_6 + C^5_12
AEquation worked_example() { return {{{cs("C4"), 1, 2}, {cs("C3"), 2, 1}}, cs("3*C6 + 5*C12")}; }

}  // namespace

TEST_CASE("simplify merges equal (var, exp) pairs only") {
    AEquation merged = simplify({{{cs("C2"), 1, 1}, {cs("C3"), 1, 1}}, cs("C6")});
    REQUIRE(merged.monomials.size() == 1);
    CHECK(merged.monomials[0].coeff == cs("C2 + C3"));
    AEquation kept = simplify({{{cs("C2"), 1, 1}, {cs("C2"), 1, 2}}, cs("C6")});
    CHECK(kept.monomials.size() == 2);
}

TEST_CASE("feasible divisors") {
    using V = std::vector<std::uint64_t>;
    CHECK(feasible_divisors(4, 12) == V{1, 2, 4});
    CHECK(feasible_divisors(2, 4) == V{2});
    CHECK(feasible_divisors(3, 5).empty());
    CHECK(feasible_divisors(2, 6) == V{1, 2});
    CHECK(feasible_divisors(2, 12) == V{2});
    CHECK(feasible_divisors(4, 4) == V{1, 2, 4});
    CHECK(feasible_divisors(2, 2) == V{1, 2});
    CHECK(feasible_divisors(1, 7) == V{1});
}

TEST_CASE("the sixteen solutions of C4 X = 12 C12") {
    auto expected = sums({"3*C12", "2*C6 + 2*C12", "2*C3 + C6 + 2*C12", "4*C3 + 2*C12", "4*C6 + C12",
                          "2*C3 + 3*C6 + C12", "4*C3 + 2*C6 + C12", "6*C3 + C6 + C12", "8*C3 + C12", "6*C6",
                          "2*C3 + 5*C6", "4*C3 + 4*C6", "6*C3 + 3*C6", "8*C3 + 2*C6", "10*C3 + C6", "12*C3"});
    CHECK(expected.size() == 16);
    CHECK(solve_basic({4, 12, 12}) == expected);

    mdd::Mdd m = build_sb_mdd({4, 12, 12});
    auto paths = mdd::enumerate_paths(m);
    CHECK(paths.size() == 16);
    std::set<mdd::Path> as_set(paths.begin(), paths.end());
    CHECK(as_set.count({4, 4, 4}) == 1);
    CHECK(as_set.count({4, 4, 2, 2}) == 1);
    CHECK(as_set.count({4, 4, 2, 1, 1}) == 1);
    CHECK(decode_sb_path({4, 12, 12}, {4, 4, 2, 1, 1}) == cs("2*C12 + C6 + 2*C3"));
    for (const auto& p : paths) CHECK(std::is_sorted(p.rbegin(), p.rend()));
}

TEST_CASE("infeasible basic equations") {
    mdd::Mdd m = build_sb_mdd({2, 4, 5});
    CHECK(m.empty());
    CHECK(solve_basic({2, 4, 5}).empty());
    CHECK(solve_basic({3, 5, 1}).empty());
    CHECK(solve_basic({4, 6, 2}).empty());
    CHECK(solve_basic({1, 1, 1}) == sums({"C1"}));
    CHECK(solve_basic({1, 5, 3}) == sums({"3*C5"}));
}

TEST_CASE("registry counts for the two-monomial example") {
    BasicRegistry r = collect_necessary(registry_example());
    CHECK(r.candidate_count() == 44);
    CHECK(r.necessary_count() == 27);
}

TEST_CASE("worked example registry and allocation diagram") {
    AEquation eq = worked_example();
    BasicRegistry r = collect_necessary(eq);
    CHECK(r.candidate_count() == 16);
    mdd::Mdd cs_mdd = build_cs(eq, r);
    // Period 6: only the second monomial can contribute, all three cycles.
    // Period 12: shares 0..5 for the first monomial.
    std::set<std::vector<std::uint64_t>> first_two;
    std::set<std::uint64_t> period12_first;
    for (const auto& p : mdd::enumerate_paths(cs_mdd)) {
        first_two.insert({p[0], p[1]});
        period12_first.insert(p[2]);
        CHECK(p[2] + p[3] == 5);
    }
    CHECK(first_two == std::set<std::vector<std::uint64_t>>{{0, 3}});
    CHECK(period12_first == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("registry example allocation of period 4") {
    AEquation eq = registry_example();
    BasicRegistry r = collect_necessary(eq);
    mdd::Mdd all = build_cs(eq, r);
    std::set<std::uint64_t> first;
    for (const auto& p : mdd::enumerate_paths(all)) first.insert(p[2]);
    CHECK(first == std::set<std::uint64_t>{0, 2, 4});
}

TEST_CASE("solve_system on the worked example") {
    AEquation eq = worked_example();
    BasicRegistry r = collect_necessary(eq);
    // X1 gets three 12-cycles; X2 gets the 6-cycles and two 12-cycles.
    SystemAssignment a{{0, 3}, {3, 2}};
    auto xs = solve_system(eq, a, r);
    REQUIRE(xs.has_value());
    CHECK((*xs)[0] == sums({"3*C3", "C3 + C6"}));
    for (const CycleSum& x : (*xs)[1]) CHECK(cycle_mul(cs("C3"), x) == cs("3*C6 + 2*C12"));
    CHECK((*xs)[1] == sums({"C6 + 2*C4", "3*C2 + 2*C4"}));

    SystemAssignment zero{{0, 0}, {3, 5}};
    auto z = solve_system(eq, zero, r);
    REQUIRE(z.has_value());
    CHECK((*z)[0] == std::set<CycleSum>{CycleSum{}});
}

TEST_CASE("rows sharing a variable are intersected") {
    // Both coefficient terms give a row on the same X.
    AEquation eq{{{cs("C1 + C2"), 1, 1}}, cs("3*C2")};
    auto res = solve_a_equation(eq);
    CHECK(res.solutions == std::set<AAssignment>{{{1, cs("C2")}}});
    // Every allocation leaves the two rows without a common value.
    AEquation none{{{cs("C1 + C2"), 1, 1}}, cs("2*C2 + C1")};
    CHECK(solve_a_equation(none).solutions.empty());
}

TEST_CASE("the six solutions of the worked example") {
    auto res = solve_a_equation(worked_example());
    std::set<AAssignment> expected{
        {{1, cs("C3")}, {2, cs("C6 + 2*C4")}},
        {{1, cs("C3")}, {2, cs("3*C2 + 2*C4")}},
        {{1, CycleSum{}}, {2, cs("C6 + C12 + 2*C4")}},
        {{1, CycleSum{}}, {2, cs("C6 + 5*C4")}},
        {{1, CycleSum{}}, {2, cs("3*C2 + C12 + 2*C4")}},
        {{1, CycleSum{}}, {2, cs("3*C2 + 5*C4")}},
    };
    CHECK(res.solutions == expected);
    CHECK(res.stats.basic_candidates == 16);
}

TEST_CASE("degenerate a-equations") {
    auto zero = solve_a_equation({{{cs("C2"), 1, 1}, {cs("C3"), 2, 2}}, CycleSum{}});
    CHECK(zero.solutions == std::set<AAssignment>{{{1, CycleSum{}}, {2, CycleSum{}}}});
    CHECK(solve_a_equation({{{CycleSum::one(), 1, 1}}, cs("2*C3 + C5")}).solutions ==
          std::set<AAssignment>{{{1, cs("2*C3 + C5")}}});
    CHECK_THROWS_AS(solve_a_equation({{{CycleSum{}, 1, 1}}, cs("C1")}), std::invalid_argument);
    CHECK_THROWS_AS(solve_a_equation({{{cs("C1"), 1, 0}}, cs("C1")}), std::invalid_argument);
    CHECK_THROWS_AS(solve_a_equation({{}, cs("C1")}), std::invalid_argument);
}

TEST_CASE("one variable under two exponents") {
    // C1 (x) x + C1 (x) x^2 = x + x^2 with x = C2: C2 + 2*C2 = 3*C2.
    auto res = solve_a_equation({{{CycleSum::one(), 1, 1}, {CycleSum::one(), 1, 2}}, cs("3*C2")});
    CHECK(res.solutions == std::set<AAssignment>{{{1, cs("C2")}}});
}
