#pragma once

/**
 * @file cycle_sum.hpp
 * @brief Exact arithmetic on sums of disjoint cycles.
 *
 * A cycle sum is a formal sum of terms C^n_p (n disjoint cycles of
 * length p). It is the canonical form of the periodic part of a finite
 * dynamical system. Sum is per-period addition; product follows
 *
 *   C^{n1}_{p1} * C^{n2}_{p2} = C^{p1 n1 p2 n2 / lcm(p1,p2)}_{lcm(p1,p2)}
 *
 * extended by distributivity.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dds {

using BigInt = boost::multiprecision::cpp_int;
using Period = std::uint64_t;

/// One term C^count_period.
struct CycleTerm {
    Period period = 1;
    BigInt count = 1;

    bool operator==(const CycleTerm&) const = default;
};

/// Canonical cycle sum: strictly increasing periods, positive counts.
class CycleSum {
public:
    using Entries = std::map<Period, BigInt>;

    /// The empty sum, i.e. the abstraction of the empty system.
    CycleSum() = default;

    /// Builds from raw entries; zero counts are dropped.
    explicit CycleSum(const Entries& entries);

    /// Single fixed point, the multiplicative neutral.
    static CycleSum one();

    /// The single term C^count_period (empty if count is zero).
    static CycleSum term(Period period, const BigInt& count = 1);

    const Entries& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    /// Count at a period, zero if absent.
    BigInt count(Period period) const;

    /// Adds count cycles of the given period (count may be zero).
    void add(Period period, const BigInt& count);

    /// Sum of period times count: the number of periodic states.
    BigInt total_periodic() const;

    /// True if every count of this sum is at most the one in other.
    bool dominated_by(const CycleSum& other) const;

    friend bool operator==(const CycleSum& a, const CycleSum& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator<(const CycleSum& a, const CycleSum& b);

private:
    Entries entries_;
};

/// One tuple of the multinomial expansion of a power of a cycle sum.
struct MultinomialTerm {
    std::vector<unsigned> exponents;  ///< k_i per term, summing to w
    BigInt coefficient;               ///< w! / (k_1! ... k_l!)
    CycleTerm term;                   ///< period lcm, count prod(p n)^k / lcm
};

CycleSum cycle_add(const CycleSum& a, const CycleSum& b);
CycleSum cycle_mul(const CycleSum& a, const CycleSum& b);
CycleSum cycle_pow(const CycleSum& a, unsigned w);

/// Every exponent tuple of (sum of a's terms)^w, lexicographically
/// descending on (k_1, ..., k_l). Requires a nonempty and w >= 1.
std::vector<MultinomialTerm> multinomial_terms(const CycleSum& a, unsigned w);

/// Exact w-th root of v, or nothing if v is not a perfect power.
std::optional<BigInt> integer_nth_root(const BigInt& v, unsigned w);

/// Overflow-checked least common multiple.
Period lcm_checked(Period a, Period b);

/// Text form: "3*C6 + 5*C12", "0" for the empty sum.
std::string to_string(const CycleSum& a);

/// Parses the text form; whitespace-insensitive, "C4" means "1*C4".
/// Throws ParseError with a column relative to the given offset.
CycleSum parse_cycle_sum(std::string_view text, std::size_t line = 1,
                         std::size_t column = 1);

}  // namespace dds
