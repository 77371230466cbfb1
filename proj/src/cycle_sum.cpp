#include "dds/cycle_sum.hpp"

#include "dds/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dds {

CycleSum::CycleSum(const Entries& entries) {
    for (const auto& [p, n] : entries) add(p, n);
}

CycleSum CycleSum::one() { return term(1, 1); }

CycleSum CycleSum::term(Period period, const BigInt& count) {
    CycleSum s;
    s.add(period, count);
    return s;
}

BigInt CycleSum::count(Period period) const {
    auto it = entries_.find(period);
    return it == entries_.end() ? BigInt(0) : it->second;
}

void CycleSum::add(Period period, const BigInt& count) {
    if (period == 0) throw std::invalid_argument("cycle period must be positive");
    if (count < 0) throw std::invalid_argument("cycle count must be non-negative");
    if (count == 0) return;
    entries_[period] += count;
}

BigInt CycleSum::total_periodic() const {
    BigInt total = 0;
    for (const auto& [p, n] : entries_) total += n * p;
    return total;
}

bool CycleSum::dominated_by(const CycleSum& other) const {
    for (const auto& [p, n] : entries_) {
        if (n > other.count(p)) return false;
    }
    return true;
}

bool operator<(const CycleSum& a, const CycleSum& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                        b.entries_.begin(), b.entries_.end());
}

Period lcm_checked(Period a, Period b) {
    Period g = std::gcd(a, b);
    Period q = a / g;
    if (q != 0 && b > std::numeric_limits<Period>::max() / q) {
        throw std::overflow_error("cycle period overflows 64 bits");
    }
    return q * b;
}

CycleSum cycle_add(const CycleSum& a, const CycleSum& b) {
    CycleSum r = a;
    for (const auto& [p, n] : b.entries()) r.add(p, n);
    return r;
}

CycleSum cycle_mul(const CycleSum& a, const CycleSum& b) {
    CycleSum r;
    for (const auto& [p1, n1] : a.entries()) {
        for (const auto& [p2, n2] : b.entries()) {
            Period l = lcm_checked(p1, p2);
            r.add(l, BigInt(p1) * n1 * p2 * n2 / l);
        }
    }
    return r;
}

namespace {

BigInt factorial(unsigned k) {
    BigInt f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

// Calls emit(k) for every k with sum w, k[0] descending first.
template <class F>
void for_each_composition(std::vector<unsigned>& k, std::size_t i, unsigned left, F& emit) {
    if (i + 1 == k.size()) {
        k[i] = left;
        emit(k);
        return;
    }
    for (unsigned v = left + 1; v-- > 0;) {
        k[i] = v;
        for_each_composition(k, i + 1, left - v, emit);
    }
}

}  // namespace

std::vector<MultinomialTerm> multinomial_terms(const CycleSum& a, unsigned w) {
    if (a.is_zero()) throw std::invalid_argument("multinomial expansion of an empty sum");
    if (w == 0) throw std::invalid_argument("multinomial expansion needs w >= 1");
    std::vector<CycleTerm> terms;
    for (const auto& [p, n] : a.entries()) terms.push_back({p, n});

    std::vector<MultinomialTerm> out;
    BigInt wf = factorial(w);
    std::vector<unsigned> k(terms.size(), 0);
    auto emit = [&](const std::vector<unsigned>& ks) {
        BigInt denom = 1;
        BigInt prod = 1;
        Period l = 1;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            denom *= factorial(ks[i]);
            if (ks[i] == 0) continue;
            l = lcm_checked(l, terms[i].period);
            prod *= boost::multiprecision::pow(BigInt(terms[i].period) * terms[i].count, ks[i]);
        }
        out.push_back({ks, wf / denom, {l, prod / l}});
    };
    for_each_composition(k, 0, w, emit);
    return out;
}

CycleSum cycle_pow(const CycleSum& a, unsigned w) {
    if (w == 0) return CycleSum::one();
    if (a.is_zero()) return {};
    if (a.size() == 1) {
        const auto& [p, n] = *a.entries().begin();
        return CycleSum::term(p, boost::multiprecision::pow(BigInt(p), w - 1) *
                                     boost::multiprecision::pow(n, w));
    }
    CycleSum r;
    for (const auto& t : multinomial_terms(a, w)) r.add(t.term.period, t.coefficient * t.term.count);
    return r;
}

std::optional<BigInt> integer_nth_root(const BigInt& v, unsigned w) {
    if (w == 0) throw std::invalid_argument("root of exponent 0");
    if (v < 0) throw std::invalid_argument("root of a negative integer");
    if (v < 2 || w == 1) return v;
    // Newton iteration from an upper bound; decreases monotonically to floor.
    std::size_t bits = boost::multiprecision::msb(v) + 1;
    BigInt x = BigInt(1) << ((bits + w - 1) / w);
    for (;;) {
        BigInt y = ((w - 1) * x + v / boost::multiprecision::pow(x, w - 1)) / w;
        if (y >= x) break;
        x = y;
    }
    if (boost::multiprecision::pow(x, w) == v) return x;
    return std::nullopt;
}

std::string to_string(const CycleSum& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [p, n] : a.entries()) {
        if (!s.empty()) s += " + ";
        s += n.str() + "*C" + std::to_string(p);
    }
    return s;
}

namespace {

class SumParser {
public:
    SumParser(std::string_view text, std::size_t line, std::size_t column)
        : text_(text), line_(line), column_(column) {}

    CycleSum parse() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '0') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ == text_.size()) return {};
            pos_ = save;
        }
        CycleSum r;
        for (;;) {
            skip_ws();
            BigInt n = 1;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                n = number();
                skip_ws();
                expect('*');
                skip_ws();
            }
            expect('C');
            std::size_t at = pos_;
            BigInt p = number();
            if (p == 0) fail("cycle period must be positive", at);
            if (p > std::numeric_limits<Period>::max()) fail("cycle period too large", at);
            if (n == 0) fail("cycle count must be positive", at);
            r.add(static_cast<Period>(p), n);
            skip_ws();
            if (pos_ == text_.size()) return r;
            expect('+');
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, line_, column_ + at);
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "' in cycle sum", pos_);
        }
        ++pos_;
    }

    BigInt number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number in cycle sum", start);
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t column_;
    std::size_t pos_ = 0;
};

}  // namespace

CycleSum parse_cycle_sum(std::string_view text, std::size_t line, std::size_t column) {
    return SumParser(text, line, column).parse();
}

}  // namespace dds
