#include "dds/roots.hpp"

#include <stdexcept>
#include <vector>

namespace dds {

namespace {

BigInt binomial(unsigned w, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (w - k + i) / i;
    return r;
}

}  // namespace

std::optional<CycleSum> wth_root(const CycleSum& target, unsigned w) {
    if (w == 0) throw std::invalid_argument("root of exponent 0 is ill-posed");
    if (w == 1 || target.is_zero()) return target;

    CycleSum root;
    CycleSum power;  // root^w, kept in step with root
    Period last = 0;
    while (!(power == target)) {
        // Least period whose target count is not yet reached.
        std::optional<Period> next;
        for (const auto& [o, s] : target.entries()) {
            if (power.count(o) < s) {
                next = o;
                break;
            }
        }
        if (!next || *next <= last) return std::nullopt;
        const Period p = *next;

        BigInt rhs = 0;
        for (const auto& [o, s] : target.entries()) {
            if (o > p) break;
            if (p % o == 0) rhs += s * o;
        }
        BigInt below = 0;
        for (const auto& [q, n] : root.entries()) {
            if (p % q == 0) below += n * q;
        }
        auto r = integer_nth_root(rhs, w);
        if (!r || *r <= below) return std::nullopt;
        BigInt diff = *r - below;
        if (diff % p != 0) return std::nullopt;
        const BigInt n = diff / p;

        // (root + C^n_p)^w by the binomial theorem on the new term.
        std::vector<CycleSum> root_powers{CycleSum::one()};
        for (unsigned k = 1; k <= w; ++k) root_powers.push_back(cycle_mul(root_powers.back(), root));
        CycleSum grown;
        for (unsigned k = 0; k <= w; ++k) {
            CycleSum t = cycle_mul(root_powers[w - k], cycle_pow(CycleSum::term(p, n), k));
            BigInt c = binomial(w, k);
            for (const auto& [q, m] : t.entries()) grown.add(q, m * c);
        }
        root.add(p, n);
        power = std::move(grown);
        last = p;
        if (!power.dominated_by(target)) return std::nullopt;
    }
    if (!power_check(root, w, target)) throw std::logic_error("root bookkeeping diverged");
    return root;
}

bool power_check(const CycleSum& candidate, unsigned w, const CycleSum& target) {
    return cycle_pow(candidate, w) == target;
}

const std::optional<CycleSum>& RootCache::get(const CycleSum& target, unsigned w) {
    auto key = std::make_pair(target, w);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(std::move(key), wth_root(target, w)).first;
    return it->second;
}

}  // namespace dds
