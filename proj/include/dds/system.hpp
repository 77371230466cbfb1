#pragma once

/**
 * @file system.hpp
 * @brief Finite dynamical systems as functional graphs.
 *
 * A system is a total map next: [0, N) -> [0, N). Sum is disjoint union,
 * product is the direct product of maps. The two abstractions used by the
 * solvers are the state count and the multiset of limit cycles.
 */

#include "dds/cycle_sum.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace dds {

class Dds {
public:
    /// The empty system (additive neutral).
    Dds() = default;

    /// Validates that every image is a state index.
    explicit Dds(std::vector<std::size_t> next);

    /// A single fixed point (multiplicative neutral).
    static Dds one();

    /// A pure cycle of the given length.
    static Dds cycle(std::size_t length);

    std::size_t size() const { return next_.size(); }
    const std::vector<std::size_t>& next() const { return next_; }
    std::size_t operator()(std::size_t s) const { return next_[s]; }

    bool operator==(const Dds&) const = default;

private:
    std::vector<std::size_t> next_;
};

/// Disjoint union; b's states follow a's.
Dds dds_sum(const Dds& a, const Dds& b);

/// Direct product; state (u, v) is u * |b| + v.
Dds dds_product(const Dds& a, const Dds& b);

/// Number of states.
std::size_t c_abstraction(const Dds& a);

/// Multiset of cycle lengths, found by colouring states in one pass.
CycleSum a_abstraction(const Dds& a);

/// {"states": N, "next": [...]}; throws std::invalid_argument when malformed.
Dds dds_from_json(const nlohmann::json& j);
nlohmann::json dds_to_json(const Dds& a);

/// Reads a system from a JSON file; throws std::runtime_error on I/O failure.
Dds load_dds(const std::string& path);

}  // namespace dds
