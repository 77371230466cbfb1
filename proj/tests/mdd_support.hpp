#pragma once

// Diagram generators shared by the engine tests and the acceptance run.

#include "dds/mdd.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

// A trie over the given label sequences; the last label of each sequence
// jumps to the terminal. Sequences must be prefix-free.
inline dds::mdd::Mdd from_paths(const std::vector<dds::mdd::Path>& paths) {
    std::size_t longest = 1;
    for (const auto& p : paths) longest = std::max(longest, p.size());
    dds::mdd::Mdd m(longest + 1, 0, 0);
    std::map<std::pair<dds::mdd::NodeId, dds::mdd::Label>, dds::mdd::NodeId> child;
    for (const auto& p : paths) {
        dds::mdd::NodeId at = m.root();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i + 1 == p.size()) {
                m.add_edge(at, p[i], m.terminal());
                break;
            }
            auto [it, fresh] = child.try_emplace({at, p[i]}, 0);
            if (fresh) {
                it->second = m.add_node(i + 1, 0);
                m.add_edge(at, p[i], it->second);
            }
            at = it->second;
        }
    }
    return m;
}

// Random layered diagram with small values and labels so that many nodes
// are equivalent, some dead ends, and occasional long edges.
inline dds::mdd::Mdd random_layered(std::mt19937_64& rng) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t levels = pick(3, 7);
    dds::mdd::Mdd m(levels, 0, 0);
    std::vector<std::vector<dds::mdd::NodeId>> at(levels);
    at[0].push_back(m.root());
    at[levels - 1].push_back(m.terminal());
    for (std::size_t lv = 1; lv + 1 < levels; ++lv) {
        std::size_t count = pick(1, 5);
        for (std::size_t i = 0; i < count; ++i) at[lv].push_back(m.add_node(lv, pick(0, 1)));
    }
    for (std::size_t lv = 0; lv + 1 < levels; ++lv) {
        for (dds::mdd::NodeId u : at[lv]) {
            std::set<dds::mdd::Label> used;
            std::size_t edges = pick(0, 3);
            for (std::size_t e = 0; e < edges; ++e) {
                dds::mdd::Label label = pick(0, 3);
                if (!used.insert(label).second) continue;
                std::size_t target_level = pick(0, 9) == 0 ? levels - 1 : lv + 1;
                const auto& pool = at[target_level];
                m.add_edge(u, label, pool[pick(0, pool.size() - 1)]);
            }
        }
    }
    return m;
}

inline std::set<dds::mdd::Path> path_set(const dds::mdd::Mdd& m) {
    auto v = dds::mdd::enumerate_paths(m);
    return {v.begin(), v.end()};
}

}  // namespace testsupport
