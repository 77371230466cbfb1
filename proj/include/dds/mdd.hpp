#pragma once

/**
 * @file mdd.hpp
 * @brief Layered multi-valued decision diagrams.
 *
 * A diagram has a root on level 0 and a terminal on the last level. Every
 * other node carries an accumulated value and sits on an inner level.
 * Edges carry integer labels and always point to a strictly deeper level;
 * builders that need paths of varying length jump straight to the
 * terminal. Labels leaving one node are distinct, so distinct paths spell
 * distinct label sequences.
 */

#include "dds/cycle_sum.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace dds::mdd {

using NodeId = std::uint32_t;
using Label = std::uint64_t;
using Value = std::uint64_t;
using Path = std::vector<Label>;

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

struct Edge {
    Label label;
    NodeId target;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

struct Node {
    std::size_t level;
    Value val;
    std::vector<Edge> out;  ///< sorted by label
};

class Mdd {
public:
    /// Creates root (level 0) and terminal (last level); needs >= 2 levels.
    Mdd(std::size_t level_count, Value root_val, Value terminal_val,
        std::size_t node_budget = kDefaultNodeBudget);

    NodeId root() const { return 0; }
    NodeId terminal() const { return 1; }
    std::size_t level_count() const { return levels_.size(); }
    std::size_t node_budget() const { return budget_; }

    /// Adds an inner node; throws ResourceError beyond the node budget.
    NodeId add_node(std::size_t level, Value val);

    /// Adds an edge to a deeper level; a label may leave a node only once.
    void add_edge(NodeId from, Label label, NodeId to);

    const Node& node(NodeId id) const { return nodes_[id]; }
    const std::vector<NodeId>& level(std::size_t i) const { return levels_[i]; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// True when the root has no outgoing edge (no path in a reduced diagram).
    bool empty() const { return nodes_[0].out.empty(); }

private:
    std::vector<Node> nodes_;
    std::vector<std::vector<NodeId>> levels_;
    std::size_t edge_count_ = 0;
    std::size_t budget_;
};

/// Deletes nodes off every root-to-terminal path, then merges nodes of a
/// level with equal value and equal outgoing edges, bottom-up.
Mdd reduce(const Mdd& m);

/// Visits root-to-terminal label sequences, ascending labels at every node.
/// The visitor returns false to stop early.
void for_each_path(const Mdd& m, const std::function<bool(const Path&)>& visit);

/// Collects paths in visiting order, at most cap of them.
std::vector<Path> enumerate_paths(const Mdd& m, std::optional<std::size_t> cap = std::nullopt);

/// Number of root-to-terminal paths.
BigInt count_paths(const Mdd& m);

/// Chains diagrams: the terminal of each is identified with the next root.
/// Values are offset so that they keep accumulating along the chain.
Mdd stack_product(std::span<const Mdd> ms);

/// Level indices of the junction nodes a stack_product introduces.
std::vector<std::size_t> stack_boundaries(std::span<const Mdd> ms);

/// Multiplies every label and value by factor.
Mdd scale_labels(const Mdd& m, Label factor);

/// Product construction: paths common to both diagrams.
Mdd product_intersection(const Mdd& a, const Mdd& b);

/// A multiset of decoded labels, label -> multiplicity.
using ItemMultiset = std::map<Label, std::uint64_t>;

ItemMultiset to_multiset(const Path& p);

/// True if some root-to-terminal path spells a permutation of items.
bool accepts_multiset(const Mdd& m, const ItemMultiset& items);

/// A diagram whose path labels are items, possibly stacked from several
/// symmetry-broken components. No boundaries means a plain diagram whose
/// paths list items in canonical order.
struct StackedTarget {
    Mdd diagram;
    std::vector<std::size_t> boundaries;

    bool plain() const { return boundaries.empty(); }
};

/// Item multisets accepted by every target. Plain targets are intersected
/// first by product construction to form the initial guess; stacked
/// targets then filter candidates by decomposition. Order-independent.
std::set<ItemMultiset> intersect(std::span<const StackedTarget> targets);

/// Debug form: levels, nodes with values, labelled edges.
nlohmann::json to_json(const Mdd& m);

}  // namespace dds::mdd
