#include "dds/mdd.hpp"

#include "dds/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace dds::mdd {

Mdd::Mdd(std::size_t level_count, Value root_val, Value terminal_val, std::size_t node_budget)
    : levels_(level_count), budget_(node_budget) {
    if (level_count < 2) throw std::invalid_argument("a diagram needs at least two levels");
    if (node_budget < 2) throw ResourceError("node budget too small for root and terminal");
    nodes_.push_back({0, root_val, {}});
    nodes_.push_back({level_count - 1, terminal_val, {}});
    levels_.front().push_back(0);
    levels_.back().push_back(1);
}

NodeId Mdd::add_node(std::size_t level, Value val) {
    if (level == 0 || level + 1 >= levels_.size()) {
        throw std::invalid_argument("inner nodes live strictly between root and terminal");
    }
    if (nodes_.size() >= budget_) {
        throw ResourceError("decision diagram exceeds the node budget of " + std::to_string(budget_));
    }
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({level, val, {}});
    levels_[level].push_back(id);
    return id;
}

void Mdd::add_edge(NodeId from, Label label, NodeId to) {
    if (from >= nodes_.size() || to >= nodes_.size()) throw std::out_of_range("edge endpoint");
    if (nodes_[to].level <= nodes_[from].level) {
        throw std::invalid_argument("edges must point to a deeper level");
    }
    auto& out = nodes_[from].out;
    auto it = std::lower_bound(out.begin(), out.end(), label,
                               [](const Edge& e, Label l) { return e.label < l; });
    if (it != out.end() && it->label == label) {
        throw std::invalid_argument("label " + std::to_string(label) + " already leaves this node");
    }
    out.insert(it, {label, to});
    ++edge_count_;
}

Mdd reduce(const Mdd& m) {
    const std::size_t n = m.node_count();
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::vector<std::vector<NodeId>> rev(n);
    std::vector<NodeId> stack{m.root()};
    fwd[m.root()] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (const Edge& e : m.node(u).out) {
            rev[e.target].push_back(u);
            if (!fwd[e.target]) {
                fwd[e.target] = 1;
                stack.push_back(e.target);
            }
        }
    }
    Mdd out(m.level_count(), m.node(m.root()).val, m.node(m.terminal()).val, m.node_budget());
    if (!fwd[m.terminal()]) return out;
    stack.push_back(m.terminal());
    bwd[m.terminal()] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : rev[u]) {
            if (!bwd[v]) {
                bwd[v] = 1;
                stack.push_back(v);
            }
        }
    }
    auto alive = [&](NodeId u) { return fwd[u] && bwd[u]; };

    // Bottom-up: a node's class is fixed once all deeper classes are.
    using Key = std::pair<Value, std::vector<Edge>>;
    constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> rep(n, kNone);
    rep[m.terminal()] = m.terminal();
    std::vector<std::vector<NodeId>> level_reps(m.level_count());
    auto key_of = [&](NodeId u) {
        Key k{m.node(u).val, {}};
        for (const Edge& e : m.node(u).out) {
            if (alive(e.target)) k.second.push_back({e.label, rep[e.target]});
        }
        return k;
    };
    for (std::size_t lv = m.level_count() - 1; lv-- > 1;) {
        std::map<Key, NodeId> classes;
        for (NodeId u : m.level(lv)) {
            if (!alive(u)) continue;
            auto [it, fresh] = classes.try_emplace(key_of(u), u);
            rep[u] = it->second;
        }
        for (const auto& [k, u] : classes) level_reps[lv].push_back(u);
    }
    rep[m.root()] = m.root();
    level_reps[0].push_back(m.root());

    std::vector<NodeId> fresh(n, kNone);
    fresh[m.root()] = out.root();
    fresh[m.terminal()] = out.terminal();
    for (std::size_t lv = 1; lv + 1 < m.level_count(); ++lv) {
        for (NodeId u : level_reps[lv]) fresh[u] = out.add_node(lv, m.node(u).val);
    }
    for (std::size_t lv = 0; lv + 1 < m.level_count(); ++lv) {
        for (NodeId u : level_reps[lv]) {
            for (const Edge& e : m.node(u).out) {
                if (alive(e.target)) out.add_edge(fresh[u], e.label, fresh[rep[e.target]]);
            }
        }
    }
    return out;
}

void for_each_path(const Mdd& m, const std::function<bool(const Path&)>& visit) {
    struct Frame {
        NodeId node;
        std::size_t next;
    };
    std::vector<Frame> frames{{m.root(), 0}};
    Path path;
    while (!frames.empty()) {
        Frame& f = frames.back();
        const Node& node = m.node(f.node);
        if (f.next == node.out.size()) {
            frames.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        const Edge& e = node.out[f.next++];
        path.push_back(e.label);
        if (e.target == m.terminal()) {
            if (!visit(path)) return;
            path.pop_back();
            continue;
        }
        frames.push_back({e.target, 0});
    }
}

std::vector<Path> enumerate_paths(const Mdd& m, std::optional<std::size_t> cap) {
    std::vector<Path> out;
    if (cap && *cap == 0) return out;
    for_each_path(m, [&](const Path& p) {
        out.push_back(p);
        return !cap || out.size() < *cap;
    });
    return out;
}

BigInt count_paths(const Mdd& m) {
    std::vector<BigInt> count(m.node_count(), 0);
    count[m.terminal()] = 1;
    for (std::size_t lv = m.level_count() - 1; lv-- > 0;) {
        for (NodeId u : m.level(lv)) {
            for (const Edge& e : m.node(u).out) count[u] += count[e.target];
        }
    }
    return count[m.root()];
}

std::vector<std::size_t> stack_boundaries(std::span<const Mdd> ms) {
    std::vector<std::size_t> out;
    std::size_t level = 0;
    for (std::size_t j = 0; j + 1 < ms.size(); ++j) {
        level += ms[j].level_count() - 1;
        out.push_back(level);
    }
    return out;
}

Mdd stack_product(std::span<const Mdd> ms) {
    if (ms.empty()) throw std::invalid_argument("stack_product needs at least one diagram");
    std::size_t levels = 1;
    std::size_t budget = 0;
    for (const Mdd& m : ms) {
        levels += m.level_count() - 1;
        budget = std::max(budget, m.node_budget());
    }
    std::vector<Value> offset(ms.size(), 0);
    for (std::size_t j = 1; j < ms.size(); ++j) {
        offset[j] = offset[j - 1] + ms[j - 1].node(ms[j - 1].terminal()).val -
                    ms[j].node(ms[j].root()).val;
    }
    const Mdd& last = ms.back();
    Mdd out(levels, ms.front().node(ms.front().root()).val,
            offset.back() + last.node(last.terminal()).val, budget);

    NodeId entry = out.root();
    std::size_t base = 0;
    for (std::size_t j = 0; j < ms.size(); ++j) {
        const Mdd& m = ms[j];
        std::vector<NodeId> map(m.node_count());
        map[m.root()] = entry;
        if (j + 1 == ms.size()) {
            map[m.terminal()] = out.terminal();
        } else {
            map[m.terminal()] = out.add_node(base + m.level_count() - 1,
                                             offset[j] + m.node(m.terminal()).val);
        }
        for (std::size_t lv = 1; lv + 1 < m.level_count(); ++lv) {
            for (NodeId u : m.level(lv)) map[u] = out.add_node(base + lv, offset[j] + m.node(u).val);
        }
        for (std::size_t lv = 0; lv + 1 < m.level_count(); ++lv) {
            for (NodeId u : m.level(lv)) {
                for (const Edge& e : m.node(u).out) out.add_edge(map[u], e.label, map[e.target]);
            }
        }
        entry = map[m.terminal()];
        base += m.level_count() - 1;
    }
    return reduce(out);
}

Mdd scale_labels(const Mdd& m, Label factor) {
    auto scale = [&](std::uint64_t x) {
        if (factor != 0 && x > std::numeric_limits<std::uint64_t>::max() / factor) {
            throw std::overflow_error("label scaling overflows 64 bits");
        }
        return x * factor;
    };
    Mdd out(m.level_count(), scale(m.node(m.root()).val), scale(m.node(m.terminal()).val),
            m.node_budget());
    std::vector<NodeId> map(m.node_count());
    map[m.root()] = out.root();
    map[m.terminal()] = out.terminal();
    for (std::size_t lv = 1; lv + 1 < m.level_count(); ++lv) {
        for (NodeId u : m.level(lv)) map[u] = out.add_node(lv, scale(m.node(u).val));
    }
    for (std::size_t lv = 0; lv + 1 < m.level_count(); ++lv) {
        for (NodeId u : m.level(lv)) {
            for (const Edge& e : m.node(u).out) out.add_edge(map[u], scale(e.label), map[e.target]);
        }
    }
    return out;
}

Mdd product_intersection(const Mdd& a, const Mdd& b) {
    Mdd out(std::max(a.level_count(), b.level_count()), a.node(a.root()).val,
            a.node(a.terminal()).val, std::max(a.node_budget(), b.node_budget()));
    std::map<std::pair<NodeId, NodeId>, NodeId> pairs;
    std::vector<std::pair<NodeId, NodeId>> queue{{a.root(), b.root()}};
    pairs[{a.root(), b.root()}] = out.root();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [u, v] = queue[head];
        NodeId from = pairs.at({u, v});
        const auto& eu = a.node(u).out;
        const auto& ev = b.node(v).out;
        for (std::size_t i = 0, k = 0; i < eu.size() && k < ev.size();) {
            if (eu[i].label < ev[k].label) {
                ++i;
            } else if (ev[k].label < eu[i].label) {
                ++k;
            } else {
                NodeId tu = eu[i].target;
                NodeId tv = ev[k].target;
                bool end_u = tu == a.terminal();
                bool end_v = tv == b.terminal();
                if (end_u && end_v) {
                    out.add_edge(from, eu[i].label, out.terminal());
                } else if (!end_u && !end_v) {
                    auto [it, fresh] = pairs.try_emplace({tu, tv}, 0);
                    if (fresh) {
                        std::size_t lv = std::max(a.node(tu).level, b.node(tv).level);
                        it->second = out.add_node(lv, a.node(tu).val);
                        queue.push_back({tu, tv});
                    }
                    out.add_edge(from, eu[i].label, it->second);
                }
                ++i;
                ++k;
            }
        }
    }
    return reduce(out);
}

ItemMultiset to_multiset(const Path& p) {
    ItemMultiset s;
    for (Label l : p) ++s[l];
    return s;
}

namespace {

class Acceptor {
public:
    Acceptor(const Mdd& m, const ItemMultiset& items) : m_(m) {
        for (const auto& [label, count] : items) {
            labels_.push_back(label);
            left_.push_back(count);
            total_ += count;
        }
    }

    bool run() { return visit(m_.root()); }

private:
    bool visit(NodeId u) {
        if (u == m_.terminal()) return total_ == 0;
        if (failed_.count({u, left_})) return false;
        for (const Edge& e : m_.node(u).out) {
            auto it = std::lower_bound(labels_.begin(), labels_.end(), e.label);
            if (it == labels_.end() || *it != e.label) continue;
            std::size_t i = static_cast<std::size_t>(it - labels_.begin());
            if (left_[i] == 0) continue;
            --left_[i];
            --total_;
            bool ok = visit(e.target);
            ++left_[i];
            ++total_;
            if (ok) return true;
        }
        failed_.insert({u, left_});
        return false;
    }

    const Mdd& m_;
    std::vector<Label> labels_;
    std::vector<std::uint64_t> left_;
    std::uint64_t total_ = 0;
    std::set<std::pair<NodeId, std::vector<std::uint64_t>>> failed_;
};

}  // namespace

bool accepts_multiset(const Mdd& m, const ItemMultiset& items) {
    return Acceptor(m, items).run();
}

std::set<ItemMultiset> intersect(std::span<const StackedTarget> targets) {
    if (targets.empty()) throw std::invalid_argument("intersect needs at least one target");
    std::vector<const StackedTarget*> plain;
    std::vector<const StackedTarget*> stacked;
    for (const StackedTarget& t : targets) (t.plain() ? plain : stacked).push_back(&t);

    std::set<ItemMultiset> candidates;
    auto collect = [&](const Mdd& m) {
        for_each_path(m, [&](const Path& p) {
            candidates.insert(to_multiset(p));
            return true;
        });
    };
    std::size_t first_filter = 0;
    if (!plain.empty()) {
        Mdd guess = plain.front()->diagram;
        for (std::size_t i = 1; i < plain.size(); ++i) {
            guess = product_intersection(guess, plain[i]->diagram);
        }
        collect(guess);
    } else {
        collect(stacked.front()->diagram);
        first_filter = 1;
    }
    for (std::size_t i = first_filter; i < stacked.size() && !candidates.empty(); ++i) {
        std::erase_if(candidates, [&](const ItemMultiset& c) {
            return !accepts_multiset(stacked[i]->diagram, c);
        });
    }
    return candidates;
}

nlohmann::json to_json(const Mdd& m) {
    nlohmann::json levels = nlohmann::json::array();
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t lv = 0; lv < m.level_count(); ++lv) levels.push_back(m.level(lv));
    for (NodeId u = 0; u < m.node_count(); ++u) {
        nlohmann::json edges = nlohmann::json::array();
        for (const Edge& e : m.node(u).out) edges.push_back({{"label", e.label}, {"target", e.target}});
        nodes.push_back({{"id", u}, {"level", m.node(u).level}, {"val", m.node(u).val}, {"edges", edges}});
    }
    return {{"root", m.root()},
            {"terminal", m.terminal()},
            {"levels", levels},
            {"nodes", nodes},
            {"node_count", m.node_count()},
            {"edge_count", m.edge_count()}};
}

}  // namespace dds::mdd
