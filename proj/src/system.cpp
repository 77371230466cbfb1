#include "dds/system.hpp"

#include <fstream>
#include <stdexcept>

namespace dds {

Dds::Dds(std::vector<std::size_t> next) : next_(std::move(next)) {
    for (std::size_t s = 0; s < next_.size(); ++s) {
        if (next_[s] >= next_.size()) {
            throw std::invalid_argument("state " + std::to_string(s) + " maps outside the system");
        }
    }
}

Dds Dds::one() { return Dds({0}); }

Dds Dds::cycle(std::size_t length) {
    std::vector<std::size_t> next(length);
    for (std::size_t s = 0; s < length; ++s) next[s] = (s + 1) % length;
    return Dds(std::move(next));
}

Dds dds_sum(const Dds& a, const Dds& b) {
    std::vector<std::size_t> next = a.next();
    for (std::size_t t : b.next()) next.push_back(t + a.size());
    return Dds(std::move(next));
}

Dds dds_product(const Dds& a, const Dds& b) {
    std::vector<std::size_t> next(a.size() * b.size());
    for (std::size_t u = 0; u < a.size(); ++u) {
        for (std::size_t v = 0; v < b.size(); ++v) next[u * b.size() + v] = a(u) * b.size() + b(v);
    }
    return Dds(std::move(next));
}

std::size_t c_abstraction(const Dds& a) { return a.size(); }

CycleSum a_abstraction(const Dds& a) {
    // colour: 0 unseen, 1 on the current walk, 2 finished.
    std::vector<unsigned char> colour(a.size(), 0);
    std::vector<std::size_t> index(a.size(), 0);
    std::vector<std::size_t> walk;
    CycleSum out;
    for (std::size_t start = 0; start < a.size(); ++start) {
        if (colour[start] != 0) continue;
        walk.clear();
        std::size_t s = start;
        while (colour[s] == 0) {
            colour[s] = 1;
            index[s] = walk.size();
            walk.push_back(s);
            s = a(s);
        }
        if (colour[s] == 1) out.add(walk.size() - index[s], 1);
        for (std::size_t t : walk) colour[t] = 2;
    }
    return out;
}

Dds dds_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("states") || !j.contains("next")) {
        throw std::invalid_argument("system JSON needs \"states\" and \"next\"");
    }
    const auto& states = j.at("states");
    const auto& next = j.at("next");
    if (!states.is_number_unsigned() && !(states.is_number_integer() && states.get<long long>() >= 0)) {
        throw std::invalid_argument("\"states\" must be a non-negative integer");
    }
    if (!next.is_array()) throw std::invalid_argument("\"next\" must be an array");
    std::size_t n = states.get<std::size_t>();
    if (next.size() != n) throw std::invalid_argument("\"next\" length differs from \"states\"");
    std::vector<std::size_t> map;
    map.reserve(n);
    for (const auto& t : next) {
        if (!t.is_number_integer() || t.get<long long>() < 0) {
            throw std::invalid_argument("\"next\" entries must be non-negative integers");
        }
        map.push_back(t.get<std::size_t>());
    }
    return Dds(std::move(map));
}

nlohmann::json dds_to_json(const Dds& a) {
    return {{"states", a.size()}, {"next", a.next()}};
}

Dds load_dds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("invalid JSON in '" + path + "': " + e.what());
    }
    try {
        return dds_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("invalid system in '" + path + "': " + e.what());
    }
}

}  // namespace dds
