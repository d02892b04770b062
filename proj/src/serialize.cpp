#include "betgames/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace betgames {

Json to_json(const GaleTree& m) {
    Json values = Json::object();
    for (std::size_t i = 0; i < m.node_count(); ++i)
        values[BitString::from_heap_index(i).str()] = to_string(m.at_index(i));
    return Json{{"depth", m.depth()}, {"values", std::move(values)}};
}

Json to_json(const GaleVector& v) {
    Json arr = Json::array();
    for (const auto& m : v.components) arr.push_back(to_json(m));
    return arr;
}

Json to_json(const SidePolicy& p) {
    Json obj = Json::object();
    for (const auto& [s, b] : p.assignments()) obj[s.str()] = b;
    return obj;
}

Json to_json(const std::vector<SidePolicy>& ps) {
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(to_json(p));
    return arr;
}

GaleTree gale_from_json(const Json& j) {
    int depth = j.at("depth").get<int>();
    GaleTree m(depth);
    const auto& values = j.at("values");
    if (values.size() != m.node_count())
        throw std::invalid_argument("gale JSON must list every string of length ≤ depth");
    for (const auto& [key, val] : values.items()) m.set(BitString::parse(key), parse_rational(val.get<std::string>()));
    return m;
}

GaleVector gale_vector_from_json(const Json& j) {
    std::vector<GaleTree> comps;
    for (const auto& c : j) comps.push_back(gale_from_json(c));
    return GaleVector(std::move(comps));
}

SidePolicy policy_from_json(const Json& j) {
    SidePolicy p;
    for (const auto& [key, val] : j.items()) p.set(BitString::parse(key), val.get<int>());
    return p;
}

std::vector<SidePolicy> policies_from_json(const Json& j) {
    std::vector<SidePolicy> out;
    for (const auto& p : j) out.push_back(policy_from_json(p));
    return out;
}

std::string digest(const GaleVector& v, const std::vector<SidePolicy>& policies) {
    std::uint64_t h = 14695981039346656037ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    for (const auto& m : v.components) {
        feed("gale" + std::to_string(m.depth()));
        for (const auto& x : m.values()) feed(to_string(x));
    }
    for (const auto& p : policies) {
        feed("policy");
        for (const auto& [s, b] : p.assignments()) feed(s.str() + ":" + std::to_string(b));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace betgames
