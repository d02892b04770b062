#include "betgames/params.hpp"

#include <stdexcept>
#include <vector>

namespace betgames {

ParamList ParamList::parse(const std::string& text) {
    ParamList p;
    auto colon = text.find(':');
    p.name_ = text.substr(0, colon);
    if (p.name_.empty()) throw std::invalid_argument("missing name in '" + text + "'");
    if (colon == std::string::npos) return p;

    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text.substr(colon + 1)) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    for (const auto& part : parts) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + part + "'");
        p.values_[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return p;
}

std::string ParamList::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument(name_ + ": missing parameter '" + key + "'");
    return it->second;
}

std::string ParamList::str(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
}

Rational ParamList::rational(const std::string& key) const { return parse_rational(str(key)); }

Rational ParamList::rational(const std::string& key, const Rational& fallback) const {
    return has(key) ? rational(key) : fallback;
}

int ParamList::integer(const std::string& key) const {
    const std::string s = str(key);
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(name_ + ": '" + key + "' is not an integer");
    return v;
}

int ParamList::integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

}  // namespace betgames
