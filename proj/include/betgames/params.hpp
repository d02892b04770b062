#pragma once

#include "betgames/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace betgames {

// "name:key=value,key=value". Commas nested in parentheses stay inside a value.
class ParamList {
public:
    static ParamList parse(const std::string& text);

    const std::string& name() const { return name_; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    Rational rational(const std::string& key) const;
    Rational rational(const std::string& key, const Rational& fallback) const;
    int integer(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
};

}  // namespace betgames
