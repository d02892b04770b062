#pragma once

#include "betgames/gales.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace betgames {

using Json = nlohmann::ordered_json;

Json to_json(const GaleTree& m);
Json to_json(const GaleVector& v);
Json to_json(const SidePolicy& p);
Json to_json(const std::vector<SidePolicy>& ps);

GaleTree gale_from_json(const Json& j);
GaleVector gale_vector_from_json(const Json& j);
SidePolicy policy_from_json(const Json& j);
std::vector<SidePolicy> policies_from_json(const Json& j);

// FNV-1a over a canonical rendering of the gale values and policies, as 16 hex digits.
std::string digest(const GaleVector& v, const std::vector<SidePolicy>& policies);

}  // namespace betgames
