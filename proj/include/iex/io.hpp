#pragma once

#include <json.hpp>

#include "iex/rank_one.hpp"

namespace iex {

using Json = nlohmann::json;

// All numeric payloads are exact scalar strings; nothing is emitted as a
// float. Parsing is exact and round-trips.

Json iet_to_json(const IntervalExchange& t);
IntervalExchange iet_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& a);
Json path_to_json(const RauzyPath& path);

Json class_to_json(const RauzyClass& cls);
std::string class_to_dot(const RauzyClass& cls);

Json power_to_json(const PowerMap& p);
Json commutation_to_json(const CommutationResult& r);

Json table_to_json(const GroupTable& t);
Json identity_word_to_json(const IdentityWord& w);
Json skew_orbit_to_json(const SkewOrbit& o);

Json certificate_to_json(const TowerCertificate& c);
Json verify_report_to_json(const VerifyReport& r);
Json refinement_to_json(const RefinementReport& r);

}  // namespace iex
