#pragma once

#include "chacon/measures.hpp"

#include <json.hpp>

#include <string>

namespace chacon {

using Json = nlohmann::json;

/// {"num": "<decimal string>", "exp": int}
Json triadic_to_json(const TriadicRational& t);
TriadicRational triadic_from_json(const Json& j);

/// {"n0": int, "offsets": [int], "taus": [[int]], "tail": "central"|"repeat"|"none"}
Json family_to_json(const ConsistentFamily& f);
ConsistentFamily family_from_json(const Json& j);

std::string tail_name(TailPolicy tail);
TailPolicy tail_from_name(const std::string& name);

std::string cert_name(CertStatus status);
std::string kind_name(MeasureKind kind);

/// CSV rows (level_1,...,level_d,value) with exact rational values; also
/// accepts the triadic pair encoding (level_1,...,level_d,num,exp).
BoxTensor tensor_from_csv(const std::string& text, int d);
std::string tensor_to_csv(const BoxTensor& t);

/// Write via a temp file in the same directory plus rename.
void atomic_write(const std::string& path, const std::string& content);

} // namespace chacon
