#pragma once

#include <string>

#include <json.hpp>

#include "divkit/differences.hpp"
#include "divkit/generators.hpp"
#include "divkit/verification.hpp"

namespace divkit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits; non-finite values become null.
std::string format_number(double v);

/// Pretty-printed JSON with every floating-point number written by format_number.
std::string dump_json(const Json& j);

Json to_json(const GridSpec& grid);
Json to_json(const ChainReport& report, const InequalityChain& chain);
Json to_json(const ScanReport& report);
Json to_json(const FactorizationCheck& check);

}  // namespace divkit
