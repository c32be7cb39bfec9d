#pragma once

// JSON encodings; docs/formats.md describes each schema. Readers throw
// ParseError on anything that does not match.

#include <cstdint>
#include <stdexcept>

#include <json.hpp>

#include "bottrig/classifier.hpp"
#include "bottrig/extension.hpp"
#include "bottrig/fiber.hpp"
#include "bottrig/harness.hpp"
#include "bottrig/ring.hpp"

namespace bottrig {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers read from JSON must lie in [-kInputLimit, kInputLimit].
inline constexpr std::int64_t kInputLimit = 1'000'000'000;

Json to_json(const BottTower& t);
BottTower tower_from_json(const Json& j);

Json to_json(const ClassDeg2& c);
/// Reads a class and checks its length.
ClassDeg2 class_from_json(const Json& j, std::size_t length);

Json to_json(const RingElement& e);
RingElement element_from_json(const Json& j, std::size_t height);

Json to_json(const GradedMap& m);
GradedMap graded_map_from_json(const Json& j);

Json to_json(const FiberMatrix& m);
FiberMatrix fiber_from_json(const Json& j);

Json to_json(const HirzebruchBundleData& d);
HirzebruchBundleData bundle_from_json(const Json& j);

Json to_json(const ExtensionResult& r);
ExtensionResult extension_from_json(const Json& j, std::size_t base_height);
Json to_json(const ExtensionDecision& d);

Json to_json(const OracleComparison& c);

Json to_json(const IsoCertificate& c);
IsoCertificate certificate_from_json(const Json& j);

Json to_json(const RigidityReport& r);
RigidityReport report_from_json(const Json& j);

Json to_json(const CensusReport& r);

}  // namespace bottrig
