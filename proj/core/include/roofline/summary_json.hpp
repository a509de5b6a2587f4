#pragma once

#include <string>

#include "roofline/types.hpp"

namespace roofline {

/// Canonical MeasurementSummary JSON: object with keys bytes{level:count},
/// flops{precision:count}, label, seconds (omitted when absent), warnings[]
/// and, when non-empty, metadata{}. Keys are sorted and numbers use the
/// shortest round-trip form, so serialization is idempotent byte-for-byte:
/// to_canonical_json(summary_from_json(s)) == s for any canonical s.
std::string to_canonical_json(const MeasurementSummary& summary);

/// Parses the canonical form (tolerating integer-typed counts). Throws
/// MalformedInputError on schema violations.
MeasurementSummary summary_from_json(const std::string& text);

}  // namespace roofline
