#pragma once

#include <json.hpp>

#include <string>

#include "fusion/multiplier.hpp"
#include "fusion/rings.hpp"

namespace fusion {

using Json = nlohmann::ordered_json;

// A ring together with its canonicalized spec (for round-tripping).
struct ParsedRing {
    RingPtr ring;
    Json spec;
};

// Parses a ring spec, builds the ring and runs the invariant suite up to
// level 3. Schema errors carry a JSON-pointer-ish path; invariant failures
// carry a witness.
ParsedRing parse_ring_spec(const Json& spec);
ParsedRing parse_ring_spec_text(const std::string& text);

// Subring spec ({"kind":"grading_kernel","modulus":k}) against a ring.
RingPtr parse_subring_spec(const Json& spec, const RingPtr& ring);

// Multiplier spec against a ring.
// kinds: point, measure, regular, trivial, table, free_product, extend_zero.
Multiplier parse_multiplier_spec(const Json& spec, const RingPtr& ring);
Multiplier parse_multiplier_spec_text(const std::string& text,
                                      const RingPtr& ring);

// Element grammar: terms separated by +/-, each "coef*label" or "label";
// "X" on a TLJ ring is H0 + H1. Coefficients are rational ("2", "-1/3").
FusionElement parse_element(const RingPtr& ring, const std::string& text);

// Machine-readable report envelope shared by all CLI commands.
Json make_envelope(const std::string& command, Json inputs, Json result,
                   Json witnesses = Json::object(),
                   Json tolerances = Json::object());

std::string format_double(double v); // 17 significant digits

} // namespace fusion
