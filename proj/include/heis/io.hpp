#pragma once

#include "heis/crossed.hpp"
#include "heis/symbol.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

#include <string>
#include <vector>

namespace heis {

using Json = nlohmann::ordered_json;

/// Symbol interchange format, version 1. Serialization is canonical: terms
/// sorted by (degree, key), Fourier entries by (mode, exponents), cyclotomic
/// coefficients as power-basis vectors of rational strings. Parsing rejects
/// unknown fields and degree-inconsistent terms.
Json symbol_to_json(const HSymbol& a);
HSymbol symbol_from_json(const Json& j);

Json scalar_to_json(const ExactScalar& a);
ExactScalar scalar_from_json(const Json& j, int modulus);

Json isometry_to_json(const IsometryElement& g);
IsometryElement isometry_from_json(const Json& j, const FoliationShape& shape, int modulus);

Json crossed_to_json(const CrossedSymbol& a);
CrossedSymbol crossed_from_json(const Json& j);

struct VerificationReport {
    std::string suite;
    uint64_t seed = 0;
    int cases = 0;
    std::vector<std::string> failures;  // each with full reproduction input
    long wall_ms = 0;

    Json to_json() const;
};

/// Parses text to JSON; fails with ErrorKind::ParseError carrying the
/// byte-offset diagnostics from the JSON parser.
Json parse_text(const std::string& text);

HSymbol symbol_from_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace heis
