#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mtc/fusion.hpp"
#include "mtc/invariants.hpp"
#include "mtc/modular_data.hpp"

namespace mtc {

// Insertion-ordered JSON keeps serialized output byte-stable.
using Json = nlohmann::ordered_json;

/// Category schema:
/// { "name": str, "rank": int, "labels": [str],
///   "S": [[[re, im] as decimal strings]], "h": ["p/q"], "c": "p/q",
///   "generator": optional {"family": "su2", "level": int} }
/// Decimal strings carry >= 17 significant digits.  An optional
/// "provenance" key is tolerated and ignored on load.
Json datum_to_json(const ModularDatum& d);
ModularDatum datum_from_json(const Json& j, const Precision& prec);
void save_datum(const ModularDatum& d, const std::string& path);

/// Parses, schema-checks, and (when a generator is present) recomputes the
/// closed form and cross-checks the stored S against it.
ModularDatum load_datum(const std::string& path, const Precision& prec);

/// "name#fingerprint" reference used in invariant files.
std::string datum_ref(const ModularDatum& d);
bool datum_ref_matches(const std::string& ref, const ModularDatum& d);

/// Invariant schema: { "left": name#hash, "right": name#hash,
///                     "name": str, "Z": [[int]] }
Json invariant_to_json(const ModularInvariant& inv);
ModularInvariant invariant_from_json(const Json& j, DatumPtr left, DatumPtr right);
void save_invariant(const ModularInvariant& inv, const std::string& path);
ModularInvariant load_invariant(const std::string& path, DatumPtr left, DatumPtr right);

/// Classifier output: both category objects, the invariant list, and a
/// provenance block (precision, bounds, node count).
struct Library {
    DatumPtr left;
    DatumPtr right;
    std::vector<ModularInvariant> invariants;
    Json provenance;
};

Json library_to_json(const Library& lib);
Library library_from_json(const Json& j, const Precision& prec);
void save_library(const Library& lib, const std::string& path);
Library load_library(const std::string& path, const Precision& prec);

Json outcome_to_json(const FusionOutcome& o);
Json table_to_json(const FusionTable& t);
Json report_to_json(const ValidationReport& rep);

Json provenance_json(const Precision& prec, const ClassifyOptions& opts,
                     const ClassifyStats* stats = nullptr);

Json parse_json_file(const std::string& path); // ParseError on bad JSON
void write_text_file(const std::string& path, const std::string& content);

} // namespace mtc
