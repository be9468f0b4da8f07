#include "mtc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mtc {

namespace {

std::string ref_name_part(const std::string& ref) {
    return ref.substr(0, ref.find('#'));
}

std::string ref_hash_part(const std::string& ref) {
    std::size_t pos = ref.find('#');
    return pos == std::string::npos ? std::string() : ref.substr(pos + 1);
}

double parse_decimal(const Json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(std::string(what) + " must be a decimal string");
    try {
        std::size_t used = 0;
        std::string s = j.get<std::string>();
        double v = std::stod(s, &used);
        if (used != s.size()) throw SchemaError(std::string(what) + ": trailing characters in '" + s + "'");
        return v;
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError(std::string(what) + " is not a decimal string");
    }
}

Rational parse_rational_field(const Json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(std::string(what) + " must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

} // namespace

Json datum_to_json(const ModularDatum& d) {
    Json j;
    j["name"] = d.name;
    j["rank"] = d.rank;
    j["labels"] = d.labels;
    Json s = Json::array();
    for (int a = 0; a < d.rank; ++a) {
        Json row = Json::array();
        for (int b = 0; b < d.rank; ++b)
            row.push_back(Json::array(
                {format_double(d.S(a, b).real()), format_double(d.S(a, b).imag())}));
        s.push_back(std::move(row));
    }
    j["S"] = std::move(s);
    Json h = Json::array();
    for (const auto& w : d.h) h.push_back(w.str());
    j["h"] = std::move(h);
    j["c"] = d.c.str();
    if (d.su2_level) j["generator"] = Json{{"family", "su2"}, {"level", *d.su2_level}};
    return j;
}

ModularDatum datum_from_json(const Json& j, const Precision& prec) {
    check_precision(prec);
    if (!j.is_object()) throw SchemaError("category document must be a JSON object");
    for (const char* key : {"name", "rank", "labels", "S", "h", "c"})
        if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");

    ModularDatum d;
    d.prec = prec;
    if (!j["name"].is_string()) throw SchemaError("'name' must be a string");
    d.name = j["name"].get<std::string>();
    if (!j["rank"].is_number_integer() || j["rank"].get<std::int64_t>() < 1)
        throw SchemaError("'rank' must be a positive integer");
    d.rank = j["rank"].get<int>();

    if (!j["labels"].is_array() || static_cast<int>(j["labels"].size()) != d.rank)
        throw SchemaError("'labels' must list exactly rank strings");
    for (const auto& l : j["labels"]) {
        if (!l.is_string()) throw SchemaError("'labels' must list exactly rank strings");
        d.labels.push_back(l.get<std::string>());
    }

    if (!j["S"].is_array() || static_cast<int>(j["S"].size()) != d.rank)
        throw SchemaError("'S' must be a rank x rank matrix");
    d.S = CMatrix::Zero(d.rank, d.rank);
    for (int a = 0; a < d.rank; ++a) {
        const Json& row = j["S"][static_cast<std::size_t>(a)];
        if (!row.is_array() || static_cast<int>(row.size()) != d.rank)
            throw SchemaError("'S' must be a rank x rank matrix");
        for (int b = 0; b < d.rank; ++b) {
            const Json& entry = row[static_cast<std::size_t>(b)];
            if (!entry.is_array() || entry.size() != 2)
                throw SchemaError("'S' entries must be [re, im] pairs of decimal strings");
            d.S(a, b) = Complex(parse_decimal(entry[0], "S entry"), parse_decimal(entry[1], "S entry"));
        }
    }
    check_cmatrix(d.S);

    if (!j["h"].is_array() || static_cast<int>(j["h"].size()) != d.rank)
        throw SchemaError("'h' must list exactly rank rationals");
    for (const auto& w : j["h"]) d.h.push_back(parse_rational_field(w, "'h' entry").mod1());
    d.c = parse_rational_field(j["c"], "'c'").mod(24);

    if (j.contains("generator") && !j["generator"].is_null()) {
        const Json& g = j["generator"];
        if (!g.is_object() || !g.contains("family") || !g.contains("level"))
            throw SchemaError("'generator' must be {\"family\", \"level\"}");
        if (g["family"] != "su2") throw SchemaError("unknown generator family");
        if (!g["level"].is_number_integer() || g["level"].get<std::int64_t>() < 1)
            throw SchemaError("generator level must be a positive integer");
        int level = g["level"].get<int>();
        ModularDatum ref = su2_data(level, prec);
        if (ref.rank != d.rank)
            throw SchemaError("stored rank disagrees with su2 level " + std::to_string(level));
        double dev = mat_inf_norm(ref.S - d.S);
        if (dev > prec.tol_zero)
            throw SchemaError("stored S deviates from the su2_" + std::to_string(level) +
                              " closed form by " + format_double(dev));
        if (ref.h != d.h || ref.c != d.c)
            throw SchemaError("stored weights/central charge disagree with su2 level " +
                              std::to_string(level));
        d.su2_level = level;
    }
    return d;
}

void save_datum(const ModularDatum& d, const std::string& path) {
    write_text_file(path, datum_to_json(d).dump(2) + "\n");
}

ModularDatum load_datum(const std::string& path, const Precision& prec) {
    return datum_from_json(parse_json_file(path), prec);
}

std::string datum_ref(const ModularDatum& d) { return d.name + "#" + fingerprint_hex(d); }

bool datum_ref_matches(const std::string& ref, const ModularDatum& d) {
    std::string name = ref_name_part(ref), hash = ref_hash_part(ref);
    if (!name.empty() && name != d.name) return false;
    if (!hash.empty() && hash != fingerprint_hex(d)) return false;
    return !name.empty() || !hash.empty();
}

Json invariant_to_json(const ModularInvariant& inv) {
    Json j;
    j["left"] = datum_ref(*inv.left);
    j["right"] = datum_ref(*inv.right);
    j["name"] = inv.name;
    Json z = Json::array();
    for (Eigen::Index i = 0; i < inv.Z.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < inv.Z.cols(); ++k) row.push_back(inv.Z(i, k));
        z.push_back(std::move(row));
    }
    j["Z"] = std::move(z);
    return j;
}

ModularInvariant invariant_from_json(const Json& j, DatumPtr left, DatumPtr right) {
    if (!j.is_object()) throw SchemaError("invariant document must be a JSON object");
    for (const char* key : {"left", "right", "name", "Z"})
        if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    if (!left || !right) throw Error("invariant_from_json: null datum");
    if (!j["left"].is_string() || !datum_ref_matches(j["left"].get<std::string>(), *left))
        throw SchemaError("invariant 'left' reference does not match the supplied category");
    if (!j["right"].is_string() || !datum_ref_matches(j["right"].get<std::string>(), *right))
        throw SchemaError("invariant 'right' reference does not match the supplied category");

    ModularInvariant inv;
    inv.left = std::move(left);
    inv.right = std::move(right);
    if (!j["name"].is_string()) throw SchemaError("invariant 'name' must be a string");
    inv.name = j["name"].get<std::string>();
    const Json& z = j["Z"];
    if (!z.is_array() || static_cast<int>(z.size()) != inv.left->rank)
        throw SchemaError("'Z' must be a rank1 x rank2 integer matrix");
    inv.Z = IMatrix::Zero(inv.left->rank, inv.right->rank);
    for (int a = 0; a < inv.left->rank; ++a) {
        const Json& row = z[static_cast<std::size_t>(a)];
        if (!row.is_array() || static_cast<int>(row.size()) != inv.right->rank)
            throw SchemaError("'Z' must be a rank1 x rank2 integer matrix");
        for (int b = 0; b < inv.right->rank; ++b) {
            if (!row[static_cast<std::size_t>(b)].is_number_integer())
                throw SchemaError("'Z' entries must be integers");
            inv.Z(a, b) = row[static_cast<std::size_t>(b)].get<std::int64_t>();
        }
    }
    return inv;
}

void save_invariant(const ModularInvariant& inv, const std::string& path) {
    write_text_file(path, invariant_to_json(inv).dump(2) + "\n");
}

ModularInvariant load_invariant(const std::string& path, DatumPtr left, DatumPtr right) {
    return invariant_from_json(parse_json_file(path), std::move(left), std::move(right));
}

Json library_to_json(const Library& lib) {
    Json j;
    j["left"] = datum_to_json(*lib.left);
    j["right"] = datum_to_json(*lib.right);
    Json invs = Json::array();
    for (const auto& inv : lib.invariants) invs.push_back(invariant_to_json(inv));
    j["invariants"] = std::move(invs);
    if (!lib.provenance.is_null()) j["provenance"] = lib.provenance;
    return j;
}

Library library_from_json(const Json& j, const Precision& prec) {
    if (!j.is_object() || !j.contains("left") || !j.contains("right") || !j.contains("invariants"))
        throw SchemaError("library document needs 'left', 'right', 'invariants'");
    Library lib;
    lib.left = std::make_shared<ModularDatum>(datum_from_json(j["left"], prec));
    lib.right = std::make_shared<ModularDatum>(datum_from_json(j["right"], prec));
    if (!j["invariants"].is_array()) throw SchemaError("'invariants' must be an array");
    for (const auto& ij : j["invariants"])
        lib.invariants.push_back(invariant_from_json(ij, lib.left, lib.right));
    if (j.contains("provenance")) lib.provenance = j["provenance"];
    return lib;
}

void save_library(const Library& lib, const std::string& path) {
    write_text_file(path, library_to_json(lib).dump(2) + "\n");
}

Library load_library(const std::string& path, const Precision& prec) {
    return library_from_json(parse_json_file(path), prec);
}

Json outcome_to_json(const FusionOutcome& o) {
    Json j;
    j["left"] = o.left;
    j["right"] = o.right;
    Json p = Json::array();
    for (Eigen::Index i = 0; i < o.product.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < o.product.cols(); ++k) row.push_back(o.product(i, k));
        p.push_back(std::move(row));
    }
    j["product"] = std::move(p);
    Json s = Json::array();
    for (const auto& sm : o.summands) s.push_back(Json{{"name", sm.name}, {"mult", sm.mult}});
    j["summands"] = std::move(s);
    j["unique"] = o.unique;
    Json alts = Json::array();
    for (const auto& alt : o.alternatives) {
        Json one = Json::array();
        for (const auto& sm : alt) one.push_back(Json{{"name", sm.name}, {"mult", sm.mult}});
        alts.push_back(std::move(one));
    }
    j["alternatives"] = std::move(alts);
    return j;
}

Json table_to_json(const FusionTable& t) {
    Json j;
    j["names"] = t.names;
    Json cells = Json::array();
    for (const auto& c : t.cells) cells.push_back(outcome_to_json(c));
    j["cells"] = std::move(cells);
    return j;
}

Json report_to_json(const ValidationReport& rep) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", format_double(c.residual)}});
    j["checks"] = std::move(checks);
    j["warnings"] = rep.warnings;
    j["ok"] = rep.ok();
    return j;
}

Json provenance_json(const Precision& prec, const ClassifyOptions& opts,
                     const ClassifyStats* stats) {
    Json j;
    j["precision_bits"] = prec.bits;
    j["backend_bits"] = 53;
    j["tol_zero"] = format_double(prec.tol_zero);
    j["tol_int"] = format_double(prec.tol_int);
    j["max_den"] = opts.max_den;
    j["node_budget"] = opts.node_budget;
    if (stats) {
        j["nodes"] = stats->nodes;
        j["kernel_dim"] = stats->kernel_dim;
        j["support_size"] = stats->support_size;
        if (stats->used_fallback) j["used_fallback"] = true;
    }
    return j;
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("write failed for '" + path + "'");
}

} // namespace mtc
