#include "polar/json_io.hpp"

#include <fstream>
#include <set>

namespace polar {

using nlohmann::json;

namespace {

const json& require_key(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(what) + ": missing \"" + key + "\"");
    }
    return j.at(key);
}

std::uint64_t require_uint(const json& j, const char* what) {
    // Accept either integer storage class; JSON itself has no signedness, and
    // in-memory documents built from signed literals store small values signed.
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        throw ParseError(std::string(what) + ": expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    switch (s.field().kind()) {
        case FieldKind::rational:
            return json(s.str());
        case FieldKind::gfp:
            return json{{"mod", s.field().modulus()}, {"val", s.residue()}};
        case FieldKind::float64:
            break;
    }
    throw FloatNotAllowed("float scalars have no serialized form");
}

Scalar scalar_from_json(const json& j, const FieldDescriptor& field) {
    switch (field.kind()) {
        case FieldKind::rational: {
            if (!j.is_string()) {
                throw ParseError("rational scalar: expected a \"p/q\" string");
            }
            return Scalar::parse(j.get<std::string>(), field);
        }
        case FieldKind::gfp: {
            const std::uint64_t mod = require_uint(require_key(j, "mod", "GF(p) scalar"),
                                                   "GF(p) scalar \"mod\"");
            if (mod != field.modulus()) {
                throw ParseError("GF(p) scalar: modulus " + std::to_string(mod) +
                                 " does not match the field's " +
                                 std::to_string(field.modulus()));
            }
            const std::uint64_t val = require_uint(require_key(j, "val", "GF(p) scalar"),
                                                   "GF(p) scalar \"val\"");
            if (val >= mod) {
                throw ParseError("GF(p) scalar: value " + std::to_string(val) +
                                 " is not reduced mod " + std::to_string(mod));
            }
            return Scalar::gf(val, mod);
        }
        case FieldKind::float64:
            break;
    }
    throw FloatNotAllowed("float scalars have no serialized form");
}

json field_to_json(const FieldDescriptor& f) {
    switch (f.kind()) {
        case FieldKind::rational:
            return json("rational");
        case FieldKind::gfp:
            return json{{"gfp", f.modulus()}};
        case FieldKind::float64:
            break;
    }
    throw FloatNotAllowed("the float pseudo-field has no serialized form");
}

FieldDescriptor field_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "rational") {
            return FieldDescriptor::rationals();
        }
        throw ParseError("unknown field \"" + j.get<std::string>() +
                         "\" (expected \"rational\" or {\"gfp\": p})");
    }
    if (j.is_object() && j.contains("gfp")) {
        const std::uint64_t p = require_uint(j.at("gfp"), "field \"gfp\"");
        try {
            return FieldDescriptor::gf(p);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("field \"gfp\": ") + e.what());
        }
    }
    throw ParseError("field: expected \"rational\" or {\"gfp\": p}");
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (const Scalar& c : v.coords()) {
        out.push_back(scalar_to_json(c));
    }
    return out;
}

Vector vector_from_json(const json& j, const FieldDescriptor& field) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("vector: expected a nonempty array of scalars");
    }
    std::vector<Scalar> coords;
    coords.reserve(j.size());
    for (const json& c : j) {
        coords.push_back(scalar_from_json(c, field));
    }
    return Vector(field, std::move(coords));
}

json tensor_to_json(const SymMultiMap& u) {
    json entries = json::array();
    for (std::size_t s = 0; s < u.index_basis().size(); ++s) {
        if (u.coeffs()[s].is_zero()) {
            continue;
        }
        entries.push_back(json{{"index", u.index_basis()[s].indices()},
                               {"value", scalar_to_json(u.coeffs()[s])}});
    }
    return json{{"order", u.order()},
                {"dim", u.dim()},
                {"field", field_to_json(u.field())},
                {"entries", std::move(entries)}};
}

SymMultiMap tensor_from_json(const json& j) {
    const std::uint64_t order = require_uint(require_key(j, "order", "tensor"), "tensor \"order\"");
    const std::uint64_t dim = require_uint(require_key(j, "dim", "tensor"), "tensor \"dim\"");
    if (order < 1 || dim < 1 || order > 1000 || dim > 1000) {
        throw ParseError("tensor: order and dim must be in [1, 1000]");
    }
    const FieldDescriptor field = field_from_json(require_key(j, "field", "tensor"));
    const json& entries = require_key(j, "entries", "tensor");
    if (!entries.is_array()) {
        throw ParseError("tensor: \"entries\" must be an array");
    }
    SymMultiMap u(static_cast<std::uint32_t>(order), static_cast<std::uint32_t>(dim), field);
    std::set<std::vector<std::uint32_t>> seen;
    for (const json& e : entries) {
        const json& idx = require_key(e, "index", "tensor entry");
        if (!idx.is_array() || idx.size() != order) {
            throw ParseError("tensor entry: \"index\" must list exactly " +
                             std::to_string(order) + " positions");
        }
        std::vector<std::uint32_t> indices;
        indices.reserve(order);
        for (const json& v : idx) {
            const std::uint64_t k = require_uint(v, "tensor entry index");
            if (k >= dim) {
                throw ParseError("tensor entry: index " + std::to_string(k) +
                                 " out of range for dim " + std::to_string(dim));
            }
            if (!indices.empty() && k < indices.back()) {
                throw ParseError("tensor entry: index list must be sorted ascending");
            }
            indices.push_back(static_cast<std::uint32_t>(k));
        }
        if (!seen.insert(indices).second) {
            throw ParseError("tensor entry: duplicate index " +
                             MultiIndex(indices).str());
        }
        const Scalar value = scalar_from_json(require_key(e, "value", "tensor entry"), field);
        u.set(MultiIndex(std::move(indices)), value);
    }
    return u;
}

json covariance_to_json(const Covariance& cov) {
    json rows = json::array();
    for (const auto& row : cov.rows()) {
        json r = json::array();
        for (const Scalar& v : row) {
            r.push_back(scalar_to_json(v));
        }
        rows.push_back(std::move(r));
    }
    return json{{"dim", cov.dim()}, {"rows", std::move(rows)}};
}

Covariance covariance_from_json(const json& j) {
    const std::uint64_t dim = require_uint(require_key(j, "dim", "covariance"),
                                           "covariance \"dim\"");
    if (dim < 1 || dim > 64) {
        throw ParseError("covariance: dim must be in [1, 64]");
    }
    const json& rows = require_key(j, "rows", "covariance");
    if (!rows.is_array() || rows.size() != dim) {
        throw ParseError("covariance: \"rows\" must list exactly " + std::to_string(dim) +
                         " rows");
    }
    const FieldDescriptor rational = FieldDescriptor::rationals();
    std::vector<std::vector<Scalar>> entries;
    entries.reserve(dim);
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != dim) {
            throw ParseError("covariance: every row must have " + std::to_string(dim) +
                             " entries");
        }
        std::vector<Scalar> r;
        r.reserve(dim);
        for (const json& v : row) {
            r.push_back(scalar_from_json(v, rational));
        }
        entries.push_back(std::move(r));
    }
    return Covariance(std::move(entries));
}

SetSystem set_system_from_json(const json& j) {
    const json& universe = require_key(j, "universe", "set system");
    const json& subsets = require_key(j, "subsets", "set system");
    if (!universe.is_array()) {
        throw ParseError("set system: \"universe\" must be an array of labels");
    }
    if (!subsets.is_array() || subsets.empty()) {
        throw ParseError("set system: \"subsets\" must be a nonempty array");
    }
    std::vector<std::string> labels;
    labels.reserve(universe.size());
    for (const json& u : universe) {
        if (!u.is_string()) {
            throw ParseError("set system: universe labels must be strings");
        }
        labels.push_back(u.get<std::string>());
    }
    std::vector<std::vector<std::string>> members;
    members.reserve(subsets.size());
    for (const json& s : subsets) {
        if (!s.is_array()) {
            throw ParseError("set system: each subset must be an array of labels");
        }
        std::vector<std::string> m;
        m.reserve(s.size());
        for (const json& u : s) {
            if (!u.is_string()) {
                throw ParseError("set system: subset members must be strings");
            }
            m.push_back(u.get<std::string>());
        }
        members.push_back(std::move(m));
    }
    return SetSystem(std::move(labels), members);
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
}

}  // namespace polar
