#include "compvar/io.hpp"

#include "compvar/errors.hpp"

#include <fstream>
#include <sstream>

namespace compvar::io {

namespace {

const json& require(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

std::size_t as_size(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

const json& as_array(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    return j;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Field parse_field(const json& j) {
    const std::string type = require(j, "type", "field").get<std::string>();
    if (type == "Q") return Field::rationals();
    if (type == "Fp") {
        const json& p = require(j, "p", "field");
        if (!p.is_number_integer() || p.get<long long>() < 2) throw ParseError("field: p must be an integer ≥ 2");
        return Field::prime(p.get<std::uint32_t>());
    }
    throw ParseError("field: unknown type \"" + type + "\"");
}

json field_to_json(const Field& f) {
    if (f.is_rational()) return json{{"type", "Q"}};
    return json{{"type", "Fp"}, {"p", f.characteristic()}};
}

Scalar parse_scalar(const json& j, const Field& f) {
    if (j.is_number_integer()) return f.from_int(j.get<long>());
    if (j.is_string()) return f.parse(j.get<std::string>());
    throw ParseError("scalar must be an integer or a \"num/den\" string");
}

json scalar_to_json(const Scalar& s, const Field& f) {
    if (f.is_rational()) return f.format(s);
    return s.get_num().get_si();
}

Matrix parse_matrix(const json& j, const Field& f, std::size_t rows, std::size_t cols) {
    as_array(j, "matrix");
    if (j.size() != rows)
        throw DimensionMismatch("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = as_array(j[r], "matrix row");
        if (row.size() != cols)
            throw DimensionMismatch("matrix row has " + std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, parse_scalar(row[c], f));
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c), m.field()));
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

AlgebraPtr parse_quiver(const json& q, const Field& f) {
    QuiverPresentation p;
    p.vertex_count = as_size(require(q, "vertices", "quiver"), "quiver vertices");
    for (const auto& a : as_array(require(q, "arrows", "quiver"), "quiver arrows")) {
        if (!a.is_array() || a.size() != 3) throw ParseError("quiver arrow must be [source, target, \"label\"]");
        std::size_t s = as_size(a[0], "arrow source"), t = as_size(a[1], "arrow target");
        if (s < 1 || t < 1 || s > p.vertex_count || t > p.vertex_count) throw ValidationError("arrow vertex out of range");
        p.arrows.push_back(QuiverArrow{s - 1, t - 1, a[2].get<std::string>()});
    }
    if (q.contains("relations"))
        for (const auto& rel : as_array(q.at("relations"), "quiver relations")) {
            std::vector<QuiverTerm> terms;
            for (const auto& term : as_array(rel, "relation")) {
                if (!term.is_array() || term.size() != 2) throw ParseError("relation term must be [\"path\", coeff]");
                terms.push_back(QuiverTerm{p.parse_path(term[0].get<std::string>()), parse_scalar(term[1], f)});
            }
            p.relations.push_back(std::move(terms));
        }
    p.nilpotency_bound = as_size(require(q, "nilpotency_bound", "quiver"), "nilpotency_bound");
    return path_algebra(p, f);
}

}  // namespace

AlgebraPtr parse_algebra(const json& j) {
    try {
        Field f = parse_field(require(j, "field", "algebra"));
        if (j.contains("quiver")) return parse_quiver(j.at("quiver"), f);

        const std::size_t s = as_size(require(j, "dim", "algebra"), "algebra dim");
        if (s == 0) throw ValidationError("algebra dimension must be positive");
        std::size_t id = j.contains("identity_index") ? as_size(j.at("identity_index"), "identity_index") : 1;
        if (id < 1 || id > s) throw ValidationError("identity_index out of range");
        // file index k (1-based) ↦ internal index: the identity moves to 0
        auto to_internal = [&](std::size_t k) {
            if (k < 1 || k > s) throw ValidationError("structure constant index " + std::to_string(k) + " out of range");
            if (k == id) return std::size_t(0);
            return k < id ? k : k - 1;
        };
        std::vector<std::string> file_labels;
        if (j.contains("labels")) {
            for (const auto& l : as_array(j.at("labels"), "labels")) file_labels.push_back(l.get<std::string>());
            if (file_labels.size() != s) throw DimensionMismatch("labels must list one name per basis element");
        } else {
            for (std::size_t k = 1; k <= s; ++k) file_labels.push_back(k == id ? "1" : "a" + std::to_string(k));
        }
        std::vector<std::string> labels(s);
        for (std::size_t k = 1; k <= s; ++k) labels[to_internal(k)] = file_labels[k - 1];

        FDAlgebra a(f, s, labels);
        for (const auto& c : as_array(require(j, "constants", "algebra"), "constants")) {
            if (!c.is_array() || c.size() != 4) throw ParseError("structure constant must be [j, k, l, value]");
            a.set_constant(to_internal(as_size(c[0], "j")), to_internal(as_size(c[1], "k")), to_internal(as_size(c[2], "l")),
                           parse_scalar(c[3], f));
        }
        auto permute = [&](const json& v) {
            as_array(v, "algebra element");
            if (v.size() != s) throw DimensionMismatch("algebra element must have one coordinate per basis element");
            Vector out(s);
            for (std::size_t k = 1; k <= s; ++k) out[to_internal(k)] = parse_scalar(v[k - 1], f);
            return out;
        };
        if (j.contains("idempotents")) {
            std::vector<Vector> e;
            for (const auto& v : as_array(j.at("idempotents"), "idempotents")) e.push_back(permute(v));
            a.set_idempotents(std::move(e));
        }
        if (j.contains("radical")) {
            std::vector<Vector> r;
            for (const auto& v : as_array(j.at("radical"), "radical")) r.push_back(permute(v));
            a.set_radical_hint(Subspace::span(f, s, r));
        }
        return make_algebra(std::move(a));
    } catch (const json::exception& e) {
        throw ParseError(std::string("algebra: ") + e.what());
    }
}

json algebra_to_json(const FDAlgebra& a) {
    const Field& f = a.field();
    json constants = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            for (std::size_t l = 0; l < a.dim(); ++l)
                if (!f.is_zero(a.constant(j, k, l)))
                    constants.push_back(json::array({j + 1, k + 1, l + 1, scalar_to_json(a.constant(j, k, l), f)}));
    json out{{"field", field_to_json(f)},
             {"dim", a.dim()},
             {"labels", a.labels()},
             {"identity_index", 1},
             {"constants", constants}};
    auto vec = [&](const Vector& v) {
        json row = json::array();
        for (const auto& x : v) row.push_back(scalar_to_json(x, f));
        return row;
    };
    if (a.idempotents()) {
        json e = json::array();
        for (const auto& v : *a.idempotents()) e.push_back(vec(v));
        out["idempotents"] = e;
    }
    if (a.radical_hint()) {
        json r = json::array();
        for (const auto& v : a.radical_hint()->basis()) r.push_back(vec(v));
        out["radical"] = r;
    }
    return out;
}

ModuleRep parse_module(const json& j, const AlgebraPtr& a) {
    try {
        const std::size_t d = as_size(require(j, "dim", "module"), "module dim");
        const json& action = as_array(require(j, "action", "module"), "module action");
        if (action.size() != a->dim())
            throw DimensionMismatch("module action lists " + std::to_string(action.size()) + " matrices, the algebra has dimension " +
                                    std::to_string(a->dim()));
        std::vector<Matrix> rho;
        for (const auto& m : action) rho.push_back(parse_matrix(m, a->field(), d, d));
        return make_module(a, d, std::move(rho));
    } catch (const json::exception& e) {
        throw ParseError(std::string("module: ") + e.what());
    }
}

json module_to_json(const ModuleRep& m) {
    json action = json::array();
    for (const auto& r : m.rho) action.push_back(matrix_to_json(r));
    return json{{"dim", m.dim}, {"action", action}};
}

ChainComplex parse_complex(const json& j, const AlgebraPtr& a) {
    try {
        const Field& f = a->field();
        const std::size_t m = as_size(require(j, "m", "complex"), "complex m");
        const json& dims = as_array(require(j, "dims", "complex"), "complex dims");
        const json& mods = as_array(require(j, "modules", "complex"), "complex modules");
        const json& diffs = as_array(require(j, "differentials", "complex"), "complex differentials");
        if (dims.size() != m + 1) throw DimensionMismatch("complex: dims must list d_m..d_0");
        if (mods.size() != m + 1) throw DimensionMismatch("complex: modules must list one entry per degree");
        if (diffs.size() != m) throw DimensionMismatch("complex: differentials must list ∂_m..∂_1");
        std::vector<std::size_t> d;
        for (const auto& x : dims) d.push_back(as_size(x, "complex dimension"));

        std::vector<ModuleRep> terms;
        for (std::size_t k = 0; k <= m; ++k) {
            const json& acts = as_array(mods[k], "module action list");
            ModuleRep mod{a, d[k], {}};
            if (acts.empty() && d[k] == 0) {
                for (std::size_t s = 0; s < a->dim(); ++s) mod.rho.emplace_back(f, 0, 0);
            } else {
                if (acts.size() != a->dim())
                    throw DimensionMismatch("complex: degree " + std::to_string(m - k) + " lists " +
                                            std::to_string(acts.size()) + " action matrices, expected " +
                                            std::to_string(a->dim()));
                for (const auto& r : acts) mod.rho.push_back(parse_matrix(r, f, d[k], d[k]));
            }
            terms.push_back(std::move(mod));
        }
        std::vector<Matrix> ds;
        for (std::size_t k = 0; k < m; ++k) ds.push_back(parse_matrix(diffs[k], f, d[k + 1], d[k]));
        return ChainComplex::from_point(a, std::move(terms), std::move(ds));
    } catch (const json::exception& e) {
        throw ParseError(std::string("complex: ") + e.what());
    }
}

json complex_to_json(const ChainComplex& x) {
    if (!x.is_point()) throw ValidationError("only complexes in degrees m..0 have a file form");
    const int m = x.high();
    json dims = json::array(), mods = json::array(), diffs = json::array();
    for (int i = m; i >= 0; --i) {
        dims.push_back(x.dim(i));
        json acts = json::array();
        for (const auto& r : x.term(i).rho) acts.push_back(matrix_to_json(r));
        mods.push_back(acts);
        if (i >= 1) diffs.push_back(matrix_to_json(x.diff(i)));
    }
    return json{{"m", m}, {"dims", dims}, {"modules", mods}, {"differentials", diffs}};
}

}  // namespace compvar::io
