#include "klab/document.hpp"

#include "klab/error.hpp"

namespace klab::doc {

namespace {

const Json& member(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(std::string(what) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) throw InputError(std::string(what) + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

RingPtr ring_from_json(const Json& j, std::optional<MonomialOrder> order) {
    const Json& f = member(j, "field", "ring");
    Field field = Field::rationals();
    if (f.is_string()) {
        if (f.get<std::string>() != "Q") throw InputError("ring: unknown field \"" + f.get<std::string>() + "\"");
    } else if (f.is_object() && f.contains("Fp")) {
        const Json& p = f.at("Fp");
        if (!p.is_number_unsigned()) throw InputError("ring: Fp needs a positive integer");
        field = Field::prime(p.get<std::uint64_t>());
    } else {
        throw InputError("ring: field must be \"Q\" or {\"Fp\": p}");
    }
    std::vector<std::string> vars;
    const Json& v = member(j, "vars", "ring");
    if (!v.is_array()) throw InputError("ring: vars must be an array");
    for (const auto& name : v) vars.push_back(as_string(name, "ring vars"));
    MonomialOrder o = MonomialOrder::grevlex;
    if (order)
        o = *order;
    else if (j.contains("order"))
        o = parse_order(as_string(j.at("order"), "ring order"));
    return make_ring(std::move(field), std::move(vars), o);
}

Json ring_to_json(const Ring& r) {
    Json j;
    if (r.field().is_prime_field())
        j["field"] = Json{{"Fp", r.field().characteristic()}};
    else
        j["field"] = "Q";
    j["vars"] = r.vars();
    j["order"] = to_string(r.order());
    return j;
}

Poly poly_from_json(const Json& j, const RingPtr& ring) {
    if (j.is_number_integer()) return Poly::constant(ring, j.get<long long>());
    return parse_poly(as_string(j, "polynomial"), ring);
}

std::vector<Poly> polys_from_json(const Json& j, const RingPtr& ring) {
    if (!j.is_array()) throw InputError("expected an array of polynomials");
    std::vector<Poly> out;
    for (const auto& p : j) out.push_back(poly_from_json(p, ring));
    return out;
}

Json polys_to_json(const std::vector<Poly>& ps) {
    Json j = Json::array();
    for (const auto& p : ps) j.push_back(p.to_string());
    return j;
}

Matrix matrix_from_json(const Json& j, const RingPtr& ring, std::optional<std::size_t> rows, std::optional<std::size_t> cols) {
    if (!j.is_array()) throw InputError("matrix: expected an array of rows");
    const std::size_t r = j.size();
    if (rows && *rows != r) throw InputError("matrix: expected " + std::to_string(*rows) + " rows, got " + std::to_string(r));
    std::size_t c = cols ? *cols : (r ? j.at(0).size() : 0);
    Matrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || row.size() != c)
            throw InputError("matrix: row " + std::to_string(i + 1) + " should have " + std::to_string(c) + " entries");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = poly_from_json(row.at(k), ring);
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        j.push_back(std::move(row));
    }
    return j;
}

FPModule module_from_json(const Json& j, const RingPtr& ring) {
    if (j.is_number()) return FPModule::free(ring, as_size(j, "module rank"));
    std::size_t rank = as_size(member(j, "rank", "module"), "module rank");
    if (!j.contains("relations")) return FPModule::free(ring, rank);
    const Json& rel = j.at("relations");
    std::optional<std::size_t> cols;
    if (rank == 0) cols = 0;
    Matrix m = matrix_from_json(rel, ring, rank, cols);
    return {Submodule(ring, rank, m.columns())};
}

Json module_to_json(const FPModule& m) {
    if (m.is_free_presentation()) return m.rank();
    return Json{{"rank", m.rank()}, {"relations", matrix_to_json(m.relations.generator_matrix())}};
}

Cube cube_from_json(const Json& j, const RingPtr& ring) {
    std::vector<std::string> labels;
    const Json& s = member(j, "S", "cube");
    if (!s.is_array()) throw InputError("cube: S must be an array of labels");
    for (const auto& l : s) labels.push_back(l.is_number_integer() ? std::to_string(l.get<long long>()) : as_string(l, "cube label"));
    if (labels.size() > kMaxLabels) throw CapExceeded("cube: at most " + std::to_string(kMaxLabels) + " labels");
    const std::size_t count = std::size_t{1} << labels.size();
    const std::size_t n = labels.size();
    Cube names = Cube::free(ring, labels, std::vector<std::size_t>(count, 0));
    std::vector<std::optional<FPModule>> vertices(count);
    const Json& vs = member(j, "vertices", "cube");
    if (!vs.is_object()) throw InputError("cube: vertices must be an object");
    for (const auto& [key, value] : vs.items()) {
        Mask t = names.parse_key(key);
        if (vertices[t]) throw InputError("cube: vertex {" + key + "} given twice");
        vertices[t] = module_from_json(value, ring);
    }
    std::vector<FPModule> vmods;
    for (Mask t = 0; t < count; ++t) {
        if (!vertices[t]) throw InputError("cube: missing vertex {" + names.key(t) + "}");
        vmods.push_back(*vertices[t]);
    }
    std::vector<std::optional<Matrix>> bounds(count * n);
    if (j.contains("boundaries")) {
        const Json& bs = j.at("boundaries");
        if (!bs.is_object()) throw InputError("cube: boundaries must be an object");
        for (const auto& [key, value] : bs.items()) {
            auto bar = key.find('|');
            if (bar == std::string::npos) throw InputError("cube: boundary key \"" + key + "\" is not of the form T|k");
            Mask t = names.parse_key(key.substr(0, bar));
            auto k = names.label_index(key.substr(bar + 1));
            if (!k || !has(t, *k)) throw InputError("cube: boundary key \"" + key + "\" names a direction outside T");
            auto& b = bounds[t * n + *k];
            if (b) throw InputError("cube: boundary " + key + " given twice");
            b = matrix_from_json(value, ring, vmods[t & ~bit(*k)].rank(), vmods[t].rank());
        }
    }
    for (Mask t = 0; t < count; ++t)
        for (std::size_t k = 0; k < n; ++k) {
            if (!has(t, k) || bounds[t * n + k]) continue;
            const std::size_t rows = vmods[t & ~bit(k)].rank(), cols = vmods[t].rank();
            if (rows && cols) throw InputError("cube: missing boundary " + names.key(t) + "|" + labels[k]);
            bounds[t * n + k] = Matrix(ring, rows, cols);
        }
    Cube x(ring, labels, std::move(vmods), std::move(bounds));
    return x;
}

Json cube_to_json(const Cube& x) {
    Json j;
    j["S"] = x.labels();
    Json vs = Json::object();
    for (Mask t = 0; t <= x.full(); ++t) vs[x.key(t)] = module_to_json(x.vertex(t));
    j["vertices"] = std::move(vs);
    Json bs = Json::object();
    for (Mask t = 0; t <= x.full(); ++t)
        for (std::size_t k = 0; k < x.size(); ++k)
            if (has(t, k)) bs[x.key(t) + "|" + x.labels()[k]] = matrix_to_json(x.boundary(t, k));
    j["boundaries"] = std::move(bs);
    return j;
}

Complex complex_from_json(const Json& j, const RingPtr& ring) {
    const Json& rs = member(j, "ranks", "complex");
    if (!rs.is_array() || rs.empty()) throw InputError("complex: ranks must be a non-empty array");
    std::vector<std::size_t> ranks;
    for (const auto& r : rs) ranks.push_back(as_size(r, "complex rank"));
    const Json& ds = member(j, "differentials", "complex");
    if (!ds.is_array() || ds.size() + 1 != ranks.size())
        throw InputError("complex: expected " + std::to_string(ranks.size() - 1) + " differentials");
    std::vector<Matrix> diffs;
    for (std::size_t k = 0; k < ds.size(); ++k) diffs.push_back(matrix_from_json(ds.at(k), ring, ranks[k], ranks[k + 1]));
    return Complex(ring, std::move(ranks), std::move(diffs));
}

Json complex_to_json(const Complex& c) {
    Json ds = Json::array();
    for (const auto& d : c.differentials()) ds.push_back(matrix_to_json(d));
    return Json{{"ranks", c.ranks()}, {"differentials", std::move(ds)}};
}

bool cubes_equal(const Cube& a, const Cube& b) {
    if (a.labels() != b.labels()) return false;
    for (Mask t = 0; t <= a.full(); ++t) {
        if (a.rank(t) != b.rank(t) || !submodule_equal(a.vertex(t).relations, b.vertex(t).relations)) return false;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (has(t, k) && a.boundary(t, k) != b.boundary(t, k)) return false;
    }
    return true;
}

}  // namespace klab::doc
