#include "klab/cube.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "klab/error.hpp"

namespace klab {

namespace {

std::vector<PolyVector> columns_of(const Matrix& m) { return m.columns(); }

Submodule with_extra(const Submodule& base, const std::vector<PolyVector>& extra) {
    if (extra.empty()) return base;
    auto gens = base.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Submodule(base.ring(), base.rank(), std::move(gens));
}


Mask expand(Mask m, Mask super) {
    Mask out = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < 32; ++i) {
        if (!has(super, i)) continue;
        if (has(m, j)) out |= bit(i);
        ++j;
    }
    return out;
}

std::vector<std::size_t> members(Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 32; ++i)
        if (has(m, i)) out.push_back(i);
    return out;
}

}  // namespace

Cube::Cube(RingPtr ring, std::vector<std::string> labels, std::vector<FPModule> vertices,
           std::vector<std::optional<Matrix>> boundaries)
    : ring_(std::move(ring)), labels_(std::move(labels)), vertices_(std::move(vertices)), boundaries_(std::move(boundaries)) {
    const std::size_t n = labels_.size();
    if (n > kMaxLabels) throw CapExceeded("cube: at most " + std::to_string(kMaxLabels) + " labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (labels_[i].empty() || labels_[i].find_first_of(",|") != std::string::npos)
            throw InputError("cube: invalid label '" + labels_[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (labels_[i] == labels_[j]) throw InputError("cube: duplicate label '" + labels_[i] + "'");
    }
    const std::size_t count = std::size_t{1} << n;
    if (vertices_.size() != count) throw InputError("cube: expected one vertex per subset");
    boundaries_.resize(count * n);
    for (Mask t = 0; t < count; ++t) {
        if (*vertices_[t].ring() != *ring_) throw InputError("cube: vertex over another ring");
        for (std::size_t k = 0; k < n; ++k) {
            auto& b = boundaries_[t * n + k];
            if (!has(t, k)) {
                b.reset();
                continue;
            }
            if (!b) throw InputError("cube: missing boundary " + key(t) + "|" + labels_[k]);
            if (b->rows() != rank(t & ~bit(k)) || b->cols() != rank(t))
                throw InputError("cube: boundary " + key(t) + "|" + labels_[k] + " has shape " +
                                 std::to_string(b->rows()) + "x" + std::to_string(b->cols()) + ", expected " +
                                 std::to_string(rank(t & ~bit(k))) + "x" + std::to_string(rank(t)));
        }
    }
}

Cube Cube::free(RingPtr ring, std::vector<std::string> labels, const std::vector<std::size_t>& ranks) {
    const std::size_t n = labels.size();
    std::vector<FPModule> vs;
    for (std::size_t r : ranks) vs.push_back(FPModule::free(ring, r));
    std::vector<std::optional<Matrix>> bs((std::size_t{1} << n) * n);
    for (Mask t = 0; t < ranks.size(); ++t)
        for (std::size_t k = 0; k < n; ++k)
            if (has(t, k)) bs[t * n + k] = Matrix(ring, ranks.at(t & ~bit(k)), ranks[t]);
    return Cube(ring, std::move(labels), std::move(vs), std::move(bs));
}

const Matrix& Cube::boundary(Mask t, std::size_t k) const {
    if (!has(t, k) || t > full()) throw InputError("cube: no boundary in direction " + std::to_string(k) + " at this vertex");
    return *boundaries_[t * labels_.size() + k];
}

void Cube::set_boundary(Mask t, std::size_t k, Matrix m) {
    const Matrix& old = boundary(t, k);
    if (old.rows() != m.rows() || old.cols() != m.cols()) throw InputError("cube: boundary shape mismatch");
    boundaries_[t * labels_.size() + k] = std::move(m);
}

void Cube::set_vertex(Mask t, FPModule m) {
    if (m.rank() != rank(t)) throw InputError("cube: vertex rank mismatch");
    vertices_.at(t) = std::move(m);
}

bool Cube::is_free() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const FPModule& v) { return v.is_free_presentation(); });
}

std::optional<std::size_t> Cube::label_index(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == name) return i;
    return std::nullopt;
}

std::string Cube::key(Mask t) const {
    std::string s;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!has(t, i)) continue;
        if (!s.empty()) s += ",";
        s += labels_[i];
    }
    return s;
}

Mask Cube::parse_key(std::string_view text) const {
    Mask m = 0;
    if (text.empty()) return m;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto idx = label_index(part);
        if (!idx) throw InputError("unknown label '" + std::string(part) + "' in subset key '" + std::string(text) + "'");
        if (has(m, *idx)) throw InputError("repeated label in subset key '" + std::string(text) + "'");
        m |= bit(*idx);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return m;
}

Report validate_cube(const Cube& x) {
    Report rep;
    const std::size_t n = x.size();
    for (Mask t = 0; t <= x.full(); ++t) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!has(t, k)) continue;
            const Matrix& d = x.boundary(t, k);
            const Submodule& target = x.vertex(t & ~bit(k)).relations;
            for (const auto& r : x.vertex(t).relations.generators())
                if (!target.contains(d.apply(r))) {
                    rep.fail("boundary " + x.key(t) + "|" + x.labels()[k] + " does not respect the relations");
                    break;
                }
            for (std::size_t l = k + 1; l < n; ++l) {
                if (!has(t, l)) continue;
                Matrix a = x.boundary(t & ~bit(k), l) * d;
                Matrix b = x.boundary(t & ~bit(l), k) * x.boundary(t, l);
                Matrix diff = a - b;
                const Submodule& rel = x.vertex(t & ~bit(k) & ~bit(l)).relations;
                bool ok = true;
                for (const auto& c : diff.columns())
                    if (!is_zero_vector(c) && !rel.contains(c)) ok = false;
                if (!ok)
                    rep.fail("square at {" + x.key(t) + "} in directions " + x.labels()[k] + "," + x.labels()[l] +
                             " does not commute");
            }
        }
    }
    return rep;
}

Cube restrict(const Cube& x, Mask u, Mask v) {
    if (u & v) throw InputError("restrict: U and V overlap");
    if ((u | v) & ~x.full()) throw InputError("restrict: labels outside S");
    std::vector<std::string> labels;
    for (std::size_t i : members(u)) labels.push_back(x.labels()[i]);
    const std::size_t n = labels.size();
    std::vector<FPModule> vs;
    std::vector<std::optional<Matrix>> bs((std::size_t{1} << n) * n);
    auto idx = members(u);
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
        Mask old = expand(a, u) | v;
        vs.push_back(x.vertex(old));
        for (std::size_t k = 0; k < n; ++k)
            if (has(a, k)) bs[a * n + k] = x.boundary(old, idx[k]);
    }
    return Cube(x.ring(), std::move(labels), std::move(vs), std::move(bs));
}

Cube backside_face(const Cube& x, std::size_t k) { return restrict(x, x.full() & ~bit(k), bit(k)); }
Cube frontside_face(const Cube& x, std::size_t k) { return restrict(x, x.full() & ~bit(k), 0); }

bool is_isomorphism(const Matrix& d, const FPModule& source, const FPModule& target) {
    return is_surjective_onto(d, target) && induced_injective(d, source.relations, target.relations);
}

Mask degenerate_directions(const Cube& x, bool koszul_shortcut) {
    Mask out = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        bool iso = true;
        if (koszul_shortcut) {
            const Matrix& d = x.boundary(x.full(), k);
            if (!x.is_free()) throw PreconditionError("degenerate_directions: shortcut needs a free cube");
            iso = d.is_square() && is_unit(determinant(d));
        } else {
            for (Mask t = 0; t <= x.full() && iso; ++t)
                if (has(t, k)) iso = is_isomorphism(x.boundary(t, k), x.vertex(t), x.vertex(t & ~bit(k)));
        }
        if (iso) out |= bit(k);
    }
    return out;
}

Cube nondegenerate_part(const Cube& x, bool koszul_shortcut) {
    return restrict(x, x.full() & ~degenerate_directions(x, koszul_shortcut), 0);
}

CubeOrdering natural_ordering(const Cube& x) {
    CubeOrdering o(x.size());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
    return o;
}

namespace {

std::vector<std::size_t> positions_of(const CubeOrdering& alpha, std::size_t n) {
    if (alpha.size() != n) throw InputError("cube ordering has the wrong length");
    std::vector<std::size_t> pos(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        if (alpha[p] >= n || pos[alpha[p]] != n) throw InputError("cube ordering is not a bijection");
        pos[alpha[p]] = p;
    }
    return pos;
}

}  // namespace

std::vector<Mask> tot_components(const Cube& x, std::size_t k, const CubeOrdering& alpha) {
    auto pos = positions_of(alpha, x.size());
    std::vector<std::pair<std::vector<std::size_t>, Mask>> keyed;
    for (Mask t = 0; t <= x.full(); ++t) {
        if (popcount(t) != k) continue;
        std::vector<std::size_t> seq;
        for (std::size_t i : members(t)) seq.push_back(pos[i]);
        std::sort(seq.begin(), seq.end());
        keyed.emplace_back(std::move(seq), t);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Mask> out;
    for (auto& [s, t] : keyed) out.push_back(t);
    return out;
}

Complex total_complex(const Cube& x, const CubeOrdering& alpha) {
    if (!x.is_free()) throw PreconditionError("total_complex: cube has non-free vertices");
    if (!validate_cube(x).passed) throw InputError("total_complex: invalid cube");
    const std::size_t n = x.size();
    auto pos = positions_of(alpha, n);
    const RingPtr& ring = x.ring();
    std::vector<std::vector<Mask>> comps(n + 1);
    std::vector<std::vector<std::size_t>> offset(n + 1, std::vector<std::size_t>(std::size_t{1} << n, 0));
    std::vector<std::size_t> ranks(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
        comps[k] = tot_components(x, k, alpha);
        for (Mask t : comps[k]) {
            offset[k][t] = ranks[k];
            ranks[k] += x.rank(t);
        }
    }
    std::vector<Matrix> diffs;
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix d(ring, ranks[k - 1], ranks[k]);
        for (Mask t : comps[k]) {
            for (std::size_t j : members(t)) {
                std::size_t later = 0;
                for (std::size_t i : members(t))
                    if (pos[i] > pos[j]) ++later;
                const Matrix& b = x.boundary(t, j);
                Mask s = t & ~bit(j);
                for (std::size_t r = 0; r < b.rows(); ++r)
                    for (std::size_t c = 0; c < b.cols(); ++c)
                        d(offset[k - 1][s] + r, offset[k][t] + c) = later % 2 ? -b(r, c) : b(r, c);
            }
        }
        diffs.push_back(std::move(d));
    }
    return Complex(ring, std::move(ranks), std::move(diffs));
}

namespace {

// Generators of {a : d a in rel} as matrix columns.
Matrix kernel_generators(const Matrix& d, const Submodule& rel) { return preimage(d, rel.generators()); }

}  // namespace

Cube directional_homology(const Cube& x, std::size_t k, int p) {
    if (k >= x.size()) throw InputError("directional_homology: direction out of range");
    if (p != 0 && p != 1) throw InputError("directional_homology: p must be 0 or 1");
    if (!validate_cube(x).passed) throw InputError("directional_homology: invalid cube");
    const Mask rest = x.full() & ~bit(k);
    std::vector<std::string> labels;
    for (std::size_t i : members(rest)) labels.push_back(x.labels()[i]);
    const std::size_t n = labels.size();
    const auto idx = members(rest);
    const std::size_t count = std::size_t{1} << n;
    std::vector<FPModule> vs;
    std::vector<std::optional<Matrix>> bs(count * n);
    if (p == 0) {
        for (Mask a = 0; a < count; ++a) {
            Mask t = expand(a, rest);
            vs.push_back({with_extra(x.vertex(t).relations, columns_of(x.boundary(t | bit(k), k)))});
            for (std::size_t l = 0; l < n; ++l)
                if (has(a, l)) bs[a * n + l] = x.boundary(t, idx[l]);
        }
        return Cube(x.ring(), std::move(labels), std::move(vs), std::move(bs));
    }
    std::vector<Matrix> kers;
    for (Mask a = 0; a < count; ++a) {
        Mask t = expand(a, rest);
        Matrix kg = kernel_generators(x.boundary(t | bit(k), k), x.vertex(t).relations);
        vs.push_back(subquotient(kg, x.vertex(t | bit(k)).relations.generator_matrix()));
        kers.push_back(std::move(kg));
    }
    for (Mask a = 0; a < count; ++a) {
        Mask t = expand(a, rest);
        for (std::size_t l = 0; l < n; ++l) {
            if (!has(a, l)) continue;
            Mask b = a & ~bit(l);
            Matrix image = x.boundary(t | bit(k), idx[l]) * kers[a];
            LiftSolver solver(kers[b], x.vertex((t & ~bit(idx[l])) | bit(k)).relations.generators());
            std::vector<PolyVector> cols;
            for (const auto& c : image.columns()) {
                auto s = solver.solve(c);
                if (!s) throw Error("directional_homology: boundary does not preserve kernels");
                cols.push_back(std::move(*s));
            }
            bs[a * n + l] = Matrix::from_columns(x.ring(), kers[b].cols(), cols);
        }
    }
    return Cube(x.ring(), std::move(labels), std::move(vs), std::move(bs));
}

Submodule h0_denominator(const Cube& x) {
    std::vector<PolyVector> extra;
    for (std::size_t k = 0; k < x.size(); ++k)
        for (auto& c : columns_of(x.boundary(bit(k), k))) extra.push_back(std::move(c));
    return with_extra(x.vertex(0).relations, extra);
}

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::definition: return "definition";
    case Strategy::spherical_faces: return "spherical_faces";
    case Strategy::inductive: return "inductive";
    }
    return "";
}

Strategy parse_strategy(std::string_view s) {
    if (s == "definition") return Strategy::definition;
    if (s == "spherical_faces") return Strategy::spherical_faces;
    if (s == "inductive") return Strategy::inductive;
    throw InputError("unknown admissibility strategy '" + std::string(s) + "'");
}

namespace {

// H_0^T(x)|_U^V for disjoint T, U, V covering S, presented on the ambient
// modules of x.
Cube h0_view(const Cube& x, Mask t, Mask u, Mask v) {
    std::vector<std::string> labels;
    const auto idx = members(u);
    for (std::size_t i : idx) labels.push_back(x.labels()[i]);
    const std::size_t n = labels.size();
    const std::size_t count = std::size_t{1} << n;
    std::vector<FPModule> vs;
    std::vector<std::optional<Matrix>> bs(count * n);
    for (Mask a = 0; a < count; ++a) {
        Mask w = expand(a, u) | v;
        std::vector<PolyVector> extra;
        for (std::size_t k : members(t))
            for (auto& c : columns_of(x.boundary(w | bit(k), k))) extra.push_back(std::move(c));
        vs.push_back({with_extra(x.vertex(w).relations, extra)});
        for (std::size_t l = 0; l < n; ++l)
            if (has(a, l)) bs[a * n + l] = x.boundary(w, idx[l]);
    }
    return Cube(x.ring(), std::move(labels), std::move(vs), std::move(bs));
}

std::string set_name(const Cube& x, Mask m) { return "{" + x.key(m) + "}"; }

class Admissibility {
public:
    explicit Admissibility(const Cube& x) : x_(x) {}

    Report run(Strategy s) {
        Report rep;
        if (s == Strategy::spherical_faces && !x_.is_free())
            throw PreconditionError("spherical_faces strategy needs a free cube");
        bool ok = false;
        switch (s) {
        case Strategy::definition: ok = definition(0, x_.full(), 0); break;
        case Strategy::spherical_faces: ok = spherical(x_.full(), 0); break;
        case Strategy::inductive: ok = inductive(0, x_.full(), 0); break;
        }
        if (!ok) rep.passed = false;
        rep.findings = std::move(why_);
        return rep;
    }

private:
    using Key = std::tuple<Mask, Mask, Mask>;

    std::string view_name(Mask t, Mask u, Mask v) const {
        std::string s = t ? "H0^" + set_name(x_, t) + "(x)" : "x";
        if (v || u != (x_.full() & ~t)) s += "|_" + set_name(x_, u) + "^" + set_name(x_, v);
        return s;
    }

    bool mono(Mask t, Mask u, Mask v, Mask a, std::size_t l) {
        auto key = std::make_tuple(t, expand(a, u) | v, static_cast<Mask>(members(u)[l]));
        auto it = mono_.find(key);
        if (it != mono_.end()) return it->second;
        Cube c = h0_view(x_, t, u, v);
        bool ok = induced_injective(c.boundary(a, l), c.vertex(a).relations, c.vertex(a & ~bit(l)).relations);
        mono_.emplace(key, ok);
        return ok;
    }

    // Index of label k (a bit of u) inside the view over u.
    static std::size_t local(Mask u, std::size_t k) { return popcount(u & (bit(k) - 1)); }

    bool all_mono(Mask t, Mask u, Mask v, std::optional<std::size_t> only = std::nullopt) {
        const std::size_t n = popcount(u);
        for (Mask a = 1; a < (Mask{1} << n); ++a)
            for (std::size_t l = 0; l < n; ++l) {
                if (!has(a, l) || (only && l != *only)) continue;
                if (!mono(t, u, v, a, l)) {
                    Mask w = expand(a, u);
                    why_.push_back("boundary in direction " + x_.labels()[members(u)[l]] + " at " + set_name(x_, w) +
                                   " of " + view_name(t, u, v) + " is not a monomorphism");
                    return false;
                }
            }
        return true;
    }

    bool definition(Mask t, Mask u, Mask v) {
        if (!u) return true;
        auto key = std::make_tuple(t, u, v);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = all_mono(t, u, v);
        if (ok && popcount(u) > 1)
            for (std::size_t k : members(u))
                if (!(ok = definition(t | bit(k), u & ~bit(k), v))) break;
        memo_.emplace(key, ok);
        return ok;
    }

    bool spherical(Mask u, Mask v) {
        if (!u) return true;
        auto key = std::make_tuple(Mask{0}, u, v);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = true;
        Complex tot = total_complex(restrict(x_, u, v));
        if (!zero_spherical(tot)) {
            for (std::size_t p = 1; p <= tot.length(); ++p)
                if (!is_zero_module(homology(tot, p))) {
                    why_.push_back("H" + std::to_string(p) + "(Tot " + view_name(0, u, v) + ") is nonzero");
                    break;
                }
            ok = false;
        }
        for (std::size_t k : members(u)) {
            if (!ok) break;
            ok = spherical(u & ~bit(k), v | bit(k)) && spherical(u & ~bit(k), v);
        }
        memo_.emplace(key, ok);
        return ok;
    }

    bool inductive(Mask t, Mask u, Mask v) {
        if (!u) return true;
        auto key = std::make_tuple(t, u, v);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t s = members(u).front();
        Mask rest = u & ~bit(s);
        bool ok = inductive(t, rest, v | bit(s)) && inductive(t, rest, v) && all_mono(t, u, v, local(u, s)) &&
                  inductive(t | bit(s), rest, v);
        memo_.emplace(key, ok);
        return ok;
    }

    const Cube& x_;
    std::map<Key, bool> memo_;
    std::map<Key, bool> mono_;
    std::vector<std::string> why_;
};

}  // namespace

Report is_admissible(const Cube& x, Strategy strategy) {
    if (!validate_cube(x).passed) throw InputError("is_admissible: invalid cube");
    return Admissibility(x).run(strategy);
}

IteratedH0 iterated_h0(const Cube& x, const std::vector<std::vector<std::size_t>>& orders, bool check_admissible) {
    if (orders.empty()) throw InputError("iterated_h0: no order given");
    Mask t = 0;
    for (std::size_t k : orders[0]) {
        if (k >= x.size() || has(t, k)) throw InputError("iterated_h0: order is not a list of distinct labels");
        t |= bit(k);
    }
    for (const auto& o : orders) {
        Mask m = 0;
        for (std::size_t k : o)
            if (k < x.size()) m |= bit(k);
        if (m != t || o.size() != popcount(t)) throw InputError("iterated_h0: orders enumerate different sets");
    }
    if (check_admissible) {
        Mask rest = x.full() & ~t;
        for (Mask v = 0; v <= rest; ++v) {
            if ((v & rest) != v) continue;
            if (!is_admissible(restrict(x, t, v), Strategy::definition).passed)
                throw PreconditionError("iterated_h0: x|_T^" + set_name(x, v) + " is not admissible");
        }
    }
    std::optional<Cube> first;
    IteratedH0 out{x, true};
    for (const auto& o : orders) {
        Cube cur = x;
        for (std::size_t k : o) cur = directional_homology(cur, *cur.label_index(x.labels()[k]), 0);
        if (!first) {
            first = cur;
            continue;
        }
        for (Mask w = 0; w <= cur.full(); ++w)
            if (!submodule_equal(cur.vertex(w).relations, first->vertex(w).relations)) out.order_independent = false;
    }
    out.cube = *first;
    return out;
}

}  // namespace klab
