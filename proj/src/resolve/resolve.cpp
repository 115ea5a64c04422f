#include "klab/resolve.hpp"

#include "klab/error.hpp"

namespace klab {

std::map<Mask, std::size_t> ResolutionLevel::multiplicities() const {
    std::map<Mask, std::size_t> out;
    for (Mask t : types) ++out[t];
    return out;
}

namespace {

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

std::string vertex_name(const Cube& z, Mask t) { return "{" + z.key(t) + "}"; }

// Vertex T of H_0^k(z).
FPModule h0_vertex(const Cube& z, Mask t, std::size_t k) {
    auto gens = z.vertex(t).relations.generators();
    for (auto& c : z.boundary(t | bit(k), k).columns()) gens.push_back(std::move(c));
    return {Submodule(z.ring(), z.rank(t), std::move(gens))};
}

std::vector<PolyVector> scaled_basis(const RingPtr& ring, std::size_t rank, const std::vector<Poly>& gs) {
    std::vector<PolyVector> out;
    for (const auto& g : gs)
        for (std::size_t i = 0; i < rank; ++i) {
            PolyVector v = zero_vector(ring, rank);
            v[i] = g;
            out.push_back(std::move(v));
        }
    return out;
}

bool in_relations(const PolyVector& v, const Submodule& rel) { return is_zero_vector(v) || rel.contains(v); }

bool columns_in(const Matrix& m, const Submodule& rel) {
    for (const auto& c : m.columns())
        if (!in_relations(c, rel)) return false;
    return true;
}

struct Partial {
    std::vector<Mask> types;
    std::vector<Matrix> epi;
};

class Resolver {
public:
    Resolver(const RingPtr& ring, std::vector<Poly> g_u, std::vector<Poly> g_v)
        : ring_(ring), g_u_(std::move(g_u)), g_v_(std::move(g_v)) {}

    // z is a cube over a subset of V; `labels` maps its label indices to V indices.
    Partial run(const Cube& z, const std::vector<std::size_t>& labels) {
        if (z.size() == 0) {
            Partial p;
            p.types.assign(z.rank(0), 0);
            p.epi.push_back(Matrix::identity(ring_, z.rank(0)));
            return p;
        }
        const std::size_t v = 0;
        const Mask rest = z.full() & ~bit(v);
        std::vector<std::size_t> sub_labels(labels.begin() + 1, labels.end());
        Cube z0 = restrict(z, rest, 0), z1 = restrict(z, rest, bit(v));
        Partial lo = run(z0, sub_labels);
        const Poly& gv = g_v_[labels[v]];

        std::vector<Matrix> alpha;
        for (Mask a = 0; a <= z0.full(); ++a) {
            Mask t = expand(a, rest);
            LiftSolver solver(z.boundary(t | bit(v), v), z.vertex(t).relations.generators());
            std::vector<PolyVector> cols;
            const Matrix& pi = lo.epi[a];
            for (std::size_t j = 0; j < pi.cols(); ++j) {
                PolyVector target = pi.column(j);
                for (auto& p : target) p = p * gv;
                auto c = solver.solve(target);
                if (!c)
                    throw PreconditionError("resolve: g_" + z.labels()[v] + " times generator " + std::to_string(j + 1) +
                                            " at " + vertex_name(z, t) + " is not in the image of the boundary");
                cols.push_back(std::move(*c));
            }
            alpha.push_back(Matrix::from_columns(ring_, z.rank(t | bit(v)), cols));
        }
        Partial hi = run(z1, sub_labels);

        Partial out;
        for (Mask t : lo.types) out.types.push_back((expand(t, rest) | bit(v)));
        for (Mask t : hi.types) out.types.push_back(expand(t, rest));
        out.epi.resize(std::size_t{1} << z.size(), Matrix(ring_, 0, 0));
        for (Mask a = 0; a <= z0.full(); ++a) {
            Mask t = expand(a, rest);
            out.epi[t | bit(v)] = alpha[a].hconcat(hi.epi[a]);
            out.epi[t] = lo.epi[a].hconcat(z.boundary(t | bit(v), v) * hi.epi[a]);
        }
        return out;
    }

private:
    RingPtr ring_;
    std::vector<Poly> g_u_, g_v_;
};

}  // namespace

Cube typical_sum(const RingPtr& ring, const std::vector<std::string>& v_labels, const std::vector<Poly>& g_u,
                 const std::vector<Poly>& g_v, const std::vector<Mask>& types) {
    const std::size_t n = v_labels.size();
    const std::size_t l = types.size();
    Cube y = Cube::free(ring, v_labels, std::vector<std::size_t>(std::size_t{1} << n, l));
    FPModule b{Submodule(ring, l, scaled_basis(ring, l, g_u))};
    for (Mask t = 0; t <= y.full(); ++t) y.set_vertex(t, b);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Poly> diag;
        for (Mask ty : types) diag.push_back(has(ty, k) ? g_v[k] : Poly::constant(ring, 1));
        Matrix d = Matrix::diagonal(ring, diag);
        for (Mask t = 0; t <= y.full(); ++t)
            if (has(t, k)) y.set_boundary(t, k, d);
    }
    return y;
}

void check_resolution_input(const ResolutionInput& in, const ResolveLimits& limits) {
    const Cube& z = in.target;
    const std::size_t nu = in.u_count(), nv = z.size();
    if (nv > limits.max_v) throw CapExceeded("resolve: |V| = " + std::to_string(nv) + " exceeds " + std::to_string(limits.max_v));
    if (in.chain_length() > limits.max_chain) throw CapExceeded("resolve: chain too long");
    if (in.fs.size() != nu + nv) throw InputError("resolve: expected one sequence entry per label of U and V");
    for (const auto& u : in.u_labels)
        if (z.label_index(u)) throw InputError("resolve: label '" + u + "' lies in both U and V");
    for (std::size_t j = 0; j <= in.chain_length(); ++j) {
        const Cube& c = in.level(j);
        if (c.labels() != z.labels()) throw InputError("resolve: chain members have different labels");
        Report v = validate_cube(c);
        if (!v.passed) throw InputError("resolve: target is not a cube: " + v.findings.front());
        for (Mask t = 0; t <= c.full(); ++t) {
            for (std::size_t k = 0; k < nv; ++k)
                if (has(t, k) && !induced_injective(c.boundary(t, k), c.vertex(t).relations, c.vertex(t & ~bit(k)).relations))
                    throw PreconditionError("resolve: boundary " + vertex_name(c, t) + "|" + c.labels()[k] + " is not injective");
            Ideal ann = annihilator(c.vertex(t));
            for (std::size_t u = 0; u < nu; ++u)
                if (!radical_membership(in.fs[u], ann))
                    throw PreconditionError("resolve: vertex " + vertex_name(c, t) + " is not supported on V(" +
                                            in.fs[u].to_string() + ")");
            for (std::size_t k = 0; k < nv; ++k)
                if (!has(t, k) && !radical_membership(in.fs[nu + k], annihilator(h0_vertex(c, t, k))))
                    throw PreconditionError("resolve: H0^" + c.labels()[k] + " at " + vertex_name(c, t) +
                                            " is not supported on V(" + in.fs[nu + k].to_string() + ")");
        }
    }
    if (in.next) {
        if (in.connecting.size() != (std::size_t{1} << nv)) throw InputError("resolve: one connecting matrix per vertex");
        const Cube& a = in.target;
        const Cube& b = *in.next;
        for (Mask t = 0; t <= a.full(); ++t) {
            const Matrix& c = in.connecting[t];
            if (c.rows() != b.rank(t) || c.cols() != a.rank(t)) throw InputError("resolve: connecting matrix has the wrong shape");
            for (const auto& r : a.vertex(t).relations.generators())
                if (!in_relations(c.apply(r), b.vertex(t).relations))
                    throw InputError("resolve: connecting map is not well defined at " + vertex_name(a, t));
            for (std::size_t k = 0; k < nv; ++k)
                if (has(t, k) && !columns_in(b.boundary(t, k) * c - in.connecting[t & ~bit(k)] * a.boundary(t, k),
                                             b.vertex(t & ~bit(k)).relations))
                    throw InputError("resolve: connecting map does not commute with boundary " + vertex_name(a, t) + "|" +
                                     a.labels()[k]);
        }
    }
}

std::vector<unsigned> find_exponents(const ResolutionInput& in, unsigned cap) {
    const std::size_t nu = in.u_count(), nv = in.target.size();
    std::vector<unsigned> m(nu + nv, 1);
    for (std::size_t j = 0; j <= in.chain_length(); ++j) {
        const Cube& z = in.level(j);
        for (Mask t = 0; t <= z.full(); ++t) {
            for (std::size_t u = 0; u < nu; ++u)
                m[u] = std::max(m[u], min_annihilating_power(in.fs[u], z.vertex(t), cap));
            for (std::size_t k = 0; k < nv; ++k)
                if (!has(t, k)) m[nu + k] = std::max(m[nu + k], min_annihilating_power(in.fs[nu + k], h0_vertex(z, t, k), cap));
        }
    }
    return m;
}

ResolutionOutput koszul_resolve(const ResolutionInput& in, const ResolveLimits& limits) {
    check_resolution_input(in, limits);
    const RingPtr& ring = in.target.ring();
    const std::size_t nu = in.u_count(), nv = in.target.size();
    ResolutionOutput out;
    out.exponents = find_exponents(in, limits.max_power);
    for (std::size_t s = 0; s < in.fs.size(); ++s) out.g.push_back(in.fs[s].pow(out.exponents[s]));
    std::vector<Poly> g_u(out.g.begin(), out.g.begin() + static_cast<std::ptrdiff_t>(nu));
    std::vector<Poly> g_v(out.g.begin() + static_cast<std::ptrdiff_t>(nu), out.g.end());
    std::vector<std::size_t> labels(nv);
    for (std::size_t k = 0; k < nv; ++k) labels[k] = k;

    Resolver resolver(ring, g_u, g_v);
    for (std::size_t j = 0; j <= in.chain_length(); ++j) {
        Partial p = resolver.run(in.level(j), labels);
        out.levels.push_back({typical_sum(ring, in.target.labels(), g_u, g_v, p.types), p.types, std::move(p.epi)});
    }
    if (!in.next) return out;

    // Connecting map h : y(0) -> y(1), one linear system per summand type.
    const ResolutionLevel& y0 = out.levels[0];
    const ResolutionLevel& y1 = out.levels[1];
    const Cube& z1 = *in.next;
    const std::size_t count = std::size_t{1} << nv;
    const std::size_t l0 = y0.types.size(), l1 = y1.types.size();
    std::vector<std::size_t> vrow(count), brow(count * nv);
    std::size_t rows = 0;
    for (Mask t = 0; t < count; ++t) {
        vrow[t] = rows;
        rows += z1.rank(t);
    }
    for (Mask t = 0; t < count; ++t)
        for (std::size_t k = 0; k < nv; ++k)
            if (has(t, k)) {
                brow[t * nv + k] = rows;
                rows += l1;
            }
    std::vector<PolyVector> relations;
    for (Mask t = 0; t < count; ++t) {
        for (const auto& r : z1.vertex(t).relations.generators()) {
            PolyVector v = zero_vector(ring, rows);
            for (std::size_t i = 0; i < r.size(); ++i) v[vrow[t] + i] = r[i];
            relations.push_back(std::move(v));
        }
        for (std::size_t k = 0; k < nv; ++k)
            if (has(t, k))
                for (const auto& r : scaled_basis(ring, l1, g_u)) {
                    PolyVector v = zero_vector(ring, rows);
                    for (std::size_t i = 0; i < l1; ++i) v[brow[t * nv + k] + i] = r[i];
                    relations.push_back(std::move(v));
                }
    }
    std::map<Mask, LiftSolver> solvers;
    auto solver_for = [&](Mask type) -> const LiftSolver& {
        auto it = solvers.find(type);
        if (it != solvers.end()) return it->second;
        Matrix m(ring, rows, count * l1);
        for (Mask t = 0; t < count; ++t) {
            const Matrix& pi = y1.epi[t];
            for (std::size_t r = 0; r < pi.rows(); ++r)
                for (std::size_t c = 0; c < l1; ++c) m(vrow[t] + r, t * l1 + c) = pi(r, c);
            for (std::size_t k = 0; k < nv; ++k) {
                if (!has(t, k)) continue;
                const Matrix& d = y1.y.boundary(t, k);
                Poly gamma = has(type, k) ? g_v[k] : Poly::constant(ring, 1);
                for (std::size_t i = 0; i < l1; ++i) {
                    m(brow[t * nv + k] + i, t * l1 + i) = d(i, i);
                    m(brow[t * nv + k] + i, (t & ~bit(k)) * l1 + i) = -gamma;
                }
            }
        }
        return solvers.emplace(type, LiftSolver(m, relations)).first->second;
    };
    std::vector<std::vector<PolyVector>> hcols(count);
    for (std::size_t j = 0; j < l0; ++j) {
        PolyVector target = zero_vector(ring, rows);
        for (Mask t = 0; t < count; ++t) {
            PolyVector img = (in.connecting[t] * y0.epi[t]).column(j);
            for (std::size_t i = 0; i < img.size(); ++i) target[vrow[t] + i] = img[i];
        }
        auto sol = solver_for(y0.types[j]).solve(target);
        if (!sol) throw PreconditionError("resolve: connecting map cannot be lifted at generator " + std::to_string(j + 1));
        for (Mask t = 0; t < count; ++t)
            hcols[t].emplace_back(sol->begin() + static_cast<std::ptrdiff_t>(t * l1),
                                  sol->begin() + static_cast<std::ptrdiff_t>((t + 1) * l1));
    }
    for (Mask t = 0; t < count; ++t) out.connecting.push_back(Matrix::from_columns(ring, l1, hcols[t]));
    return out;
}

Report check_resolution(const ResolutionOutput& out, const ResolutionInput& in) {
    Report rep;
    const std::size_t nu = in.u_count(), nv = in.target.size();
    const RingPtr& ring = in.target.ring();
    if (out.levels.size() != in.chain_length() + 1 || out.exponents.size() != in.fs.size() || out.g.size() != in.fs.size()) {
        rep.fail("(b) output does not match the input chain");
        return rep;
    }
    for (std::size_t s = 0; s < in.fs.size(); ++s)
        if (out.g[s] != in.fs[s].pow(out.exponents[s])) rep.fail("(b) g_" + std::to_string(s + 1) + " is not f^m");
    std::vector<Poly> g_u(out.g.begin(), out.g.begin() + static_cast<std::ptrdiff_t>(nu));
    std::vector<Poly> g_v(out.g.begin() + static_cast<std::ptrdiff_t>(nu), out.g.end());
    for (std::size_t j = 0; j < out.levels.size(); ++j) {
        const ResolutionLevel& lv = out.levels[j];
        const Cube& z = in.level(j);
        const std::string at = out.levels.size() > 1 ? " in position " + std::to_string(j) : "";
        const Cube& y = lv.y;
        bool shape_ok = y.labels() == z.labels() && lv.epi.size() == (std::size_t{1} << nv);
        if (shape_ok) {
            Cube expect = typical_sum(ring, z.labels(), g_u, g_v, lv.types);
            for (Mask t = 0; t <= y.full() && shape_ok; ++t) {
                shape_ok = y.rank(t) == expect.rank(t) && submodule_equal(y.vertex(t).relations, expect.vertex(t).relations);
                for (std::size_t k = 0; k < nv && shape_ok; ++k)
                    if (has(t, k)) shape_ok = y.boundary(t, k) == expect.boundary(t, k);
            }
        }
        if (!shape_ok) {
            rep.fail("(b) y" + at + " is not the declared sum of typical cubes");
            continue;
        }
        for (Mask t = 0; t <= z.full(); ++t) {
            const Matrix& pi = lv.epi[t];
            if (pi.rows() != z.rank(t) || pi.cols() != y.rank(t)) {
                rep.fail("(a) vertex map" + at + " at " + vertex_name(z, t) + " has the wrong shape");
                return rep;
            }
            if (!is_surjective_onto(pi, z.vertex(t))) rep.fail("(a) vertex map" + at + " at " + vertex_name(z, t) + " is not onto");
            for (const auto& r : y.vertex(t).relations.generators())
                if (!in_relations(pi.apply(r), z.vertex(t).relations)) {
                    rep.fail("(d) vertex map" + at + " at " + vertex_name(z, t) + " is not defined on B");
                    break;
                }
            for (std::size_t k = 0; k < nv; ++k)
                if (has(t, k) && !columns_in(z.boundary(t, k) * pi - lv.epi[t & ~bit(k)] * y.boundary(t, k),
                                             z.vertex(t & ~bit(k)).relations))
                    rep.fail("(d) square" + at + " at " + vertex_name(z, t) + " in direction " + z.labels()[k] +
                             " does not commute");
        }
        Submodule denom = h0_denominator(z);
        FPModule h0{denom};
        if (!is_surjective_onto(lv.epi[0], h0)) rep.fail("(c) map on H0(Tot)" + at + " is not onto");
    }
    if (in.next) {
        if (out.connecting.size() != (std::size_t{1} << nv)) {
            rep.fail("(d) connecting map missing");
            return rep;
        }
        const ResolutionLevel& y0 = out.levels[0];
        const ResolutionLevel& y1 = out.levels[1];
        for (Mask t = 0; t <= in.target.full(); ++t) {
            const Matrix& h = out.connecting[t];
            if (!columns_in(y1.epi[t] * h - in.connecting[t] * y0.epi[t], in.next->vertex(t).relations))
                rep.fail("(d) connecting square at " + vertex_name(in.target, t) + " does not commute");
            for (std::size_t k = 0; k < nv; ++k)
                if (has(t, k) && !columns_in(y1.y.boundary(t, k) * h - out.connecting[t & ~bit(k)] * y0.y.boundary(t, k),
                                             y1.y.vertex(t & ~bit(k)).relations))
                    rep.fail("(d) connecting map is not a cube morphism at " + vertex_name(in.target, t) + "|" +
                             in.target.labels()[k]);
        }
    }
    return rep;
}

}  // namespace klab
