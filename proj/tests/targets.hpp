#pragma once

// Seeded resolution targets: Koszul cubes on (x, y), optionally cut down by a
// power of z so that the vertices live over A/(z^e).

#include <cstdint>
#include <string>

#include "cubes.hpp"
#include "gen.hpp"
#include "klab/koszul.hpp"
#include "klab/resolve.hpp"

namespace targets {

inline bool kills(const klab::Poly& g, const klab::FPModule& m) {
    using namespace klab;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        PolyVector v = zero_vector(m.ring(), m.rank());
        v[i] = g;
        if (!m.relations.contains(v)) return false;
    }
    return true;
}

inline klab::FPModule h0_at(const klab::Cube& z, klab::Mask t, std::size_t k) {
    using namespace klab;
    auto gens = z.vertex(t).relations.generators();
    for (auto& c : z.boundary(t | bit(k), k).columns()) gens.push_back(std::move(c));
    return {Submodule(z.ring(), z.rank(t), std::move(gens))};
}

/// Annihilation property for label s at exponent m, checked by multiplication:
/// f_u^m kills every vertex, f_v^m kills every vertex of H_0^v.
inline bool annihilates(const klab::ResolutionInput& in, std::size_t s, unsigned m) {
    using namespace klab;
    Poly g = in.fs[s].pow(m);
    for (std::size_t j = 0; j <= in.chain_length(); ++j) {
        const Cube& z = in.level(j);
        for (Mask t = 0; t <= z.full(); ++t) {
            if (s < in.u_count()) {
                if (!kills(g, z.vertex(t))) return false;
            } else {
                std::size_t k = s - in.u_count();
                if (!has(t, k) && !kills(g, h0_at(z, t, k))) return false;
            }
        }
    }
    return true;
}

inline bool exponents_minimal(const klab::ResolutionInput& in, const std::vector<unsigned>& m) {
    for (std::size_t s = 0; s < in.fs.size(); ++s)
        if (!annihilates(in, s, m[s]) || annihilates(in, s, m[s] - 1)) return false;
    return true;
}

inline klab::Cube mod_out(const klab::Cube& x, const klab::Poly& g) {
    using namespace klab;
    Cube out = x;
    for (Mask t = 0; t <= x.full(); ++t) {
        auto gens = x.vertex(t).relations.generators();
        for (std::size_t i = 0; i < x.rank(t); ++i) {
            PolyVector v = zero_vector(x.ring(), x.rank(t));
            v[i] = g;
            gens.push_back(std::move(v));
        }
        out.set_vertex(t, FPModule{Submodule(x.ring(), x.rank(t), std::move(gens))});
    }
    return out;
}

/// The three worked examples: A/(x^2) over U = {1}; [A --x^2--> A]; the
/// square with x^2 in direction 1 and y in direction 2.
inline klab::ResolutionInput point(const klab::RingPtr& r) {
    using namespace klab;
    Cube z(r, std::vector<std::string>{}, {FPModule::quotient(Matrix::scalar(r, 1, parse_poly("x^2", r)))}, {});
    return {{"1"}, {parse_poly("x", r)}, z, std::nullopt, {}};
}

inline klab::ResolutionInput segment(const klab::RingPtr& r) {
    using namespace klab;
    return {{}, {parse_poly("x", r)}, fixtures::arrow(Matrix::scalar(r, 1, parse_poly("x^2", r))), std::nullopt, {}};
}

inline klab::ResolutionInput square(const klab::RingPtr& r) {
    using namespace klab;
    return {{}, {parse_poly("x", r), parse_poly("y", r)}, fixtures::square(r, "x^2", "x^2", "y", "y"), std::nullopt, {}};
}

/// Target number `seed`; cycles through |V| = 0, 1, 2 and alternates U = {} and U = {u}.
inline klab::ResolutionInput seeded(const klab::RingPtr& r, std::uint64_t seed) {
    using namespace klab;
    gen::Rng rng(seed);
    const std::size_t nv = seed % 3;
    const bool with_u = (seed / 3) % 2 == 1 || nv == 0;
    std::vector<Poly> fv;
    const char* vs[] = {"x", "y"};
    for (std::size_t k = 0; k < nv; ++k) fv.push_back(parse_poly(vs[k], r));
    RandomKoszulOptions opt;
    opt.seed = seed;
    opt.summands = static_cast<std::size_t>(rng.range(1, nv == 2 ? 2 : 3));
    opt.basechange_steps = static_cast<std::size_t>(rng.range(0, 4));
    opt.max_exp = static_cast<unsigned>(rng.range(1, 3));
    opt.entry_degree = 1;
    Cube x = random_koszul(r, fv, opt);
    ResolutionInput in{{}, fv, x, std::nullopt, {}};
    if (with_u) {
        Poly f = parse_poly("z", r);
        in.u_labels = {"u"};
        in.fs.insert(in.fs.begin(), f);
        in.target = mod_out(x, f.pow(static_cast<unsigned>(rng.range(1, 3))));
    }
    return in;
}

}  // namespace targets
