#include "klab/modcalc.hpp"

#include <numeric>

#include "klab/error.hpp"

namespace klab {

Complex::Complex(RingPtr ring, std::vector<std::size_t> ranks, std::vector<Matrix> differentials)
    : ring_(std::move(ring)), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
    if (ranks_.empty()) throw InputError("complex needs at least one module");
    if (diffs_.size() + 1 != ranks_.size()) throw InputError("complex: expected one differential per positive degree");
    for (std::size_t k = 1; k <= diffs_.size(); ++k) {
        const Matrix& d = diffs_[k - 1];
        if (d.rows() != ranks_[k - 1] || d.cols() != ranks_[k])
            throw InputError("complex: differential " + std::to_string(k) + " has the wrong shape");
        if (*d.ring() != *ring_) throw InputError("complex: differential over another ring");
    }
    for (std::size_t k = 1; k < diffs_.size(); ++k)
        if (!(diffs_[k - 1] * diffs_[k]).is_zero())
            throw InputError("complex: d" + std::to_string(k) + " d" + std::to_string(k + 1) + " != 0");
}

bool is_injective(const FreeMap& m) { return syzygies(m).cols() == 0; }

FPModule cokernel(const FreeMap& m) { return FPModule::quotient(m); }

Ideal annihilator(const FPModule& m) {
    const RingPtr& ring = m.ring();
    if (m.rank() == 0) return Ideal::unit(ring);
    const auto& rels = m.relations.generators();
    std::vector<Ideal> parts;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        // (R : e_i) = {a : a e_i in R}
        std::vector<gb::Vec> tops, bottoms;
        tops.push_back(gb::to_vec(unit_vector(ring, m.rank(), i)));
        bottoms.push_back(gb::to_vec(Poly::constant(ring, 1)));
        for (const auto& r : rels) {
            tops.push_back(gb::to_vec(r));
            bottoms.emplace_back();
        }
        std::vector<Poly> gens;
        for (const auto& v : gb::eliminate_top(ring, m.rank(), tops, bottoms)) gens.push_back(gb::component(v, ring, 0));
        parts.emplace_back(ring, std::move(gens));
    }
    return intersect(parts);
}

bool is_zero_module(const FPModule& m) { return m.relations.is_everything(); }

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Ideal fitting_ideal(const FreeMap& m, std::size_t t) {
    if (t == 0 || t > std::min(m.rows(), m.cols()))
        throw PreconditionError("fitting_ideal: t = " + std::to_string(t) + " outside [1, " +
                                std::to_string(std::min(m.rows(), m.cols())) + "]");
    std::vector<Poly> minors;
    std::vector<std::size_t> rows(t), cols(t);
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
            Poly d = determinant(m.submatrix(rows, cols));
            if (!d.is_zero()) minors.push_back(std::move(d));
        } while (next_combination(cols, m.cols()));
    } while (next_combination(rows, m.rows()));
    return Ideal(m.ring(), std::move(minors));
}

FPModule subquotient(const Matrix& k, const Matrix& r) {
    const RingPtr& ring = k.ring();
    return {Submodule(ring, k.cols(), preimage(k, r.columns()).columns())};
}

FPModule homology(const Complex& c, std::size_t k) {
    if (k > c.length()) throw InputError("homology: index " + std::to_string(k) + " out of range");
    const RingPtr& ring = c.ring();
    Matrix image = k < c.length() ? c.differential(k + 1) : Matrix(ring, c.rank(k), 0);
    if (k == 0) return cokernel(image);
    return subquotient(syzygies(c.differential(k)), image);
}

bool zero_spherical(const Complex& c) {
    for (std::size_t k = 1; k <= c.length(); ++k) {
        Matrix ker = syzygies(c.differential(k));
        if (ker.cols() == 0) continue;
        if (k == c.length()) return false;
        if (!Submodule::from_matrix(c.differential(k + 1)).contains(Submodule::from_matrix(ker))) return false;
    }
    return true;
}

bool induced_injective(const FreeMap& phi, const Submodule& source_rel, const Submodule& target_rel) {
    // K = {a : phi a in Q}; injective iff K is inside R.
    Matrix k = preimage(phi, target_rel.generators());
    for (const auto& a : k.columns())
        if (!source_rel.contains(a)) return false;
    return true;
}

bool is_surjective_onto(const FreeMap& p, const FPModule& m) {
    if (p.rows() != m.rank()) throw InputError("surjectivity test: target rank mismatch");
    auto gens = m.relations.generators();
    for (const auto& c : p.columns()) gens.push_back(c);
    return Submodule(m.ring(), m.rank(), std::move(gens)).is_everything();
}

FreeMap lift_through_surjection(const FreeMap& f, const FreeMap& p, const FPModule& m) {
    if (f.rows() != m.rank() || p.rows() != m.rank()) throw InputError("lift: maps must land in the module's ambient");
    if (!is_surjective_onto(p, m)) throw PreconditionError("lift: map is not onto the module");
    LiftSolver solver(p, m.relations.generators());
    std::vector<PolyVector> cols;
    for (std::size_t j = 0; j < f.cols(); ++j) {
        auto c = solver.solve(f.column(j));
        if (!c) throw PreconditionError("lift: column " + std::to_string(j) + " has no preimage");
        cols.push_back(std::move(*c));
    }
    return Matrix::from_columns(f.ring(), p.cols(), cols);
}

unsigned min_annihilating_power(const Poly& f, const FPModule& m, unsigned cap) {
    if (cap < 1) throw InputError("min_annihilating_power: cap must be positive");
    Ideal ann = annihilator(m);
    Poly power = f;
    for (unsigned e = 1; e <= cap; ++e) {
        if (ann.contains(power)) return e;
        power = power * f;
    }
    throw CapExceeded("no power f^e with e <= " + std::to_string(cap) + " annihilates the module");
}

}  // namespace klab
