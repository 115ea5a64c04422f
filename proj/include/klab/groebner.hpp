#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klab/matrix.hpp"
#include "klab/poly.hpp"

namespace klab {

namespace gb {

/// A term of a free-module element: coeff * mono * e_pos.
struct VTerm {
    Monomial mono;
    std::uint32_t pos;
    Coeff coeff;
};

/// Module monomial order. Positions below `block` dominate every position at
/// or above it; inside a block terms compare by monomial first and then the
/// smaller position is larger. block = 0 is plain term-over-position.
struct ModuleOrder {
    const Ring* ring;
    std::uint32_t block = 0;

    int operator()(const VTerm& a, const VTerm& b) const noexcept {
        const bool ta = a.pos < block, tb = b.pos < block;
        if (ta != tb) return ta ? 1 : -1;
        if (int c = ring->compare(a.mono, b.mono)) return c;
        if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
        return 0;
    }
};

/// Free-module element, no zero coefficients. Inside the engine terms are
/// kept strictly decreasing in the active ModuleOrder; entry points sort.
using Vec = std::vector<VTerm>;

void sort_terms(Vec& v, const ModuleOrder& order);

Vec to_vec(const PolyVector& v, std::uint32_t offset = 0);
Vec to_vec(const Poly& p, std::uint32_t pos = 0);
PolyVector from_vec(const Vec& v, const RingPtr& ring, std::size_t rank, std::uint32_t offset = 0);
Poly component(const Vec& v, const RingPtr& ring, std::uint32_t pos);

/// f - c * m * g, both sorted in `order`.
Vec sub_mul(const ModuleOrder& order, const Vec& f, const Coeff& c, const Monomial& m, const Vec& g);
Vec make_monic(const Ring& ring, Vec v);

/// Full reduction of f modulo `basis` (need not be a GB). When `quotients`
/// is non-null it receives one polynomial per basis element with
/// f = sum quotients[i] * basis[i] + remainder.
Vec reduce(const RingPtr& ring, const Vec& f, const std::vector<Vec>& basis, std::vector<Poly>* quotients = nullptr,
           std::uint32_t block = 0);

struct Stats {
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis (monic, inter-reduced, sorted by increasing
/// leading term) of the submodule generated by `gens`.
std::vector<Vec> groebner(const RingPtr& ring, std::vector<Vec> gens, Stats* stats = nullptr, std::uint32_t block = 0);

/// Groebner basis of the module generated by (top_i | bottom_i) inside
/// A^top_rank (+) A^bottom_rank, top positions dominating. Returns the basis
/// elements with vanishing top part, shifted down to A^bottom_rank. These
/// generate {b : (0 | b) in the module}.
std::vector<Vec> eliminate_top(const RingPtr& ring, std::size_t top_rank, const std::vector<Vec>& tops,
                               const std::vector<Vec>& bottoms);

}  // namespace gb

/// Submodule of A^rank given by generators; the reduced Groebner basis is
/// computed on first use and shared between copies.
class Submodule {
public:
    Submodule(RingPtr ring, std::size_t rank, std::vector<PolyVector> generators);
    static Submodule from_matrix(const Matrix& m);
    static Submodule zero(RingPtr ring, std::size_t rank) { return Submodule(std::move(ring), rank, {}); }

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<PolyVector>& generators() const noexcept { return generators_; }
    Matrix generator_matrix() const;

    const std::vector<gb::Vec>& basis() const;
    std::vector<PolyVector> reduced_basis() const;

    PolyVector reduce(const PolyVector& v) const;
    bool contains(const PolyVector& v) const;
    bool contains(const Submodule& other) const;
    bool is_zero() const;
    /// True iff the submodule is all of A^rank.
    bool is_everything() const;

    Submodule sum(const Submodule& other) const;
    Submodule with_order(MonomialOrder order) const;

private:
    struct Cache;

    RingPtr ring_;
    std::size_t rank_;
    std::vector<PolyVector> generators_;
    std::shared_ptr<Cache> cache_;
};

bool submodule_equal(const Submodule& a, const Submodule& b);

/// Ideal of A (rank-one submodule).
class Ideal {
public:
    Ideal(RingPtr ring, std::vector<Poly> generators);
    static Ideal unit(RingPtr ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }

    const RingPtr& ring() const noexcept { return module_.ring(); }
    const std::vector<Poly>& generators() const noexcept { return generators_; }
    const Submodule& as_submodule() const noexcept { return module_; }

    std::vector<Poly> reduced_basis() const;
    Poly reduce(const Poly& f) const;
    bool contains(const Poly& f) const;
    bool contains(const Ideal& other) const;
    bool is_zero() const { return module_.is_zero(); }
    bool is_unit() const { return module_.is_everything(); }

    Ideal sum(const Ideal& other) const;
    Ideal with_order(MonomialOrder order) const;

    std::string to_string() const;

private:
    std::vector<Poly> generators_;
    Submodule module_;
};

bool ideal_equal(const Ideal& a, const Ideal& b);

struct Division {
    PolyVector remainder;
    std::vector<Poly> quotients;  // one per element of the reduced basis
    std::vector<PolyVector> basis;
};

/// Normal form with division certificate against the reduced basis.
Division normal_form(const PolyVector& f, const Submodule& m);

struct Membership {
    bool member = false;
    /// Coefficients over the original generators (when member).
    std::vector<Poly> certificate;
};

Membership ideal_membership(const Poly& f, const Ideal& ideal);

/// (I : f) = {a : a f in I}
Ideal ideal_quotient(const Ideal& ideal, const Poly& f);
Ideal intersect(const std::vector<Ideal>& ideals);
/// f in sqrt(I), via 1 in I + (1 - t f) over A[t].
bool radical_membership(const Poly& f, const Ideal& ideal);
/// Krull dimension of A/I from the leading-term staircase. Throws on the unit ideal.
std::size_t ideal_dimension(const Ideal& ideal);

struct Grade {
    bool infinite = false;
    std::size_t value = 0;

    friend bool operator==(const Grade& a, const Grade& b) { return a.infinite == b.infinite && a.value == b.value; }
    bool at_least(std::size_t i) const { return infinite || value >= i; }
    std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

/// Codimension of I; the zero ideal has grade 0 and the unit ideal +inf.
Grade grade(const Ideal& ideal);

/// Matrix whose columns generate the kernel of m : A^cols -> A^rows.
Matrix syzygies(const Matrix& m);
/// Columns generate {a in A^cols : m a in <relations>}.
Matrix preimage(const Matrix& m, const std::vector<PolyVector>& relations);

/// Solves  columns * c + relations * d = target  for c, with the Groebner
/// basis of the augmented system computed once and reused for every target.
class LiftSolver {
public:
    LiftSolver(const Matrix& columns, const std::vector<PolyVector>& relations = {});

    std::optional<PolyVector> solve(const PolyVector& target) const;
    std::size_t target_rank() const noexcept { return rows_; }

private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<gb::Vec> basis_;
};

}  // namespace klab
