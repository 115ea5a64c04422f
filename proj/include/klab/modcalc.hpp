#pragma once

#include <cstddef>
#include <vector>

#include "klab/groebner.hpp"

namespace klab {

/// Map of free modules A^source -> A^target.
using FreeMap = Matrix;

/// Finitely presented module A^rank / relations.
struct FPModule {
    Submodule relations;

    static FPModule free(const RingPtr& ring, std::size_t rank) { return {Submodule::zero(ring, rank)}; }
    static FPModule quotient(const Matrix& rels) { return {Submodule::from_matrix(rels)}; }

    const RingPtr& ring() const noexcept { return relations.ring(); }
    std::size_t rank() const noexcept { return relations.rank(); }
    bool is_free_presentation() const { return relations.generators().empty(); }
};

/// Bounded complex F_s -> ... -> F_0 of free modules; differential(k) is d_k : F_k -> F_{k-1}.
class Complex {
public:
    /// Validates ranks and d_{k} d_{k+1} = 0.
    Complex(RingPtr ring, std::vector<std::size_t> ranks, std::vector<Matrix> differentials);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t length() const noexcept { return ranks_.size() - 1; }
    std::size_t rank(std::size_t k) const { return ranks_.at(k); }
    const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
    /// 1 <= k <= length.
    const Matrix& differential(std::size_t k) const { return diffs_.at(k - 1); }
    const std::vector<Matrix>& differentials() const noexcept { return diffs_; }

private:
    RingPtr ring_;
    std::vector<std::size_t> ranks_;
    std::vector<Matrix> diffs_;
};

bool is_injective(const FreeMap& m);
FPModule cokernel(const FreeMap& m);
Ideal annihilator(const FPModule& m);
bool is_zero_module(const FPModule& m);

/// Ideal of t x t minors. Throws PreconditionError unless 1 <= t <= min(rows, cols).
Ideal fitting_ideal(const FreeMap& m, std::size_t t);

/// Presentation of K / R where the columns of k generate K, the columns of r
/// generate R and R is contained in K: A^{#K} / {a : k a in R}.
FPModule subquotient(const Matrix& k, const Matrix& r);

/// ker d_k / im d_{k+1}, presented on syzygy generators of d_k (the standard
/// basis at k = 0).
FPModule homology(const Complex& c, std::size_t k);
bool zero_spherical(const Complex& c);

/// For phi : A^n / R -> A^m / Q (well defined), whether the induced map is injective.
bool induced_injective(const FreeMap& phi, const Submodule& source_rel, const Submodule& target_rel);

/// Whether the columns of p together with the relations of m span A^rank(m).
bool is_surjective_onto(const FreeMap& p, const FPModule& m);

/// g with p g = f modulo the relations of m; f and p both land in A^rank(m).
/// Throws PreconditionError if p is not onto m or a column cannot be lifted.
FreeMap lift_through_surjection(const FreeMap& f, const FreeMap& p, const FPModule& m);

/// Least e in [1, cap] with f^e M = 0; CapExceeded otherwise.
unsigned min_annihilating_power(const Poly& f, const FPModule& m, unsigned cap);

}  // namespace klab
