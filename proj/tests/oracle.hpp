#pragma once

// Reference implementations used only to cross-check the library. They share
// nothing with the Groebner engine: membership is decided by dense linear
// algebra on a truncated Macaulay matrix.

#include <vector>

#include "klab/matrix.hpp"

namespace oracle {

/// v lies in the span of { m * g : g in gens, m monomial, deg(m * g) <= bound }.
/// For homogeneous or low-degree data a generous bound makes this exact;
/// a false answer only means "not within the bound".
bool in_module(const klab::PolyVector& v, const std::vector<klab::PolyVector>& gens, unsigned bound);

bool in_ideal(const klab::Poly& f, const std::vector<klab::Poly>& gens, unsigned bound);

/// Reduced row echelon rank of a matrix over the coefficient field, with
/// entries required to be constants.
std::size_t constant_rank(const klab::Matrix& m);

}  // namespace oracle
