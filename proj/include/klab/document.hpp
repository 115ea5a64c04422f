#pragma once

// JSON documents for rings, matrices, modules, cubes and complexes.

#include <optional>

#include <json.hpp>

#include "klab/cube.hpp"
#include "klab/modcalc.hpp"

namespace klab::doc {

using Json = nlohmann::ordered_json;

/// {"field": "Q" | {"Fp": p}, "vars": [...], "order": "..."}; `order` overrides the document.
RingPtr ring_from_json(const Json& j, std::optional<MonomialOrder> order = std::nullopt);
Json ring_to_json(const Ring& r);

Poly poly_from_json(const Json& j, const RingPtr& ring);
std::vector<Poly> polys_from_json(const Json& j, const RingPtr& ring);
Json polys_to_json(const std::vector<Poly>& ps);

/// Row-major list of rows of polynomial strings. `rows`/`cols` are checked when given.
Matrix matrix_from_json(const Json& j, const RingPtr& ring, std::optional<std::size_t> rows = std::nullopt,
                        std::optional<std::size_t> cols = std::nullopt);
Json matrix_to_json(const Matrix& m);

/// A rank, or {"rank": r, "relations": r x n matrix whose columns are relations}.
FPModule module_from_json(const Json& j, const RingPtr& ring);
Json module_to_json(const FPModule& m);

/// {"S": [...], "vertices": {key: module}, "boundaries": {"T|k": matrix}}.
/// Boundaries may be omitted only when source or target has rank zero.
Cube cube_from_json(const Json& j, const RingPtr& ring);
Json cube_to_json(const Cube& x);

/// {"ranks": [r_0, ..., r_s], "differentials": [d_1, ..., d_s]}.
Complex complex_from_json(const Json& j, const RingPtr& ring);
Json complex_to_json(const Complex& c);

/// Same labels, same presentations (as submodules) and identical boundaries.
bool cubes_equal(const Cube& a, const Cube& b);

}  // namespace klab::doc
