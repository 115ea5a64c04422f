#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klab/modcalc.hpp"
#include "klab/report.hpp"

namespace klab {

/// Subsets of the label set, bit i standing for the i-th label.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxLabels = 8;

inline bool has(Mask m, std::size_t k) noexcept { return (m >> k) & 1u; }
inline Mask bit(std::size_t k) noexcept { return Mask{1} << k; }
inline std::size_t popcount(Mask m) noexcept { return static_cast<std::size_t>(__builtin_popcount(m)); }

/// S-cube of finitely presented modules: a vertex per subset T of S and a
/// boundary d^k_T : x_T -> x_{T - k} per k in T, given as a matrix on the
/// ambient free modules. A cube is free when no vertex carries relations.
class Cube {
public:
    /// Vertices indexed by mask; boundaries indexed by mask * labels.size() + k
    /// (entries with k outside the mask are ignored). Shapes are checked.
    Cube(RingPtr ring, std::vector<std::string> labels, std::vector<FPModule> vertices,
         std::vector<std::optional<Matrix>> boundaries);

    /// Free cube with all boundaries zero-initialised; fill with set_boundary.
    static Cube free(RingPtr ring, std::vector<std::string> labels, const std::vector<std::size_t>& ranks);

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    Mask full() const noexcept { return static_cast<Mask>((std::size_t{1} << labels_.size()) - 1); }

    const FPModule& vertex(Mask t) const { return vertices_.at(t); }
    std::size_t rank(Mask t) const { return vertices_.at(t).rank(); }
    const Matrix& boundary(Mask t, std::size_t k) const;
    void set_boundary(Mask t, std::size_t k, Matrix m);
    void set_vertex(Mask t, FPModule m);

    bool is_free() const;

    std::optional<std::size_t> label_index(std::string_view name) const;
    /// Comma-joined labels in label order; "" for the empty set.
    std::string key(Mask t) const;
    /// Inverse of key; throws InputError on unknown or repeated labels.
    Mask parse_key(std::string_view key) const;

private:
    RingPtr ring_;
    std::vector<std::string> labels_;
    std::vector<FPModule> vertices_;
    std::vector<std::optional<Matrix>> boundaries_;
};

/// Commuting squares modulo the target presentation and well-definedness
/// of every boundary on the presented modules.
Report validate_cube(const Cube& x);

/// x|_U^V: the U-cube with vertex x_{A + V} at A.
Cube restrict(const Cube& x, Mask u, Mask v);
/// Backside (k on) and frontside (k off) k-faces.
Cube backside_face(const Cube& x, std::size_t k);
Cube frontside_face(const Cube& x, std::size_t k);

/// Whether the boundary induces an isomorphism of the presented modules.
bool is_isomorphism(const Matrix& d, const FPModule& source, const FPModule& target);

/// Directions k along which every d^k_{T+k} is an isomorphism. With
/// `koszul_shortcut` only d^k_S is examined (unit determinant), valid for
/// Koszul cubes.
Mask degenerate_directions(const Cube& x, bool koszul_shortcut = false);
Cube nondegenerate_part(const Cube& x, bool koszul_shortcut = false);

/// Label order alpha: ordering[p] is the label index placed at position p.
using CubeOrdering = std::vector<std::size_t>;
CubeOrdering natural_ordering(const Cube& x);

/// Subsets of size k listed in the component order used by total_complex.
std::vector<Mask> tot_components(const Cube& x, std::size_t k, const CubeOrdering& alpha);

/// Total complex of a free cube. Component x_T -> x_{T - j} carries the sign
/// (-1)^{#{t in T : alpha-position of t > that of j}}.
Complex total_complex(const Cube& x, const CubeOrdering& alpha);
inline Complex total_complex(const Cube& x) { return total_complex(x, natural_ordering(x)); }

/// p = 0: cokernels of the k-direction boundaries; p = 1: their kernels.
Cube directional_homology(const Cube& x, std::size_t k, int p);

struct IteratedH0 {
    Cube cube;
    /// Denominator of every vertex identical across the requested orders.
    bool order_independent = true;
};

/// H_0 taken in direction order[0], then order[1], ... Every order must
/// enumerate the same set T; the result is over S - T with labels in their
/// original relative order. Throws PreconditionError unless x is admissible.
IteratedH0 iterated_h0(const Cube& x, const std::vector<std::vector<std::size_t>>& orders,
                       bool check_admissible = true);

enum class Strategy { definition, spherical_faces, inductive };
std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

/// Admissibility verdict; findings describe the first obstruction.
Report is_admissible(const Cube& x, Strategy strategy);

/// Submodule of x_empty generated by its relations and the images of all d^k_{k}.
Submodule h0_denominator(const Cube& x);

}  // namespace klab
