#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klab/cube.hpp"
#include "klab/report.hpp"

namespace klab {

/// Target of the resolution: a V-cube z of finitely presented modules (a
/// 0-cube when V is empty), optionally followed by z(1) and a connecting
/// morphism z(0) -> z(1) given per vertex on the ambient free modules.
struct ResolutionInput {
    std::vector<std::string> u_labels;
    /// Aligned with u_labels followed by the labels of `target`.
    std::vector<Poly> fs;
    Cube target;
    std::optional<Cube> next;
    std::vector<Matrix> connecting;  // indexed by vertex mask

    std::size_t u_count() const noexcept { return u_labels.size(); }
    std::size_t chain_length() const noexcept { return next ? 1 : 0; }
    const Cube& level(std::size_t j) const { return j == 0 ? target : *next; }
};

/// One resolved position of the chain: y = sum over summands j of
/// Typ_B(g^{types[j]}_V), with vertex maps epi[T] : A^L -> ambient of z_T.
struct ResolutionLevel {
    Cube y;
    std::vector<Mask> types;
    std::vector<Matrix> epi;

    std::map<Mask, std::size_t> multiplicities() const;
};

struct ResolutionOutput {
    std::vector<unsigned> exponents;  // m_s, aligned with ResolutionInput::fs
    std::vector<Poly> g;              // f_s^{m_s}
    std::vector<ResolutionLevel> levels;
    std::vector<Matrix> connecting;   // y(0) -> y(1) per vertex, chain case only
};

struct ResolveLimits {
    unsigned max_power = 64;
    std::size_t max_v = 2;
    std::size_t max_chain = 1;
};

/// Validates the input shape and the declared support conditions.
void check_resolution_input(const ResolutionInput& in, const ResolveLimits& limits = {});

/// m_u: least power of f_u killing every vertex of every z(j).
/// m_v: least power of f_v killing every vertex of H_0^v(z(j)) for all j
/// (this implies f_v^{m_v} H_0(Tot z(j)) = 0).
std::vector<unsigned> find_exponents(const ResolutionInput& in, unsigned cap);

/// Cube over B = A/(g_U) presented on A: direct sum of Typ_B(g^{T_j}_V).
Cube typical_sum(const RingPtr& ring, const std::vector<std::string>& v_labels, const std::vector<Poly>& g_u,
                 const std::vector<Poly>& g_v, const std::vector<Mask>& types);

ResolutionOutput koszul_resolve(const ResolutionInput& in, const ResolveLimits& limits = {});

/// (a) vertex maps onto z, (b) y has the declared shape, (c) onto H_0(Tot z),
/// (d) squares commute modulo presentations and the maps are well defined;
/// in the chain case also the connecting square.
Report check_resolution(const ResolutionOutput& out, const ResolutionInput& in);

}  // namespace klab
