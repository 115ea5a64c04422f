#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klab/cube.hpp"

namespace klab {

struct SequenceReport {
    std::vector<Poly> sequence;
    bool regular = false;
    bool a_sequence = false;
    /// Order in which regularity failed (indices into `sequence`).
    std::optional<std::vector<std::size_t>> failing_permutation;
    /// 1-based position inside the failing order.
    std::optional<std::size_t> failing_index;
    /// Element of ((f_1..f_{i-1}) : f_i) outside (f_1..f_{i-1}); absent when f_i is a unit.
    std::optional<Poly> witness;
    std::string reason;
};

SequenceReport is_regular_sequence(const std::vector<Poly>& fs);
/// Every permutation regular. CapExceeded when fs has more than perm_cap entries.
SequenceReport is_A_sequence(const std::vector<Poly>& fs, std::size_t perm_cap = 6);

struct FactorReport {
    std::vector<Poly> products;
    SequenceReport hypothesis;  // on h_i = f_i g_i
    SequenceReport conclusion;  // on f
    /// False only if the hypothesis holds and the conclusion fails.
    bool consistent = true;
};

FactorReport factor_sequence_check(const std::vector<Poly>& fs, const std::vector<Poly>& gs, std::size_t perm_cap = 6);

/// Labels default to "1".."n".
Cube typical_cube(const RingPtr& ring, const std::vector<Poly>& fs, std::vector<std::string> labels = {});

struct BoundaryDiagnostic {
    Mask t = 0;
    std::size_t k = 0;
    bool injective = false;
    bool supported = false;
};

struct KoszulVerdict {
    bool is_koszul = false;
    std::vector<BoundaryDiagnostic> diagnostics;
    std::vector<std::string> findings;
};

/// fs[k] is the element attached to label k.
KoszulVerdict is_koszul_cube(const Cube& x, const std::vector<Poly>& fs);
/// f_k annihilates every cokernel of a k-direction boundary. Requires a Koszul cube.
Report is_reduced_koszul(const Cube& x, const std::vector<Poly>& fs);

struct DeterminantReport {
    std::vector<Poly> dets;  // det d^k_S per direction
    bool ranks_equal = true;
    bool coherent = true;
    std::vector<std::string> findings;
};

/// Throws PreconditionError unless x is a free Koszul cube for fs.
DeterminantReport cube_determinant(const Cube& x, const std::vector<Poly>& fs);
/// A-sequence test on the determinants of a non-degenerate free Koszul cube.
SequenceReport det_is_a_sequence(const Cube& x, const std::vector<Poly>& fs, std::size_t perm_cap = 6);

struct BEReport {
    std::vector<long> r;             // r_1..r_s
    std::vector<std::size_t> minors;  // nonzero r_i-minors found
    std::vector<Grade> grades;
    bool acyclic = false;
    std::vector<std::string> findings;
};

/// Buchsbaum-Eisenbud test. PreconditionError if some r_i <= 0 or exceeds
/// the size of d_i.
BEReport be_acyclicity(const Complex& c);

Report verify_weight_decomposition(const Cube& x, const std::vector<Poly>& fs);

struct GeneratorsPresentation {
    FPModule module;  // x_empty / <im d^k_{k}>
    SequenceReport det_sequence;
    bool matches_tot = false;  // same denominator as H_0(Tot x)
};

GeneratorsPresentation generators_presentation(const Cube& x, const std::vector<Poly>& fs, std::size_t perm_cap = 6);

struct RandomKoszulOptions {
    std::size_t summands = 1;
    std::size_t basechange_steps = 0;
    std::uint64_t seed = 0;
    unsigned min_exp = 1;
    unsigned max_exp = 1;
    unsigned entry_degree = 2;  // bound on off-diagonal base-change entries
    bool verify = true;         // assert validate_cube and is_koszul_cube
};

/// Direct sum of typical cubes on powers f_s^e, then conjugated by random
/// elementary base changes at every vertex.
Cube random_koszul(const RingPtr& ring, const std::vector<Poly>& fs, const RandomKoszulOptions& opt);

}  // namespace klab
