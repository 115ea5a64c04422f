#include "klab/koszul.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "klab/error.hpp"

namespace klab {

namespace {

bool regular_in_order(const std::vector<Poly>& fs, const std::vector<std::size_t>& order, SequenceReport& rep) {
    if (fs.empty()) return true;
    const RingPtr& ring = fs[0].ring();
    std::vector<Poly> prefix;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Poly& f = fs[order[i]];
        if (is_unit(f)) {
            rep.failing_index = i + 1;
            rep.reason = "entry " + std::to_string(i + 1) + " is a unit";
            return false;
        }
        Ideal prev(ring, prefix);
        Ideal q = ideal_quotient(prev, f);
        for (const auto& g : q.reduced_basis()) {
            if (prev.contains(g)) continue;
            rep.failing_index = i + 1;
            rep.witness = g;
            rep.reason = "entry " + std::to_string(i + 1) + " is a zero divisor modulo its predecessors";
            return false;
        }
        prefix.push_back(f);
    }
    return true;
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

void require_labels(const Cube& x, const std::vector<Poly>& fs) {
    if (fs.size() != x.size()) throw InputError("sequence length does not match the number of cube labels");
    for (const auto& f : fs)
        if (*f.ring() != *x.ring()) throw InputError("sequence over another ring");
}

std::string where(const Cube& x, Mask t, std::size_t k) { return "{" + x.key(t) + "}|" + x.labels()[k]; }

}  // namespace

SequenceReport is_regular_sequence(const std::vector<Poly>& fs) {
    SequenceReport rep;
    rep.sequence = fs;
    auto order = identity_order(fs.size());
    rep.regular = regular_in_order(fs, order, rep);
    if (!rep.regular) rep.failing_permutation = order;
    return rep;
}

SequenceReport is_A_sequence(const std::vector<Poly>& fs, std::size_t perm_cap) {
    if (fs.size() > perm_cap)
        throw CapExceeded("A-sequence check: " + std::to_string(fs.size()) + " entries exceed the permutation cap " +
                          std::to_string(perm_cap));
    SequenceReport rep = is_regular_sequence(fs);
    if (!rep.regular) return rep;
    auto order = identity_order(fs.size());
    while (std::next_permutation(order.begin(), order.end())) {
        SequenceReport attempt;
        if (!regular_in_order(fs, order, attempt)) {
            rep.failing_permutation = order;
            rep.failing_index = attempt.failing_index;
            rep.witness = attempt.witness;
            rep.reason = attempt.reason;
            return rep;
        }
    }
    rep.a_sequence = true;
    return rep;
}

FactorReport factor_sequence_check(const std::vector<Poly>& fs, const std::vector<Poly>& gs, std::size_t perm_cap) {
    if (fs.size() != gs.size()) throw InputError("factor_sequence_check: sequences differ in length");
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (is_unit(fs[i])) throw PreconditionError("factor_sequence_check: f_" + std::to_string(i + 1) + " is a unit");
    FactorReport rep;
    for (std::size_t i = 0; i < fs.size(); ++i) rep.products.push_back(fs[i] * gs[i]);
    rep.hypothesis = is_A_sequence(rep.products, perm_cap);
    rep.conclusion = is_A_sequence(fs, perm_cap);
    rep.consistent = !(rep.hypothesis.a_sequence && !rep.conclusion.a_sequence);
    return rep;
}

Cube typical_cube(const RingPtr& ring, const std::vector<Poly>& fs, std::vector<std::string> labels) {
    if (labels.empty())
        for (std::size_t i = 0; i < fs.size(); ++i) labels.push_back(std::to_string(i + 1));
    if (labels.size() != fs.size()) throw InputError("typical_cube: one label per sequence entry");
    const std::size_t n = fs.size();
    Cube x = Cube::free(ring, std::move(labels), std::vector<std::size_t>(std::size_t{1} << n, 1));
    for (Mask t = 0; t <= x.full(); ++t)
        for (std::size_t k = 0; k < n; ++k)
            if (has(t, k)) x.set_boundary(t, k, Matrix::scalar(ring, 1, fs[k]));
    return x;
}

KoszulVerdict is_koszul_cube(const Cube& x, const std::vector<Poly>& fs) {
    require_labels(x, fs);
    if (!validate_cube(x).passed) throw InputError("is_koszul_cube: invalid cube");
    KoszulVerdict v;
    if (!x.is_free()) {
        v.findings.push_back("cube has non-free vertices");
        return v;
    }
    v.is_koszul = true;
    for (Mask t = 1; t <= x.full(); ++t)
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!has(t, k)) continue;
            const Matrix& d = x.boundary(t, k);
            BoundaryDiagnostic diag{t, k, is_injective(d), false};
            diag.supported = radical_membership(fs[k], annihilator(cokernel(d)));
            if (!diag.injective) v.findings.push_back("boundary " + where(x, t, k) + " is not injective");
            if (!diag.supported)
                v.findings.push_back("cokernel of " + where(x, t, k) + " is not supported on V(" + fs[k].to_string() + ")");
            v.is_koszul = v.is_koszul && diag.injective && diag.supported;
            v.diagnostics.push_back(diag);
        }
    return v;
}

Report is_reduced_koszul(const Cube& x, const std::vector<Poly>& fs) {
    if (!is_koszul_cube(x, fs).is_koszul) throw PreconditionError("is_reduced_koszul: not a Koszul cube");
    Report rep;
    for (Mask t = 1; t <= x.full(); ++t)
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!has(t, k)) continue;
            const Matrix& d = x.boundary(t, k);
            Submodule image = Submodule::from_matrix(d);
            for (std::size_t i = 0; i < d.rows(); ++i) {
                PolyVector v = zero_vector(x.ring(), d.rows());
                v[i] = fs[k];
                if (!image.contains(v)) {
                    rep.fail(fs[k].to_string() + " * e_" + std::to_string(i + 1) + " is not in the image of " + where(x, t, k));
                    break;
                }
            }
        }
    return rep;
}

DeterminantReport cube_determinant(const Cube& x, const std::vector<Poly>& fs) {
    if (!is_koszul_cube(x, fs).is_koszul) throw PreconditionError("determinant: not a free Koszul cube");
    DeterminantReport rep;
    for (Mask t = 0; t <= x.full(); ++t)
        if (x.rank(t) != x.rank(0)) {
            rep.ranks_equal = false;
            rep.findings.push_back("vertex {" + x.key(t) + "} has rank " + std::to_string(x.rank(t)));
        }
    if (!rep.ranks_equal) {
        rep.coherent = false;
        return rep;
    }
    for (std::size_t k = 0; k < x.size(); ++k) rep.dets.push_back(determinant(x.boundary(x.full(), k)));
    for (Mask t = 1; t <= x.full(); ++t)
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!has(t, k)) continue;
            Poly dt = determinant(x.boundary(t, k)), q(x.ring());
            if (!divide_exact(dt, rep.dets[k], q) || !is_unit(q)) {
                rep.coherent = false;
                rep.findings.push_back("det " + where(x, t, k) + " = " + dt.to_string() +
                                       " is not a unit multiple of " + rep.dets[k].to_string());
            }
        }
    if (!rep.coherent) throw Error("determinant: incoherent determinants on a Koszul cube");
    return rep;
}

SequenceReport det_is_a_sequence(const Cube& x, const std::vector<Poly>& fs, std::size_t perm_cap) {
    DeterminantReport d = cube_determinant(x, fs);
    if (degenerate_directions(x, true)) throw PreconditionError("det_is_a_sequence: cube is degenerate");
    return is_A_sequence(d.dets, perm_cap);
}

BEReport be_acyclicity(const Complex& c) {
    BEReport rep;
    const std::size_t s = c.length();
    rep.acyclic = true;
    for (std::size_t i = 1; i <= s; ++i) {
        long r = 0;
        for (std::size_t j = i; j <= s; ++j) r += ((j - i) % 2 ? -1 : 1) * static_cast<long>(c.rank(j));
        rep.r.push_back(r);
    }
    for (std::size_t i = 1; i <= s; ++i) {
        const Matrix& d = c.differential(i);
        long r = rep.r[i - 1];
        if (r <= 0 || static_cast<std::size_t>(r) > std::min(d.rows(), d.cols()))
            throw PreconditionError("be_acyclicity: r_" + std::to_string(i) + " = " + std::to_string(r) +
                                    " outside [1, " + std::to_string(std::min(d.rows(), d.cols())) + "]");
    }
    for (std::size_t i = 1; i <= s; ++i) {
        Ideal fit = fitting_ideal(c.differential(i), static_cast<std::size_t>(rep.r[i - 1]));
        rep.minors.push_back(fit.generators().size());
        Grade g = grade(fit);
        rep.grades.push_back(g);
        if (!g.at_least(i)) {
            rep.acyclic = false;
            rep.findings.push_back("grade I_" + std::to_string(rep.r[i - 1]) + "(d_" + std::to_string(i) + ") = " +
                                   g.to_string() + " < " + std::to_string(i));
        }
    }
    return rep;
}

Report verify_weight_decomposition(const Cube& x, const std::vector<Poly>& fs) {
    if (!is_koszul_cube(x, fs).is_koszul) throw PreconditionError("weight decomposition: not a Koszul cube");
    Report rep;
    const Mask all = x.full();
    for (Mask t = 0; t <= all; ++t) {
        Mask rest = all & ~t;
        for (Mask u = 0; u <= rest; ++u) {
            if ((u & rest) != u) continue;
            std::vector<PolyVector> rels = x.vertex(u).relations.generators();
            for (std::size_t k = 0; k < x.size(); ++k)
                if (has(t, k))
                    for (auto& col : x.boundary(u | bit(k), k).columns()) rels.push_back(std::move(col));
            FPModule h0{Submodule(x.ring(), x.rank(u), std::move(rels))};
            std::string name = "H0^{" + x.key(t) + "}(x)_{" + x.key(u) + "}";
            if (t) {
                Ideal ann = annihilator(h0);
                for (std::size_t k = 0; k < x.size(); ++k)
                    if (has(t, k) && !radical_membership(fs[k], ann))
                        rep.fail(name + " is not supported on V(" + fs[k].to_string() + ")");
                if (!zero_spherical(total_complex(restrict(x, t, u))))
                    rep.fail("Tot x|_{" + x.key(t) + "}^{" + x.key(u) + "} is not 0-spherical");
            }
        }
    }
    return rep;
}

GeneratorsPresentation generators_presentation(const Cube& x, const std::vector<Poly>& fs, std::size_t perm_cap) {
    SequenceReport seq = det_is_a_sequence(x, fs, perm_cap);
    Submodule denom = h0_denominator(x);
    GeneratorsPresentation out{{denom}, std::move(seq), false};
    Complex tot = total_complex(x);
    Matrix d1 = tot.length() ? tot.differential(1) : Matrix(x.ring(), x.rank(0), 0);
    out.matches_tot = submodule_equal(denom, Submodule::from_matrix(d1));
    return out;
}

Cube random_koszul(const RingPtr& ring, const std::vector<Poly>& fs, const RandomKoszulOptions& opt) {
    const std::size_t n = fs.size();
    if (n > 4) throw CapExceeded("random_koszul: at most 4 labels");
    if (opt.summands < 1 || opt.summands > 6) throw CapExceeded("random_koszul: summands must lie in [1, 6]");
    if (opt.basechange_steps > 32) throw CapExceeded("random_koszul: at most 32 base-change steps");
    if (opt.min_exp > opt.max_exp || opt.max_exp > 8) throw InputError("random_koszul: exponent range must satisfy min <= max <= 8");
    if (opt.entry_degree > 4) throw CapExceeded("random_koszul: entry degree at most 4");
    const Field& k = ring->field();
    std::mt19937_64 rng(opt.seed);
    auto range = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
    const std::size_t r = opt.summands;

    std::vector<std::vector<Poly>> powers(r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t s = 0; s < n; ++s) powers[j].push_back(fs[s].pow(static_cast<unsigned>(range(opt.min_exp, opt.max_exp))));

    auto random_monomial = [&] {
        Monomial m;
        auto deg = range(0, opt.entry_degree);
        for (std::uint64_t i = 0; i < deg && ring->nvars(); ++i) m = m * Monomial::variable(range(0, ring->nvars() - 1));
        return m;
    };
    auto random_unit = [&] {
        std::int64_t c = static_cast<std::int64_t>(range(1, 9));
        return k.from_int(rng() & 1 ? c : -c);
    };

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    const std::size_t count = std::size_t{1} << n;
    Cube x = Cube::free(ring, labels, std::vector<std::size_t>(count, r));

    std::vector<Matrix> p, pinv;
    for (Mask t = 0; t < count; ++t) {
        Matrix a = Matrix::identity(ring, r), ainv = Matrix::identity(ring, r);
        for (std::size_t step = 0; step < opt.basechange_steps; ++step) {
            Matrix e = Matrix::identity(ring, r), einv = Matrix::identity(ring, r);
            if (r == 1) {
                Coeff u = random_unit();
                e(0, 0) = Poly::constant(ring, u);
                einv(0, 0) = Poly::constant(ring, k.inv(u));
            } else {
                std::size_t row = range(0, r - 1), col = range(0, r - 2);
                if (col >= row) ++col;
                Poly entry = Poly::monomial(ring, random_monomial(), random_unit());
                e(row, col) = entry;
                einv(row, col) = -entry;
            }
            a = e * a;
            ainv = ainv * einv;
        }
        p.push_back(std::move(a));
        pinv.push_back(std::move(ainv));
    }
    for (Mask t = 0; t < count; ++t)
        for (std::size_t s = 0; s < n; ++s) {
            if (!has(t, s)) continue;
            std::vector<Poly> diag;
            for (std::size_t j = 0; j < r; ++j) diag.push_back(powers[j][s]);
            x.set_boundary(t, s, p[t & ~bit(s)] * Matrix::diagonal(ring, diag) * pinv[t]);
        }
    if (opt.verify) {
        if (!validate_cube(x).passed) throw Error("random_koszul: generated cube is not a cube");
        if (!is_koszul_cube(x, fs).is_koszul) throw Error("random_koszul: generated cube is not Koszul");
    }
    return x;
}

}  // namespace klab
