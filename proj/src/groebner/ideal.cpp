#include <algorithm>
#include <mutex>

#include "klab/error.hpp"
#include "klab/groebner.hpp"

namespace klab {

struct Submodule::Cache {
    std::once_flag once;
    std::vector<gb::Vec> basis;
};

Submodule::Submodule(RingPtr ring, std::size_t rank, std::vector<PolyVector> generators)
    : ring_(std::move(ring)), rank_(rank), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators_) {
        if (g.size() != rank_) throw InputError("submodule generator has the wrong length");
        for (auto& p : g) {
            if (p.ring() != ring_ && *p.ring() != *ring_) throw InputError("submodule generator from another ring");
        }
    }
}

Submodule Submodule::from_matrix(const Matrix& m) { return Submodule(m.ring(), m.rows(), m.columns()); }

Matrix Submodule::generator_matrix() const { return Matrix::from_columns(ring_, rank_, generators_); }

const std::vector<gb::Vec>& Submodule::basis() const {
    std::call_once(cache_->once, [this] {
        std::vector<gb::Vec> gens;
        gens.reserve(generators_.size());
        for (const auto& g : generators_) gens.push_back(gb::to_vec(g));
        cache_->basis = gb::groebner(ring_, std::move(gens));
    });
    return cache_->basis;
}

std::vector<PolyVector> Submodule::reduced_basis() const {
    std::vector<PolyVector> out;
    for (const auto& v : basis()) out.push_back(gb::from_vec(v, ring_, rank_));
    return out;
}

PolyVector Submodule::reduce(const PolyVector& v) const {
    if (v.size() != rank_) throw InputError("vector length does not match submodule rank");
    return gb::from_vec(gb::reduce(ring_, gb::to_vec(v), basis()), ring_, rank_);
}

bool Submodule::contains(const PolyVector& v) const {
    if (v.size() != rank_) throw InputError("vector length does not match submodule rank");
    return gb::reduce(ring_, gb::to_vec(v), basis()).empty();
}

bool Submodule::contains(const Submodule& other) const {
    if (other.rank_ != rank_) throw InputError("submodule ranks differ");
    return std::all_of(other.generators_.begin(), other.generators_.end(),
                       [&](const PolyVector& g) { return contains(g); });
}

bool Submodule::is_zero() const { return basis().empty(); }

bool Submodule::is_everything() const {
    // Reduced basis of A^n is e_1..e_n with constant leading monomials.
    const auto& b = basis();
    std::size_t units = 0;
    for (const auto& v : b)
        if (v.front().mono.is_one()) ++units;
    return units == rank_;
}

Submodule Submodule::sum(const Submodule& other) const {
    if (other.rank_ != rank_) throw InputError("submodule ranks differ");
    auto gens = generators_;
    gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
    return Submodule(ring_, rank_, std::move(gens));
}

Submodule Submodule::with_order(MonomialOrder order) const {
    RingPtr r = klab::with_order(ring_, order);
    std::vector<PolyVector> gens;
    for (const auto& g : generators_) {
        PolyVector v;
        for (const auto& p : g) v.push_back(p.in_ring(r));
        gens.push_back(std::move(v));
    }
    return Submodule(r, rank_, std::move(gens));
}

bool submodule_equal(const Submodule& a, const Submodule& b) {
    if (a.rank() != b.rank()) throw InputError("submodule_equal: ambient ranks differ");
    if (*a.ring() != *b.ring()) throw InputError("submodule_equal: different rings");
    const auto& ga = a.basis();
    const auto& gb_ = b.basis();
    if (ga.size() != gb_.size()) return false;
    for (std::size_t i = 0; i < ga.size(); ++i) {
        if (ga[i].size() != gb_[i].size()) return false;
        for (std::size_t j = 0; j < ga[i].size(); ++j)
            if (ga[i][j].pos != gb_[i][j].pos || ga[i][j].mono != gb_[i][j].mono || !(ga[i][j].coeff == gb_[i][j].coeff))
                return false;
    }
    return true;
}

namespace {

std::vector<PolyVector> as_vectors(const std::vector<Poly>& ps) {
    std::vector<PolyVector> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back({p});
    return out;
}

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators)
    : generators_(std::move(generators)), module_(ring, 1, as_vectors(generators_)) {}

std::vector<Poly> Ideal::reduced_basis() const {
    std::vector<Poly> out;
    for (const auto& v : module_.basis()) out.push_back(gb::component(v, ring(), 0));
    return out;
}

Poly Ideal::reduce(const Poly& f) const { return module_.reduce({f})[0]; }
bool Ideal::contains(const Poly& f) const { return module_.contains(PolyVector{f}); }
bool Ideal::contains(const Ideal& other) const { return module_.contains(other.module_); }

Ideal Ideal::sum(const Ideal& other) const {
    auto gens = generators_;
    gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
    return Ideal(ring(), std::move(gens));
}

Ideal Ideal::with_order(MonomialOrder order) const {
    RingPtr r = klab::with_order(ring(), order);
    std::vector<Poly> gens;
    for (const auto& g : generators_) gens.push_back(g.in_ring(r));
    return Ideal(r, std::move(gens));
}

std::string Ideal::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i) s += ", ";
        s += generators_[i].to_string();
    }
    return s + ")";
}

bool ideal_equal(const Ideal& a, const Ideal& b) { return submodule_equal(a.as_submodule(), b.as_submodule()); }

Division normal_form(const PolyVector& f, const Submodule& m) {
    if (f.size() != m.rank()) throw InputError("normal_form: vector length does not match submodule rank");
    Division d;
    std::vector<Poly> q;
    gb::Vec r = gb::reduce(m.ring(), gb::to_vec(f), m.basis(), &q);
    d.remainder = gb::from_vec(r, m.ring(), m.rank());
    d.quotients = std::move(q);
    d.basis = m.reduced_basis();
    return d;
}

Membership ideal_membership(const Poly& f, const Ideal& ideal) {
    Membership out;
    Matrix gens = Matrix::from_columns(ideal.ring(), 1, as_vectors(ideal.generators()));
    auto c = LiftSolver(gens).solve({f});
    if (!c) return out;
    out.member = true;
    out.certificate = std::move(*c);
    return out;
}

Ideal ideal_quotient(const Ideal& ideal, const Poly& f) {
    const RingPtr& ring = ideal.ring();
    std::vector<gb::Vec> tops, bottoms;
    tops.push_back(gb::to_vec(f));
    bottoms.push_back(gb::to_vec(Poly::constant(ring, 1)));
    for (const auto& g : ideal.generators()) {
        tops.push_back(gb::to_vec(g));
        bottoms.emplace_back();
    }
    std::vector<Poly> gens;
    for (const auto& v : gb::eliminate_top(ring, 1, tops, bottoms)) gens.push_back(gb::component(v, ring, 0));
    return Ideal(ring, std::move(gens));
}

Ideal intersect(const std::vector<Ideal>& ideals) {
    if (ideals.empty()) throw InputError("intersection of an empty family");
    if (ideals.size() == 1) return ideals[0];
    const RingPtr& ring = ideals[0].ring();
    const std::size_t s = ideals.size();
    std::vector<gb::Vec> tops, bottoms;
    Poly one = Poly::constant(ring, 1);
    PolyVector ones(s, one);
    tops.push_back(gb::to_vec(ones));
    bottoms.push_back(gb::to_vec(one));
    for (std::size_t k = 0; k < s; ++k) {
        for (const auto& g : ideals[k].generators()) {
            tops.push_back(gb::to_vec(g, static_cast<std::uint32_t>(k)));
            bottoms.emplace_back();
        }
    }
    std::vector<Poly> gens;
    for (const auto& v : gb::eliminate_top(ring, s, tops, bottoms)) gens.push_back(gb::component(v, ring, 0));
    return Ideal(ring, std::move(gens));
}

bool radical_membership(const Poly& f, const Ideal& ideal) {
    RingPtr ext = with_extra_variable(ideal.ring(), "_t");
    std::vector<Poly> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(ext));
    Poly t = Poly::variable(ext, ext->nvars() - 1);
    gens.push_back(Poly::constant(ext, 1) - t * f.in_ring(ext));
    return Ideal(ext, std::move(gens)).is_unit();
}

std::size_t ideal_dimension(const Ideal& ideal) {
    if (ideal.is_unit()) throw PreconditionError("ideal_dimension: unit ideal");
    const std::size_t n = ideal.ring()->nvars();
    std::vector<std::uint32_t> supports;
    for (const auto& v : ideal.as_submodule().basis()) supports.push_back(v.front().mono.support);
    std::size_t best = 0;
    for (std::uint32_t set = 0; set < (1u << n); ++set) {
        auto size = static_cast<std::size_t>(__builtin_popcount(set));
        if (size <= best) continue;
        bool independent = std::none_of(supports.begin(), supports.end(),
                                        [&](std::uint32_t s) { return (s & ~set) == 0; });
        if (independent) best = size;
    }
    return best;
}

Grade grade(const Ideal& ideal) {
    if (ideal.is_unit()) return Grade{true, 0};
    return Grade{false, ideal.ring()->nvars() - ideal_dimension(ideal)};
}

Matrix syzygies(const Matrix& m) { return preimage(m, {}); }

Matrix preimage(const Matrix& m, const std::vector<PolyVector>& relations) {
    const RingPtr& ring = m.ring();
    std::vector<gb::Vec> tops, bottoms;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        tops.push_back(gb::to_vec(m.column(j)));
        bottoms.push_back(gb::to_vec(Poly::constant(ring, 1), static_cast<std::uint32_t>(j)));
    }
    for (const auto& r : relations) {
        if (r.size() != m.rows()) throw InputError("preimage: relation length does not match the target rank");
        tops.push_back(gb::to_vec(r));
        bottoms.emplace_back();
    }
    std::vector<PolyVector> cols;
    for (const auto& v : gb::eliminate_top(ring, m.rows(), tops, bottoms))
        cols.push_back(gb::from_vec(v, ring, m.cols()));
    return Matrix::from_columns(ring, m.cols(), cols);
}

LiftSolver::LiftSolver(const Matrix& columns, const std::vector<PolyVector>& relations)
    : ring_(columns.ring()), rows_(columns.rows()), cols_(columns.cols()) {
    std::vector<gb::Vec> gens;
    for (std::size_t j = 0; j < cols_; ++j) {
        gb::Vec g = gb::to_vec(columns.column(j));
        for (const auto& t : gb::to_vec(Poly::constant(ring_, 1), static_cast<std::uint32_t>(rows_ + j))) g.push_back(t);
        gens.push_back(std::move(g));
    }
    for (const auto& r : relations) {
        if (r.size() != rows_) throw InputError("relation length does not match target rank");
        gens.push_back(gb::to_vec(r));
    }
    basis_ = gb::groebner(ring_, std::move(gens), nullptr, static_cast<std::uint32_t>(rows_));
}

std::optional<PolyVector> LiftSolver::solve(const PolyVector& target) const {
    if (target.size() != rows_) throw InputError("lift target has the wrong length");
    gb::Vec r = gb::reduce(ring_, gb::to_vec(target), basis_, nullptr, static_cast<std::uint32_t>(rows_));
    if (!r.empty() && r.front().pos < rows_) return std::nullopt;
    // (target, 0) - (0, r) lies in the module, so target = columns * (-r).
    PolyVector c = gb::from_vec(r, ring_, cols_, static_cast<std::uint32_t>(rows_));
    for (auto& p : c) p = -p;
    return c;
}

}  // namespace klab
