#include <algorithm>
#include <tuple>

#include "klab/error.hpp"
#include "klab/groebner.hpp"

namespace klab::gb {

Vec to_vec(const PolyVector& v, std::uint32_t offset) {
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& t : v[i].terms()) out.push_back({t.mono, static_cast<std::uint32_t>(offset + i), t.coeff});
    return out;
}

Vec to_vec(const Poly& p, std::uint32_t pos) {
    Vec out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({t.mono, pos, t.coeff});
    return out;
}

PolyVector from_vec(const Vec& v, const RingPtr& ring, std::size_t rank, std::uint32_t offset) {
    std::vector<std::vector<Term>> comps(rank);
    for (const auto& t : v) {
        if (t.pos < offset || t.pos - offset >= rank) throw Error("module element has a component out of range");
        comps[t.pos - offset].push_back({t.mono, t.coeff});
    }
    PolyVector out;
    out.reserve(rank);
    for (auto& c : comps) out.push_back(Poly::from_terms(ring, std::move(c)));
    return out;
}

Poly component(const Vec& v, const RingPtr& ring, std::uint32_t pos) {
    std::vector<Term> c;
    for (const auto& t : v)
        if (t.pos == pos) c.push_back({t.mono, t.coeff});
    return Poly::from_terms(ring, std::move(c));
}

void sort_terms(Vec& v, const ModuleOrder& order) {
    std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return order(a, b) > 0; });
}

namespace {

// (f[from..]) - c * m * g, both strictly decreasing in `order`.
Vec sub_mul_from(const ModuleOrder& order, const Vec& f, std::size_t from, const Coeff& c, const Monomial& m,
                 const Vec& g) {
    const Field& k = order.ring->field();
    Vec out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    VTerm scaled;
    bool have = false;
    auto load = [&] {
        if (j < g.size()) {
            scaled.mono = g[j].mono * m;
            scaled.pos = g[j].pos;
            scaled.coeff = k.neg(k.mul(g[j].coeff, c));
            have = true;
        } else {
            have = false;
        }
    };
    load();
    while (i < f.size() && have) {
        int cmp = order(f[i], scaled);
        if (cmp > 0) {
            out.push_back(f[i++]);
        } else if (cmp < 0) {
            out.push_back(std::move(scaled));
            ++j;
            load();
        } else {
            Coeff s = k.add(f[i].coeff, scaled.coeff);
            if (!k.is_zero(s)) out.push_back({f[i].mono, f[i].pos, std::move(s)});
            ++i;
            ++j;
            load();
        }
    }
    for (; i < f.size(); ++i) out.push_back(f[i]);
    while (have) {
        out.push_back(std::move(scaled));
        ++j;
        load();
    }
    return out;
}

struct LeadIndex {
    // For each position, the basis indices with that leading position.
    std::vector<std::vector<std::size_t>> by_pos;

    explicit LeadIndex(const std::vector<Vec>& basis) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].empty()) continue;
            std::uint32_t p = basis[i].front().pos;
            if (by_pos.size() <= p) by_pos.resize(p + 1);
            by_pos[p].push_back(i);
        }
    }

    std::optional<std::size_t> find(const std::vector<Vec>& basis, const VTerm& t) const {
        if (t.pos >= by_pos.size()) return std::nullopt;
        for (std::size_t idx : by_pos[t.pos])
            if (divides(basis[idx].front().mono, t.mono)) return idx;
        return std::nullopt;
    }
};

}  // namespace

Vec sub_mul(const ModuleOrder& order, const Vec& f, const Coeff& c, const Monomial& m, const Vec& g) {
    return sub_mul_from(order, f, 0, c, m, g);
}

Vec make_monic(const Ring& ring, Vec v) {
    if (v.empty() || ring.field().is_one(v.front().coeff)) return v;
    Coeff inv = ring.field().inv(v.front().coeff);
    for (auto& t : v) t.coeff = ring.field().mul(t.coeff, inv);
    return v;
}

namespace {

// Full reduction of f (sorted in `order`) by a basis sorted in the same order.
Vec reduce_sorted(const ModuleOrder& order, Vec rest, const std::vector<Vec>& basis, const LeadIndex& index,
                  std::vector<std::vector<Term>>* qterms) {
    const Field& k = order.ring->field();
    std::size_t head = 0;
    Vec rem;
    while (head < rest.size()) {
        const VTerm& t = rest[head];
        auto idx = index.find(basis, t);
        if (!idx) {
            rem.push_back(rest[head++]);
            continue;
        }
        const VTerm& lead = basis[*idx].front();
        Monomial m = quotient(t.mono, lead.mono);
        Coeff c = k.div(t.coeff, lead.coeff);
        if (qterms) (*qterms)[*idx].push_back({m, c});
        rest = sub_mul_from(order, rest, head, c, m, basis[*idx]);
        head = 0;
    }
    return rem;
}

}  // namespace

Vec reduce(const RingPtr& ring, const Vec& f, const std::vector<Vec>& basis, std::vector<Poly>* quotients,
           std::uint32_t block) {
    const ModuleOrder order{ring.get(), block};
    std::vector<Vec> sorted = basis;
    for (auto& b : sorted) sort_terms(b, order);
    Vec rest = f;
    sort_terms(rest, order);
    std::vector<std::vector<Term>> qterms(quotients ? basis.size() : 0);
    Vec rem = reduce_sorted(order, std::move(rest), sorted, LeadIndex(sorted), quotients ? &qterms : nullptr);
    if (quotients) {
        quotients->clear();
        for (auto& q : qterms) quotients->push_back(Poly::from_terms(ring, std::move(q)));
    }
    return rem;
}

namespace {

std::uint32_t max_degree(const Vec& v) {
    std::uint32_t d = 0;
    for (const auto& t : v) d = std::max(d, t.mono.degree);
    return d;
}

// Reduces the leading term until it is irreducible; the tail is left alone.
Vec top_reduce(const ModuleOrder& order, Vec f, const std::vector<Vec>& basis, const LeadIndex& index) {
    const Field& k = order.ring->field();
    while (!f.empty()) {
        auto idx = index.find(basis, f.front());
        if (!idx) break;
        const VTerm& lead = basis[*idx].front();
        f = sub_mul_from(order, f, 0, k.div(f.front().coeff, lead.coeff), quotient(f.front().mono, lead.mono), basis[*idx]);
    }
    return f;
}

class Buchberger {
public:
    Buchberger(const RingPtr& ring, Stats* stats, std::uint32_t block)
        : ring_(*ring), order_{ring.get(), block}, stats_(stats) {}

    std::vector<Vec> run(std::vector<Vec> gens) {
        ideal_ = std::all_of(gens.begin(), gens.end(),
                             [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](const VTerm& t) { return t.pos == 0; }); });
        for (auto& g : gens) {
            Vec r = reduce_sorted(order_, std::move(g), current_basis(), index_, nullptr);
            if (r.empty()) continue;
            const std::uint32_t sugar = max_degree(r);
            insert(make_monic(ring_, std::move(r)), sugar);
        }
        while (auto p = select_pair()) {
            const Pair pr = pairs_[*p];
            Vec s = spoly(pr);
            pairs_[*p].live = false;
            Vec r = top_reduce(order_, std::move(s), current_basis(), index_);
            if (stats_) {
                ++stats_->pairs_reduced;
                if (r.empty()) ++stats_->zero_reductions;
            }
            if (!r.empty()) insert(make_monic(ring_, std::move(r)), pr.sugar);
        }
        return finish();
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint32_t pos;
        std::uint32_t sugar;
        bool live;
    };

    const VTerm& lead(std::size_t i) const { return polys_[i].front(); }

    const std::vector<Vec>& current_basis() const { return basis_cache_; }

    void refresh_basis() {
        basis_cache_.clear();
        for (std::size_t i = 0; i < polys_.size(); ++i)
            if (in_basis_[i]) basis_cache_.push_back(polys_[i]);
        index_ = LeadIndex(basis_cache_);
    }

    Vec spoly(const Pair& p) const {
        const VTerm& a = lead(p.i);
        const VTerm& b = lead(p.j);
        Monomial ma = quotient(p.lcm, a.mono);
        Monomial mb = quotient(p.lcm, b.mono);
        Vec left;
        left.reserve(polys_[p.i].size());
        for (const auto& t : polys_[p.i]) left.push_back({t.mono * ma, t.pos, t.coeff});
        // both monic: leading terms cancel
        return sub_mul(order_, left, ring_.field().one(), mb, polys_[p.j]);
    }

    std::optional<std::size_t> select_pair() const {
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            const Pair& p = pairs_[k];
            if (!p.live) continue;
            if (!best) {
                best = k;
                continue;
            }
            const Pair& q = pairs_[*best];
            if (p.sugar != q.sugar) {
                if (p.sugar < q.sugar) best = k;
                continue;
            }
            int c = order_(VTerm{p.lcm, p.pos, {}}, VTerm{q.lcm, q.pos, {}});
            if (c < 0 || (c == 0 && std::tie(p.i, p.j) < std::tie(q.i, q.j))) best = k;
        }
        return best;
    }

    // Gebauer-Moeller installation of a new basis element.
    void insert(Vec h, std::uint32_t sugar) {
        const std::size_t hi = polys_.size();
        polys_.push_back(std::move(h));
        sugar_.push_back(sugar);
        in_basis_.push_back(false);
        const VTerm& lh = lead(hi);

        std::vector<std::size_t> cands;
        std::vector<Monomial> lcms;
        for (std::size_t k = 0; k < hi; ++k) {
            if (!in_basis_[k] || lead(k).pos != lh.pos) continue;
            cands.push_back(k);
            lcms.push_back(lcm(lh.mono, lead(k).mono));
        }
        std::vector<std::size_t> kept;  // indices into cands
        for (std::size_t a = 0; a < cands.size(); ++a) {
            bool keep = ideal_ && coprime(lh.mono, lead(cands[a]).mono);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
                    if (divides(lcms[b], lcms[a])) keep = false;
                for (std::size_t b : kept)
                    if (keep && divides(lcms[b], lcms[a])) keep = false;
            }
            if (keep) kept.push_back(a);
        }

        for (auto& p : pairs_) {
            if (!p.live || p.pos != lh.pos || !divides(lh.mono, p.lcm)) continue;
            if (lcm(lead(p.i).mono, lh.mono) != p.lcm && lcm(lead(p.j).mono, lh.mono) != p.lcm) p.live = false;
        }
        pairs_.erase(std::remove_if(pairs_.begin(), pairs_.end(), [](const Pair& p) { return !p.live; }), pairs_.end());

        for (std::size_t a : kept) {
            if (ideal_ && coprime(lh.mono, lead(cands[a]).mono)) continue;
            std::uint32_t sa = sugar_[cands[a]] + lcms[a].degree - lead(cands[a]).mono.degree;
            std::uint32_t sb = sugar_[hi] + lcms[a].degree - lh.mono.degree;
            pairs_.push_back({cands[a], hi, lcms[a], lh.pos, std::max(sa, sb), true});
        }

        for (std::size_t k = 0; k < hi; ++k)
            if (in_basis_[k] && lead(k).pos == lh.pos && divides(lh.mono, lead(k).mono)) in_basis_[k] = false;
        in_basis_[hi] = true;
        refresh_basis();
    }

    std::vector<Vec> finish() {
        const std::vector<Vec>& basis = current_basis();
        std::vector<Vec> reduced;
        reduced.reserve(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<Vec> others;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(basis[j]);
            Vec tail(basis[i].begin() + 1, basis[i].end());
            Vec r = reduce_sorted(order_, std::move(tail), others, LeadIndex(others), nullptr);
            Vec full;
            full.reserve(r.size() + 1);
            full.push_back(basis[i].front());
            for (auto& t : r) full.push_back(std::move(t));
            reduced.push_back(std::move(full));
        }
        std::sort(reduced.begin(), reduced.end(),
                  [&](const Vec& a, const Vec& b) { return order_(a.front(), b.front()) < 0; });
        return reduced;
    }

    const Ring& ring_;
    const ModuleOrder order_;
    Stats* stats_;
    bool ideal_ = true;
    std::vector<Vec> polys_;
    std::vector<bool> in_basis_;
    std::vector<Pair> pairs_;
    std::vector<Vec> basis_cache_;
    std::vector<std::uint32_t> sugar_;
    LeadIndex index_{basis_cache_};
};

}  // namespace

std::vector<Vec> groebner(const RingPtr& ring, std::vector<Vec> gens, Stats* stats, std::uint32_t block) {
    const ModuleOrder order{ring.get(), block};
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Vec& v) { return v.empty(); }), gens.end());
    for (auto& g : gens) sort_terms(g, order);
    // Process small leading terms first; the result does not depend on this.
    std::stable_sort(gens.begin(), gens.end(),
                     [&](const Vec& a, const Vec& b) { return order(a.front(), b.front()) < 0; });
    return Buchberger(ring, stats, block).run(std::move(gens));
}

std::vector<Vec> eliminate_top(const RingPtr& ring, std::size_t top_rank, const std::vector<Vec>& tops,
                               const std::vector<Vec>& bottoms) {
    if (tops.size() != bottoms.size()) throw Error("eliminate_top: mismatched generator lists");
    std::vector<Vec> gens;
    gens.reserve(tops.size());
    for (std::size_t i = 0; i < tops.size(); ++i) {
        Vec g = tops[i];
        for (const auto& t : bottoms[i]) g.push_back({t.mono, static_cast<std::uint32_t>(t.pos + top_rank), t.coeff});
        gens.push_back(std::move(g));
    }
    std::vector<Vec> out;
    for (auto& v : groebner(ring, std::move(gens), nullptr, static_cast<std::uint32_t>(top_rank))) {
        if (v.front().pos < top_rank) continue;
        for (auto& t : v) t.pos -= static_cast<std::uint32_t>(top_rank);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace klab::gb
