#include "klab/poly.hpp"

#include <algorithm>

#include "klab/error.hpp"

namespace klab {

namespace {

// Merge a + sign*b for term lists sorted in decreasing order.
std::vector<Term> merge(const Ring& ring, const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    const Field& k = ring.field();
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = ring.compare(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, subtract ? k.neg(b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            Coeff s = subtract ? k.sub(a[i].coeff, b[j].coeff) : k.add(a[i].coeff, b[j].coeff);
            if (!k.is_zero(s)) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono, subtract ? k.neg(b[j].coeff) : b[j].coeff});
    return out;
}

}  // namespace

void Poly::check_same_ring(const Poly& o) const {
    if (ring_ != o.ring_ && *ring_ != *o.ring_) throw InputError("polynomials live in different rings");
}

Poly Poly::constant(RingPtr ring, Coeff c) {
    Poly p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
}

Poly Poly::constant(RingPtr ring, std::int64_t c) {
    Coeff k = ring->field().from_int(c);
    return constant(std::move(ring), std::move(k));
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw InputError("variable index out of range");
    Coeff one = ring->field().one();
    return monomial(std::move(ring), Monomial::variable(index), std::move(one));
}

Poly Poly::monomial(RingPtr ring, Monomial m, Coeff c) {
    Poly p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({m, std::move(c)});
    return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    const Ring& r = *ring;
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff = r.field().add(out.back().coeff, t.coeff);
        } else {
            if (!out.empty() && r.field().is_zero(out.back().coeff)) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && r.field().is_zero(out.back().coeff)) out.pop_back();
    return Poly(std::move(ring), std::move(out));
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && field().is_one(terms_[0].coeff); }

std::uint32_t Poly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree);
    return d;
}

Coeff Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return field().zero();
}

Poly Poly::operator-() const {
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, field().neg(t.coeff)});
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_ring(o);
    terms_ = merge(*ring_, terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_ring(o);
    terms_ = merge(*ring_, terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coeff);
    const Field& k = a.field();
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, k.mul(s.coeff, t.coeff)});
    return Poly::from_terms(a.ring_, std::move(prod));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(const Coeff& c) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, field().mul(t.coeff, c)});
    return r;
}

Poly Poly::times_term(const Monomial& m, const Coeff& c) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(ring_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Poly Poly::monic() const {
    if (is_zero() || field().is_one(leading().coeff)) return *this;
    return scaled(field().inv(leading().coeff));
}

Poly Poly::in_ring(const RingPtr& target) const {
    if (target == ring_ || *target == *ring_) return Poly(target, terms_);
    if (target->field() != field()) throw InputError("cannot move polynomial between different fields");
    std::vector<std::size_t> map(ring_->nvars());
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        auto j = target->var_index(ring_->vars()[i]);
        if (!j) {
            bool used = std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.exp[i] != 0; });
            if (used) throw InputError("variable '" + ring_->vars()[i] + "' missing from target ring");
            map[i] = kMaxVars;
        } else {
            map[i] = *j;
        }
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            if (!t.mono.exp[i]) continue;
            m.exp[map[i]] = t.mono.exp[i];
            m.support |= 1u << map[i];
        }
        m.degree = t.mono.degree;
        out.push_back({m, t.coeff});
    }
    return from_terms(target, std::move(out));
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    const Field& k = field();
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        bool neg = k.is_negative(t.coeff);
        Coeff mag = neg ? k.neg(t.coeff) : t.coeff;
        if (first) {
            if (neg) s += '-';
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        if (t.mono.is_one()) {
            s += k.to_string(mag);
        } else {
            if (!k.is_one(mag)) s += k.to_string(mag) + "*";
            s += ring_->monomial_to_string(t.mono);
        }
    }
    return s;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
}

bool is_unit(const Poly& a) { return !a.is_zero() && a.is_constant(); }

Poly poly_op(const Poly& a, const Poly& b, PolyOp op) {
    switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
    }
    return a;
}

bool divide_exact(const Poly& a, const Poly& b, Poly& q) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    const Field& k = a.field();
    const Term& lb = b.leading();
    Coeff inv_lb = k.inv(lb.coeff);
    std::vector<Term> quot;
    Poly r = a;
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        if (!divides(lb.mono, lr.mono)) return false;
        Monomial m = quotient(lr.mono, lb.mono);
        Coeff c = k.mul(lr.coeff, inv_lb);
        r -= b.times_term(m, c);
        quot.push_back({m, std::move(c)});
    }
    q = Poly::from_terms(a.ring(), std::move(quot));
    return true;
}

}  // namespace klab
