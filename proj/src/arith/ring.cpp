#include "klab/ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "klab/error.hpp"

namespace klab {

namespace {

std::uint16_t checked_exp(std::uint32_t e) {
    if (e > std::numeric_limits<std::uint16_t>::max()) throw CapExceeded("monomial exponent exceeds 65535");
    return static_cast<std::uint16_t>(e);
}

bool valid_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = checked_exp(std::uint32_t{a.exp[i]} + b.exp[i]);
    r.degree = a.degree + b.degree;
    r.support = a.support | b.support;
    return r;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
        if (r.exp[i]) r.support |= 1u << i;
    }
    r.degree = a.degree - b.degree;
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.exp[i] = std::max(a.exp[i], b.exp[i]);
        r.degree += r.exp[i];
    }
    r.support = a.support | b.support;
    return r;
}

std::string to_string(MonomialOrder o) {
    switch (o) {
    case MonomialOrder::grevlex: return "grevlex";
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::grlex: return "grlex";
    }
    return "?";
}

MonomialOrder parse_order(std::string_view name) {
    if (name == "grevlex") return MonomialOrder::grevlex;
    if (name == "lex") return MonomialOrder::lex;
    if (name == "grlex") return MonomialOrder::grlex;
    throw InputError("unknown monomial order '" + std::string(name) + "'");
}

Ring::Ring(Field field, std::vector<std::string> vars, MonomialOrder order)
    : field_(field), vars_(std::move(vars)), order_(order) {
    if (vars_.size() > kMaxVars) throw InputError("too many variables");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (!valid_identifier(v)) throw InputError("invalid variable name '" + v + "'");
        if (!seen.insert(v).second) throw InputError("duplicate variable name '" + v + "'");
    }
}

std::optional<std::size_t> Ring::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

std::string Ring::monomial_to_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!m.exp[i]) continue;
        if (!s.empty()) s += '*';
        s += vars_[i];
        if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
    }
    return s.empty() ? "1" : s;
}

RingPtr make_ring(Field field, std::vector<std::string> vars, MonomialOrder order) {
    if (vars.size() > kMaxVars - 1)
        throw InputError("at most " + std::to_string(kMaxVars - 1) + " variables are supported");
    return std::make_shared<const Ring>(field, std::move(vars), order);
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
    if (ring->order() == order) return ring;
    return std::make_shared<const Ring>(ring->field(), ring->vars(), order);
}

RingPtr with_extra_variable(const RingPtr& ring, std::string name) {
    if (ring->nvars() + 1 > kMaxVars)
        throw CapExceeded("no room for an auxiliary variable (ring already has " + std::to_string(ring->nvars()) +
                          " variables)");
    while (ring->var_index(name)) name += '_';
    auto vars = ring->vars();
    vars.push_back(std::move(name));
    return std::make_shared<const Ring>(ring->field(), std::move(vars), ring->order());
}

}  // namespace klab
