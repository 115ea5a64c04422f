#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klab/field.hpp"

namespace klab {

/// Exponent vectors are stored inline; rings may have at most this many
/// variables (one slot is kept free for auxiliary variables such as the
/// Rabinowitsch variable).
inline constexpr std::size_t kMaxVars = 16;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t degree = 0;
    std::uint32_t support = 0;  // bit i set iff exp[i] > 0

    static Monomial variable(std::size_t i, std::uint16_t e = 1) {
        Monomial m;
        m.exp[i] = e;
        m.degree = e;
        m.support = e ? (1u << i) : 0u;
        return m;
    }

    bool is_one() const noexcept { return degree == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.degree == b.degree && a.support == b.support && a.exp == b.exp;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) noexcept { return !(a == b); }
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; caller guarantees divides(b, a).
Monomial quotient(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

inline bool divides(const Monomial& d, const Monomial& m) noexcept {
    if (d.degree > m.degree || (d.support & ~m.support)) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (d.exp[i] > m.exp[i]) return false;
    return true;
}

inline bool coprime(const Monomial& a, const Monomial& b) noexcept { return (a.support & b.support) == 0; }

enum class MonomialOrder { grevlex, lex, grlex };

std::string to_string(MonomialOrder o);
/// Accepts "grevlex", "lex", "grlex".
MonomialOrder parse_order(std::string_view name);

/// Polynomial ring k[x_1..x_n] with a fixed monomial order.
class Ring {
public:
    Ring(Field field, std::vector<std::string> vars, MonomialOrder order);

    const Field& field() const noexcept { return field_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_.size(); }
    MonomialOrder order() const noexcept { return order_; }

    std::optional<std::size_t> var_index(std::string_view name) const;

    /// Three-way comparison under the ring's monomial order.
    int compare(const Monomial& a, const Monomial& b) const noexcept {
        switch (order_) {
        case MonomialOrder::grevlex:
            if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
            for (std::size_t i = vars_.size(); i-- > 0;)
                if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
            return 0;
        case MonomialOrder::grlex:
            if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
            [[fallthrough]];
        case MonomialOrder::lex:
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
            return 0;
        }
        return 0;
    }

    std::string monomial_to_string(const Monomial& m) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.field_ == b.field_ && a.vars_ == b.vars_ && a.order_ == b.order_;
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

private:
    Field field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field field, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex);
RingPtr with_order(const RingPtr& ring, MonomialOrder order);
/// Same field and order, one extra variable appended (named `name`, made unique).
RingPtr with_extra_variable(const RingPtr& ring, std::string name);

}  // namespace klab
