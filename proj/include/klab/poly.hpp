#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "klab/field.hpp"
#include "klab/ring.hpp"

namespace klab {

struct Term {
    Monomial mono;
    Coeff coeff;
};

/// Sparse multivariate polynomial. Terms are kept sorted by strictly
/// decreasing monomial (ring order) with no zero coefficients.
class Poly {
public:
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly constant(RingPtr ring, Coeff c);
    static Poly constant(RingPtr ring, std::int64_t c);
    static Poly variable(RingPtr ring, std::size_t index);
    static Poly monomial(RingPtr ring, Monomial m, Coeff c);
    /// Arbitrary order, duplicates allowed; zeros dropped.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const noexcept { return ring_; }
    const Field& field() const noexcept { return ring_->field(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const;
    /// Caller guarantees !is_zero().
    const Term& leading() const { return terms_.front(); }
    std::uint32_t total_degree() const;
    /// Coefficient of the constant monomial.
    Coeff constant_term() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(const Coeff& c) const;
    Poly times_term(const Monomial& m, const Coeff& c) const;
    Poly pow(unsigned e) const;
    /// Leading coefficient made 1 (zero stays zero).
    Poly monic() const;

    /// Re-embed into another ring with the same field whose variables
    /// include every variable used here (matched by name).
    Poly in_ring(const RingPtr& target) const;

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    Poly(RingPtr ring, std::vector<Term> sorted) : ring_(std::move(ring)), terms_(std::move(sorted)) {}
    void check_same_ring(const Poly& o) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Units of a polynomial ring over a field: nonzero constants.
bool is_unit(const Poly& a);

enum class PolyOp { add, sub, mul };
Poly poly_op(const Poly& a, const Poly& b, PolyOp op);

/// Exact division a / b. Returns false (leaving q unspecified) if b does not divide a.
bool divide_exact(const Poly& a, const Poly& b, Poly& q);

/// Parses the polynomial grammar: integers, rationals n/d, variable names,
/// `+`, `-`, `*`, `^` (non-negative integer exponents) and parentheses.
Poly parse_poly(std::string_view text, const RingPtr& ring);

}  // namespace klab
