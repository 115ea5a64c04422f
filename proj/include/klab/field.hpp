#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace klab {

class Field;

/// A field element. Small integers (and every GF(p) residue) live inline;
/// general rationals spill to a heap-allocated GMP rational.
/// Only meaningful together with the Field that produced it.
class Coeff {
public:
    Coeff() = default;
    Coeff(const Coeff& other) : small_(other.small_) {
        if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
    }
    Coeff(Coeff&&) noexcept = default;
    Coeff& operator=(const Coeff& other) {
        if (this != &other) {
            small_ = other.small_;
            big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
        }
        return *this;
    }
    Coeff& operator=(Coeff&&) noexcept = default;

    friend bool operator==(const Coeff& a, const Coeff& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // normalized: a big value never equals a small one
    }

private:
    friend class Field;
    explicit Coeff(std::int64_t v) : small_(v) {}

    std::int64_t small_ = 0;
    std::unique_ptr<mpq_class> big_;
};

/// Coefficient field: the rationals or a prime field GF(p) with p < 2^31.
class Field {
public:
    enum class Kind { rationals, prime };

    static Field rationals() { return Field(Kind::rationals, 0); }
    static Field prime(std::uint64_t p);

    Kind kind() const noexcept { return kind_; }
    bool is_prime_field() const noexcept { return kind_ == Kind::prime; }
    std::uint64_t characteristic() const noexcept { return p_; }

    Coeff zero() const { return Coeff(0); }
    Coeff one() const { return Coeff(1); }
    Coeff from_int(std::int64_t v) const;
    Coeff from_mpz(const mpz_class& v) const;
    /// Throws InputError if the denominator vanishes in the field.
    Coeff from_rational(const mpz_class& num, const mpz_class& den) const;

    bool is_zero(const Coeff& a) const noexcept { return !a.big_ && a.small_ == 0; }
    bool is_one(const Coeff& a) const noexcept { return !a.big_ && a.small_ == 1; }
    bool is_minus_one(const Coeff& a) const;

    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff sub(const Coeff& a, const Coeff& b) const;
    Coeff mul(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff inv(const Coeff& a) const;  // throws on zero
    Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

    /// Exact rational value; GF(p) residues map to the symmetric representative.
    mpq_class to_rational(const Coeff& a) const;
    /// Canonical text: integers as "n", rationals as "n/d"; GF(p) residues
    /// printed in the symmetric range (-p/2, p/2].
    std::string to_string(const Coeff& a) const;
    bool is_negative(const Coeff& a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

    std::string describe() const;

private:
    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}

    Coeff make_big(mpq_class v) const;
    const mpq_class& as_mpq(const Coeff& a, mpq_class& scratch) const;

    Kind kind_;
    std::uint64_t p_;
};

bool is_probable_prime(std::uint64_t n);

}  // namespace klab
