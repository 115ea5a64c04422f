#include "klab/field.hpp"

#include "klab/error.hpp"

namespace klab {

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

bool fits_small(std::int64_t v) { return v > -kSmallLimit && v < kSmallLimit; }

std::int64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31)) throw InputError("prime field characteristic must be below 2^31");
    if (!is_probable_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
    return Field(Kind::prime, p);
}

Coeff Field::make_big(mpq_class v) const {
    v.canonicalize();
    if (v.get_den() == 1 && v.get_num().fits_slong_p()) {
        long s = v.get_num().get_si();
        if (fits_small(s)) return Coeff(static_cast<std::int64_t>(s));
    }
    Coeff c;
    c.big_ = std::make_unique<mpq_class>(std::move(v));
    return c;
}

const mpq_class& Field::as_mpq(const Coeff& a, mpq_class& scratch) const {
    if (a.big_) return *a.big_;
    scratch = mpq_class(mpz_class(static_cast<long>(a.small_)));
    return scratch;
}

Coeff Field::from_int(std::int64_t v) const {
    if (kind_ == Kind::prime) {
        std::int64_t p = static_cast<std::int64_t>(p_);
        std::int64_t r = v % p;
        if (r < 0) r += p;
        return Coeff(r);
    }
    if (fits_small(v)) return Coeff(v);
    return make_big(mpq_class(mpz_class(static_cast<long>(v))));
}

Coeff Field::from_mpz(const mpz_class& v) const {
    if (kind_ == Kind::prime) {
        mpz_class r = v % static_cast<unsigned long>(p_);
        if (r < 0) r += static_cast<unsigned long>(p_);
        return Coeff(static_cast<std::int64_t>(r.get_ui()));
    }
    return make_big(mpq_class(v));
}

Coeff Field::from_rational(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw InputError("zero denominator");
    if (kind_ == Kind::prime) {
        Coeff d = from_mpz(den);
        if (is_zero(d)) throw InputError("denominator vanishes in GF(" + std::to_string(p_) + ")");
        return div(from_mpz(num), d);
    }
    return make_big(mpq_class(num, den));
}

bool Field::is_minus_one(const Coeff& a) const {
    if (a.big_) return false;
    if (kind_ == Kind::prime) return a.small_ == static_cast<std::int64_t>(p_) - 1;
    return a.small_ == -1;
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
    if (kind_ == Kind::prime) {
        std::int64_t s = a.small_ + b.small_;
        if (s >= static_cast<std::int64_t>(p_)) s -= static_cast<std::int64_t>(p_);
        return Coeff(s);
    }
    if (!a.big_ && !b.big_) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.small_, b.small_, &s) && fits_small(s)) return Coeff(s);
    }
    mpq_class sa, sb;
    return make_big(as_mpq(a, sa) + as_mpq(b, sb));
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
    if (kind_ == Kind::prime) {
        std::int64_t s = a.small_ - b.small_;
        if (s < 0) s += static_cast<std::int64_t>(p_);
        return Coeff(s);
    }
    if (!a.big_ && !b.big_) {
        std::int64_t s;
        if (!__builtin_sub_overflow(a.small_, b.small_, &s) && fits_small(s)) return Coeff(s);
    }
    mpq_class sa, sb;
    return make_big(as_mpq(a, sa) - as_mpq(b, sb));
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
    if (kind_ == Kind::prime) {
        auto prod = static_cast<std::uint64_t>(a.small_) * static_cast<std::uint64_t>(b.small_);
        return Coeff(static_cast<std::int64_t>(prod % p_));
    }
    if (!a.big_ && !b.big_) {
        std::int64_t s;
        if (!__builtin_mul_overflow(a.small_, b.small_, &s) && fits_small(s)) return Coeff(s);
    }
    mpq_class sa, sb;
    return make_big(as_mpq(a, sa) * as_mpq(b, sb));
}

Coeff Field::neg(const Coeff& a) const {
    if (kind_ == Kind::prime) return Coeff(a.small_ == 0 ? 0 : static_cast<std::int64_t>(p_) - a.small_);
    if (!a.big_) return Coeff(-a.small_);
    return make_big(-*a.big_);
}

Coeff Field::inv(const Coeff& a) const {
    if (is_zero(a)) throw Error("division by zero in " + describe());
    if (kind_ == Kind::prime) return Coeff(mod_pow(static_cast<std::uint64_t>(a.small_), p_ - 2, p_));
    if (!a.big_ && (a.small_ == 1 || a.small_ == -1)) return Coeff(a.small_);
    mpq_class s;
    mpq_class r = 1 / as_mpq(a, s);
    return make_big(std::move(r));
}

mpq_class Field::to_rational(const Coeff& a) const {
    if (kind_ == Kind::prime) {
        std::int64_t v = a.small_;
        if (v > static_cast<std::int64_t>(p_ / 2)) v -= static_cast<std::int64_t>(p_);
        return mpq_class(mpz_class(static_cast<long>(v)));
    }
    mpq_class s;
    return as_mpq(a, s);
}

bool Field::is_negative(const Coeff& a) const {
    if (kind_ == Kind::prime) return a.small_ > static_cast<std::int64_t>(p_ / 2);
    if (!a.big_) return a.small_ < 0;
    return sgn(*a.big_) < 0;
}

std::string Field::to_string(const Coeff& a) const {
    if (!a.big_ && kind_ == Kind::rationals) return std::to_string(a.small_);
    return to_rational(a).get_str();
}

std::string Field::describe() const {
    if (kind_ == Kind::rationals) return "Q";
    return "GF(" + std::to_string(p_) + ")";
}

}  // namespace klab
