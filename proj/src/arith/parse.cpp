#include <cctype>
#include <string>

#include "klab/error.hpp"
#include "klab/poly.hpp"

namespace klab {

namespace {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' integer)?
// atom   := integer ('/' integer)? | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

    Poly parse() {
        skip_space();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        Poly p = expr();
        skip_space();
        if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Poly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = atom();
        if (accept('^')) {
            skip_space();
            std::size_t at = pos_;
            mpz_class e = integer();
            if (e <= 0) throw ParseError("exponent must be a positive integer", at);
            if (e > 65535) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    mpz_class integer() {
        skip_space();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected an integer", start);
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Poly atom() {
        skip_space();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = integer();
            mpz_class den = 1;
            std::size_t slash = pos_;
            if (accept('/')) {
                den = integer();
                if (den == 0) throw ParseError("zero denominator", slash);
            }
            try {
                return Poly::constant(ring_, ring_->field().from_rational(num, den));
            } catch (const ParseError&) {
                throw;
            } catch (const InputError& e) {
                throw ParseError(std::string("coefficient not representable: ") + e.what(), slash);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            auto idx = ring_->var_index(name);
            if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
            return Poly::variable(ring_, *idx);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return PolyParser(text, ring).parse(); }

}  // namespace klab
