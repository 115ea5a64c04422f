#include <doctest.h>

#include "cubes.hpp"
#include "gen.hpp"
#include "klab/error.hpp"
#include "klab/koszul.hpp"

using namespace klab;

namespace {

RingPtr qxyz() { return make_ring(Field::rationals(), {"x", "y", "z"}); }
Poly P(const RingPtr& r, const char* s) { return parse_poly(s, r); }

std::vector<Poly> seq(const RingPtr& r, std::initializer_list<const char*> ss) {
    std::vector<Poly> out;
    for (auto s : ss) out.push_back(P(r, s));
    return out;
}

const Strategy kAll[] = {Strategy::definition, Strategy::spherical_faces, Strategy::inductive};

}  // namespace

TEST_CASE("subset keys") {
    RingPtr r = qxyz();
    Cube x = typical_cube(r, seq(r, {"x", "y", "z"}), {"a", "b", "c"});
    CHECK(x.key(0) == "");
    CHECK(x.key(0b101) == "a,c");
    CHECK(x.parse_key("a,c") == 0b101);
    CHECK(x.parse_key("") == 0);
    CHECK_THROWS_AS(x.parse_key("a,d"), InputError);
    CHECK_THROWS_AS(x.parse_key("a,a"), InputError);
    CHECK_THROWS_AS(typical_cube(r, seq(r, {"x", "y"}), {"a", "a"}), InputError);
}

TEST_CASE("validate_cube") {
    RingPtr r = qxyz();
    CHECK(validate_cube(typical_cube(r, seq(r, {"x", "y"}))).passed);
    Report bad = validate_cube(fixtures::square(r, "x", "x", "y", "y + 1"));
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.findings.size() == 1);
    CHECK(bad.findings[0].find("{1,2}") != std::string::npos);
    CHECK(validate_cube(typical_cube(r, {})).passed);
    // shape mismatch is rejected at construction
    Cube x = Cube::free(r, {"1"}, {1, 2});
    CHECK_THROWS_AS(x.set_boundary(1, 0, Matrix(r, 2, 2)), InputError);
}

TEST_CASE("restrict and faces") {
    RingPtr r = qxyz();
    Cube t = typical_cube(r, seq(r, {"x", "y"}));
    Cube same = restrict(t, t.full(), 0);
    CHECK(same.labels() == t.labels());
    for (Mask m = 0; m <= t.full(); ++m) CHECK(same.rank(m) == t.rank(m));
    Cube one = restrict(t, 0b01, 0b10);
    CHECK(one.size() == 1);
    CHECK(one.labels()[0] == "1");
    CHECK(one.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "x")));
    Cube back = backside_face(t, 0), front = frontside_face(t, 0);
    CHECK(back.labels()[0] == "2");
    CHECK(back.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "y")));
    CHECK(front.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "y")));
    CHECK_THROWS_AS(restrict(t, 0b01, 0b01), InputError);
    CHECK_THROWS_AS(restrict(t, 0b100, 0), InputError);
}

TEST_CASE("degenerate directions") {
    RingPtr r = qxyz();
    CHECK(degenerate_directions(typical_cube(r, seq(r, {"x", "y"}))) == 0);
    Cube pad = typical_cube(r, seq(r, {"x", "1"}));
    CHECK(degenerate_directions(pad) == 0b10);
    CHECK(degenerate_directions(pad, true) == 0b10);
    Cube part = nondegenerate_part(pad);
    CHECK(part.size() == 1);
    CHECK(part.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "x")));
    RandomKoszulOptions opt;
    opt.summands = 2;
    Cube sum = random_koszul(r, seq(r, {"x", "y"}), opt);
    CHECK(degenerate_directions(sum) == 0);
    CHECK_THROWS_AS(degenerate_directions(directional_homology(sum, 0, 0), true), PreconditionError);
}

TEST_CASE("total complex signs") {
    RingPtr r = qxyz();
    Complex tot = total_complex(typical_cube(r, seq(r, {"x", "y"})));
    Matrix d1(r, 1, 2), d2(r, 2, 1);
    d1(0, 0) = P(r, "x");
    d1(0, 1) = P(r, "y");
    d2(0, 0) = P(r, "y");
    d2(1, 0) = P(r, "-x");
    CHECK(tot.differential(1) == d1);
    CHECK(tot.differential(2) == d2);
    Complex one = total_complex(fixtures::arrow(Matrix::scalar(r, 1, P(r, "x^2"))));
    CHECK(one.length() == 1);
    CHECK(one.differential(1) == Matrix::scalar(r, 1, P(r, "x^2")));
    // reversed ordering swaps the components and moves the sign
    Complex rev = total_complex(typical_cube(r, seq(r, {"x", "y"})), {1, 0});
    CHECK(rev.differential(1)(0, 0) == P(r, "y"));
    CHECK(rev.differential(2)(0, 0) == P(r, "x"));
    CHECK(rev.differential(2)(1, 0) == P(r, "-y"));
    CHECK_THROWS_AS(total_complex(typical_cube(r, seq(r, {"x", "y"})), {0, 0}), InputError);
    CHECK_THROWS_AS(total_complex(fixtures::square(r, "x", "x", "y", "y + 1")), InputError);
}

TEST_CASE("directional homology") {
    RingPtr r = qxyz();
    Cube t = typical_cube(r, seq(r, {"x", "y"}));
    Cube h = directional_homology(t, 0, 0);
    CHECK(h.labels() == std::vector<std::string>{"2"});
    CHECK(submodule_equal(h.vertex(0).relations, Ideal(r, {P(r, "x")}).as_submodule()));
    CHECK(submodule_equal(h.vertex(1).relations, Ideal(r, {P(r, "x")}).as_submodule()));
    CHECK(h.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "y")));

    RandomKoszulOptions opt;
    opt.summands = 2;
    opt.basechange_steps = 2;
    opt.seed = 7;
    Cube k = random_koszul(r, seq(r, {"x", "y"}), opt);
    for (std::size_t dir = 0; dir < 2; ++dir) {
        Cube h1 = directional_homology(k, dir, 1);
        for (Mask m = 0; m <= h1.full(); ++m) CHECK(is_zero_module(h1.vertex(m)));
    }

    Cube sq = directional_homology(fixtures::both_x(r), 1, 0);
    for (Mask m = 0; m <= 1; ++m) CHECK(submodule_equal(sq.vertex(m).relations, Ideal(r, {P(r, "x")}).as_submodule()));
    CHECK(sq.vertex(0).relations.contains(sq.boundary(1, 0).column(0)));
    // H_1 of that square in direction 2 vanishes, but not after H_0 in direction 1
    Cube inner = directional_homology(sq, 0, 1);
    CHECK_FALSE(is_zero_module(inner.vertex(0)));
}

TEST_CASE("iterated H0") {
    RingPtr r = qxyz();
    Cube t2 = typical_cube(r, seq(r, {"x", "y"}));
    IteratedH0 both = iterated_h0(t2, {{0, 1}, {1, 0}});
    CHECK(both.order_independent);
    CHECK(submodule_equal(both.cube.vertex(0).relations, Ideal(r, seq(r, {"x", "y"})).as_submodule()));

    Cube t3 = typical_cube(r, seq(r, {"x", "y", "z"}));
    IteratedH0 two = iterated_h0(t3, {{0, 1}, {1, 0}});
    CHECK(two.order_independent);
    REQUIRE(two.cube.size() == 1);
    CHECK(two.cube.labels()[0] == "3");
    for (Mask m = 0; m <= 1; ++m)
        CHECK(submodule_equal(two.cube.vertex(m).relations, Ideal(r, seq(r, {"x", "y"})).as_submodule()));
    CHECK(two.cube.boundary(1, 0) == Matrix::scalar(r, 1, P(r, "z")));

    IteratedH0 none = iterated_h0(t3, {{}});
    CHECK(none.cube.size() == 3);
    CHECK_THROWS_AS(iterated_h0(fixtures::both_x(r), {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(iterated_h0(t3, {{0, 1}, {0, 2}}), InputError);
}

TEST_CASE("admissibility examples") {
    RingPtr r = qxyz();
    Cube t = typical_cube(r, seq(r, {"x", "y"}));
    for (Strategy s : kAll) CHECK(is_admissible(t, s).passed);
    Cube zero = fixtures::arrow(Matrix::scalar(r, 1, Poly(r)));
    for (Strategy s : kAll) CHECK_FALSE(is_admissible(zero, s).passed);
    Cube sq = fixtures::both_x(r);
    for (Strategy s : kAll) {
        Report rep = is_admissible(sq, s);
        CHECK_FALSE(rep.passed);
        CHECK_FALSE(rep.findings.empty());
    }
    CHECK(is_admissible(sq, Strategy::spherical_faces).findings[0] == "H1(Tot x) is nonzero");
    CHECK(is_admissible(typical_cube(r, {}), Strategy::definition).passed);
    CHECK_THROWS_AS(is_admissible(directional_homology(t, 0, 0), Strategy::spherical_faces), PreconditionError);
    CHECK(is_admissible(directional_homology(t, 0, 0), Strategy::definition).passed);
}

TEST_CASE("restriction commutes with directional homology") {
    RingPtr r = make_ring(Field::prime(32003), {"x", "y", "z"});
    RandomKoszulOptions opt;
    opt.summands = 2;
    opt.basechange_steps = 1;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        opt.seed = seed;
        Cube x = random_koszul(r, seq(r, {"x", "y", "z"}), opt);
        // U = {1,2}, V = {3}, u = 1
        for (int p = 0; p <= 1; ++p) {
            Cube lhs = directional_homology(restrict(x, 0b011, 0b100), 0, p);
            Cube hx = directional_homology(x, 0, p);
            Cube rhs = restrict(hx, 0b01, 0b10);
            REQUIRE(lhs.size() == rhs.size());
            for (Mask m = 0; m <= lhs.full(); ++m) {
                REQUIRE(lhs.rank(m) == rhs.rank(m));
                CHECK(submodule_equal(lhs.vertex(m).relations, rhs.vertex(m).relations));
            }
            CHECK(lhs.boundary(1, 0) == rhs.boundary(1, 0));
        }
    }
}

TEST_CASE("faces of admissible cubes are admissible") {
    RingPtr r = make_ring(Field::prime(32003), {"x", "y", "z"});
    RandomKoszulOptions opt;
    opt.summands = 2;
    opt.basechange_steps = 2;
    for (std::uint64_t seed = 10; seed < 14; ++seed) {
        opt.seed = seed;
        Cube x = random_koszul(r, seq(r, {"x", "y", "z"}), opt);
        REQUIRE(is_admissible(x, Strategy::definition).passed);
        for (Mask u = 0; u <= x.full(); ++u)
            for (Mask v = 0; v <= x.full(); ++v)
                if (!(u & v)) CHECK(is_admissible(restrict(x, u, v), Strategy::inductive).passed);
    }
}

TEST_CASE("identity padding keeps admissibility") {
    RingPtr r = make_ring(Field::prime(32003), {"x", "y", "z"});
    RandomKoszulOptions opt;
    opt.summands = 2;
    opt.basechange_steps = 2;
    opt.min_exp = 0;
    opt.max_exp = 2;
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        opt.seed = seed;
        Cube x = random_koszul(r, seq(r, {"x", "y", "1"}), opt);
        Mask deg = degenerate_directions(x);
        CHECK(has(deg, 2));
        REQUIRE(is_admissible(restrict(x, x.full() & ~deg, 0), Strategy::definition).passed);
        for (Strategy s : kAll) CHECK(is_admissible(x, s).passed);
    }
}

TEST_CASE("Tot verdicts do not depend on the ordering") {
    RingPtr r = make_ring(Field::prime(32003), {"x", "y", "z"});
    RandomKoszulOptions opt;
    opt.summands = 2;
    opt.basechange_steps = 1;
    gen::Rng rng(0x5eed31);
    for (std::uint64_t seed = 30; seed < 34; ++seed) {
        opt.seed = seed;
        Cube x = random_koszul(r, seq(r, {"x", "y", "z"}), opt);
        Complex base = total_complex(x);
        CubeOrdering alpha{0, 1, 2};
        for (int i = 0; i < 3; ++i) std::swap(alpha[static_cast<std::size_t>(rng.range(0, 2))], alpha[static_cast<std::size_t>(rng.range(0, 2))]);
        Complex other = total_complex(x, alpha);
        CHECK(zero_spherical(base) == zero_spherical(other));
        CHECK(submodule_equal(homology(base, 0).relations, homology(other, 0).relations));
    }
    Cube sq = fixtures::both_x(r);
    CHECK(zero_spherical(total_complex(sq)) == zero_spherical(total_complex(sq, {1, 0})));
}
