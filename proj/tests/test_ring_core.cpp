#include <array>

#include <doctest.h>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"
#include "bowtie/ideal.hpp"
#include "bowtie/ring.hpp"
#include "oracles.hpp"

using namespace bowtie;

TEST_SUITE("ring-core") {
    TEST_CASE("Z2 is the two-element field") {
        auto z2 = make_zn(2);
        CHECK(z2->size() == 2);
        CHECK(z2->add(1, 1) == 0);
        CHECK(z2->mul(1, 1) == 1);
        CHECK(oracle::maximals(*z2).size() == 1);
        CHECK(oracle::maximals(*z2)[0] == oracle::Set{0});
    }

    TEST_CASE("Zn tables validate") {
        for (std::size_t n = 2; n <= 30; ++n) CHECK(validate_ring(make_zn(n)->tables()).ok());
        CHECK_THROWS_AS(make_zn(1), InputError);
    }

    TEST_CASE("Z2 x Z3 is isomorphic to Z6") {
        auto p = make_product(make_zn(2), make_zn(3));
        CHECK(p->size() == 6);
        CHECK(oracle::isomorphic(*p, *make_zn(6)));
        auto iso = find_isomorphism(p, make_zn(6));
        REQUIRE(iso);
        CHECK(oracle::is_isomorphism(*p, *make_zn(6), iso->map()));
    }

    TEST_CASE("Z2 x Z2 has two maximal ideals") {
        auto p = make_product(make_zn(2), make_zn(2));
        CHECK(p->size() == 4);
        CHECK(oracle::maximals(*p).size() == 2);
        CHECK_FALSE(oracle::isomorphic(*p, *make_zn(4)));
    }

    TEST_CASE("quotients") {
        auto z6 = make_zn(6);
        auto q3 = make_quotient(z6, principal_ideal(z6, 3));
        CHECK(q3.ring->size() == 3);
        CHECK(oracle::isomorphic(*q3.ring, *make_zn(3)));

        auto q0 = make_quotient(z6, IdealSet::zero(z6));
        CHECK(oracle::isomorphic(*q0.ring, *z6));
        CHECK(is_injective(q0.map));
        CHECK(is_surjective(q0.map));

        auto z4 = make_zn(4);
        auto f2 = make_quotient(z4, principal_ideal(z4, 2));
        CHECK(oracle::isomorphic(*f2.ring, *make_zn(2)));

        CHECK_THROWS_AS(make_quotient(z6, IdealSet::whole(z6)), PreconditionError);
    }

    TEST_CASE("trivial extension Z2 by Z2 has one prime") {
        auto z2 = make_zn(2);
        auto t = make_trivial_extension(z2, make_regular_module(z2));
        CHECK(t->size() == 4);
        auto ps = oracle::primes(*t);
        REQUIRE(ps.size() == 1);
        // (r, m) has index 2r + m, so {(0,0), (0,1)} is {0, 1}.
        CHECK(ps[0] == oracle::Set{0, 1});
        CHECK(oracle::isomorphic(*t, *make_trivial_extension(z2, make_regular_module(z2))));
    }

    TEST_CASE("corrupted Z6 fails the identity axiom") {
        auto t = make_zn(6)->tables();
        t.mul[1 * 6 + 1] = 2;
        auto rep = validate_ring(t);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.violation->axiom == "multiplicative identity");
        CHECK_FALSE(rep.violation->witness.empty());
        CHECK_THROWS_AS(FiniteRing::create(t), InputError);
    }

    TEST_CASE("non-commutative table is rejected with a witness pair") {
        // Upper triangular 2x2 matrices over F2, a 8-element ring; encode
        // [[a,b],[0,c]] as 4a + 2b + c.
        RingTables t;
        t.name = "UT2";
        t.size = 8;
        auto dec = [](Elem x) { return std::array<int, 3>{int(x >> 2 & 1), int(x >> 1 & 1), int(x & 1)}; };
        auto enc = [](int a, int b, int c) { return Elem((a & 1) << 2 | (b & 1) << 1 | (c & 1)); };
        t.add.resize(64);
        t.mul.resize(64);
        for (Elem x = 0; x < 8; ++x)
            for (Elem y = 0; y < 8; ++y) {
                auto [a, b, c] = dec(x);
                auto [d, e, f] = dec(y);
                t.add[x * 8 + y] = x ^ y;
                t.mul[x * 8 + y] = enc(a * d, a * e + b * f, c * f);
            }
        t.zero = 0;
        t.one = enc(1, 0, 1);
        auto rep = validate_ring(t);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.violation->axiom == "multiplicative commutativity");
        REQUIRE(rep.violation->witness.size() == 2);
        auto a = rep.violation->witness[0], b = rep.violation->witness[1];
        CHECK(t.mul[a * 8 + b] != t.mul[b * 8 + a]);
    }

    TEST_CASE("one equal to zero is rejected") {
        RingTables t;
        t.size = 1;
        t.add = {0};
        t.mul = {0};
        CHECK_FALSE(validate_ring(t).ok());
    }

    TEST_CASE("product and trivial extension validate") {
        for (std::size_t a : {2, 3, 4})
            for (std::size_t b : {2, 3, 4}) CHECK(validate_ring(make_product(make_zn(a), make_zn(b))->tables()).ok());
        for (std::size_t n = 2; n <= 6; ++n) {
            auto r = make_zn(n);
            CHECK(validate_ring(make_trivial_extension(r, make_regular_module(r))->tables()).ok());
        }
    }
}
