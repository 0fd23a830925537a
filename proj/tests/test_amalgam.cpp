#include <algorithm>
#include <set>

#include <doctest.h>

#include "bowtie/amalgam.hpp"
#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"
#include "bowtie/ideal.hpp"
#include "oracles.hpp"

using namespace bowtie;

namespace {

std::set<std::string> labels(const std::vector<TaggedPrime>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.label());
    return out;
}

}  // namespace

TEST_SUITE("amalgam") {
    TEST_CASE("carrier sizes") {
        auto z6 = make_zn(6), z4 = make_zn(4);
        CHECK(amalgamate(z6, z6, identity_hom(z6), principal_ideal(z6, 2)).carrier()->size() == 18);
        CHECK(amalgamate(z4, z4, identity_hom(z4), principal_ideal(z4, 2)).carrier()->size() == 8);
        CHECK_THROWS_AS(amalgamate(z6, z6, identity_hom(z6), IdealSet::zero(z6)), PreconditionError);
        CHECK_THROWS_AS(amalgamate(z6, z6, identity_hom(z6), IdealSet::whole(z6)), PreconditionError);
    }

    TEST_CASE("carrier is the set of pairs (r, f(r)+j)") {
        auto z12 = make_zn(12), z4 = make_zn(4);
        auto j = principal_ideal(z4, 2);
        auto a = amalgamate(z12, z4, natural_hom(z12, z4), j);
        std::set<std::pair<Elem, Elem>> expected;
        for (Elem r = 0; r < 12; ++r)
            for (Elem x : j.members().members()) expected.insert({r, z4->add(r % 4, x)});
        const auto& got = a.pair_labels();
        CHECK(std::set<std::pair<Elem, Elem>>(got.begin(), got.end()) == expected);
        CHECK(validate_ring(a.carrier()->tables()).ok());
        CHECK(is_surjective(a.first_projection()));
        CHECK(a.projection_kernel().size() == j.size());
    }

    TEST_CASE("duplication") {
        auto z6 = make_zn(6), z4 = make_zn(4);
        auto d6 = duplicate(z6, principal_ideal(z6, 2));
        CHECK(d6.carrier()->size() == 18);
        CHECK(d6.is_duplication());
        CHECK(oracle::primes(*d6.carrier()).size() == 3);
        auto d4 = duplicate(z4, principal_ideal(z4, 2));
        CHECK(d4.carrier()->size() == 8);
        CHECK(oracle::primes(*d4.carrier()).size() == 1);
        auto z2 = make_zn(2);
        CHECK_THROWS_AS(duplicate(z2, IdealSet::zero(z2)), PreconditionError);
        CHECK_THROWS_AS(duplicate(z2, IdealSet::whole(z2)), PreconditionError);
    }

    TEST_CASE("trivial extension as an amalgamation") {
        for (std::size_t n : {2, 6}) {
            auto r = make_zn(n);
            auto m = make_regular_module(r);
            auto te = trivial_extension_as_amalgam(r, m);
            CHECK(te.amalgam.carrier()->size() == n * n);
            auto target = make_trivial_extension(r, m);
            CHECK(oracle::is_isomorphism(*te.amalgam.carrier(), *target, te.iso.map()));
        }
    }

    TEST_CASE("type 1 lifts") {
        auto z6 = make_zn(6);
        auto a = duplicate(z6, principal_ideal(z6, 2));
        auto l2 = lift_type1(a, principal_ideal(z6, 2));
        CHECK(l2.size() == 9);
        CHECK(oracle::isomorphic(*make_quotient(a.carrier(), l2).ring, *make_zn(2)));
        CHECK(lift_type1(a, principal_ideal(z6, 3)).size() == 6);
        auto z4 = make_zn(4);
        CHECK(lift_type1(duplicate(z4, principal_ideal(z4, 2)), principal_ideal(z4, 2)).size() == 4);
        CHECK_THROWS_AS(lift_type1(a, IdealSet::zero(z6)), PreconditionError);
    }

    TEST_CASE("type 2 lifts") {
        auto z6 = make_zn(6);
        auto a = duplicate(z6, principal_ideal(z6, 2));
        auto q = lift_type2(a, principal_ideal(z6, 3));
        CHECK(q.size() == 6);
        CHECK(oracle::isomorphic(*make_quotient(a.carrier(), q).ring, *make_zn(3)));
        CHECK_THROWS_AS(lift_type2(a, principal_ideal(z6, 2)), PreconditionError);
        auto z4 = make_zn(4);
        auto d4 = duplicate(z4, principal_ideal(z4, 2));
        for (const auto& p : spec(z4).primes) CHECK_THROWS_AS(lift_type2(d4, p), PreconditionError);
    }

    TEST_CASE("classification of small amalgams") {
        auto z6 = make_zn(6), z4 = make_zn(4);
        auto c6 = classify_spectrum(duplicate(z6, principal_ideal(z6, 2)));
        CHECK(labels(c6.primes) == std::set<std::string>{"T1:(2)", "T1:(3)", "T2:(3)"});
        for (const auto& p : c6.primes) CHECK(p.maximal);
        CHECK(max_classify(c6).size() == 3);

        auto c4 = classify_spectrum(duplicate(z4, principal_ideal(z4, 2)));
        CHECK(labels(c4.primes) == std::set<std::string>{"T1:(2)"});
        CHECK(labels(max_classify(c4)) == std::set<std::string>{"T1:(2)"});

        auto te = trivial_extension_as_amalgam(z6, make_regular_module(z6));
        auto ct = classify_spectrum(te.amalgam);
        CHECK(ct.type2_count() == 0);
        CHECK(ct.type1_count() == 2);
    }

    TEST_CASE("classification agrees with brute-force primes of the carrier") {
        std::vector<AmalgamationRing> as;
        auto z4 = make_zn(4), z6 = make_zn(6), z2 = make_zn(2);
        as.push_back(duplicate(z6, principal_ideal(z6, 3)));
        auto z8 = make_zn(8);
        as.push_back(amalgamate(z8, z4, natural_hom(z8, z4), principal_ideal(z4, 2)));
        auto v4 = make_product(z2, z2);
        as.push_back(amalgamate(z2, v4, make_hom(z2, v4, {0, 3}), principal_ideal(v4, 1)));
        for (const auto& a : as) {
            CAPTURE(a.carrier()->name());
            auto c = classify_spectrum(a);
            std::set<oracle::Set> ours, brute, ours_max, brute_max;
            for (const auto& p : c.primes) {
                ours.insert(oracle::to_set(p.ideal.members().members()));
                if (p.maximal) ours_max.insert(oracle::to_set(p.ideal.members().members()));
            }
            for (auto& p : oracle::primes(*a.carrier())) brute.insert(p);
            for (auto& m : oracle::maximals(*a.carrier())) brute_max.insert(m);
            CHECK(ours == brute);
            CHECK(ours_max == brute_max);
        }
    }

    TEST_CASE("J inside Jac(S) gives no type 2 maximal ideals") {
        auto z4 = make_zn(4);
        auto a = amalgamate(z4, z4, identity_hom(z4), principal_ideal(z4, 2));
        for (const auto& m : max_classify(a)) CHECK(m.tag == PrimeType::Type1);
    }
}
