#include <algorithm>
#include <set>

#include <doctest.h>

#include "bowtie/error.hpp"
#include "bowtie/ideal.hpp"
#include "bowtie/ring.hpp"
#include "oracles.hpp"

using namespace bowtie;

namespace {

std::vector<oracle::Set> as_sets(const std::vector<IdealSet>& v) {
    std::vector<oracle::Set> out;
    for (const auto& i : v) out.push_back(oracle::to_set(i.members().members()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<oracle::Set> sorted(std::vector<oracle::Set> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<RingPtr> small_rings() {
    std::vector<RingPtr> rs;
    for (std::size_t n = 2; n <= 16; ++n) rs.push_back(make_zn(n));
    rs.push_back(make_product(make_zn(2), make_zn(2)));
    rs.push_back(make_product(make_zn(2), make_zn(4)));
    rs.push_back(make_product(make_zn(2), make_zn(6)));
    rs.push_back(make_product(make_zn(3), make_zn(4)));
    for (std::size_t n = 2; n <= 4; ++n) {
        auto r = make_zn(n);
        rs.push_back(make_trivial_extension(r, make_regular_module(r)));
    }
    return rs;
}

}  // namespace

TEST_SUITE("ideal-lattice") {
    TEST_CASE("ideal_generate") {
        auto z6 = make_zn(6);
        CHECK(ideal_generate(z6, {2}).members().members() == std::vector<Elem>{0, 2, 4});
        CHECK(ideal_generate(z6, {}).members().members() == std::vector<Elem>{0});
        CHECK(ideal_generate(z6, {1}).size() == 6);
        CHECK(ideal_generate(z6, {2, 3}).size() == 6);
    }

    TEST_CASE("enumerate_ideals matches subset brute force") {
        for (const auto& r : small_rings()) {
            CAPTURE(r->name());
            CHECK(as_sets(enumerate_ideals(r)) == sorted(oracle::ideals(*r)));
        }
        auto z6 = make_zn(6);
        CHECK(enumerate_ideals(z6).size() == 4);
        CHECK(enumerate_ideals(make_zn(4)).size() == 3);
        CHECK(enumerate_ideals(make_zn(2)).size() == 2);
    }

    TEST_CASE("spec and max_spec match the oracle") {
        for (const auto& r : small_rings()) {
            CAPTURE(r->name());
            CHECK(as_sets(spec(r).primes) == sorted(oracle::primes(*r)));
            CHECK(as_sets(max_spec(r).primes) == sorted(oracle::maximals(*r)));
            auto s = spec(r);
            for (std::size_t k = 0; k < s.size(); ++k) CHECK(s.maximal[k] == is_maximal(s.primes[k]));
        }
    }

    TEST_CASE("prime and maximal checks") {
        auto z6 = make_zn(6);
        auto z4 = make_zn(4);
        CHECK(is_prime(principal_ideal(z6, 2)));
        CHECK(is_maximal(principal_ideal(z6, 2)));
        CHECK_FALSE(is_prime(IdealSet::zero(z4)));
        CHECK_FALSE(is_prime(IdealSet::zero(z6)));
        CHECK(is_prime(IdealSet::zero(make_zn(5))));
        CHECK_THROWS_AS(is_prime(IdealSet::whole(z6)), PreconditionError);
    }

    TEST_CASE("small spectra") {
        auto s6 = spec(make_zn(6));
        REQUIRE(s6.size() == 2);
        CHECK(s6.all_maximal());
        std::set<std::string> names = {ideal_label(s6.primes[0]), ideal_label(s6.primes[1])};
        CHECK(names == std::set<std::string>{"(2)", "(3)"});
        CHECK(spec(make_zn(4)).size() == 1);
        auto f2 = spec(make_zn(2));
        REQUIRE(f2.size() == 1);
        CHECK(f2.primes[0].is_zero());
    }

    TEST_CASE("radicals") {
        CHECK(nilradical(make_zn(4)).members().members() == std::vector<Elem>{0, 2});
        CHECK(jacobson(make_zn(6)).is_zero());
        CHECK(nilradical(make_zn(6)).is_zero());
        for (const auto& r : small_rings()) {
            // Nil is the intersection of all primes, Jac of all maximal ideals.
            oracle::Set nil, jac;
            for (Elem x = 0; x < r->size(); ++x) {
                bool in_all = true, in_max = true;
                for (auto& p : oracle::primes(*r)) in_all = in_all && p.count(x);
                for (auto& m : oracle::maximals(*r)) in_max = in_max && m.count(x);
                if (in_all) nil.insert(x);
                if (in_max) jac.insert(x);
            }
            CAPTURE(r->name());
            CHECK(oracle::to_set(nilradical(r).members().members()) == nil);
            CHECK(oracle::to_set(jacobson(r).members().members()) == jac);
        }
    }

    TEST_CASE("ideal arithmetic") {
        auto z6 = make_zn(6);
        auto i2 = principal_ideal(z6, 2), i3 = principal_ideal(z6, 3);
        CHECK(ideal_sum(i2, i3).size() == 6);
        CHECK(ideal_intersect(i2, i3).is_zero());
        CHECK(ideal_product(i2, i3).is_zero());
        auto z12 = make_zn(12);
        auto i4 = principal_ideal(z12, 4);
        CHECK(i4.members().members() == std::vector<Elem>{0, 4, 8});
        CHECK(radical(i4) == principal_ideal(z12, 2));
    }

    TEST_CASE("v_of") {
        auto z6 = make_zn(6);
        auto s = spec(z6);
        auto v = v_of(s, principal_ideal(z6, 2));
        REQUIRE(v.size() == 1);
        CHECK(s.primes[v[0]] == principal_ideal(z6, 2));
        CHECK(v_of(s, IdealSet::zero(z6)).size() == 2);
        CHECK(v_of(s, IdealSet::whole(z6)).empty());
    }

    TEST_CASE("from_members rejects non-ideals") {
        auto z6 = make_zn(6);
        ElementSet s(6);
        s.set(0);
        s.set(2);
        CHECK_THROWS_AS(IdealSet::from_members(z6, s), InputError);
        s.set(4);
        CHECK_NOTHROW(IdealSet::from_members(z6, s));
    }
}
