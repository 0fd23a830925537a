#include <doctest.h>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"
#include "bowtie/ideal.hpp"
#include "bowtie/ring.hpp"

using namespace bowtie;

namespace {

std::vector<Elem> reduction(std::size_t from, std::size_t to) {
    std::vector<Elem> m(from);
    for (std::size_t r = 0; r < from; ++r) m[r] = static_cast<Elem>(r % to);
    return m;
}

}  // namespace

TEST_SUITE("hom") {
    TEST_CASE("make_hom accepts homomorphisms") {
        auto z6 = make_zn(6);
        CHECK_NOTHROW(make_hom(z6, z6, reduction(6, 6)));
        CHECK_NOTHROW(make_hom(make_zn(12), make_zn(4), reduction(12, 4)));
    }

    TEST_CASE("make_hom rejects a characteristic obstruction") {
        CHECK_THROWS_AS(make_hom(make_zn(2), make_zn(4), {0, 1}), InputError);
        CHECK_THROWS_AS(make_hom(make_zn(4), make_zn(4), {0, 1, 2}), InputError);
    }

    TEST_CASE("surjectivity") {
        CHECK(is_surjective(identity_hom(make_zn(6))));
        CHECK(is_surjective(make_hom(make_zn(12), make_zn(4), reduction(12, 4))));
        auto z2 = make_zn(2);
        auto p = make_product(z2, z2);
        // (a, b) has index 2a + b, so the diagonal is {0, 3}.
        auto diag = make_hom(z2, p, {0, 3});
        CHECK_FALSE(is_surjective(diag));
        CHECK(image(diag).count() == 2);
    }

    TEST_CASE("preimages") {
        auto z12 = make_zn(12), z4 = make_zn(4);
        auto f = make_hom(z12, z4, reduction(12, 4));
        CHECK(preimage_ideal(f, principal_ideal(z4, 2)) == principal_ideal(z12, 2));
        CHECK(preimage_ideal(f, IdealSet::zero(z4)).members().members() == std::vector<Elem>{0, 4, 8});
        auto z6 = make_zn(6);
        CHECK(preimage_ideal(identity_hom(z6), principal_ideal(z6, 3)) == principal_ideal(z6, 3));
    }

    TEST_CASE("composition") {
        auto z12 = make_zn(12), z6 = make_zn(6), z3 = make_zn(3);
        auto g = make_hom(z6, z3, reduction(6, 3));
        auto f = make_hom(z12, z6, reduction(12, 6));
        CHECK(compose(g, f) == make_hom(z12, z3, reduction(12, 3)));
        CHECK(compose(identity_hom(z3), g) == g);
        CHECK_THROWS_AS(compose(f, g), PreconditionError);
    }

    TEST_CASE("natural hom is reduction") {
        CHECK(natural_hom(make_zn(12), make_zn(4)).map() == reduction(12, 4));
    }

    TEST_CASE("hom enumeration agrees with a brute-force scan") {
        // A unital map Zm -> Zn sends 1 to 1, so it exists exactly when n | m.
        for (std::size_t m : {2, 4, 6, 12})
            for (std::size_t n : {2, 3, 4, 6}) {
                const std::size_t expected = m % n == 0 ? 1 : 0;
                CAPTURE(m);
                CAPTURE(n);
                CHECK(enumerate_homs(make_zn(m), make_zn(n)).size() == expected);
            }
        auto z2 = make_zn(2), z3 = make_zn(3);
        auto p = make_product(z2, z3);
        CHECK(enumerate_homs(p, p).size() == 1);
        CHECK(enumerate_homs(make_zn(6), z2).size() == 1);
    }

    TEST_CASE("hom enumeration matches a scan over all maps") {
        auto z2 = make_zn(2);
        std::vector<std::pair<RingPtr, RingPtr>> pairs = {
            {make_product(z2, z2), make_product(z2, z2)},
            {make_zn(4), make_product(z2, z2)},
            {make_product(z2, z2), make_zn(4)},
            {make_trivial_extension(z2, make_regular_module(z2)), make_product(z2, z2)},
            {make_zn(6), make_product(z2, make_zn(3))},
        };
        for (const auto& [r, s] : pairs) {
            std::size_t total = 1;
            for (std::size_t k = 0; k < r->size(); ++k) total *= s->size();
            std::size_t expected = 0;
            std::vector<Elem> map(r->size());
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t c = code;
                for (auto& x : map) {
                    x = static_cast<Elem>(c % s->size());
                    c /= s->size();
                }
                if (check_hom(*r, *s, map).ok()) ++expected;
            }
            CAPTURE(r->name());
            CAPTURE(s->name());
            CHECK(enumerate_homs(r, s).size() == expected);
        }
    }

    TEST_CASE("image of an ideal under a surjection") {
        auto z12 = make_zn(12), z4 = make_zn(4);
        auto f = make_hom(z12, z4, reduction(12, 4));
        CHECK(image_ideal(f, principal_ideal(z12, 2)) == principal_ideal(z4, 2));
    }
}
