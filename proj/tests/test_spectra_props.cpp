#include <algorithm>
#include <set>

#include <doctest.h>

#include "bowtie/amalgam.hpp"
#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"
#include "bowtie/spectra_props.hpp"
#include "oracles.hpp"

using namespace bowtie;

namespace {

bool oracle_pm(const FiniteRing& r) {
    auto ms = oracle::maximals(r);
    for (auto& p : oracle::primes(r)) {
        std::size_t above = 0;
        for (auto& m : ms)
            if (std::includes(m.begin(), m.end(), p.begin(), p.end())) ++above;
        if (above != 1) return false;
    }
    return true;
}

std::vector<AmalgamationRing> sample_amalgams() {
    auto z4 = make_zn(4), z6 = make_zn(6), z8 = make_zn(8), z12 = make_zn(12);
    auto z2 = make_zn(2);
    auto v4 = make_product(z2, z2);
    return {
        duplicate(z6, principal_ideal(z6, 2)),
        duplicate(z4, principal_ideal(z4, 2)),
        duplicate(z12, principal_ideal(z12, 4)),
        amalgamate(z12, z6, natural_hom(z12, z6), principal_ideal(z6, 3)),
        amalgamate(z8, z4, natural_hom(z8, z4), principal_ideal(z4, 2)),
        amalgamate(z2, v4, make_hom(z2, v4, {0, 3}), principal_ideal(v4, 1)),
        amalgamate(v4, v4, identity_hom(v4), principal_ideal(v4, 2)),
    };
}

std::vector<std::string> ids(const std::vector<LemmaReport>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.id);
    return out;
}

}  // namespace

TEST_SUITE("spectra-props") {
    TEST_CASE("is_pm matches the oracle on small rings") {
        CHECK(is_pm(make_zn(6)).pm);
        CHECK(is_pm(make_zn(4)).pm);
        for (std::size_t n = 2; n <= 16; ++n) CHECK(is_pm(make_zn(n)).pm == oracle_pm(*make_zn(n)));
        auto z2 = make_zn(2);
        auto v4 = make_product(z2, z2);
        CHECK(is_pm(v4).pm == oracle_pm(*v4));
    }

    TEST_CASE("counting criterion on Z6 duplicated along (2)") {
        auto z6 = make_zn(6);
        auto a = duplicate(z6, principal_ideal(z6, 2));
        auto c = dag_count(a, principal_ideal(z6, 3));
        CHECK(c.term_max_s == 1);
        CHECK(c.term_max_r == 0);
        CHECK(c.total == 1);
        auto ctx = AmalgamContext::build(a);
        REQUIRE(ctx.contraction.size() == 1);
        CHECK(ctx.contraction[0].size() == 6);
        CHECK_THROWS_AS(dag_count(a, principal_ideal(z6, 2)), PreconditionError);
    }

    TEST_CASE("every admissible count is one on finite instances") {
        for (const auto& a : sample_amalgams()) {
            auto ctx = AmalgamContext::build(a);
            for (const auto& d : dag_counts(ctx)) CHECK(d.total == 1);
        }
    }

    TEST_CASE("concrete pm criterion") {
        for (const auto& a : sample_amalgams()) {
            auto r = verify_theorem_pm(AmalgamContext::build(a));
            CAPTURE(r.instance);
            CHECK(r.pass());
            CHECK(r.id == "pm-criterion");
        }
    }

    TEST_CASE("duplication corollary") {
        auto z6 = make_zn(6), z12 = make_zn(12), z4 = make_zn(4);
        CHECK(verify_cor_duplication(z6, principal_ideal(z6, 2)).pass());
        CHECK(verify_cor_duplication(z12, principal_ideal(z12, 4)).pass());
        CHECK(verify_cor_duplication(z4, principal_ideal(z4, 2)).pass());
    }

    TEST_CASE("Jacobson corollary") {
        auto z4 = make_zn(4), z6 = make_zn(6);
        auto r = verify_cor_jac(AmalgamContext::build(amalgamate(z4, z4, identity_hom(z4), principal_ideal(z4, 2))));
        CHECK(r.pass());
        CHECK_FALSE(r.hypotheses.empty());
        CHECK_THROWS_AS(verify_cor_jac(AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2)))), PreconditionError);
    }

    TEST_CASE("trivial extension corollary") {
        auto z6 = make_zn(6);
        auto r = verify_cor_trivext(z6, make_regular_module(z6));
        CHECK(r.pass());
        CHECK(r.applicable);
    }

    TEST_CASE("compactly packed decider") {
        auto z6 = make_zn(6);
        auto s6 = spec(z6);
        auto d = compactly_packed_decide(s6, s6.primes);
        CHECK(d.holds);
        CHECK(d.probes > 0);

        auto z12 = make_zn(12);
        auto s12 = spec(z12);
        auto two = principal_ideal(z12, 2);
        VerifyOptions all;
        all.cp_all_ideals = true;
        auto r = compactly_packed_decide(s12, {two}, all);
        CHECK(r.holds);
        // (3) is not inside (2), so that probe is vacuous.
        CHECK_FALSE(principal_ideal(z12, 3).subset_of(two));

        for (std::size_t n = 2; n <= 20; ++n) {
            CHECK(compactly_packed_decide(make_zn(n)).holds);
            CHECK(properly_zipped_decide(make_zn(n)).holds);
        }
    }

    TEST_CASE("lemma suites pass on sample amalgams") {
        for (const auto& a : sample_amalgams()) {
            auto ctx = AmalgamContext::build(a);
            CAPTURE(ctx.name);
            CHECK(verify_remark_spectrum(ctx).pass());
            CHECK(verify_lemma_unions(ctx).pass());
            CHECK(verify_lemma_intersections(ctx).pass());
            CHECK(verify_lemma_basic(ctx).pass());
            CHECK(verify_prop_cp_type1(ctx).pass());
            CHECK(verify_prop_cp_type2(ctx).pass());
        }
    }

    TEST_CASE("transfer reports carry the finite-scale flag") {
        for (const auto& a : sample_amalgams()) {
            auto ctx = AmalgamContext::build(a);
            for (const auto& r : {verify_transfer_cp(ctx), verify_transfer_pz(ctx), verify_cor_nil(ctx),
                                  verify_prop_cp_type1(ctx), verify_prop_cp_type2(ctx)}) {
                CAPTURE(r.id);
                CHECK(r.pass());
                CHECK(r.finite_scale_trivial);
            }
        }
        auto z6 = make_zn(6);
        auto pz = verify_transfer_pz(AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2))));
        CHECK(pz.pass());
        CHECK(pz.finite_scale_trivial);
        CHECK(verify_cor_dup_pz(z6, principal_ideal(z6, 2)).finite_scale_trivial);
    }

    TEST_CASE("type 1 family witnesses on Z6 duplicated along (2)") {
        auto z6 = make_zn(6);
        auto ctx = AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2)));
        auto r = verify_prop_cp_type1(ctx);
        CHECK(r.pass());
        CHECK_FALSE(r.witnesses.empty());
        CHECK(verify_prop_cp_type2(ctx).pass());
    }

    TEST_CASE("family enumeration") {
        VerifyOptions o;
        CHECK(families(3, o).size() == 7);
        CHECK(families(12, o).size() == 4095);
        CHECK(families(13, o).size() == 13 + 78 + 286);
        o.family_size = 1;
        CHECK(families(5, o).size() == 5);

        VerifyOptions small;
        small.family_size = 3;
        small.family_budget = 50;
        small.seed = 3;
        auto a = families(13, small), b = families(13, small);
        CHECK(a.size() == 50);
        CHECK(a == b);
        for (const auto& f : a) CHECK(std::is_sorted(f.begin(), f.end()));
        small.seed = 4;
        CHECK(families(13, small) != a);
    }

    TEST_CASE("singleton families agree with the pairwise lemma") {
        VerifyOptions k1;
        k1.family_size = 1;
        for (const auto& a : sample_amalgams()) {
            auto ctx = AmalgamContext::build(a);
            CHECK(verify_lemma_unions(ctx, k1).pass() == verify_lemma_basic(ctx).pass());
            CHECK(verify_lemma_intersections(ctx, k1).pass() == verify_lemma_basic(ctx).pass());
        }
    }

    TEST_CASE("report ids") {
        auto z6 = make_zn(6);
        auto ctx = AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2)));
        CHECK(ids({verify_remark_spectrum(ctx), verify_lemma_unions(ctx), verify_lemma_intersections(ctx),
                   verify_lemma_basic(ctx)}) ==
              std::vector<std::string>{"spectrum-description", "prime-union-inclusions",
                                       "prime-intersection-inclusions", "prime-pair-inclusions"});
    }
}
