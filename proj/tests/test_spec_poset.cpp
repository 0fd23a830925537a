#include <algorithm>
#include <set>

#include <doctest.h>

#include "bowtie/amalgam.hpp"
#include "bowtie/corpus.hpp"
#include "bowtie/dot.hpp"
#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"
#include "bowtie/serialize.hpp"
#include "bowtie/spec_poset.hpp"

using namespace bowtie;

namespace {

std::size_t count_true(const std::vector<bool>& v) { return static_cast<std::size_t>(std::count(v.begin(), v.end(), true)); }

std::set<std::string> maxima(const SpectralPoset& p) {
    std::set<std::string> out;
    for (auto m : p.maximal_elements()) out.insert(p.labels[m]);
    return out;
}

bool has_violation(const DataReport& r, const std::string& needle) {
    for (const auto& v : r.violations)
        if (v.invariant.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_SUITE("spec-poset") {
    TEST_CASE("closure and validation of posets") {
        auto p = SpectralPoset::from_relation({"a", "b", "c"}, {{0, 1}, {1, 2}});
        CHECK(p.le(0, 2));
        CHECK_FALSE(p.le(2, 0));
        CHECK_FALSE(validate_poset(p));
        CHECK(covers(p) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
        CHECK(p.maximal_elements() == std::vector<std::size_t>{2});

        auto cyc = SpectralPoset::from_relation({"a", "b"}, {{0, 1}, {1, 0}});
        CHECK(validate_poset(cyc));
    }

    TEST_CASE("shared-prime data is valid and gives three elements") {
        auto d = fixture_not_pm_shared_prime();
        CHECK(validate_data(d).ok());
        auto a = build_amalgam_poset(d);
        REQUIRE(a.poset.size() == 3);
        auto q0 = a.poset.index_of("T2:q0");
        auto n = a.poset.index_of("T2:n");
        auto r0 = a.poset.index_of("T1:0R");
        REQUIRE(q0 < 3);
        CHECK(a.poset.lt(q0, n));
        CHECK(a.poset.lt(q0, r0));
        CHECK(maxima(a.poset) == std::set<std::string>{"T1:0R", "T2:n"});

        auto pm = poset_is_pm(a.poset);
        CHECK_FALSE(pm.pm);
        REQUIRE(pm.witness);
        CHECK(a.poset.labels[*pm.witness] == "T2:q0");

        auto c = dag_count_abstract(d, d.ps.index_of("q0"));
        CHECK(c.term_max_s == 1);
        CHECK(c.term_max_r == 1);
        CHECK(c.total == 2);
        CHECK_THROWS_AS(dag_count_abstract(d, d.ps.index_of("J")), PreconditionError);

        auto check = theorem_pm_abstract_check(d);
        CHECK(check.pass());
        CHECK_FALSE(check.left);
        CHECK_FALSE(check.right);
    }

    TEST_CASE("antichain duplication model is pm") {
        auto d = fixture_pm_antichain_duplication();
        CHECK(validate_data(d).ok());
        auto c = dag_count_abstract(d, d.ps.index_of("m2"));
        CHECK(c.term_max_s == 1);
        CHECK(c.term_max_r == 0);
        auto check = theorem_pm_abstract_check(d);
        CHECK(check.pass());
        CHECK(check.left);
        CHECK(check.right);
    }

    TEST_CASE("planted defects are reported") {
        auto d = fixture_not_pm_shared_prime();
        auto down = d;
        // q0 in VJ while J above it is not.
        down.vj = {true, false, false};
        down.c = {{false}, {false}, {false}};
        down.kappa.reset();
        auto r1 = validate_data(down);
        CHECK_FALSE(r1.ok());
        CHECK(has_violation(r1, "up"));

        auto maxc = d;
        maxc.c[maxc.ps.index_of("n")][0] = true;
        auto r2 = validate_data(maxc);
        CHECK_FALSE(r2.ok());
        CHECK_THROWS_AS(build_amalgam_poset(maxc), PreconditionError);
    }

    TEST_CASE("VJ equal to PS reproduces PR") {
        AmalgamSpectrumData d;
        d.pr = SpectralPoset::from_relation({"a", "b"}, {{0, 1}});
        d.ps = SpectralPoset::from_relation({"x", "y"}, {{0, 1}});
        d.vj = {true, true};
        d.c = {{false, false}, {false, false}};
        REQUIRE(validate_data(d).ok());
        auto a = build_amalgam_poset(d);
        CHECK(a.poset.size() == 2);
        CHECK(a.poset.lt(0, 1));
        CHECK(a.type1_count() == 2);
    }

    TEST_CASE("pm on special shapes") {
        CHECK(poset_is_pm(SpectralPoset::antichain({"a", "b", "c"})).pm);
        CHECK(poset_is_pm(SpectralPoset::from_relation({"a", "b", "c"}, {{0, 2}, {1, 2}})).pm);
        CHECK_FALSE(poset_is_pm(SpectralPoset::from_relation({"a", "b", "c"}, {{0, 1}, {0, 2}})).pm);
    }

    TEST_CASE("fuzzed data is valid and satisfies the criterion") {
        SpectrumFuzzer fz(0, 6);
        for (int i = 0; i < 10000; ++i) {
            auto d = fz.next();
            REQUIRE(validate_data(d).ok());
            REQUIRE(theorem_pm_abstract_check(d).pass());
            CHECK(d.pr.size() <= 6);
            CHECK(d.ps.size() <= 6);
        }
    }

    TEST_CASE("fuzzer with bound one gives singletons") {
        SpectrumFuzzer fz(11, 1);
        for (int i = 0; i < 50; ++i) {
            auto d = fz.next();
            CHECK(d.pr.size() == 1);
            CHECK(d.ps.size() == 1);
            CHECK(d.vj == std::vector<bool>{true});
            CHECK(build_amalgam_poset(d).poset.size() == 1);
        }
    }

    TEST_CASE("fuzzer is deterministic and matches the golden instance") {
        SpectrumFuzzer a(0, 4), b(0, 4);
        auto first = a.next();
        CHECK(first == b.next());
        auto golden = load_document(std::string(BOWTIE_FIXTURE_DIR) + "/fuzz_seed0_bound4.json");
        CHECK(std::get<AmalgamSpectrumData>(golden.subject()) == first);
    }

    TEST_CASE("monotone closure is idempotent") {
        SpectrumFuzzer fz(5, 6);
        for (int i = 0; i < 500; ++i) {
            auto d = fz.next();
            CHECK(monotone_closure(d) == d);
            CHECK(monotone_closure(monotone_closure(d)) == monotone_closure(d));
        }
    }

    TEST_CASE("extracted data from concrete amalgams") {
        auto z6 = make_zn(6), z4 = make_zn(4);
        auto c6 = AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2)));
        auto d6 = extract_spectrum_data(c6);
        CHECK(d6.pr == SpectralPoset::antichain(d6.pr.labels));
        CHECK(d6.ps.size() == 2);
        CHECK(count_true(d6.vj) == 1);
        for (const auto& row : d6.c) CHECK(count_true(row) == 0);
        CHECK(build_amalgam_poset(d6).poset.size() == 3);
        CHECK_FALSE(cross_layer_mismatch(c6));
        CHECK(monotone_closure(d6) == d6);

        auto c4 = AmalgamContext::build(duplicate(z4, principal_ideal(z4, 2)));
        auto d4 = extract_spectrum_data(c4);
        CHECK(count_true(d4.vj) == d4.ps.size());
        CHECK(build_amalgam_poset(d4).poset.size() == d4.pr.size());
        auto jac = abstract_jacobson_check(d4);
        CHECK(jac.applicable);
        CHECK(jac.pass);

        auto te = trivial_extension_as_amalgam(z6, make_regular_module(z6));
        auto dt = extract_spectrum_data(AmalgamContext::build(te.amalgam));
        CHECK(count_true(dt.vj) == dt.ps.size());
    }

    TEST_CASE("cross layer agreement on non-surjective maps") {
        auto z2 = make_zn(2);
        auto v4 = make_product(z2, z2);
        auto a = amalgamate(z2, v4, make_hom(z2, v4, {0, 3}), principal_ideal(v4, 1));
        auto ctx = AmalgamContext::build(a);
        CHECK_FALSE(cross_layer_mismatch(ctx));
        CHECK(theorem_pm_abstract_check(extract_spectrum_data(ctx)).pass());
    }

    TEST_CASE("DOT output") {
        auto a = build_amalgam_poset(fixture_not_pm_shared_prime());
        auto dot = hasse_dot(a, "shared");
        CHECK(dot.find("digraph \"shared\"") != std::string::npos);
        CHECK(dot.find("rankdir=BT") != std::string::npos);
        CHECK(dot.find("shape=box") != std::string::npos);
        CHECK(dot.find("shape=ellipse") != std::string::npos);
        CHECK(dot.find("T2:q0") != std::string::npos);
        // Two cover edges out of T2:q0.
        std::size_t edges = 0;
        for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++edges;
        CHECK(edges == 2);
    }
}
