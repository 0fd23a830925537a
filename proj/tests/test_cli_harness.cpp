#include <algorithm>
#include <filesystem>

#include <doctest.h>

#include "bowtie/corpus.hpp"
#include "bowtie/error.hpp"
#include "bowtie/serialize.hpp"

using namespace bowtie;

namespace {

const std::string kFixtures = BOWTIE_FIXTURE_DIR;

std::vector<std::string> fixture_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(kFixtures))
        if (e.path().extension() == ".json") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_corpus(const std::string& f) { return f.find("corpus") != std::string::npos; }
bool is_broken(const std::string& f) { return f == "malformed_ring.json" || f == "truncated.json"; }

}  // namespace

TEST_SUITE("cli-harness") {
    TEST_CASE("shorthand ring documents") {
        auto d = parse_document(Json::parse(R"({"kind": "ring", "zn": 6})"));
        auto r = std::get<RingPtr>(d.subject());
        CHECK(r->size() == 6);
        auto j = to_json(*r);
        CHECK(j["kind"] == "ring");
        CHECK(j["size"] == 6);
    }

    TEST_CASE("amalgam document builds an 18-element carrier") {
        auto d = load_document(kFixtures + "/z6_duplication_2.json");
        auto a = std::get<AmalgamationRing>(d.subject());
        CHECK(a.carrier()->size() == 18);
    }

    TEST_CASE("parse of serialize is the identity on fixtures") {
        for (const auto& f : fixture_files()) {
            if (is_corpus(f) || is_broken(f)) continue;
            CAPTURE(f);
            auto d = load_document(kFixtures + "/" + f);
            Json once = to_json(d.subject());
            auto again = parse_document(once);
            CHECK(to_json(again.subject()) == once);
        }
    }

    TEST_CASE("specdata fixtures equal the builtin ones") {
        auto a = load_document(kFixtures + "/not_pm_shared_prime.json");
        CHECK(std::get<AmalgamSpectrumData>(a.subject()) == fixture_not_pm_shared_prime());
        auto b = load_document(kFixtures + "/pm_antichain_duplication.json");
        CHECK(std::get<AmalgamSpectrumData>(b.subject()) == fixture_pm_antichain_duplication());
    }

    TEST_CASE("broken inputs give located errors") {
        try {
            load_document(kFixtures + "/malformed_ring.json");
            FAIL("expected an input error");
        } catch (const InputError& e) {
            std::string what = e.what();
            CHECK(what.find("malformed_ring.json") != std::string::npos);
            CHECK(what.find("at /") != std::string::npos);
        }
        CHECK_THROWS_AS(load_document(kFixtures + "/truncated.json"), InputError);
        CHECK_THROWS_AS(load_document(kFixtures + "/does_not_exist.json"), InputError);
        CHECK_THROWS_AS(parse_document(Json::parse(R"({"kind": "ring", "zn": 1})")), InputError);
        CHECK_THROWS_AS(parse_document(Json::parse(R"({"kind": "banana"})")), InputError);
    }

    TEST_CASE("corpus spec rejects unknown fields") {
        CHECK_THROWS_AS(corpus_from_json(Json::parse(R"({"zn": [2], "colour": 1})")), InputError);
        auto c = corpus_from_json(Json::parse(R"({"zn": [2, 3]})"));
        CHECK(c.zn == std::vector<std::size_t>{2, 3});
        CHECK(c.trivext_max == default_corpus().trivext_max);
        CHECK(corpus_from_json(to_json(c)).zn == c.zn);
    }

    TEST_CASE("small corpus passes and is deterministic") {
        auto spec = corpus_from_json(load_json(kFixtures + "/small_corpus.json"));
        auto a = run_verification(spec, {});
        auto b = run_verification(spec, {});
        CHECK(a.exit_code == 0);
        CHECK(a.report.dump() == b.report.dump());
        CHECK(a.report["summary"]["verdict"] == "pass");
        for (const auto& inst : a.instances) {
            CAPTURE(inst.id);
            CHECK(inst.status == Status::Pass);
        }
    }

    TEST_CASE("planted corrupt ring is isolated") {
        auto spec = corpus_from_json(load_json(kFixtures + "/planted_corrupt_corpus.json"));
        auto run = run_verification(spec, {});
        CHECK(run.exit_code == 2);
        std::size_t bad = 0;
        for (const auto& inst : run.instances)
            if (inst.status != Status::Pass) {
                ++bad;
                CHECK(inst.id == "extra:0");
                CHECK(inst.status == Status::InputError);
                CHECK(inst.error.find("distributivity") != std::string::npos);
            }
        CHECK(bad == 1);
    }

    TEST_CASE("a tiny cap reports resource exhaustion") {
        auto spec = corpus_from_json(Json::parse(R"({"zn": [12], "product_factors": [], "quotients_of": [],
            "trivext_max": 0, "builtin_posets": false, "fuzz_count": 0})"));
        RunOptions o;
        o.cap = 10;
        auto run = run_verification(spec, o);
        CHECK(run.exit_code == 3);
    }

    TEST_CASE("exit code precedence") {
        InstanceResult fail, input, cap;
        fail.status = Status::Fail;
        input.status = Status::InputError;
        cap.status = Status::CapExceeded;
        CHECK(exit_code_for({}) == 0);
        CHECK(exit_code_for({cap, input, fail}) == 1);
        CHECK(exit_code_for({cap, input}) == 2);
        CHECK(exit_code_for({cap}) == 3);
    }

    TEST_CASE("fuzz-only verification") {
        auto rep = verify_fuzz(7, 2000, 6);
        CHECK(rep.pass());
        CHECK(rep.id == "abstract-pm-criterion-fuzz");
    }
}
