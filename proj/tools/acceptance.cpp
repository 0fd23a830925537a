// Runs the acceptance suite and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bowtie/corpus.hpp"
#include "bowtie/error.hpp"
#include "bowtie/serialize.hpp"

using namespace bowtie;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Aggregate of one report id over the amalgam instances of a run.
struct Tally {
    std::size_t present = 0;
    std::size_t applicable = 0;
    std::size_t failed = 0;
    std::size_t flagged = 0;
    std::size_t with_hypotheses = 0;
    std::uint64_t families = 0;
    std::uint64_t checks = 0;
    std::string first_failure;
};

struct RunIndex {
    std::size_t amalgams = 0;
    std::size_t trivexts = 0;
    std::size_t non_pass = 0;
    std::map<std::string, Tally> by_id;
    std::map<std::string, Tally> trivext_by_id;
    std::set<std::string> ids;
};

RunIndex index_run(const VerificationRun& run) {
    RunIndex ix;
    for (const auto& inst : run.instances) {
        if (inst.status != Status::Pass) ++ix.non_pass;
        auto* table = &ix.by_id;
        if (inst.kind == "amalgam") ++ix.amalgams;
        else if (inst.kind == "trivext") {
            ++ix.trivexts;
            table = &ix.trivext_by_id;
        } else {
            table = nullptr;
        }
        for (const auto& r : inst.reports) {
            ix.ids.insert(r.id);
            if (!table) continue;
            Tally& t = (*table)[r.id];
            ++t.present;
            t.families += r.families;
            t.checks += r.checks;
            if (r.applicable) ++t.applicable;
            if (r.finite_scale_trivial) ++t.flagged;
            if (!r.hypotheses.empty()) ++t.with_hypotheses;
            if (!r.pass()) {
                if (t.failed++ == 0) t.first_failure = inst.id + ": " + r.counterexample->part + ": " + r.counterexample->text;
            }
        }
    }
    return ix;
}

std::string tally_text(const std::string& id, const Tally& t) {
    return id + " " + std::to_string(t.present - t.failed) + "/" + std::to_string(t.present);
}

// Every amalgam instance carries the report and none fails.
Outcome on_every_amalgam(const RunIndex& ix, const std::vector<std::string>& ids) {
    Outcome o;
    for (const auto& id : ids) {
        auto it = ix.by_id.find(id);
        if (it == ix.by_id.end()) return {false, id + " missing"};
        const Tally& t = it->second;
        if (t.present != ix.amalgams) return {false, id + " on " + std::to_string(t.present) + " of " +
                                                         std::to_string(ix.amalgams) + " amalgams"};
        if (t.failed) return {false, t.first_failure};
        o.detail += (o.detail.empty() ? "" : ", ") + tally_text(id, t);
    }
    return o;
}

std::size_t fact(const LemmaReport& r, const std::string& key) {
    for (const auto& [k, v] : r.facts)
        if (k == key) return std::stoul(v);
    throw std::runtime_error(r.id + " has no fact " + key);
}

const LemmaReport* report(const InstanceResult& inst, const std::string& id) {
    for (const auto& r : inst.reports)
        if (r.id == id) return &r;
    return nullptr;
}

// Part counts are fixed, and every prime set of at most 12 members is
// examined through its full power set.
Outcome exhaustive_families(const VerificationRun& run) {
    const std::map<std::string, std::size_t> parts = {
        {"prime-union-inclusions", 5}, {"prime-intersection-inclusions", 6}, {"prime-pair-inclusions", 4}};
    std::size_t full = 0, largest = 0;
    for (const auto& inst : run.instances) {
        if (inst.kind != "amalgam") continue;
        for (const auto& [id, n] : parts) {
            const auto* r = report(inst, id);
            if (!r || r->parts.size() != n) return {false, inst.id + ": " + id + " does not have " + std::to_string(n) + " parts"};
        }
        const auto* desc = report(inst, "spectrum-description");
        const std::size_t a = fact(*desc, "type1"), b = fact(*desc, "type2");
        largest = std::max({largest, a, b});
        if (a > 12 || b > 12) continue;
        const std::uint64_t expected = ((std::uint64_t{1} << a) - 1) + ((std::uint64_t{1} << b) - 1);
        for (const char* id : {"prime-union-inclusions", "prime-intersection-inclusions"}) {
            const auto* r = report(inst, id);
            if (r->families != expected)
                return {false, inst.id + ": " + id + " saw " + std::to_string(r->families) + " families, expected " +
                                   std::to_string(expected)};
        }
        ++full;
    }
    return {true, "full power sets on " + std::to_string(full) + " instances, largest prime set " + std::to_string(largest)};
}

std::string maxima_of(const AmalgamPoset& a) {
    std::string s;
    for (auto m : a.poset.maximal_elements()) s += (s.empty() ? "" : ",") + a.poset.labels[m];
    return "{" + s + "}";
}

std::vector<std::size_t> admissible(const AmalgamSpectrumData& d) {
    std::vector<std::size_t> qs;
    for (std::size_t q = 0; q < d.ps.size(); ++q)
        if (!d.vj[q]) qs.push_back(q);
    return qs;
}

AmalgamSpectrumData load_specdata(const std::string& path) {
    Document doc = load_document(path);
    return std::get<AmalgamSpectrumData>(doc.subject());
}

Outcome example_shared_prime(const std::string& fixtures) {
    const auto d = fixture_not_pm_shared_prime();
    if (!(load_specdata(fixtures + "/not_pm_shared_prime.json") == d)) return {false, "fixture file differs from builtin"};
    const auto a = build_amalgam_poset(d);
    const auto pm = poset_is_pm(a.poset);
    const auto q0 = d.ps.index_of("q0");
    const auto count = dag_count_abstract(d, q0);
    const std::string maxima = maxima_of(a);
    const std::string witness = pm.witness ? a.poset.labels[*pm.witness] : "none";
    std::string detail = std::to_string(a.poset.size()) + " elements, Max=" + maxima + ", pm=" +
                         (pm.pm ? "true" : "false") + ", witness " + witness + ", count(q0)=" +
                         std::to_string(count.term_max_s) + "+" + std::to_string(count.term_max_r);
    const bool ok = a.poset.size() == 3 && maxima == "{T1:0R,T2:n}" && !pm.pm && witness == "T2:q0" &&
                    count.term_max_s == 1 && count.term_max_r == 1 && count.total == 2 &&
                    !theorem_pm_abstract_check(d).right;
    return {ok, detail};
}

Outcome example_antichain_duplication(const std::string& fixtures) {
    const auto d = fixture_pm_antichain_duplication();
    if (!(load_specdata(fixtures + "/pm_antichain_duplication.json") == d)) return {false, "fixture file differs from builtin"};
    for (auto q : admissible(d)) {
        auto c = dag_count_abstract(d, q);
        if (c.term_max_s != 1 || c.term_max_r != 0) return {false, "count(" + c.q + ") is not 1 + 0"};
    }
    if (!poset_is_pm(build_amalgam_poset(d).poset).pm) return {false, "fixture poset is not pm"};

    // Concrete mirror: Z6 duplicated along (2).
    auto z6 = make_zn(6);
    auto ctx = AmalgamContext::build(duplicate(z6, principal_ideal(z6, 2)));
    const auto e = extract_spectrum_data(ctx);
    const auto ea = build_amalgam_poset(e);
    bool shape = e.pr.size() == d.pr.size() && e.ps.size() == d.ps.size() && ea.poset.size() == 3 &&
                 poset_is_pm(ea.poset).pm && is_pm(ctx.amalgam.carrier()).pm;
    std::size_t vj = 0, cs = 0, dvj = 0, dcs = 0;
    for (std::size_t q = 0; q < e.ps.size(); ++q) {
        vj += e.vj[q];
        dvj += d.vj[q];
        for (std::size_t p = 0; p < e.pr.size(); ++p) {
            cs += e.c[q][p];
            dcs += d.c[q][p];
        }
    }
    shape = shape && vj == dvj && cs == dcs;
    for (auto q : admissible(e)) {
        auto c = dag_count_abstract(e, q);
        shape = shape && c.term_max_s == 1 && c.term_max_r == 0;
    }
    return {shape, "fixture counts 1+0, pm; Z6 duplicated along (2): " + std::to_string(ea.poset.size()) +
                       " elements, |VJ|=" + std::to_string(vj) + ", |C|=" + std::to_string(cs) +
                       (shape ? ", same shape" : ", shape differs")};
}

Outcome corollaries(const RunIndex& ix) {
    Outcome o;
    auto check = [&](const std::string& id, const std::map<std::string, Tally>& table) {
        auto it = table.find(id);
        if (it == table.end()) return Outcome{false, id + " missing"};
        const Tally& t = it->second;
        if (t.failed) return Outcome{false, t.first_failure};
        if (t.applicable == 0) return Outcome{false, id + " never applicable"};
        if (t.with_hypotheses != t.present) return Outcome{false, id + " lacks recorded hypotheses"};
        return Outcome{true, id + " " + std::to_string(t.applicable) + " applicable"};
    };
    for (auto [id, table] : {std::pair{"pm-duplication", &ix.by_id}, std::pair{"pm-jacobson", &ix.by_id},
                             std::pair{"pm-trivial-extension", &ix.trivext_by_id}}) {
        Outcome one = check(id, *table);
        if (!one.pass) return one;
        o.detail += (o.detail.empty() ? "" : ", ") + one.detail;
    }
    return o;
}

Outcome transfers(const RunIndex& ix) {
    static const std::vector<std::string> ids = {"cp-transfer", "pz-transfer", "nil-transfer",
                                                 "pz-duplication", "cp-type1-family", "cp-type2-family"};
    Outcome o;
    for (const auto& id : ids) {
        auto it = ix.by_id.find(id);
        if (it == ix.by_id.end()) return {false, id + " missing"};
        const Tally& t = it->second;
        if (t.failed) return {false, t.first_failure};
        if (t.flagged != t.present) return {false, id + " lacks the finite-scale flag"};
        o.detail += (o.detail.empty() ? "" : ", ") + tally_text(id, t);
    }
    // No report speaks about an infinite ring: every id is one of the known finite checks.
    static const std::set<std::string> known = {
        "finite-ground-truth", "spectrum-description", "prime-union-inclusions", "prime-intersection-inclusions",
        "prime-pair-inclusions", "singleton-family-agreement", "pm-criterion", "pm-duplication", "pm-jacobson",
        "pm-trivial-extension", "cp-transfer", "pz-transfer", "nil-transfer", "pz-duplication", "cp-type1-family",
        "cp-type2-family", "cross-layer-order", "abstract-pm-criterion", "abstract-pm-criterion-fuzz"};
    for (const auto& id : ix.ids)
        if (!known.count(id)) return {false, "unexpected report " + id};
    o.detail += "; all flagged finite-scale-trivial, no infinite instance claimed";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures = BOWTIE_FIXTURE_DIR;
    if (argc > 1) fixtures = argv[1];

    int failures = 0;
    auto line = [&](int n, const std::string& name, const std::function<Outcome()>& body) {
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    };

    const CorpusSpec corpus = default_corpus();
    RunOptions opts;
    auto t0 = Clock::now();
    const VerificationRun run = run_verification(corpus, opts);
    const double run_seconds = seconds_since(t0);
    const RunIndex ix = index_run(run);

    line(1, "spectrum-description", [&] {
        Outcome o = on_every_amalgam(ix, {"spectrum-description"});
        if (o.pass && ix.amalgams < 50) o = {false, "only " + std::to_string(ix.amalgams) + " amalgams"};
        if (o.pass && run_seconds >= 30.0) o = {false, "full corpus took " + std::to_string(run_seconds) + " s"};
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%zu amalgams, full run %.1f s)", ix.amalgams, run_seconds);
        o.detail += buf;
        return o;
    });
    line(2, "prime-family-lemmas", [&] {
        Outcome o = on_every_amalgam(ix, {"prime-union-inclusions", "prime-intersection-inclusions", "prime-pair-inclusions"});
        if (!o.pass) return o;
        auto e = exhaustive_families(run);
        if (!e.pass) return e;
        o.detail += "; " + e.detail;
        return o;
    });
    line(3, "pm-criterion-concrete", [&] { return on_every_amalgam(ix, {"pm-criterion"}); });
    line(4, "pm-criterion-abstract-fuzz", [&] {
        auto t = Clock::now();
        auto rep = verify_fuzz(corpus.fuzz_seed, 10000, 6);
        const double s = seconds_since(t);
        char buf[96];
        std::snprintf(buf, sizeof buf, "10000 instances, sizes <= 6, seed %llu, %.1f s",
                      static_cast<unsigned long long>(corpus.fuzz_seed), s);
        if (!rep.pass()) return Outcome{false, rep.counterexample->text};
        return Outcome{s < 20.0, buf};
    });
    line(5, "shared-prime-example", [&] { return example_shared_prime(fixtures); });
    line(6, "antichain-duplication-example", [&] { return example_antichain_duplication(fixtures); });
    line(7, "pm-corollaries", [&] { return corollaries(ix); });
    line(8, "cp-pz-transfer", [&] { return transfers(ix); });
    line(9, "cross-layer-order", [&] { return on_every_amalgam(ix, {"cross-layer-order"}); });
    line(10, "determinism", [&] {
        const VerificationRun again = run_verification(corpus, opts);
        const std::string a = run.report.dump(2), b = again.report.dump(2);
        if (a != b) return Outcome{false, "reports differ"};
        return Outcome{true, "two runs, " + std::to_string(a.size()) + " identical bytes"};
    });

    if (ix.non_pass) {
        std::printf("note: %zu corpus instances did not pass\n", ix.non_pass);
        ++failures;
    }
    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
