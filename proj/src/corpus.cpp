#include "bowtie/corpus.hpp"

#include <chrono>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"

namespace bowtie {
namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::size_t char_of(const FiniteRing& r) { return r.additive_orders()[r.one()]; }

template <typename T>
T get_field(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("corpus field \"") + key + "\": " + e.what());
    }
}

bool is_identity(const RingHom& f) {
    if (f.domain() != f.codomain()) return false;
    for (std::size_t x = 0; x < f.map().size(); ++x)
        if (f.map()[x] != x) return false;
    return true;
}

template <typename F>
void guarded(InstanceResult& r, F&& body) {
    try {
        body();
    } catch (const TheoremViolation& e) {
        r.status = Status::Fail;
        r.error = e.what();
    } catch (const CapExceeded& e) {
        r.status = Status::CapExceeded;
        r.error = e.what();
    } catch (const InputError& e) {
        r.status = Status::InputError;
        r.error = e.what();
    } catch (const std::exception& e) {
        r.status = Status::Fail;
        r.error = e.what();
    }
    if (r.status == Status::Pass)
        for (const auto& rep : r.reports)
            if (!rep.pass()) r.status = Status::Fail;
}

Json instance_json(const InstanceResult& r) {
    Json j;
    j["id"] = r.id;
    j["kind"] = r.kind;
    j["name"] = r.name;
    j["status"] = status_name(r.status);
    if (!r.error.empty()) j["error"] = r.error;
    Json reps = Json::array();
    for (const auto& rep : r.reports) reps.push_back(to_json(rep));
    j["reports"] = std::move(reps);
    return j;
}

LemmaReport ground_truth(const RingPtr& r, const VerifyOptions& opts) {
    LemmaReport rep;
    rep.id = "finite-ground-truth";
    rep.parts = {"pm", "compactly-packed", "properly-zipped"};
    rep.instance = r->name();
    rep.finite_scale_trivial = true;
    const auto s = spec(r, opts.cap);
    const auto pm = is_pm(s);
    const auto cp = compactly_packed_decide(s, s.primes, opts);
    const auto pz = properly_zipped_decide(s, opts);
    rep.families = cp.families + pz.families;
    rep.checks = s.size() + cp.probes + pz.probes;
    std::size_t maximal = 0;
    for (bool m : s.maximal) maximal += m;
    rep.facts = {{"size", std::to_string(r->size())},
                 {"primes", std::to_string(s.size())},
                 {"maximal", std::to_string(maximal)},
                 {"pm", yes_no(pm.pm)},
                 {"compactly_packed", yes_no(cp.holds)},
                 {"properly_zipped", yes_no(pz.holds)}};
    if (!pm.pm) rep.fail("pm", ideal_label(s.primes[*pm.witness]) + " lies under several maximal ideals");
    if (!cp.holds) rep.fail("compactly-packed", cp.counterexample->text);
    if (!pz.holds) rep.fail("properly-zipped", pz.counterexample->text);
    return rep;
}

}  // namespace

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::InputError: return "input-error";
        case Status::CapExceeded: return "cap-exceeded";
    }
    return "?";
}

CorpusSpec default_corpus() {
    CorpusSpec c;
    for (std::size_t n = 2; n <= 30; ++n) c.zn.push_back(n);
    c.product_factors = {2, 3, 4, 6};
    c.quotients_of = {12, 36};
    return c;
}

CorpusSpec corpus_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("corpus spec must be a JSON object");
    static const std::set<std::string> known = {"zn", "product_factors", "quotients_of", "trivext_max",
                                                "amalgams", "all_homs", "carrier_cap", "builtin_posets",
                                                "poset_files", "extra_rings", "fuzz_seed", "fuzz_count",
                                                "fuzz_max_size"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw InputError("corpus spec: unknown field \"" + it.key() + "\"");
    auto c = default_corpus();
    c.zn = get_field(j, "zn", c.zn);
    c.product_factors = get_field(j, "product_factors", c.product_factors);
    c.quotients_of = get_field(j, "quotients_of", c.quotients_of);
    c.trivext_max = get_field(j, "trivext_max", c.trivext_max);
    c.amalgams = get_field(j, "amalgams", c.amalgams);
    c.all_homs = get_field(j, "all_homs", c.all_homs);
    c.carrier_cap = get_field(j, "carrier_cap", c.carrier_cap);
    c.builtin_posets = get_field(j, "builtin_posets", c.builtin_posets);
    c.poset_files = get_field(j, "poset_files", c.poset_files);
    if (j.contains("extra_rings")) {
        if (!j["extra_rings"].is_array()) throw InputError("corpus field \"extra_rings\" must be an array");
        c.extra_rings.assign(j["extra_rings"].begin(), j["extra_rings"].end());
    }
    c.fuzz_seed = get_field(j, "fuzz_seed", c.fuzz_seed);
    c.fuzz_count = get_field(j, "fuzz_count", c.fuzz_count);
    c.fuzz_max_size = get_field(j, "fuzz_max_size", c.fuzz_max_size);
    for (auto n : c.zn)
        if (n < 2) throw InputError("corpus field \"zn\": moduli must be at least 2");
    return c;
}

Json to_json(const CorpusSpec& c) {
    Json j;
    j["zn"] = c.zn;
    j["product_factors"] = c.product_factors;
    j["quotients_of"] = c.quotients_of;
    j["trivext_max"] = c.trivext_max;
    j["amalgams"] = c.amalgams;
    j["all_homs"] = c.all_homs;
    j["carrier_cap"] = c.carrier_cap;
    j["builtin_posets"] = c.builtin_posets;
    j["poset_files"] = c.poset_files;
    j["extra_rings"] = c.extra_rings;
    j["fuzz_seed"] = c.fuzz_seed;
    j["fuzz_count"] = c.fuzz_count;
    j["fuzz_max_size"] = c.fuzz_max_size;
    return j;
}

AmalgamSpectrumData fixture_not_pm_shared_prime() {
    AmalgamSpectrumData d;
    d.pr = SpectralPoset::antichain({"0R"});
    d.ps = SpectralPoset::from_relation({"q0", "J", "n"}, {{0, 1}, {0, 2}});
    d.vj = {false, true, false};
    d.c = {{true}, {false}, {false}};
    d.kappa = std::vector<std::size_t>{0, 0, 0};
    return d;
}

AmalgamSpectrumData fixture_pm_antichain_duplication() {
    AmalgamSpectrumData d;
    d.pr = SpectralPoset::antichain({"m1", "m2"});
    d.ps = SpectralPoset::antichain({"m1", "m2"});
    d.vj = {true, false};
    d.c = {{false, false}, {false, false}};
    d.kappa = std::vector<std::size_t>{0, 1};
    return d;
}

int exit_code_for(const std::vector<InstanceResult>& instances) {
    bool input = false;
    bool cap = false;
    for (const auto& r : instances) {
        if (r.status == Status::Fail) return 1;
        input = input || r.status == Status::InputError;
        cap = cap || r.status == Status::CapExceeded;
    }
    return input ? 2 : cap ? 3 : 0;
}

GeneratedCorpus generate_corpus(const CorpusSpec& spec, std::size_t cap) {
    GeneratedCorpus g;
    auto add_ring = [&](std::string id, RingPtr r) { g.rings.push_back({std::move(id), std::move(r)}); };
    for (auto n : spec.zn) add_ring("zn:" + std::to_string(n), make_zn(n));
    for (std::size_t a = 0; a < spec.product_factors.size(); ++a)
        for (std::size_t b = a; b < spec.product_factors.size(); ++b) {
            auto r = make_product(make_zn(spec.product_factors[a]), make_zn(spec.product_factors[b]));
            add_ring("product:" + r->name(), r);
        }
    for (auto n : spec.quotients_of) {
        auto base = make_zn(n);
        InstanceResult err;
        err.id = "quotients:" + base->name();
        err.kind = "ring";
        err.name = base->name();
        guarded(err, [&] {
            for (const auto& i : enumerate_ideals(base, cap)) {
                if (i.is_zero() || !i.is_proper()) continue;
                auto q = make_quotient(base, i).ring;
                add_ring("quotient:" + q->name(), q);
            }
        });
        if (err.status != Status::Pass) g.errors.push_back(std::move(err));
    }
    for (std::size_t n = 2; n <= spec.trivext_max; ++n) {
        auto r = make_zn(n);
        auto t = make_trivial_extension(r, make_regular_module(r));
        add_ring("trivext:" + t->name(), t);
    }
    for (std::size_t k = 0; k < spec.extra_rings.size(); ++k) {
        InstanceResult err;
        err.id = "extra:" + std::to_string(k);
        err.kind = "ring";
        guarded(err, [&] {
            auto doc = parse_document(spec.extra_rings[k]);
            auto r = std::get_if<RingPtr>(&doc.subject());
            if (!r) throw InputError("extra_rings entry is not a ring");
            add_ring("extra:" + (*r)->name(), *r);
        });
        if (err.status != Status::Pass) {
            err.name = spec.extra_rings[k].value("name", std::string("?"));
            g.errors.push_back(std::move(err));
        }
    }
    if (!spec.amalgams) return g;

    const auto carrier_cap = std::min(cap, spec.carrier_cap);
    // Candidate J for each S, or nothing when S is too large to enumerate.
    std::vector<std::optional<std::vector<IdealSet>>> ideals_of(g.rings.size());
    for (std::size_t k = 0; k < g.rings.size(); ++k) {
        InstanceResult err;
        err.id = "ideals:" + g.rings[k].id;
        err.kind = "ring";
        err.name = g.rings[k].ring->name();
        guarded(err, [&] { ideals_of[k] = enumerate_ideals(g.rings[k].ring, cap); });
        if (err.status != Status::Pass) g.errors.push_back(std::move(err));
    }
    for (const auto& [rid, r] : g.rings) {
        const auto char_r = char_of(*r);
        for (std::size_t k = 0; k < g.rings.size(); ++k) {
            const auto& s = g.rings[k].ring;
            if (char_r % char_of(*s) != 0 || !ideals_of[k]) continue;
            std::vector<IdealSet> js;
            std::size_t over = 0;
            for (const auto& j : *ideals_of[k]) {
                if (j.is_zero() || !j.is_proper()) continue;
                if (r->size() * j.size() > carrier_cap) ++over;
                else js.push_back(j);
            }
            if (js.empty() && over == 0) continue;
            std::vector<RingHom> homs;
            if (spec.all_homs) {
                homs = enumerate_homs(r, s);
            } else {
                try {
                    homs.push_back(natural_hom(r, s));
                } catch (const PreconditionError&) {
                } catch (const InputError&) {
                }
            }
            g.skipped_over_cap += over * homs.size();
            for (std::size_t h = 0; h < homs.size(); ++h)
                for (const auto& j : js) {
                    const auto id = "amalgam:" + r->name() + "->" + s->name() + "#" + std::to_string(h) +
                                    ":J=" + ideal_label(j);
                    InstanceResult err;
                    err.id = id;
                    err.kind = "amalgam";
                    guarded(err, [&] {
                        auto a = (r == s && is_identity(homs[h])) ? duplicate(r, j) : amalgamate(r, s, homs[h], j);
                        g.amalgams.push_back({id, std::move(a)});
                    });
                    if (err.status != Status::Pass) g.errors.push_back(std::move(err));
                }
        }
    }
    for (std::size_t n = 2; n <= spec.trivext_max; ++n) {
        auto r = make_zn(n);
        if (r->size() * r->size() > carrier_cap) {
            ++g.skipped_over_cap;
            continue;
        }
        auto te = trivial_extension_as_amalgam(r, make_regular_module(r));
        g.amalgams.push_back({"trivext-amalgam:" + te.amalgam.target()->name(), std::move(te.amalgam)});
    }
    return g;
}

std::vector<LemmaReport> verify_amalgam(const AmalgamationRing& a, const VerifyOptions& opts) {
    const auto c = AmalgamContext::build(a, opts.cap);
    std::vector<LemmaReport> out;
    out.push_back(verify_remark_spectrum(c));
    out.push_back(verify_lemma_unions(c, opts));
    out.push_back(verify_lemma_intersections(c, opts));
    out.push_back(verify_lemma_basic(c));

    // Family size 1 must reproduce the pairwise verdicts.
    {
        auto one = opts;
        one.family_size = 1;
        LemmaReport rep;
        rep.id = "singleton-family-agreement";
        rep.parts = {"unions-vs-pairs", "intersections-vs-pairs"};
        rep.instance = c.name;
        const bool basic = out[3].pass();
        const bool unions = verify_lemma_unions(c, one).pass();
        const bool inters = verify_lemma_intersections(c, one).pass();
        rep.checks = 2;
        rep.facts = {{"pairs", yes_no(basic)}, {"unions_k1", yes_no(unions)}, {"intersections_k1", yes_no(inters)}};
        if (unions != basic) rep.fail("unions-vs-pairs", "verdicts differ at family size 1");
        if (inters != basic) rep.fail("intersections-vs-pairs", "verdicts differ at family size 1");
        out.push_back(std::move(rep));
    }

    out.push_back(verify_theorem_pm(c));
    out.push_back(verify_cor_duplication(c));
    if (a.ideal().subset_of(c.jac_s)) out.push_back(verify_cor_jac(c));
    out.push_back(verify_transfer_cp(c, opts));
    out.push_back(verify_transfer_pz(c, opts));
    out.push_back(verify_cor_nil(c, opts));
    out.push_back(verify_cor_dup_pz(c, opts));
    out.push_back(verify_prop_cp_type1(c, opts));
    out.push_back(verify_prop_cp_type2(c, opts));

    LemmaReport cross;
    cross.id = "cross-layer-order";
    cross.parts = {"order-isomorphism", "abstract-criterion"};
    cross.instance = c.name;
    const auto data = extract_spectrum_data(c);
    if (auto m = cross_layer_mismatch(c)) cross.fail("order-isomorphism", *m);
    const auto abstract = theorem_pm_abstract_check(data);
    if (!abstract.pass()) cross.fail("abstract-criterion", *abstract.counterexample);
    if (abstract.left != is_pm(c.classified.carrier_spec).pm)
        cross.fail("abstract-criterion", "abstract and concrete pm verdicts differ");
    cross.checks = c.classified.primes.size() * c.classified.primes.size() + 1;
    cross.facts = {{"elements", std::to_string(c.classified.primes.size())}, {"abstract_pm", yes_no(abstract.left)}};
    out.push_back(std::move(cross));
    return out;
}

LemmaReport verify_spectrum_data(const AmalgamSpectrumData& d, const std::string& name) {
    LemmaReport rep;
    rep.id = "abstract-pm-criterion";
    rep.parts = {"equivalence", "max-description", "jacobson-form"};
    rep.instance = name;
    const auto check = theorem_pm_abstract_check(d);
    const auto a = build_amalgam_poset(d);
    rep.checks = a.poset.size() + check.counts.size();
    std::string maxima;
    for (auto m : a.poset.maximal_elements()) maxima += (maxima.empty() ? "" : ", ") + a.poset.labels[m];
    rep.facts = {{"elements", std::to_string(a.poset.size())},
                 {"maximal", "{" + maxima + "}"},
                 {"amalgam_pm", yes_no(check.left)},
                 {"criterion", yes_no(check.right)}};
    for (const auto& c : check.counts)
        rep.facts.emplace_back("count[" + c.q + "]", std::to_string(c.term_max_s) + "+" +
                                                         std::to_string(c.term_max_r) + "=" + std::to_string(c.total));
    if (check.pm_witness) rep.witness("equivalence", *check.pm_witness + " is not below a unique maximal element");
    if (!check.pass())
        rep.fail(check.max_description ? "equivalence" : "max-description", *check.counterexample);
    const auto jac = abstract_jacobson_check(d);
    rep.hypotheses = {{"kappa present", d.kappa.has_value()}, {"Max(PS) ⊆ VJ", jac.applicable}};
    if (jac.applicable && !jac.pass) rep.fail("jacobson-form", jac.detail);
    return rep;
}

LemmaReport verify_fuzz(std::uint64_t seed, std::size_t count, std::size_t max_size) {
    LemmaReport rep;
    rep.id = "abstract-pm-criterion-fuzz";
    rep.parts = {"validity", "equivalence", "max-description", "jacobson-form"};
    rep.instance = "fuzz seed=" + std::to_string(seed) + " count=" + std::to_string(count) +
                   " max_size=" + std::to_string(max_size);
    SpectrumFuzzer fuzz(seed, max_size);
    std::size_t pm = 0, with_kappa = 0, jac_applicable = 0, type2 = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto d = fuzz.next();
        ++rep.checks;
        const auto valid = validate_data(d);
        if (!valid.ok()) {
            rep.fail("validity", "instance " + std::to_string(i) + ": " + valid.violations.front().invariant + ": " +
                                     to_json(d).dump());
            continue;
        }
        const auto check = theorem_pm_abstract_check(d);
        pm += check.left;
        with_kappa += d.kappa.has_value();
        for (bool v : d.vj) type2 += !v;
        if (!check.pass())
            rep.fail(check.max_description ? "equivalence" : "max-description",
                     "instance " + std::to_string(i) + ": " + *check.counterexample + ": " + to_json(d).dump());
        const auto jac = abstract_jacobson_check(d);
        jac_applicable += jac.applicable;
        if (jac.applicable && !jac.pass)
            rep.fail("jacobson-form", "instance " + std::to_string(i) + ": " + jac.detail + ": " + to_json(d).dump());
    }
    rep.facts = {{"instances", std::to_string(count)},
                 {"pm", std::to_string(pm)},
                 {"not_pm", std::to_string(count - pm)},
                 {"with_kappa", std::to_string(with_kappa)},
                 {"jacobson_applicable", std::to_string(jac_applicable)},
                 {"type2_points", std::to_string(type2)}};
    return rep;
}

VerificationRun run_verification(const CorpusSpec& spec, const RunOptions& opts) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    VerifyOptions vo;
    vo.cap = opts.cap;
    vo.seed = opts.seed;
    vo.family_size = opts.family_size;

    VerificationRun run;
    auto g = generate_corpus(spec, opts.cap);
    run.skipped_over_cap = g.skipped_over_cap;
    if (opts.log)
        *opts.log << "corpus: " << g.rings.size() << " rings, " << g.amalgams.size() << " amalgamations, "
                  << g.skipped_over_cap << " skipped over cap (" << elapsed() << " s)\n";

    for (const auto& [id, r] : g.rings) {
        InstanceResult res;
        res.id = id;
        res.kind = "ring";
        res.name = r->name();
        guarded(res, [&] { res.reports.push_back(ground_truth(r, vo)); });
        run.instances.push_back(std::move(res));
    }
    for (auto& e : g.errors) run.instances.push_back(std::move(e));
    for (std::size_t n = 2; n <= spec.trivext_max; ++n) {
        InstanceResult res;
        auto r = make_zn(n);
        res.id = "trivext-pm:Z" + std::to_string(n);
        res.kind = "trivext";
        res.name = r->name() + "|x" + r->name();
        guarded(res, [&] { res.reports.push_back(verify_cor_trivext(r, make_regular_module(r), opts.cap)); });
        run.instances.push_back(std::move(res));
    }
    if (opts.log) *opts.log << "rings checked (" << elapsed() << " s)\n";
    for (const auto& [id, a] : g.amalgams) {
        InstanceResult res;
        res.id = id;
        res.kind = "amalgam";
        res.name = describe(a);
        guarded(res, [&] { res.reports = verify_amalgam(a, vo); });
        run.instances.push_back(std::move(res));
    }
    if (opts.log) *opts.log << "amalgamations checked (" << elapsed() << " s)\n";

    std::vector<std::pair<std::string, AmalgamSpectrumData>> data;
    if (spec.builtin_posets) {
        data.emplace_back("not-pm-shared-prime", fixture_not_pm_shared_prime());
        data.emplace_back("pm-antichain-duplication", fixture_pm_antichain_duplication());
    }
    for (const auto& path : spec.poset_files) {
        InstanceResult res;
        res.id = "specdata:" + path;
        res.kind = "specdata";
        res.name = path;
        guarded(res, [&] {
            auto doc = load_document(path);
            auto d = std::get_if<AmalgamSpectrumData>(&doc.subject());
            if (!d) throw InputError(path + ": subject is not spectrum data");
            res.reports.push_back(verify_spectrum_data(*d, path));
        });
        run.instances.push_back(std::move(res));
    }
    for (const auto& [name, d] : data) {
        InstanceResult res;
        res.id = "specdata:" + name;
        res.kind = "specdata";
        res.name = name;
        guarded(res, [&] { res.reports.push_back(verify_spectrum_data(d, name)); });
        run.instances.push_back(std::move(res));
    }
    if (spec.fuzz_count > 0) {
        InstanceResult res;
        res.id = "fuzz:" + std::to_string(spec.fuzz_seed);
        res.kind = "fuzz";
        res.name = "random spectrum data";
        guarded(res, [&] { res.reports.push_back(verify_fuzz(spec.fuzz_seed, spec.fuzz_count, spec.fuzz_max_size)); });
        run.instances.push_back(std::move(res));
    }
    if (opts.log) *opts.log << "abstract layer checked (" << elapsed() << " s)\n";

    run.exit_code = exit_code_for(run.instances);
    Json instances = Json::array();
    std::map<std::string, std::size_t> by_kind;
    std::map<std::string, std::size_t> by_status;
    std::size_t reports = 0, failed = 0, trivial = 0, inapplicable = 0;
    for (const auto& r : run.instances) {
        instances.push_back(instance_json(r));
        ++by_kind[r.kind];
        ++by_status[status_name(r.status)];
        for (const auto& rep : r.reports) {
            ++reports;
            failed += !rep.pass();
            trivial += rep.finite_scale_trivial;
            inapplicable += !rep.applicable;
        }
    }
    Json summary;
    summary["instances"] = run.instances.size();
    summary["by_kind"] = by_kind;
    summary["by_status"] = by_status;
    summary["reports"] = reports;
    summary["failed_reports"] = failed;
    summary["finite_scale_trivial_reports"] = trivial;
    summary["inapplicable_reports"] = inapplicable;
    summary["skipped_over_cap"] = run.skipped_over_cap;
    summary["verdict"] = run.exit_code == 0 ? "pass" : "fail";
    summary["exit_code"] = run.exit_code;

    run.report["corpus"] = to_json(spec);
    run.report["options"] = Json{{"cap", opts.cap}, {"seed", opts.seed}, {"family_size", opts.family_size}};
    run.report["summary"] = std::move(summary);
    run.report["instances"] = std::move(instances);
    if (opts.log) *opts.log << "total " << elapsed() << " s\n";
    return run;
}

}  // namespace bowtie
