#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bowtie/corpus.hpp"
#include "bowtie/dot.hpp"
#include "bowtie/error.hpp"
#include "bowtie/serialize.hpp"

using namespace bowtie;

namespace {

enum Exit { kPass = 0, kViolation = 1, kInput = 2, kCap = 3 };

struct Flags {
    std::string input;
    std::string dot;
    std::string json;
    std::string corpus;
    std::uint64_t seed = 0;
    std::size_t cap = kDefaultEnumerationCap;
    std::size_t family_size = 0;

    VerifyOptions verify() const {
        VerifyOptions v;
        v.cap = cap;
        v.seed = seed;
        v.family_size = family_size;
        return v;
    }
};

void write_out(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot write");
    out << text;
}

bool json_to_stdout(const Flags& f) { return f.json == "-"; }

void emit_json(const Flags& f, const Json& j) {
    if (!f.json.empty()) write_out(f.json, j.dump(2) + "\n");
}

const Object& subject_of(const Document& doc) { return doc.subject(); }

Document load(const Flags& f) {
    if (f.input.empty()) throw InputError("--input is required");
    return load_document(f.input);
}

struct SpecView {
    std::string text;
    Json json;
    std::string dot;
};

// Spectrum listing, JSON and Hasse diagram for any subject.
SpecView render_spec(const Object& o, std::size_t cap) {
    SpecView v;
    std::ostringstream text;
    if (auto r = std::get_if<RingPtr>(&o)) {
        const auto s = spec(*r, cap);
        text << "Spec(" << (*r)->name() << "): " << s.size() << (s.size() == 1 ? " prime\n" : " primes\n");
        Json primes = Json::array();
        for (std::size_t k = 0; k < s.size(); ++k) {
            text << "  " << std::left << std::setw(12) << ideal_label(s.primes[k]) << ideal_members_string(s.primes[k])
                 << (s.maximal[k] ? "  maximal" : "") << "\n";
            primes.push_back(Json{{"label", ideal_label(s.primes[k])},
                                  {"members", s.primes[k].members().members()},
                                  {"maximal", bool(s.maximal[k])}});
        }
        v.json = Json{{"ring", (*r)->name()}, {"primes", std::move(primes)}};
        v.dot = hasse_dot(inclusion_poset(s), "Spec " + (*r)->name());
    } else if (auto a = std::get_if<AmalgamationRing>(&o)) {
        const auto c = classify_spectrum(*a, cap);
        text << "Spec(" << a->carrier()->name() << "): " << c.primes.size()
             << (c.primes.size() == 1 ? " prime (" : " primes (") << c.type1_count() << " type 1, "
             << c.type2_count() << " type 2)\n";
        Json primes = Json::array();
        std::vector<std::string> labels(c.carrier_spec.size());
        std::vector<PrimeType> tags(c.carrier_spec.size());
        for (std::size_t k = 0; k < c.primes.size(); ++k) {
            const auto& t = c.primes[k];
            labels[c.carrier_index[k]] = t.label();
            tags[c.carrier_index[k]] = t.tag;
            text << "  " << std::left << std::setw(12) << t.label() << ideal_members_string(t.ideal)
                 << (t.maximal ? "  maximal" : "") << "\n";
            primes.push_back(Json{{"label", t.label()},
                                  {"type", t.tag == PrimeType::Type1 ? 1 : 2},
                                  {"source", ideal_label(t.source_ideal)},
                                  {"members", t.ideal.members().members()},
                                  {"maximal", t.maximal}});
        }
        v.json = Json{{"amalgam", describe(*a)}, {"primes", std::move(primes)}};
        v.dot = hasse_dot(inclusion_poset(c.carrier_spec, labels), "Spec " + a->carrier()->name(), tags);
    } else if (auto d = std::get_if<AmalgamSpectrumData>(&o)) {
        const auto a = build_amalgam_poset(*d);
        text << "abstract amalgam spectrum: " << a.poset.size() << " elements\n";
        Json elems = Json::array();
        for (std::size_t k = 0; k < a.poset.size(); ++k) {
            text << "  " << a.poset.labels[k] << (a.poset.is_maximal(k) ? "  maximal" : "") << "\n";
            elems.push_back(Json{{"label", a.poset.labels[k]}, {"maximal", a.poset.is_maximal(k)}});
        }
        v.json = Json{{"elements", std::move(elems)}, {"poset", to_json(a.poset)}};
        v.dot = hasse_dot(a, "amalgam spectrum");
    } else if (auto p = std::get_if<SpectralPoset>(&o)) {
        text << "poset: " << p->size() << " elements\n";
        for (std::size_t k = 0; k < p->size(); ++k)
            text << "  " << p->labels[k] << (p->is_maximal(k) ? "  maximal" : "") << "\n";
        v.json = to_json(*p);
        v.dot = hasse_dot(*p, "poset");
    } else {
        throw InputError("subject must be a ring, amalgam, poset or specdata, not " + kind_of(o));
    }
    v.text = text.str();
    return v;
}

int cmd_spec(const Flags& f) {
    auto doc = load(f);
    const auto v = render_spec(subject_of(doc), f.cap);
    if (!json_to_stdout(f) && f.dot != "-") std::cout << v.text;
    emit_json(f, v.json);
    if (!f.dot.empty()) write_out(f.dot, v.dot);
    return kPass;
}

int cmd_build(const Flags& f) {
    auto doc = load(f);
    const auto j = to_json(subject_of(doc));
    write_out(f.json.empty() ? "-" : f.json, j.dump(2) + "\n");
    if (!f.json.empty() && f.json != "-")
        std::cerr << "wrote " << kind_of(subject_of(doc)) << " to " << f.json << "\n";
    return kPass;
}

int print_report(const Flags& f, const LemmaReport& rep) {
    if (!json_to_stdout(f)) {
        std::cout << rep.id << " on " << rep.instance << ": " << (rep.pass() ? "pass" : "FAIL") << "\n";
        if (!rep.applicable) std::cout << "  not applicable\n";
        if (rep.finite_scale_trivial) std::cout << "  finite-scale trivial: every finite ring has this property\n";
        for (const auto& [k, v] : rep.facts) std::cout << "  " << k << " = " << v << "\n";
        for (const auto& w : rep.witnesses) std::cout << "  witness [" << w.part << "] " << w.text << "\n";
        if (rep.counterexample)
            std::cout << "  counterexample [" << rep.counterexample->part << "] " << rep.counterexample->text << "\n";
    }
    emit_json(f, to_json(rep));
    return rep.pass() ? kPass : kViolation;
}

int cmd_pm(const Flags& f) {
    auto doc = load(f);
    const auto& o = subject_of(doc);
    if (auto r = std::get_if<RingPtr>(&o)) {
        const auto s = spec(*r, f.cap);
        const auto pm = is_pm(s);
        Json j{{"ring", (*r)->name()}, {"pm", pm.pm}};
        if (!json_to_stdout(f)) std::cout << (*r)->name() << ": " << (pm.pm ? "pm" : "not pm") << "\n";
        if (pm.witness) {
            const auto w = ideal_label(s.primes[*pm.witness]);
            j["witness"] = w;
            if (!json_to_stdout(f)) std::cout << "  witness " << w << "\n";
        }
        emit_json(f, j);
        return kPass;
    }
    if (auto a = std::get_if<AmalgamationRing>(&o)) {
        const auto c = AmalgamContext::build(*a, f.cap);
        return print_report(f, verify_theorem_pm(c));
    }
    if (auto d = std::get_if<AmalgamSpectrumData>(&o)) {
        const auto check = theorem_pm_abstract_check(*d);
        if (!json_to_stdout(f)) {
            std::cout << (check.left ? "pm" : "not pm") << "\n";
            if (check.pm_witness) std::cout << "  witness " << *check.pm_witness << "\n";
            for (const auto& c : check.counts)
                std::cout << "  count(" << c.q << ") = " << c.term_max_s << " + " << c.term_max_r << " = " << c.total
                          << "\n";
            std::cout << "  criterion " << (check.right ? "holds" : "fails") << "\n";
        }
        Json counts = Json::array();
        for (const auto& c : check.counts) counts.push_back(to_json(c));
        Json j{{"pm", check.left}, {"criterion", check.right}, {"counts", std::move(counts)}};
        j["witness"] = check.pm_witness ? Json(*check.pm_witness) : Json(nullptr);
        j["verdict"] = check.pass() ? "pass" : "fail";
        emit_json(f, j);
        if (!check.pass()) {
            std::cerr << "theorem violation: " << *check.counterexample << "\n";
            return kViolation;
        }
        return kPass;
    }
    if (auto p = std::get_if<SpectralPoset>(&o)) {
        const auto pm = poset_is_pm(*p);
        if (!json_to_stdout(f)) {
            std::cout << (pm.pm ? "pm" : "not pm") << "\n";
            if (pm.witness) std::cout << "  witness " << p->labels[*pm.witness] << "\n";
        }
        emit_json(f, Json{{"pm", pm.pm}, {"witness", pm.witness ? Json(p->labels[*pm.witness]) : Json(nullptr)}});
        return kPass;
    }
    throw InputError("pm: subject must be a ring, amalgam, poset or specdata");
}

int cmd_cp_pz(const Flags& f, bool cp) {
    auto doc = load(f);
    const auto& o = subject_of(doc);
    const auto opts = f.verify();
    const char* what = cp ? "compactly packed" : "properly zipped";
    if (auto r = std::get_if<RingPtr>(&o)) {
        const auto s = spec(*r, f.cap);
        const auto res = cp ? compactly_packed_decide(s, s.primes, opts) : properly_zipped_decide(s, opts);
        if (!json_to_stdout(f)) {
            std::cout << (*r)->name() << ": " << (res.holds ? "" : "not ") << what
                      << " (finite ring: holds automatically)\n";
            for (const auto& w : res.witnesses) std::cout << "  witness " << w.text << "\n";
        }
        auto j = to_json(res);
        j["finite_scale_trivial"] = true;
        emit_json(f, j);
        return res.holds ? kPass : kViolation;
    }
    if (auto a = std::get_if<AmalgamationRing>(&o)) {
        const auto c = AmalgamContext::build(*a, f.cap);
        return print_report(f, cp ? verify_transfer_cp(c, opts) : verify_transfer_pz(c, opts));
    }
    throw InputError(std::string(cp ? "cp" : "pz") + ": subject must be a ring or an amalgam");
}

// Canonical JSON with --json, the Hasse diagram with --dot; DOT on stdout
// when neither is given.
int cmd_export(const Flags& f) {
    auto doc = load(f);
    const auto& o = subject_of(doc);
    if (!f.json.empty()) write_out(f.json, to_json(o).dump(2) + "\n");
    if (!f.dot.empty() || f.json.empty()) write_out(f.dot.empty() ? "-" : f.dot, render_spec(o, f.cap).dot);
    return kPass;
}

int cmd_verify(const Flags& f) {
    auto spec = f.corpus.empty() ? default_corpus() : corpus_from_json(load_json(f.corpus));
    RunOptions ro;
    ro.cap = f.cap;
    ro.seed = f.seed;
    ro.family_size = f.family_size;
    ro.log = &std::cerr;
    auto run = run_verification(spec, ro);
    emit_json(f, run.report);
    if (!json_to_stdout(f)) {
        const auto& s = run.report["summary"];
        std::cout << "instances: " << s["instances"] << " " << s["by_kind"].dump() << "\n";
        std::cout << "reports: " << s["reports"] << ", failed: " << s["failed_reports"]
                  << ", finite-scale trivial: " << s["finite_scale_trivial_reports"]
                  << ", not applicable: " << s["inapplicable_reports"] << "\n";
        std::cout << "status: " << s["by_status"].dump() << "\n";
        for (const auto& r : run.instances) {
            if (r.status == Status::Pass) continue;
            std::cout << status_name(r.status) << ": " << r.id;
            if (!r.error.empty()) std::cout << ": " << r.error;
            std::cout << "\n";
            for (const auto& rep : r.reports)
                if (rep.counterexample)
                    std::cout << "  " << rep.id << " [" << rep.counterexample->part << "] " << rep.counterexample->text
                              << "\n";
        }
        std::cout << "verdict: " << s["verdict"].get<std::string>() << "\n";
    }
    return run.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite ring amalgamations: spectra, pm, compactly packed and properly zipped checks"};
    app.require_subcommand(1);
    Flags flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input,-i", flags.input, "Input JSON document");
        sub->add_option("--dot", flags.dot, "Write a Hasse diagram in DOT ('-' for stdout)");
        sub->add_option("--json", flags.json, "Write JSON output ('-' for stdout)");
        sub->add_option("--seed", flags.seed, "Seed for sampled families");
        sub->add_option("--cap", flags.cap, "Element cap for enumeration")->envname("BOWTIE_CAP");
        sub->add_option("--family-size", flags.family_size, "Largest family examined (0 = automatic)");
        sub->add_option("--corpus", flags.corpus, "Corpus spec JSON for verify");
    };
    std::vector<std::pair<CLI::App*, std::function<int()>>> cmds;
    auto add = [&](const char* name, const char* help, std::function<int()> fn) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        cmds.emplace_back(sub, std::move(fn));
    };
    add("build", "Construct and validate the input, print its canonical form", [&] { return cmd_build(flags); });
    add("spec", "List the prime spectrum (tagged for amalgamations)", [&] { return cmd_spec(flags); });
    add("pm", "Decide pm, with witnesses", [&] { return cmd_pm(flags); });
    add("cp", "Decide compactly packed, with witnesses", [&] { return cmd_cp_pz(flags, true); });
    add("pz", "Decide properly zipped, with witnesses", [&] { return cmd_cp_pz(flags, false); });
    add("verify", "Run the verification suite over a corpus", [&] { return cmd_verify(flags); });
    add("export", "Export the subject as DOT and/or canonical JSON", [&] { return cmd_export(flags); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kInput;
    }
    try {
        for (auto& [sub, fn] : cmds)
            if (sub->parsed()) return fn();
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return kViolation;
    } catch (const CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
