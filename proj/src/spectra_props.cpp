#include "bowtie/spectra_props.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"

namespace bowtie {
namespace {

using Family = std::vector<std::size_t>;
using Labeler = std::function<std::string(const IdealSet&)>;

ElementSet union_of(const std::vector<IdealSet>& ideals, const Family& f, std::size_t universe) {
    ElementSet u(universe);
    for (auto k : f) u |= ideals[k].members();
    return u;
}

ElementSet intersection_of(const std::vector<IdealSet>& ideals, const Family& f, std::size_t universe) {
    auto u = ElementSet::full(universe);
    for (auto k : f) u &= ideals[k].members();
    return u;
}

template <typename L>
std::string family_string(const Family& f, L&& label) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + label(f[i]);
    return s + "}";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<IdealSet> primes_at(const SpectrumList& s, const std::vector<std::size_t>& idx) {
    std::vector<IdealSet> out;
    for (auto k : idx) out.push_back(s.primes[k]);
    return out;
}

void push_witness(std::vector<Witness>& ws, std::string part, std::string text) {
    if (ws.size() < LemmaReport::kMaxWitnesses) ws.push_back({std::move(part), std::move(text)});
}

// (0, v) for some v in J outside every ideal of S in `avoid`, as a carrier
// element label; empty when there is none.
std::string zero_v_witness(const AmalgamContext& c, const ElementSet& avoid) {
    const auto& a = c.amalgam;
    std::string out;
    a.ideal().members().for_each([&](Elem v) {
        if (!out.empty() || avoid.test(v)) return;
        auto idx = a.index_of(a.base()->zero(), v);
        out = a.carrier()->label(idx);
    });
    return out;
}

LemmaReport make_report(const AmalgamContext& c, std::string id, std::vector<std::string> parts) {
    LemmaReport r;
    r.id = std::move(id);
    r.parts = std::move(parts);
    r.instance = c.name;
    return r;
}

Labeler carrier_labeler(const AmalgamContext& c) {
    auto labels = c.carrier_labels();
    const auto* spec = &c.classified.carrier_spec;
    return [labels, spec](const IdealSet& i) {
        auto k = spec->index_of(i);
        return k < labels.size() ? labels[k] : ideal_label(i);
    };
}

DecideResult cp_impl(const SpectrumList& spec_r, const std::vector<IdealSet>& x,
                     const VerifyOptions& opts, const Labeler& label) {
    DecideResult res;
    std::vector<IdealSet> probes;
    if (opts.cp_all_ideals) {
        for (auto& i : enumerate_ideals(spec_r.ring, opts.cap))
            if (i.is_proper()) probes.push_back(std::move(i));
    } else {
        probes = spec_r.primes;
    }
    const auto fams = families(x.size(), opts);
    const auto n = spec_r.ring->size();
    for (const auto& probe : probes) {
        ++res.probes;
        for (const auto& f : fams) {
            ++res.families;
            if (!probe.members().subset_of(union_of(x, f, n))) continue;
            auto hit = std::find_if(f.begin(), f.end(), [&](std::size_t k) { return probe.subset_of(x[k]); });
            auto fam = family_string(f, [&](std::size_t k) { return label(x[k]); });
            if (hit == f.end()) {
                res.holds = false;
                res.counterexample = Witness{"compactly-packed", label(probe) + " ⊆ ∪" + fam + " but lies in no member"};
                return res;
            }
            push_witness(res.witnesses, "compactly-packed", label(probe) + " ⊆ ∪" + fam + " lies in " + label(x[*hit]));
        }
    }
    return res;
}

DecideResult pz_impl(const SpectrumList& s, const VerifyOptions& opts, const Labeler& label) {
    DecideResult res;
    const auto fams = families(s.size(), opts);
    const auto n = s.ring->size();
    for (const auto& p : s.primes) {
        ++res.probes;
        for (const auto& f : fams) {
            ++res.families;
            if (!intersection_of(s.primes, f, n).subset_of(p.members())) continue;
            auto hit = std::find_if(f.begin(), f.end(), [&](std::size_t k) { return s.primes[k].subset_of(p); });
            auto fam = family_string(f, [&](std::size_t k) { return label(s.primes[k]); });
            if (hit == f.end()) {
                res.holds = false;
                res.counterexample = Witness{"properly-zipped", "∩" + fam + " ⊆ " + label(p) + " but no member is"};
                return res;
            }
            push_witness(res.witnesses, "properly-zipped",
                         "∩" + fam + " ⊆ " + label(p) + " via " + label(s.primes[*hit]));
        }
    }
    return res;
}

bool cp_off_vj(const AmalgamContext& c, const VerifyOptions& opts) {
    return cp_impl(c.classified.spec_s, primes_at(c.classified.spec_s, c.classified.off_vj), opts,
                   [](const IdealSet& i) { return ideal_label(i); })
        .holds;
}

}  // namespace

void LemmaReport::witness(std::string part, std::string text) {
    push_witness(witnesses, std::move(part), std::move(text));
}

void LemmaReport::fail(std::string part, std::string text) {
    if (!counterexample) counterexample = Witness{std::move(part), std::move(text)};
}

std::vector<std::vector<std::size_t>> families(std::size_t n, const VerifyOptions& opts) {
    std::vector<Family> out;
    if (n == 0) return out;
    auto k = opts.family_size ? opts.family_size : (n <= 12 ? n : 3);
    k = std::min(k, n);
    // Combinations by size, then lexicographically.
    for (std::size_t size = 1; size <= k; ++size) {
        Family f(size);
        for (std::size_t i = 0; i < size; ++i) f[i] = i;
        while (true) {
            out.push_back(f);
            std::size_t i = size;
            while (i > 0 && f[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++f[i - 1];
            for (std::size_t j = i; j < size; ++j) f[j] = f[j - 1] + 1;
        }
        if (out.size() > 4 * opts.family_budget) break;
    }
    if (out.size() > opts.family_budget) {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = out.size() - 1; i > 0; --i) std::swap(out[i], out[rng() % (i + 1)]);
        out.resize(opts.family_budget);
        std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
    }
    return out;
}

PmResult is_pm(const SpectrumList& s) {
    PmResult res;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::size_t> above;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s.maximal[j] && s.primes[i].subset_of(s.primes[j])) above.push_back(j);
        if (above.size() != 1) {
            res.pm = false;
            res.witness = i;
            res.witness_maxima = std::move(above);
            return res;
        }
    }
    return res;
}

PmResult is_pm(const RingPtr& r, std::size_t cap) { return is_pm(spec(r, cap)); }

AmalgamContext AmalgamContext::build(AmalgamationRing a, std::size_t cap) {
    AmalgamContext c;
    c.name = describe(a);
    c.classified = classify_spectrum(a, cap);
    for (std::size_t k = 0; k < c.classified.primes.size(); ++k) {
        const auto& t = c.classified.primes[k];
        (t.tag == PrimeType::Type1 ? c.type1 : c.type2).push_back(t.ideal);
    }
    for (auto k : c.classified.off_vj)
        c.contraction.push_back(preimage_ideal(a.hom(), ideal_sum(c.classified.spec_s.primes[k], a.ideal())));
    c.nil_s = nilradical(a.target());
    c.jac_s = jacobson(a.target(), cap);
    c.f_surjective = is_surjective(a.hom());
    c.amalgam = std::move(a);
    return c;
}

std::string AmalgamContext::t1_label(std::size_t k) const { return classified.primes[k].label(); }

std::string AmalgamContext::t2_label(std::size_t k) const {
    return classified.primes[classified.type1_count() + k].label();
}

std::vector<std::string> AmalgamContext::carrier_labels() const {
    std::vector<std::string> out(classified.carrier_spec.size());
    for (std::size_t k = 0; k < classified.primes.size(); ++k)
        out[classified.carrier_index[k]] = classified.primes[k].label();
    return out;
}

DagCount dag_count(const AmalgamContext& c, std::size_t k) {
    const auto& cs = c.classified;
    if (k >= cs.off_vj.size()) throw PreconditionError("dag_count: q must lie in Spec(S) \\ V(J)");
    const auto& q = c.q_of(k);
    DagCount d;
    d.q = ideal_label(q);
    for (std::size_t n = 0; n < cs.spec_s.size(); ++n)
        if (cs.spec_s.maximal[n] && q.subset_of(cs.spec_s.primes[n]) &&
            !c.amalgam.ideal().subset_of(cs.spec_s.primes[n]))
            ++d.term_max_s;
    for (std::size_t m = 0; m < cs.spec_r.size(); ++m)
        if (cs.spec_r.maximal[m] && c.contraction[k].subset_of(cs.spec_r.primes[m])) ++d.term_max_r;
    d.total = d.term_max_s + d.term_max_r;
    return d;
}

DagCount dag_count(const AmalgamationRing& a, const IdealSet& q, std::size_t cap) {
    if (q.ring() != a.target() || !q.is_proper() || !is_prime(q))
        throw PreconditionError("dag_count: q must be a prime of S");
    if (a.ideal().subset_of(q)) throw PreconditionError("dag_count: q contains J");
    const auto spec_s = spec(a.target(), cap);
    const auto spec_r = spec(a.base(), cap);
    const auto contraction = preimage_ideal(a.hom(), ideal_sum(q, a.ideal()));
    DagCount d;
    d.q = ideal_label(q);
    for (std::size_t n = 0; n < spec_s.size(); ++n)
        if (spec_s.maximal[n] && q.subset_of(spec_s.primes[n]) && !a.ideal().subset_of(spec_s.primes[n]))
            ++d.term_max_s;
    for (std::size_t m = 0; m < spec_r.size(); ++m)
        if (spec_r.maximal[m] && contraction.subset_of(spec_r.primes[m])) ++d.term_max_r;
    d.total = d.term_max_s + d.term_max_r;
    return d;
}

std::vector<DagCount> dag_counts(const AmalgamContext& c) {
    std::vector<DagCount> out;
    for (std::size_t k = 0; k < c.classified.off_vj.size(); ++k) out.push_back(dag_count(c, k));
    return out;
}

DecideResult compactly_packed_decide(const SpectrumList& spec_r, const std::vector<IdealSet>& x,
                                     const VerifyOptions& opts, const std::vector<std::string>& x_labels) {
    Labeler label = [&](const IdealSet& i) {
        if (!x_labels.empty()) {
            auto it = std::find(x.begin(), x.end(), i);
            if (it != x.end()) return x_labels[static_cast<std::size_t>(it - x.begin())];
        }
        return ideal_label(i);
    };
    return cp_impl(spec_r, x, opts, label);
}

DecideResult compactly_packed_decide(const RingPtr& r, const VerifyOptions& opts) {
    auto s = spec(r, opts.cap);
    return compactly_packed_decide(s, s.primes, opts);
}

DecideResult properly_zipped_decide(const SpectrumList& spec_r, const VerifyOptions& opts,
                                    const std::vector<std::string>& labels) {
    Labeler label = [&](const IdealSet& i) {
        if (!labels.empty()) {
            auto k = spec_r.index_of(i);
            if (k < labels.size()) return labels[k];
        }
        return ideal_label(i);
    };
    return pz_impl(spec_r, opts, label);
}

DecideResult properly_zipped_decide(const RingPtr& r, const VerifyOptions& opts) {
    return properly_zipped_decide(spec(r, opts.cap), opts);
}

LemmaReport verify_remark_spectrum(const AmalgamContext& c) {
    // classify_spectrum already threw on any mismatch; re-derive the counts
    // and the two radical criteria here.
    auto rep = make_report(c, "spectrum-description",
                           {"spec-bijection", "max-bijection", "no-type2-iff-J-in-nil", "no-type2-max-iff-J-in-jac"});
    const auto& cs = c.classified;
    rep.checks = cs.carrier_spec.size();
    if (cs.primes.size() != cs.carrier_spec.size())
        rep.fail("spec-bijection", "tagged and enumerated spectra differ in size");
    std::size_t carrier_max = 0;
    std::size_t remark_max = 0;
    std::size_t type2_max = 0;
    for (bool m : cs.carrier_spec.maximal) carrier_max += m;
    for (const auto& t : cs.primes) {
        const bool m = t.tag == PrimeType::Type1 ? cs.spec_r.maximal[t.source] : cs.spec_s.maximal[t.source];
        remark_max += m;
        if (m && t.tag == PrimeType::Type2) ++type2_max;
        rep.witness(t.tag == PrimeType::Type1 ? "type1" : "type2",
                    t.label() + " = " + ideal_members_string(t.ideal) + (t.maximal ? " (maximal)" : ""));
    }
    if (carrier_max != remark_max) rep.fail("max-bijection", "maximal counts differ");
    const bool j_in_nil = c.amalgam.ideal().subset_of(c.nil_s);
    const bool j_in_jac = c.amalgam.ideal().subset_of(c.jac_s);
    if (j_in_nil != (cs.type2_count() == 0))
        rep.fail("no-type2-iff-J-in-nil", "J ⊆ Nil(S) is " + yes_no(j_in_nil) + " but type 2 count is " +
                                               std::to_string(cs.type2_count()));
    if (j_in_jac != (type2_max == 0))
        rep.fail("no-type2-max-iff-J-in-jac", "J ⊆ Jac(S) is " + yes_no(j_in_jac) +
                                                   " but type 2 maximal count is " + std::to_string(type2_max));
    rep.facts.emplace_back("primes", std::to_string(cs.primes.size()));
    rep.facts.emplace_back("type1", std::to_string(cs.type1_count()));
    rep.facts.emplace_back("type2", std::to_string(cs.type2_count()));
    rep.facts.emplace_back("maximal", std::to_string(carrier_max));
    rep.facts.emplace_back("J_in_nil", yes_no(j_in_nil));
    rep.facts.emplace_back("J_in_jac", yes_no(j_in_jac));
    return rep;
}

LemmaReport verify_lemma_unions(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "prime-union-inclusions",
                           {"type1-in-type1-union", "type2-in-type2-union", "reverse-unions",
                            "type2-in-type1-union", "type1-not-in-type2-union"});
    const auto& cs = c.classified;
    const auto nr = c.amalgam.base()->size();
    const auto ns = c.amalgam.target()->size();
    const auto nc = c.amalgam.carrier()->size();
    const auto& pr = cs.spec_r.primes;
    const auto qs = primes_at(cs.spec_s, cs.off_vj);
    const auto fam_r = families(pr.size(), opts);
    const auto fam_s = families(qs.size(), opts);
    const bool cp_off = cp_off_vj(c, opts);
    const bool converse_ok = c.f_surjective || cp_off;
    rep.hypotheses = {{"f surjective", c.f_surjective}, {"Spec(S)\\V(J) compactly packed", cp_off}};
    rep.families = fam_r.size() + fam_s.size();
    auto t1 = [&](std::size_t k) { return c.t1_label(k); };
    auto t2 = [&](std::size_t k) { return c.t2_label(k); };

    for (std::size_t i = 0; i < pr.size(); ++i)
        for (const auto& f : fam_r) {
            rep.checks += 2;
            const bool down = pr[i].members().subset_of(union_of(pr, f, nr));
            const bool up = c.type1[i].members().subset_of(union_of(c.type1, f, nc));
            if (down != up)
                rep.fail("type1-in-type1-union", t1(i) + " vs ∪" + family_string(f, t1));
            const bool rdown = union_of(pr, f, nr).subset_of(pr[i].members());
            const bool rup = union_of(c.type1, f, nc).subset_of(c.type1[i].members());
            if (rdown != rup) rep.fail("reverse-unions", "∪" + family_string(f, t1) + " vs " + t1(i));
        }
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (const auto& f : fam_s) {
            rep.checks += 2;
            const bool down = qs[i].members().subset_of(union_of(qs, f, ns));
            const bool up = c.type2[i].members().subset_of(union_of(c.type2, f, nc));
            if (down && !up) rep.fail("type2-in-type2-union", t2(i) + " ⊄ ∪" + family_string(f, t2));
            if (converse_ok && up && !down)
                rep.fail("type2-in-type2-union", "converse fails for " + t2(i) + " and ∪" + family_string(f, t2));
            const bool rdown = union_of(qs, f, ns).subset_of(qs[i].members());
            const bool rup = union_of(c.type2, f, nc).subset_of(c.type2[i].members());
            if (rdown != rup) rep.fail("reverse-unions", "∪" + family_string(f, t2) + " vs " + t2(i));
        }
    for (std::size_t k = 0; k < qs.size(); ++k)
        for (const auto& f : fam_r) {
            ++rep.checks;
            const bool lifted = c.type2[k].members().subset_of(union_of(c.type1, f, nc));
            const bool criterion = c.contraction[k].members().subset_of(union_of(pr, f, nr));
            if (lifted != criterion)
                rep.fail("type2-in-type1-union", t2(k) + " vs ∪" + family_string(f, t1) + ": lifted " +
                                                     yes_no(lifted) + ", preimage criterion " + yes_no(criterion));
            else if (!lifted)
                rep.witness("type2-in-type1-union", "f^-1(" + ideal_label(qs[k]) + "+J) = " +
                                                        ideal_members_string(c.contraction[k]) + " ⊄ ∪" +
                                                        family_string(f, t1));
        }
    if (cp_off) {
        for (std::size_t i = 0; i < pr.size(); ++i)
            for (const auto& f : fam_s) {
                ++rep.checks;
                if (c.type1[i].members().subset_of(union_of(c.type2, f, nc))) {
                    rep.fail("type1-not-in-type2-union", t1(i) + " ⊆ ∪" + family_string(f, t2));
                    continue;
                }
                auto w = zero_v_witness(c, union_of(qs, f, ns));
                if (w.empty())
                    rep.fail("type1-not-in-type2-union", "no v in J outside ∪" + family_string(f, t2));
                else
                    rep.witness("type1-not-in-type2-union", w + " ∈ " + t1(i) + " \\ ∪" + family_string(f, t2));
            }
    }
    return rep;
}

LemmaReport verify_lemma_intersections(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "prime-intersection-inclusions",
                           {"type1-intersection-in-type1", "type1-in-type1-intersection",
                            "type2-intersection-in-type2", "type2-in-type2-intersection",
                            "type2-intersection-in-type1", "type1-intersection-not-in-type2"});
    const auto& cs = c.classified;
    const auto& a = c.amalgam;
    const auto nr = a.base()->size();
    const auto ns = a.target()->size();
    const auto nc = a.carrier()->size();
    const auto& pr = cs.spec_r.primes;
    const auto qs = primes_at(cs.spec_s, cs.off_vj);
    const auto fam_r = families(pr.size(), opts);
    const auto fam_s = families(qs.size(), opts);
    const bool cp_off = cp_off_vj(c, opts);
    const bool converse_ok = c.f_surjective || cp_off;
    rep.hypotheses = {{"f surjective", c.f_surjective}, {"Spec(S)\\V(J) compactly packed", cp_off}};
    rep.families = fam_r.size() + fam_s.size();
    auto t1 = [&](std::size_t k) { return c.t1_label(k); };
    auto t2 = [&](std::size_t k) { return c.t2_label(k); };

    for (const auto& f : fam_r) {
        const auto down = intersection_of(pr, f, nr);
        const auto up = intersection_of(c.type1, f, nc);
        for (std::size_t i = 0; i < pr.size(); ++i) {
            rep.checks += 2;
            if (down.subset_of(pr[i].members()) != up.subset_of(c.type1[i].members()))
                rep.fail("type1-intersection-in-type1", "∩" + family_string(f, t1) + " vs " + t1(i));
            if (pr[i].members().subset_of(down) != c.type1[i].members().subset_of(up))
                rep.fail("type1-in-type1-intersection", t1(i) + " vs ∩" + family_string(f, t1));
        }
        for (std::size_t k = 0; k < qs.size(); ++k) {
            ++rep.checks;
            if (up.subset_of(c.type2[k].members())) {
                rep.fail("type1-intersection-not-in-type2", "∩" + family_string(f, t1) + " ⊆ " + t2(k));
                continue;
            }
            auto w = zero_v_witness(c, qs[k].members());
            if (w.empty())
                rep.fail("type1-intersection-not-in-type2", "no v in J \\ " + ideal_label(qs[k]));
            else
                rep.witness("type1-intersection-not-in-type2", w + " ∈ ∩" + family_string(f, t1) + " \\ " + t2(k));
        }
    }
    for (const auto& f : fam_s) {
        const auto down = intersection_of(qs, f, ns);
        const auto up = intersection_of(c.type2, f, nc);
        for (std::size_t i = 0; i < qs.size(); ++i) {
            rep.checks += 2;
            if (down.subset_of(qs[i].members()) != up.subset_of(c.type2[i].members()))
                rep.fail("type2-intersection-in-type2", "∩" + family_string(f, t2) + " vs " + t2(i));
            const bool sdown = qs[i].members().subset_of(down);
            const bool sup = c.type2[i].members().subset_of(up);
            if (sdown && !sup) rep.fail("type2-in-type2-intersection", t2(i) + " vs ∩" + family_string(f, t2));
            if (converse_ok && sup && !sdown)
                rep.fail("type2-in-type2-intersection", "converse fails for " + t2(i) + " and ∩" + family_string(f, t2));
        }
        // f^{-1}(∩ q_α + J)
        const auto meet = IdealSet::trusted(a.target(), down);
        const auto criterion = preimage_ideal(a.hom(), ideal_sum(meet, a.ideal()));
        for (std::size_t i = 0; i < pr.size(); ++i) {
            ++rep.checks;
            const bool lifted = up.subset_of(c.type1[i].members());
            const bool pre = criterion.subset_of(pr[i]);
            if (lifted != pre)
                rep.fail("type2-intersection-in-type1", "∩" + family_string(f, t2) + " vs " + t1(i) + ": lifted " +
                                                            yes_no(lifted) + ", preimage criterion " + yes_no(pre));
        }
    }
    return rep;
}

LemmaReport verify_lemma_basic(const AmalgamContext& c) {
    auto rep = make_report(c, "prime-pair-inclusions",
                           {"type1-pairs", "type2-pairs", "type2-in-type1", "type1-not-in-type2"});
    const auto& pr = c.classified.spec_r.primes;
    const auto qs = primes_at(c.classified.spec_s, c.classified.off_vj);
    for (std::size_t i = 0; i < pr.size(); ++i)
        for (std::size_t j = 0; j < pr.size(); ++j) {
            ++rep.checks;
            if (pr[i].subset_of(pr[j]) != c.type1[i].subset_of(c.type1[j]))
                rep.fail("type1-pairs", c.t1_label(i) + " vs " + c.t1_label(j));
        }
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = 0; j < qs.size(); ++j) {
            ++rep.checks;
            if (qs[i].subset_of(qs[j]) != c.type2[i].subset_of(c.type2[j]))
                rep.fail("type2-pairs", c.t2_label(i) + " vs " + c.t2_label(j));
        }
    for (std::size_t k = 0; k < qs.size(); ++k)
        for (std::size_t i = 0; i < pr.size(); ++i) {
            rep.checks += 2;
            const bool lifted = c.type2[k].subset_of(c.type1[i]);
            const bool criterion = c.contraction[k].subset_of(pr[i]);
            if (lifted != criterion) rep.fail("type2-in-type1", c.t2_label(k) + " vs " + c.t1_label(i));
            else if (!lifted)
                rep.witness("type2-in-type1", "f^-1(" + ideal_label(qs[k]) + "+J) = " +
                                                  ideal_members_string(c.contraction[k]) + " ⊄ " +
                                                  ideal_label(pr[i]));
            if (c.type1[i].subset_of(c.type2[k]))
                rep.fail("type1-not-in-type2", c.t1_label(i) + " ⊆ " + c.t2_label(k));
        }
    return rep;
}

LemmaReport verify_theorem_pm(const AmalgamContext& c) {
    auto rep = make_report(c, "pm-criterion", {"equivalence", "counting-total-one"});
    const auto left = is_pm(c.classified.carrier_spec);
    const auto pm_r = is_pm(c.classified.spec_r);
    const auto counts = dag_counts(c);
    bool all_one = true;
    for (const auto& d : counts) {
        all_one = all_one && d.total == 1;
        rep.facts.emplace_back("count[" + d.q + "]", std::to_string(d.term_max_s) + "+" +
                                                         std::to_string(d.term_max_r) + "=" + std::to_string(d.total));
    }
    const bool right = pm_r.pm && all_one;
    rep.checks = counts.size() + 2;
    rep.facts.emplace_back("carrier_pm", yes_no(left.pm));
    rep.facts.emplace_back("R_pm", yes_no(pm_r.pm));
    rep.facts.emplace_back("criterion", yes_no(right));
    if (!left.pm) {
        const auto labels = c.carrier_labels();
        rep.witness("equivalence", labels[*left.witness] + " lies under " +
                                       std::to_string(left.witness_maxima.size()) + " maximal ideals");
    }
    if (left.pm != right)
        rep.fail("equivalence", "carrier pm = " + yes_no(left.pm) + " but criterion = " + yes_no(right));
    // Every finite ring is pm, so the criterion forces each total to be 1.
    if (!all_one) rep.fail("counting-total-one", "some q has count != 1 on a finite carrier");
    return rep;
}

LemmaReport verify_cor_duplication(const AmalgamContext& c) {
    auto rep = make_report(c, "pm-duplication", {"equivalence", "terms-count-all-maxima"});
    rep.hypotheses = {{"duplication (S = R, f = id)", c.amalgam.is_duplication()}};
    if (!c.amalgam.is_duplication()) {
        rep.applicable = false;
        return rep;
    }
    const bool left = is_pm(c.classified.carrier_spec).pm;
    const bool right = is_pm(c.classified.spec_r).pm;
    rep.facts = {{"carrier_pm", yes_no(left)}, {"R_pm", yes_no(right)}};
    ++rep.checks;
    if (left != right) rep.fail("equivalence", "R⋈I pm = " + yes_no(left) + ", R pm = " + yes_no(right));
    // For a duplication the two terms together count every maximal ideal over q.
    const auto& ss = c.classified.spec_s;
    for (std::size_t k = 0; k < c.classified.off_vj.size(); ++k) {
        ++rep.checks;
        const auto d = dag_count(c, k);
        std::size_t over = 0;
        for (std::size_t n = 0; n < ss.size(); ++n) over += ss.maximal[n] && c.q_of(k).subset_of(ss.primes[n]);
        if (d.total != over)
            rep.fail("terms-count-all-maxima", d.q + ": total " + std::to_string(d.total) + " vs " +
                                                   std::to_string(over) + " maximal ideals");
        else
            rep.witness("terms-count-all-maxima", d.q + ": " + std::to_string(over) + " maximal ideal(s)");
    }
    return rep;
}

LemmaReport verify_cor_duplication(const RingPtr& r, const IdealSet& i, std::size_t cap) {
    return verify_cor_duplication(AmalgamContext::build(duplicate(r, i), cap));
}

LemmaReport verify_cor_jac(const AmalgamContext& c) {
    if (!c.amalgam.ideal().subset_of(c.jac_s))
        throw PreconditionError("verify_cor_jac: J is not contained in Jac(S) for " + c.name);
    auto rep = make_report(c, "pm-jacobson", {"equivalence", "first-term-zero", "no-type2-maximal"});
    rep.hypotheses = {{"J ⊆ Jac(S)", true}};
    const bool left = is_pm(c.classified.carrier_spec).pm;
    const bool right = is_pm(c.classified.spec_r).pm;
    rep.facts = {{"carrier_pm", yes_no(left)}, {"R_pm", yes_no(right)}};
    ++rep.checks;
    if (left != right) rep.fail("equivalence", "carrier pm = " + yes_no(left) + ", R pm = " + yes_no(right));
    for (const auto& d : dag_counts(c)) {
        ++rep.checks;
        if (d.term_max_s != 0) rep.fail("first-term-zero", d.q + " has a maximal ideal over it avoiding J");
    }
    for (const auto& t : c.classified.primes)
        if (t.tag == PrimeType::Type2 && t.maximal) rep.fail("no-type2-maximal", t.label() + " is maximal");
    return rep;
}

LemmaReport verify_cor_trivext(const RingPtr& r, const ModulePtr& m, std::size_t cap) {
    auto te = trivial_extension_as_amalgam(r, m);
    auto ext = te.amalgam.target();
    LemmaReport rep;
    rep.id = "pm-trivial-extension";
    rep.parts = {"equivalence", "square-zero", "amalgam-agrees"};
    rep.instance = ext->name();
    const auto& j = te.amalgam.ideal();
    const bool square_zero = ideal_product(j, j).is_zero();
    rep.hypotheses = {{"J^2 = 0", square_zero}};
    if (!square_zero) rep.fail("square-zero", "({0}×M)^2 != 0");
    const bool left = is_pm(ext, cap).pm;
    const bool right = is_pm(r, cap).pm;
    const bool carrier = is_pm(te.amalgam.carrier(), cap).pm;
    rep.facts = {{"trivext_pm", yes_no(left)}, {"R_pm", yes_no(right)}, {"amalgam_pm", yes_no(carrier)}};
    rep.checks = 3;
    if (left != right) rep.fail("equivalence", "R⋉M pm = " + yes_no(left) + ", R pm = " + yes_no(right));
    if (carrier != left) rep.fail("amalgam-agrees", "isomorphic rings disagree on pm");
    return rep;
}

LemmaReport verify_transfer_cp(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "cp-transfer", {"carrier-cp-implies-R-and-offVJ-cp"});
    rep.finite_scale_trivial = true;
    const auto cp_carrier =
        cp_impl(c.classified.carrier_spec, c.classified.carrier_spec.primes, opts, carrier_labeler(c));
    const auto cp_r = compactly_packed_decide(c.classified.spec_r, c.classified.spec_r.primes, opts);
    const bool cp_off = cp_off_vj(c, opts);
    rep.families = cp_carrier.families + cp_r.families;
    rep.checks = cp_carrier.probes + cp_r.probes;
    rep.facts = {{"carrier_cp", yes_no(cp_carrier.holds)},
                 {"R_cp", yes_no(cp_r.holds)},
                 {"offVJ_cp", yes_no(cp_off)},
                 {"scope", "finite rings only; infinite-spectrum phenomena are not representable"}};
    for (const auto& w : cp_carrier.witnesses) rep.witness("carrier", w.text);
    if (cp_carrier.holds && !(cp_r.holds && cp_off))
        rep.fail("carrier-cp-implies-R-and-offVJ-cp", "carrier is compactly packed but a factor is not");
    return rep;
}

LemmaReport verify_transfer_pz(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "pz-transfer", {"carrier-pz-implies-R-pz", "R-pz-implies-carrier-pz"});
    rep.finite_scale_trivial = true;
    rep.hypotheses = {{"f surjective", c.f_surjective}};
    auto labels = c.carrier_labels();
    const auto pz_carrier = properly_zipped_decide(c.classified.carrier_spec, opts, labels);
    const auto pz_r = properly_zipped_decide(c.classified.spec_r, opts);
    rep.families = pz_carrier.families + pz_r.families;
    rep.checks = pz_carrier.probes + pz_r.probes;
    rep.facts = {{"carrier_pz", yes_no(pz_carrier.holds)}, {"R_pz", yes_no(pz_r.holds)}};
    for (const auto& w : pz_carrier.witnesses) rep.witness("carrier", w.text);
    if (pz_carrier.holds && !pz_r.holds) rep.fail("carrier-pz-implies-R-pz", "R is not properly zipped");
    if (c.f_surjective && pz_r.holds && !pz_carrier.holds)
        rep.fail("R-pz-implies-carrier-pz", pz_carrier.counterexample ? pz_carrier.counterexample->text : "");
    return rep;
}

LemmaReport verify_cor_nil(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "nil-transfer", {"no-type2", "cp-equivalence", "pz-equivalence"});
    rep.finite_scale_trivial = true;
    const bool j_in_nil = c.amalgam.ideal().subset_of(c.nil_s);
    rep.hypotheses = {{"J ⊆ Nil(S)", j_in_nil}};
    if (!j_in_nil) {
        rep.applicable = false;
        return rep;
    }
    if (c.classified.type2_count() != 0) rep.fail("no-type2", "type 2 primes exist although J ⊆ Nil(S)");
    const auto& carrier = c.classified.carrier_spec;
    const auto& sr = c.classified.spec_r;
    const bool cp_carrier = compactly_packed_decide(carrier, carrier.primes, opts).holds;
    const bool cp_r = compactly_packed_decide(sr, sr.primes, opts).holds;
    const bool pz_carrier = properly_zipped_decide(carrier, opts).holds;
    const bool pz_r = properly_zipped_decide(sr, opts).holds;
    rep.checks = 4;
    rep.facts = {{"carrier_cp", yes_no(cp_carrier)},
                 {"R_cp", yes_no(cp_r)},
                 {"carrier_pz", yes_no(pz_carrier)},
                 {"R_pz", yes_no(pz_r)}};
    if (cp_carrier != cp_r) rep.fail("cp-equivalence", "carrier cp = " + yes_no(cp_carrier) + ", R cp = " + yes_no(cp_r));
    if (pz_carrier != pz_r) rep.fail("pz-equivalence", "carrier pz = " + yes_no(pz_carrier) + ", R pz = " + yes_no(pz_r));
    return rep;
}

LemmaReport verify_cor_dup_pz(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "pz-duplication", {"equivalence"});
    rep.finite_scale_trivial = true;
    rep.hypotheses = {{"duplication (S = R, f = id)", c.amalgam.is_duplication()}};
    if (!c.amalgam.is_duplication()) {
        rep.applicable = false;
        return rep;
    }
    const bool left = properly_zipped_decide(c.classified.carrier_spec, opts).holds;
    const bool right = properly_zipped_decide(c.classified.spec_r, opts).holds;
    rep.checks = 2;
    rep.facts = {{"carrier_pz", yes_no(left)}, {"R_pz", yes_no(right)}};
    if (left != right) rep.fail("equivalence", "R⋈I pz = " + yes_no(left) + ", R pz = " + yes_no(right));
    return rep;
}

LemmaReport verify_cor_dup_pz(const RingPtr& r, const IdealSet& i, const VerifyOptions& opts) {
    return verify_cor_dup_pz(AmalgamContext::build(duplicate(r, i), opts.cap), opts);
}

LemmaReport verify_prop_cp_type1(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "cp-type1-family", {"type1-family-cp", "preimage-criterion"});
    rep.finite_scale_trivial = true;
    const auto& sr = c.classified.spec_r;
    const bool cp_r = compactly_packed_decide(sr, sr.primes, opts).holds;
    rep.hypotheses = {{"R compactly packed", cp_r}};
    if (!cp_r) {
        rep.applicable = false;
        return rep;
    }
    const auto nc = c.amalgam.carrier()->size();
    const auto nr = c.amalgam.base()->size();
    const auto fams = families(c.type1.size(), opts);
    rep.families = fams.size();
    auto t1 = [&](std::size_t k) { return c.t1_label(k); };
    for (std::size_t t = 0; t < c.classified.primes.size(); ++t) {
        const auto& probe = c.classified.primes[t];
        for (const auto& f : fams) {
            ++rep.checks;
            const bool inside = probe.ideal.members().subset_of(union_of(c.type1, f, nc));
            if (probe.tag == PrimeType::Type2) {
                const auto k = t - c.classified.type1_count();
                const bool criterion = c.contraction[k].members().subset_of(union_of(sr.primes, f, nr));
                if (inside != criterion)
                    rep.fail("preimage-criterion", probe.label() + " vs ∪" + family_string(f, t1));
            }
            if (!inside) continue;
            auto hit = std::find_if(f.begin(), f.end(), [&](std::size_t k) { return probe.ideal.subset_of(c.type1[k]); });
            if (hit == f.end()) {
                rep.fail("type1-family-cp", probe.label() + " ⊆ ∪" + family_string(f, t1) + " but in no member");
                continue;
            }
            if (probe.tag == PrimeType::Type2) {
                const auto k = t - c.classified.type1_count();
                if (!c.contraction[k].subset_of(sr.primes[*hit]))
                    rep.fail("preimage-criterion", "member " + t1(*hit) + " fails f^-1(q+J) ⊆ p");
            }
            rep.witness("type1-family-cp", probe.label() + " ⊆ ∪" + family_string(f, t1) + " lies in " + t1(*hit));
        }
    }
    return rep;
}

LemmaReport verify_prop_cp_type2(const AmalgamContext& c, const VerifyOptions& opts) {
    auto rep = make_report(c, "cp-type2-family", {"type2-family-cp"});
    rep.finite_scale_trivial = true;
    const bool cp_off = cp_off_vj(c, opts);
    rep.hypotheses = {{"Spec(S)\\V(J) compactly packed", cp_off}};
    if (!cp_off) {
        rep.applicable = false;
        return rep;
    }
    const auto nc = c.amalgam.carrier()->size();
    const auto fams = families(c.type2.size(), opts);
    rep.families = fams.size();
    auto t2 = [&](std::size_t k) { return c.t2_label(k); };
    for (const auto& probe : c.classified.primes)
        for (const auto& f : fams) {
            ++rep.checks;
            if (!probe.ideal.members().subset_of(union_of(c.type2, f, nc))) continue;
            if (probe.tag == PrimeType::Type1) {
                rep.fail("type2-family-cp", "type 1 prime " + probe.label() + " inside a type 2 union");
                continue;
            }
            auto hit = std::find_if(f.begin(), f.end(), [&](std::size_t k) { return probe.ideal.subset_of(c.type2[k]); });
            if (hit == f.end())
                rep.fail("type2-family-cp", probe.label() + " ⊆ ∪" + family_string(f, t2) + " but in no member");
            else
                rep.witness("type2-family-cp", probe.label() + " ⊆ ∪" + family_string(f, t2) + " lies in " + t2(*hit));
        }
    return rep;
}

}  // namespace bowtie
