#include "bowtie/spec_poset.hpp"

#include <algorithm>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"

namespace bowtie {

std::size_t SpectralPoset::index_of(const std::string& label) const {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
}

bool SpectralPoset::is_maximal(std::size_t i) const {
    for (std::size_t j = 0; j < size(); ++j)
        if (lt(i, j)) return false;
    return true;
}

std::vector<std::size_t> SpectralPoset::maximal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (is_maximal(i)) out.push_back(i);
    return out;
}

SpectralPoset SpectralPoset::from_relation(std::vector<std::string> labels,
                                           const std::vector<std::pair<std::size_t, std::size_t>>& less) {
    const auto n = labels.size();
    SpectralPoset p;
    p.labels = std::move(labels);
    p.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) p.leq[i][i] = true;
    for (auto [a, b] : less) {
        if (a >= n || b >= n) throw InputError("poset relation refers to a missing element");
        p.leq[a][b] = true;
    }
    // R := R·R until stable; with reflexivity this reaches the closure.
    while (true) {
        auto next = p.leq;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (p.leq[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (p.leq[k][j]) next[i][j] = true;
        if (next == p.leq) break;
        p.leq = std::move(next);
    }
    return p;
}

SpectralPoset SpectralPoset::antichain(std::vector<std::string> labels) {
    return from_relation(std::move(labels), {});
}

std::optional<PosetViolation> validate_poset(const SpectralPoset& p) {
    const auto n = p.size();
    if (p.leq.size() != n) return PosetViolation{"shape", "relation matrix has wrong row count"};
    for (const auto& row : p.leq)
        if (row.size() != n) return PosetViolation{"shape", "relation matrix is not square"};
    if (n == 0) return PosetViolation{"nonempty", "poset has no elements"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p.labels[i] == p.labels[j]) return PosetViolation{"distinct labels", p.labels[i]};
    for (std::size_t i = 0; i < n; ++i)
        if (!p.leq[i][i]) return PosetViolation{"reflexive", p.labels[i]};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && p.leq[i][j] && p.leq[j][i])
                return PosetViolation{"antisymmetric", p.labels[i] + " ≤ " + p.labels[j] + " ≤ " + p.labels[i]};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (p.leq[i][j] && p.leq[j][k] && !p.leq[i][k])
                    return PosetViolation{"transitive", p.labels[i] + " ≤ " + p.labels[j] + " ≤ " + p.labels[k]};
    return std::nullopt;
}

SpectralPoset inclusion_poset(const SpectrumList& s, std::vector<std::string> labels) {
    if (labels.empty())
        for (const auto& p : s.primes) labels.push_back(ideal_label(p));
    std::vector<std::pair<std::size_t, std::size_t>> less;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (i != j && s.primes[i].subset_of(s.primes[j])) less.emplace_back(i, j);
    return SpectralPoset::from_relation(std::move(labels), less);
}

std::vector<std::pair<std::size_t, std::size_t>> covers(const SpectralPoset& p) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (!p.lt(i, j)) continue;
            bool direct = true;
            for (std::size_t k = 0; k < p.size() && direct; ++k)
                if (p.lt(i, k) && p.lt(k, j)) direct = false;
            if (direct) out.emplace_back(i, j);
        }
    return out;
}

DataReport validate_data(const AmalgamSpectrumData& d) {
    DataReport rep;
    auto add = [&](std::string inv, std::string w) { rep.violations.push_back({std::move(inv), std::move(w)}); };
    if (auto v = validate_poset(d.pr)) add("PR " + v->invariant, v->witness);
    if (auto v = validate_poset(d.ps)) add("PS " + v->invariant, v->witness);
    if (!rep.ok()) return rep;
    const auto nr = d.pr.size();
    const auto ns = d.ps.size();
    if (d.vj.size() != ns) {
        add("shape", "VJ mask does not match PS");
        return rep;
    }
    if (d.c.size() != ns || std::any_of(d.c.begin(), d.c.end(), [&](const auto& row) { return row.size() != nr; })) {
        add("shape", "C is not a PS × PR relation");
        return rep;
    }
    const auto& lr = d.pr.labels;
    const auto& ls = d.ps.labels;

    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t q2 = 0; q2 < ns; ++q2)
            if (d.vj[q] && d.ps.le(q, q2) && !d.vj[q2])
                add("VJ upward closed", ls[q] + " ∈ VJ, " + ls[q] + " ≤ " + ls[q2] + " ∉ VJ");
    // J is proper, so some maximal ideal contains it.
    if (std::none_of(d.vj.begin(), d.vj.end(), [](bool b) { return b; }))
        add("VJ nonempty", "no element of PS contains J");

    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t p = 0; p < nr; ++p)
            if (d.vj[q] && d.c[q][p]) add("C domain", "(" + ls[q] + ", " + lr[p] + ") with " + ls[q] + " ∈ VJ");
    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t p = 0; p < nr; ++p) {
            if (!d.c[q][p]) continue;
            for (std::size_t q2 = 0; q2 < ns; ++q2)
                for (std::size_t p2 = 0; p2 < nr; ++p2)
                    if (d.ps.le(q2, q) && d.pr.le(p, p2) && !d.vj[q2] && !d.c[q2][p2])
                        add("C monotone", "(" + ls[q] + ", " + lr[p] + ") ∈ C but (" + ls[q2] + ", " + lr[p2] + ") ∉ C");
        }

    for (std::size_t q = 0; q < ns; ++q) {
        if (d.vj[q]) continue;
        const bool row = std::any_of(d.c[q].begin(), d.c[q].end(), [](bool b) { return b; });
        // q maximal off V(J) gives q + J = S, so f^{-1}(q + J) = R.
        if (d.ps.is_maximal(q) && row) add("realizability: maximal off VJ", ls[q] + " has a nonempty C-row");
        // q ⊆ q' ⊇ J gives f^{-1}(q + J) ⊆ f^{-1}(q'), a prime of R.
        bool under_vj = false;
        for (std::size_t q2 = 0; q2 < ns; ++q2) under_vj = under_vj || (d.vj[q2] && d.ps.le(q, q2));
        if (under_vj && !row) add("realizability: under VJ", ls[q] + " lies under VJ but has an empty C-row");
    }

    if (d.kappa) {
        const auto& k = *d.kappa;
        if (k.size() != ns || std::any_of(k.begin(), k.end(), [&](std::size_t v) { return v >= nr; })) {
            add("kappa shape", "kappa must map every element of PS into PR");
            return rep;
        }
        for (std::size_t q = 0; q < ns; ++q)
            for (std::size_t q2 = 0; q2 < ns; ++q2) {
                if (d.ps.le(q, q2) && !d.pr.le(k[q], k[q2]))
                    add("kappa monotone", ls[q] + " ≤ " + ls[q2] + " but kappa images are not ordered");
                if (!d.vj[q] && d.vj[q2] && d.ps.le(q, q2) && !d.c[q][k[q2]])
                    add("kappa coherence", "(" + ls[q] + ", kappa(" + ls[q2] + ")) ∉ C");
            }
        for (std::size_t q = 0; q < ns; ++q)
            for (std::size_t p = 0; p < nr; ++p)
                if (d.c[q][p] && !d.pr.le(k[q], p))
                    add("kappa coherence", "(" + ls[q] + ", " + lr[p] + ") ∈ C but kappa(" + ls[q] + ") ≰ " + lr[p]);
    }
    return rep;
}

AmalgamSpectrumData monotone_closure(AmalgamSpectrumData d) {
    const auto nr = d.pr.size();
    const auto ns = d.ps.size();
    auto closed = d.c;
    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t p = 0; p < nr; ++p) {
            if (!d.c[q][p]) continue;
            for (std::size_t q2 = 0; q2 < ns; ++q2)
                for (std::size_t p2 = 0; p2 < nr; ++p2)
                    if (d.ps.le(q2, q) && d.pr.le(p, p2) && !d.vj[q2]) closed[q2][p2] = true;
        }
    d.c = std::move(closed);
    return d;
}

std::size_t AmalgamPoset::type1_count() const {
    return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), PrimeType::Type1));
}

AmalgamPoset build_amalgam_poset(const AmalgamSpectrumData& d) {
    auto rep = validate_data(d);
    if (!rep.ok())
        throw PreconditionError("invalid spectrum data: " + rep.violations.front().invariant + ": " +
                                rep.violations.front().witness);
    AmalgamPoset a;
    for (std::size_t p = 0; p < d.pr.size(); ++p) {
        a.tags.push_back(PrimeType::Type1);
        a.source.push_back(p);
        a.poset.labels.push_back("T1:" + d.pr.labels[p]);
    }
    for (std::size_t q = 0; q < d.ps.size(); ++q) {
        if (d.vj[q]) continue;
        a.tags.push_back(PrimeType::Type2);
        a.source.push_back(q);
        a.poset.labels.push_back("T2:" + d.ps.labels[q]);
    }
    const auto n = a.tags.size();
    a.poset.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto si = a.source[i];
            const auto sj = a.source[j];
            bool le = false;
            if (a.tags[i] == PrimeType::Type1 && a.tags[j] == PrimeType::Type1) le = d.pr.le(si, sj);
            else if (a.tags[i] == PrimeType::Type2 && a.tags[j] == PrimeType::Type2) le = d.ps.le(si, sj);
            else if (a.tags[i] == PrimeType::Type2) le = d.c[si][sj];
            a.poset.leq[i][j] = le;
        }
    if (auto v = validate_poset(a.poset))
        throw TheoremViolation("amalgam order is not a partial order: " + v->invariant + ": " + v->witness);
    return a;
}

PosetPm poset_is_pm(const SpectralPoset& p) {
    PosetPm res;
    const auto maxima = p.maximal_elements();
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<std::size_t> above;
        for (auto m : maxima)
            if (p.le(i, m)) above.push_back(m);
        if (above.size() != 1) {
            res.pm = false;
            res.witness = i;
            res.maxima = std::move(above);
            return res;
        }
    }
    return res;
}

DagCount dag_count_abstract(const AmalgamSpectrumData& d, std::size_t q) {
    if (q >= d.ps.size() || d.vj[q]) throw PreconditionError("dag_count_abstract: q must lie in PS \\ VJ");
    DagCount c;
    c.q = d.ps.labels[q];
    for (auto n : d.ps.maximal_elements())
        if (d.ps.le(q, n) && !d.vj[n]) ++c.term_max_s;
    for (auto m : d.pr.maximal_elements())
        if (d.c[q][m]) ++c.term_max_r;
    c.total = c.term_max_s + c.term_max_r;
    return c;
}

AbstractCheck theorem_pm_abstract_check(const AmalgamSpectrumData& d) {
    AbstractCheck res;
    const auto a = build_amalgam_poset(d);
    const auto left = poset_is_pm(a.poset);
    res.left = left.pm;
    if (left.witness) res.pm_witness = a.poset.labels[*left.witness];

    bool all_one = true;
    for (std::size_t q = 0; q < d.ps.size(); ++q) {
        if (d.vj[q]) continue;
        res.counts.push_back(dag_count_abstract(d, q));
        all_one = all_one && res.counts.back().total == 1;
    }
    res.right = poset_is_pm(d.pr).pm && all_one;

    // Maximal elements should be T1 over Max(PR) and T2 over Max(PS) \ VJ.
    for (std::size_t i = 0; i < a.poset.size(); ++i) {
        const bool expected = a.tags[i] == PrimeType::Type1 ? d.pr.is_maximal(a.source[i])
                                                            : d.ps.is_maximal(a.source[i]);
        if (expected != a.poset.is_maximal(i)) {
            res.max_description = false;
            res.counterexample = "maximal-element description fails at " + a.poset.labels[i];
            return res;
        }
    }
    if (res.left != res.right)
        res.counterexample = std::string("poset pm = ") + (res.left ? "true" : "false") +
                             " but criterion = " + (res.right ? "true" : "false");
    return res;
}

JacobsonCheck abstract_jacobson_check(const AmalgamSpectrumData& d) {
    JacobsonCheck res;
    if (!d.kappa) {
        res.detail = "no kappa";
        return res;
    }
    for (auto n : d.ps.maximal_elements())
        if (!d.vj[n]) {
            res.detail = "maximal " + d.ps.labels[n] + " lies off VJ";
            return res;
        }
    res.applicable = true;
    const bool left = poset_is_pm(build_amalgam_poset(d).poset).pm;
    const bool right = poset_is_pm(d.pr).pm;
    res.pass = left == right;
    res.detail = std::string("amalgam pm = ") + (left ? "true" : "false") + ", PR pm = " + (right ? "true" : "false");
    return res;
}

SpectrumFuzzer::SpectrumFuzzer(std::uint64_t seed, std::size_t max_size) : rng_(seed), max_size_(max_size) {
    if (max_size == 0) throw PreconditionError("SpectrumFuzzer: size bound must be at least 1");
}

SpectralPoset SpectrumFuzzer::random_poset(const std::string& prefix) {
    const auto n = 1 + below(max_size_);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    // Edges only go up in index, so index order is a linear extension.
    std::vector<std::pair<std::size_t, std::size_t>> less;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (below(3) == 0) less.emplace_back(i, j);
    return SpectralPoset::from_relation(std::move(labels), less);
}

AmalgamSpectrumData SpectrumFuzzer::next() {
    AmalgamSpectrumData d;
    d.pr = random_poset("p");
    d.ps = random_poset("q");
    const auto nr = d.pr.size();
    const auto ns = d.ps.size();

    d.vj.assign(ns, false);
    for (std::size_t q = 0; q < ns; ++q)
        if (below(3) == 0) d.vj[q] = true;
    if (std::none_of(d.vj.begin(), d.vj.end(), [](bool b) { return b; })) d.vj[ns - 1] = true;
    for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t q2 = 0; q2 < ns; ++q2)
            if (d.vj[q] && d.ps.le(q, q2)) d.vj[q2] = true;

    // kappa: monotone, built along the index order (a linear extension).
    if (below(2) == 0) {
        for (int attempt = 0; attempt < 4 && !d.kappa; ++attempt) {
            std::vector<std::size_t> k(ns);
            bool ok = true;
            for (std::size_t q = 0; q < ns && ok; ++q) {
                std::vector<std::size_t> candidates;
                for (std::size_t p = 0; p < nr; ++p) {
                    bool bound = true;
                    for (std::size_t q0 = 0; q0 < q; ++q0)
                        if (d.ps.le(q0, q) && !d.pr.le(k[q0], p)) bound = false;
                    if (bound) candidates.push_back(p);
                }
                if (candidates.empty()) ok = false;
                else k[q] = candidates[below(candidates.size())];
            }
            if (ok) d.kappa = std::move(k);
        }
    }

    d.c.assign(ns, std::vector<bool>(nr, false));
    auto above_kappa = [&](std::size_t q) {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < nr; ++p)
            if (!d.kappa || d.pr.le((*d.kappa)[q], p)) out.push_back(p);
        return out;
    };
    for (std::size_t q = 0; q < ns; ++q) {
        if (d.vj[q] || d.ps.is_maximal(q)) continue;
        if (below(2) == 0) {
            const auto ps = above_kappa(q);
            d.c[q][ps[below(ps.size())]] = true;
        }
        bool under_vj = false;
        for (std::size_t q2 = 0; q2 < ns; ++q2) {
            if (!d.vj[q2] || !d.ps.le(q, q2)) continue;
            under_vj = true;
            if (d.kappa) d.c[q][(*d.kappa)[q2]] = true;
        }
        if (under_vj && std::none_of(d.c[q].begin(), d.c[q].end(), [](bool b) { return b; })) {
            const auto ps = above_kappa(q);
            d.c[q][ps[below(ps.size())]] = true;
        }
    }
    return monotone_closure(std::move(d));
}

AmalgamSpectrumData extract_spectrum_data(const AmalgamContext& c) {
    const auto& cs = c.classified;
    AmalgamSpectrumData d;
    d.pr = inclusion_poset(cs.spec_r);
    d.ps = inclusion_poset(cs.spec_s);
    d.vj.assign(cs.spec_s.size(), true);
    d.c.assign(cs.spec_s.size(), std::vector<bool>(cs.spec_r.size(), false));
    for (std::size_t k = 0; k < cs.off_vj.size(); ++k) {
        const auto q = cs.off_vj[k];
        d.vj[q] = false;
        for (std::size_t p = 0; p < cs.spec_r.size(); ++p) d.c[q][p] = c.contraction[k].subset_of(cs.spec_r.primes[p]);
    }
    std::vector<std::size_t> kappa;
    for (const auto& q : cs.spec_s.primes) {
        const auto idx = cs.spec_r.index_of(preimage_ideal(c.amalgam.hom(), q));
        if (idx == cs.spec_r.size()) throw TheoremViolation("preimage of a prime is not prime in " + c.name);
        kappa.push_back(idx);
    }
    d.kappa = std::move(kappa);
    auto rep = validate_data(d);
    if (!rep.ok())
        throw TheoremViolation("extracted data of " + c.name + " is invalid: " + rep.violations.front().invariant +
                               ": " + rep.violations.front().witness);
    return d;
}

std::optional<std::string> cross_layer_mismatch(const AmalgamContext& c) {
    const auto a = build_amalgam_poset(extract_spectrum_data(c));
    const auto& primes = c.classified.primes;
    if (a.poset.size() != primes.size())
        return "abstract poset has " + std::to_string(a.poset.size()) + " elements, carrier spectrum " +
               std::to_string(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (a.poset.labels[i] != primes[i].label())
            return "label " + a.poset.labels[i] + " vs " + primes[i].label();
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = 0; j < primes.size(); ++j)
            if (a.poset.le(i, j) != primes[i].ideal.subset_of(primes[j].ideal))
                return "order differs at " + a.poset.labels[i] + " ≤ " + a.poset.labels[j];
    return std::nullopt;
}

}  // namespace bowtie
