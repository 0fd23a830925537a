#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bowtie/amalgam.hpp"
#include "bowtie/ideal.hpp"

namespace bowtie {

struct VerifyOptions {
    /// Largest family examined; 0 means "all subsets when the prime set has
    /// at most 12 members, else families of size <= 3".
    std::size_t family_size = 0;
    /// Upper bound on families per prime set before seeded sampling kicks in.
    std::size_t family_budget = 1 << 15;
    std::uint64_t seed = 0;
    std::size_t cap = kDefaultEnumerationCap;
    /// Compactly-packed probes range over all proper ideals instead of primes.
    bool cp_all_ideals = false;
};

/// Nonempty index subsets of {0..n-1} examined as families, each sorted,
/// in a deterministic order.
std::vector<std::vector<std::size_t>> families(std::size_t n, const VerifyOptions& opts);

struct Witness {
    std::string part;
    std::string text;
};

/// Outcome of one lemma, theorem or corollary check on one instance.
struct LemmaReport {
    static constexpr std::size_t kMaxWitnesses = 4;

    std::string id;
    std::vector<std::string> parts;
    std::string instance;
    std::uint64_t families = 0;
    std::uint64_t checks = 0;
    /// False when the statement's hypotheses do not hold; nothing is checked.
    bool applicable = true;
    /// Set on the compactly-packed / properly-zipped reports: finite rings
    /// satisfy both properties, so those implications cannot fail here.
    bool finite_scale_trivial = false;
    std::vector<std::pair<std::string, bool>> hypotheses;
    std::vector<std::pair<std::string, std::string>> facts;
    std::vector<Witness> witnesses;
    std::optional<Witness> counterexample;

    bool pass() const { return !counterexample.has_value(); }
    void witness(std::string part, std::string text);
    void fail(std::string part, std::string text);
};

struct PmResult {
    bool pm = true;
    /// Index of a prime lying under two maximal ideals.
    std::optional<std::size_t> witness;
    std::vector<std::size_t> witness_maxima;
};

PmResult is_pm(const SpectrumList& s);
PmResult is_pm(const RingPtr& r, std::size_t cap = kDefaultEnumerationCap);

/// Both terms of the counting criterion for one q in Spec(S) \ V(J).
struct DagCount {
    std::string q;
    std::size_t term_max_s = 0;
    std::size_t term_max_r = 0;
    std::size_t total = 0;
};

/**
 * Everything the verifiers need about one amalgamation, computed once:
 * the classified spectrum, the lifted primes, f^{-1}(q + J) for every
 * type 2 source q, and the radicals of S.
 */
struct AmalgamContext {
    AmalgamationRing amalgam;
    ClassifiedSpectrum classified;
    /// Aligned with classified.spec_r.
    std::vector<IdealSet> type1;
    /// Aligned with classified.off_vj.
    std::vector<IdealSet> type2;
    /// f^{-1}(q + J), aligned with classified.off_vj.
    std::vector<IdealSet> contraction;
    IdealSet nil_s;
    IdealSet jac_s;
    bool f_surjective = false;
    std::string name;

    static AmalgamContext build(AmalgamationRing a, std::size_t cap = kDefaultEnumerationCap);

    const IdealSet& q_of(std::size_t k) const { return classified.spec_s.primes[classified.off_vj[k]]; }
    const IdealSet& p_of(std::size_t k) const { return classified.spec_r.primes[k]; }
    std::string t1_label(std::size_t k) const;
    std::string t2_label(std::size_t k) const;
    /// Labels of the carrier spectrum, in carrier_spec order, by tag.
    std::vector<std::string> carrier_labels() const;
};

/// Throws PreconditionError when q contains J.
DagCount dag_count(const AmalgamationRing& a, const IdealSet& q, std::size_t cap = kDefaultEnumerationCap);
DagCount dag_count(const AmalgamContext& c, std::size_t type2_index);
std::vector<DagCount> dag_counts(const AmalgamContext& c);

struct DecideResult {
    bool holds = true;
    std::uint64_t probes = 0;
    std::uint64_t families = 0;
    std::vector<Witness> witnesses;
    std::optional<Witness> counterexample;
};

/**
 * Whether X ⊆ Spec(R) is compactly packed: every probe ideal contained in
 * the union of a family from X lies in one member. Probes are the primes
 * of R (or all proper ideals with opts.cp_all_ideals). `x_labels` names the
 * members of X in witnesses.
 */
DecideResult compactly_packed_decide(const SpectrumList& spec_r, const std::vector<IdealSet>& x,
                                     const VerifyOptions& opts = {},
                                     const std::vector<std::string>& x_labels = {});
DecideResult compactly_packed_decide(const RingPtr& r, const VerifyOptions& opts = {});

/// Whether every prime containing ∩F for a family F ⊆ Spec(R) contains a member of F.
DecideResult properly_zipped_decide(const SpectrumList& spec_r, const VerifyOptions& opts = {},
                                    const std::vector<std::string>& labels = {});
DecideResult properly_zipped_decide(const RingPtr& r, const VerifyOptions& opts = {});

/// Spec and Max descriptions plus the "no type 2 iff J ⊆ Nil(S)" and
/// "no type 2 maximal iff J ⊆ Jac(S)" equivalences.
LemmaReport verify_remark_spectrum(const AmalgamContext& c);

LemmaReport verify_lemma_unions(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_lemma_intersections(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_lemma_basic(const AmalgamContext& c);

LemmaReport verify_theorem_pm(const AmalgamContext& c);
LemmaReport verify_cor_duplication(const RingPtr& r, const IdealSet& i, std::size_t cap = kDefaultEnumerationCap);
LemmaReport verify_cor_duplication(const AmalgamContext& c);
/// Throws PreconditionError unless J ⊆ Jac(S).
LemmaReport verify_cor_jac(const AmalgamContext& c);
LemmaReport verify_cor_trivext(const RingPtr& r, const ModulePtr& m, std::size_t cap = kDefaultEnumerationCap);

LemmaReport verify_transfer_cp(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_transfer_pz(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_cor_nil(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_cor_dup_pz(const RingPtr& r, const IdealSet& i, const VerifyOptions& opts = {});
LemmaReport verify_cor_dup_pz(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_prop_cp_type1(const AmalgamContext& c, const VerifyOptions& opts = {});
LemmaReport verify_prop_cp_type2(const AmalgamContext& c, const VerifyOptions& opts = {});

}  // namespace bowtie
