#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bowtie/amalgam.hpp"
#include "bowtie/spectra_props.hpp"

namespace bowtie {

/// A finite poset stored as a full relation matrix; leq[i][j] means i ≤ j.
struct SpectralPoset {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq;

    std::size_t size() const { return labels.size(); }
    bool le(std::size_t i, std::size_t j) const { return leq[i][j]; }
    bool lt(std::size_t i, std::size_t j) const { return i != j && leq[i][j]; }
    /// size() when absent.
    std::size_t index_of(const std::string& label) const;
    bool is_maximal(std::size_t i) const;
    std::vector<std::size_t> maximal_elements() const;

    /// Reflexive-transitive closure of `less` (pairs a < b), computed by
    /// squaring the relation matrix until it stops changing.
    static SpectralPoset from_relation(std::vector<std::string> labels,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& less);
    static SpectralPoset antichain(std::vector<std::string> labels);

    friend bool operator==(const SpectralPoset&, const SpectralPoset&) = default;
};

struct PosetViolation {
    std::string invariant;
    std::string witness;
};

/// First failed partial-order axiom, if any.
std::optional<PosetViolation> validate_poset(const SpectralPoset& p);

/// Inclusion order on a list of primes; labels default to ideal_label.
SpectralPoset inclusion_poset(const SpectrumList& s, std::vector<std::string> labels = {});

/// Pairs (i, j) with i covered by j.
std::vector<std::pair<std::size_t, std::size_t>> covers(const SpectralPoset& p);

/**
 * Abstract data of an amalgamation spectrum: Spec R, Spec S, the primes of
 * S containing J, and the relation C(q, p) standing for f^{-1}(q + J) ⊆ p.
 * `kappa`, when present, maps each q to the point standing for f^{-1}(q).
 */
struct AmalgamSpectrumData {
    SpectralPoset pr;
    SpectralPoset ps;
    std::vector<bool> vj;
    /// c[q][p]; rows for q in VJ must be empty.
    std::vector<std::vector<bool>> c;
    std::optional<std::vector<std::size_t>> kappa;

    friend bool operator==(const AmalgamSpectrumData&, const AmalgamSpectrumData&) = default;
};

struct DataReport {
    std::vector<PosetViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Every structural and realizability invariant, each failure with a witness.
DataReport validate_data(const AmalgamSpectrumData& d);

/// Closes C downward in q and upward in p.
AmalgamSpectrumData monotone_closure(AmalgamSpectrumData d);

/// T1 elements in PR order, then T2 elements in PS order (off VJ only).
struct AmalgamPoset {
    SpectralPoset poset;
    std::vector<PrimeType> tags;
    /// Index into PR for T1, into PS for T2.
    std::vector<std::size_t> source;

    std::size_t type1_count() const;
};

/// Throws PreconditionError for invalid data, TheoremViolation if the
/// result is not a partial order.
AmalgamPoset build_amalgam_poset(const AmalgamSpectrumData& d);

struct PosetPm {
    bool pm = true;
    /// An element below zero or several maximal elements.
    std::optional<std::size_t> witness;
    std::vector<std::size_t> maxima;
};

PosetPm poset_is_pm(const SpectralPoset& p);

/// Throws PreconditionError when q lies in VJ.
DagCount dag_count_abstract(const AmalgamSpectrumData& d, std::size_t q);

struct AbstractCheck {
    bool left = false;
    bool right = false;
    bool max_description = true;
    std::vector<DagCount> counts;
    std::optional<std::string> pm_witness;
    std::optional<std::string> counterexample;

    bool pass() const { return !counterexample.has_value(); }
};

/// Poset pm on the built amalgam versus PR pm plus every count equal to 1,
/// computed independently; also checks the maximal-element description.
AbstractCheck theorem_pm_abstract_check(const AmalgamSpectrumData& d);

/// Needs kappa; applicable when every maximal element of PS lies in VJ.
/// Then the amalgam poset is pm exactly when PR is.
struct JacobsonCheck {
    bool applicable = false;
    bool pass = true;
    std::string detail;
};
JacobsonCheck abstract_jacobson_check(const AmalgamSpectrumData& d);

/**
 * Seeded stream of valid data. Posets are transitive closures of random
 * DAGs on at most `max_size` points; VJ is a random up-set; C is seeded at
 * random and closed monotonically; kappa is attached about half the time.
 */
class SpectrumFuzzer {
public:
    SpectrumFuzzer(std::uint64_t seed, std::size_t max_size);
    AmalgamSpectrumData next();

private:
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    SpectralPoset random_poset(const std::string& prefix);

    std::mt19937_64 rng_;
    std::size_t max_size_;
};

/// Inclusion posets of Spec R and Spec S, V(J), C from preimages, kappa
/// from f^{-1}(q). Throws TheoremViolation if the result is invalid.
AmalgamSpectrumData extract_spectrum_data(const AmalgamContext& c);

/// Compares the abstract poset built from extracted data with the
/// inclusion order of the tagged carrier spectrum, label by label.
/// Returns a description of the first mismatch.
std::optional<std::string> cross_layer_mismatch(const AmalgamContext& c);

}  // namespace bowtie
