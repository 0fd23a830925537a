#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bowtie/element_set.hpp"
#include "bowtie/ring.hpp"

namespace bowtie {

/// Default bound on ring size for exhaustive ideal enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = 256;

/// An ideal of a finite ring, stored as a membership mask.
class IdealSet {
public:
    IdealSet() = default;

    /// Checks the ideal axioms; throws InputError otherwise.
    static IdealSet from_members(RingPtr ring, ElementSet members);

    /// No checking. For callers that have constructed an ideal by closure.
    static IdealSet trusted(RingPtr ring, ElementSet members) {
        IdealSet i;
        i.ring_ = std::move(ring);
        i.members_ = std::move(members);
        return i;
    }

    static IdealSet zero(const RingPtr& ring);
    static IdealSet whole(const RingPtr& ring);

    const RingPtr& ring() const { return ring_; }
    const ElementSet& members() const { return members_; }
    bool contains(Elem e) const { return members_.test(e); }
    std::size_t size() const { return members_.count(); }
    bool is_proper() const { return !members_.is_full(); }
    bool is_zero() const { return members_.count() == 1; }
    bool subset_of(const IdealSet& o) const { return members_.subset_of(o.members_); }

    friend bool operator==(const IdealSet& a, const IdealSet& b) { return a.members_ == b.members_; }
    friend auto operator<=>(const IdealSet& a, const IdealSet& b) { return a.members_ <=> b.members_; }

private:
    RingPtr ring_;
    ElementSet members_;
};

/// Whether a subset satisfies the ideal axioms.
bool is_ideal(const FiniteRing& ring, const ElementSet& s);

IdealSet principal_ideal(const RingPtr& ring, Elem g);
IdealSet ideal_generate(const RingPtr& ring, const std::vector<Elem>& gens);

/// All ideals in canonical order, including (0) and R.
/// Throws CapExceeded when |R| > cap.
std::vector<IdealSet> enumerate_ideals(const RingPtr& ring, std::size_t cap = kDefaultEnumerationCap);

/// Throws PreconditionError for P = R.
bool is_prime(const IdealSet& p);
bool is_maximal(const IdealSet& p);

/// Prime ideals of one ring in canonical order with their maximality.
struct SpectrumList {
    RingPtr ring;
    std::vector<IdealSet> primes;
    std::vector<bool> maximal;

    std::size_t size() const { return primes.size(); }
    /// Index of an ideal in the list, or size() when absent.
    std::size_t index_of(const IdealSet& p) const;
    bool all_maximal() const;
};

SpectrumList spec(const RingPtr& ring, std::size_t cap = kDefaultEnumerationCap);
SpectrumList max_spec(const RingPtr& ring, std::size_t cap = kDefaultEnumerationCap);

/// Set of nilpotent elements.
IdealSet nilradical(const RingPtr& ring);
/// Intersection of all maximal ideals.
IdealSet jacobson(const RingPtr& ring, std::size_t cap = kDefaultEnumerationCap);

IdealSet ideal_sum(const IdealSet& a, const IdealSet& b);
IdealSet ideal_intersect(const IdealSet& a, const IdealSet& b);
IdealSet ideal_product(const IdealSet& a, const IdealSet& b);
/// {x : x^k in I for some k >= 1}, computed elementwise.
IdealSet radical(const IdealSet& i);

/// Indices into `s` of the primes containing I.
std::vector<std::size_t> v_of(const SpectrumList& s, const IdealSet& i);

/// Short display form built from a greedy generating set, e.g. "(2)" or "(2,3)".
std::string ideal_label(const IdealSet& i);
/// Explicit member listing, e.g. "{0,2,4}".
std::string ideal_members_string(const IdealSet& i);

}  // namespace bowtie
