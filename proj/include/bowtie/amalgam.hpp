#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bowtie/hom.hpp"
#include "bowtie/ideal.hpp"
#include "bowtie/ring.hpp"

namespace bowtie {

/**
 * The amalgamation R ⋈^f J = {(r, f(r) + j) : r in R, j in J}, realized as
 * a concrete finite ring (a subring of R × S).
 *
 * Carrier elements are ordered r-major, then by increasing index of j in S.
 */
class AmalgamationRing {
public:
    static constexpr Elem kAbsent = static_cast<Elem>(-1);

    const RingPtr& base() const { return r_; }
    const RingPtr& target() const { return s_; }
    const RingHom& hom() const { return f_; }
    const IdealSet& ideal() const { return j_; }
    const RingPtr& carrier() const { return carrier_; }
    const std::vector<std::pair<Elem, Elem>>& pair_labels() const { return pairs_; }

    /// Carrier index of (r, s), or kAbsent when the pair is not in R ⋈^f J.
    Elem index_of(Elem r, Elem s) const { return lookup_[r * s_->size() + s]; }

    /// (r, s) ↦ r, surjective onto R with kernel {0} × J.
    RingHom first_projection() const;
    IdealSet projection_kernel() const;

    /// True when built by duplicate() (S = R, f = id).
    bool is_duplication() const { return duplication_; }

private:
    friend AmalgamationRing amalgamate(RingPtr, RingPtr, RingHom, IdealSet);
    friend AmalgamationRing duplicate(const RingPtr&, const IdealSet&);

    RingPtr r_;
    RingPtr s_;
    RingHom f_;
    IdealSet j_;
    RingPtr carrier_;
    std::vector<std::pair<Elem, Elem>> pairs_;
    std::vector<Elem> lookup_;
    bool duplication_ = false;
};

/// Requires J to be a nonzero proper ideal of S and f: R → S.
AmalgamationRing amalgamate(RingPtr r, RingPtr s, RingHom f, IdealSet j);

/// R ⋈ I := R ⋈^{id} I.
AmalgamationRing duplicate(const RingPtr& r, const IdealSet& i);

struct TrivialExtensionAmalgam {
    AmalgamationRing amalgam;
    /// Carrier → make_trivial_extension(R, M), a ring isomorphism.
    RingHom iso;
};

/// Realizes R ⋉ M as R ⋈^f J with S = R ⋉ M, f(r) = (r, 0), J = {0} × M.
TrivialExtensionAmalgam trivial_extension_as_amalgam(const RingPtr& r, const ModulePtr& m);

/// {(p, f(p) + j)}: carrier elements whose first coordinate lies in p.
/// Throws PreconditionError unless p is prime in R.
IdealSet lift_type1(const AmalgamationRing& a, const IdealSet& p);

/// {(r, f(r) + j) : f(r) + j in q}. Throws PreconditionError unless q is
/// prime in S and J ⊄ q.
IdealSet lift_type2(const AmalgamationRing& a, const IdealSet& q);

enum class PrimeType { Type1, Type2 };

struct TaggedPrime {
    PrimeType tag = PrimeType::Type1;
    /// Index into spec(R) for Type1, into spec(S) for Type2.
    std::size_t source = 0;
    IdealSet source_ideal;
    IdealSet ideal;
    bool maximal = false;

    std::string label() const;
};

/**
 * Spec(R ⋈^f J) computed two ways and matched.
 *
 * `carrier_spec` comes from brute-force ideal enumeration of the carrier;
 * `primes` are the type 1 lifts of spec(R) followed by the type 2 lifts of
 * spec(S) \ V(J). `carrier_index[k]` is the position of primes[k] in
 * carrier_spec.
 */
struct ClassifiedSpectrum {
    SpectrumList spec_r;
    SpectrumList spec_s;
    /// Indices into spec_s of primes not containing J.
    std::vector<std::size_t> off_vj;
    SpectrumList carrier_spec;
    std::vector<TaggedPrime> primes;
    std::vector<std::size_t> carrier_index;

    std::size_t type1_count() const { return spec_r.size(); }
    std::size_t type2_count() const { return off_vj.size(); }
};

/// Throws TheoremViolation when the two descriptions of the prime or the
/// maximal spectrum disagree.
ClassifiedSpectrum classify_spectrum(const AmalgamationRing& a, std::size_t cap = kDefaultEnumerationCap);

/// Tagged maximal ideals, checked against Max(R) and Max(S) \ V(J).
std::vector<TaggedPrime> max_classify(const AmalgamationRing& a, std::size_t cap = kDefaultEnumerationCap);
std::vector<TaggedPrime> max_classify(const ClassifiedSpectrum& c);

std::string describe(const AmalgamationRing& a);

}  // namespace bowtie
