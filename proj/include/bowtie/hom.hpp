#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bowtie/ideal.hpp"
#include "bowtie/ring.hpp"

namespace bowtie {

/// A unital ring homomorphism stored as a full element map.
class RingHom {
public:
    RingHom() = default;

    const RingPtr& domain() const { return domain_; }
    const RingPtr& codomain() const { return codomain_; }
    const std::vector<Elem>& map() const { return map_; }
    Elem operator()(Elem r) const { return map_[r]; }

    friend bool operator==(const RingHom& a, const RingHom& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.map_ == b.map_;
    }

private:
    friend RingHom make_hom(RingPtr, RingPtr, std::vector<Elem>);
    friend RingHom trusted_hom(RingPtr, RingPtr, std::vector<Elem>);

    RingPtr domain_;
    RingPtr codomain_;
    std::vector<Elem> map_;
};

/// Checks shape, unity, additivity and multiplicativity.
ValidationReport check_hom(const FiniteRing& domain, const FiniteRing& codomain,
                           const std::vector<Elem>& map);

/// Throws InputError with the witnessing pair when the map is not a hom.
RingHom make_hom(RingPtr domain, RingPtr codomain, std::vector<Elem> map);

/// Skips validation; for maps that are homomorphisms by construction.
RingHom trusted_hom(RingPtr domain, RingPtr codomain, std::vector<Elem> map);

RingHom identity_hom(const RingPtr& r);

/// g ∘ f. Throws PreconditionError when codomain(f) != domain(g).
RingHom compose(const RingHom& g, const RingHom& f);

/// The map determined by 1 ↦ 1 when the domain is additively generated by
/// its unity (e.g. Z_m → Z_n for n | m). Throws when no such hom exists.
RingHom natural_hom(const RingPtr& domain, const RingPtr& codomain);

bool is_surjective(const RingHom& f);
bool is_injective(const RingHom& f);
ElementSet image(const RingHom& f);

/// {r : f(r) in Q}.
IdealSet preimage_ideal(const RingHom& f, const IdealSet& q);

/// f(I); throws PreconditionError if the image is not an ideal (which can
/// only happen for non-surjective f).
IdealSet image_ideal(const RingHom& f, const IdealSet& i);

/// Calls `visit` for every unital hom R → S, in increasing order of the
/// images of R's greedy additive generators. Stops early when `visit`
/// returns false.
void for_each_hom(const RingPtr& r, const RingPtr& s, const std::function<bool(const RingHom&)>& visit);
std::vector<RingHom> enumerate_homs(const RingPtr& r, const RingPtr& s);

/// A ring isomorphism A → B, or nullopt. Exhaustive over unity-preserving
/// additive extensions, pruned by additive order profile.
std::optional<RingHom> find_isomorphism(const RingPtr& a, const RingPtr& b);

/// A/I with the quotient map. Coset representatives are the smallest
/// element index in each coset; quotient elements are ordered by
/// representative.
struct Quotient {
    RingPtr ring;
    RingHom map;
};

/// Throws PreconditionError when I = A.
Quotient make_quotient(const RingPtr& a, const IdealSet& i);

}  // namespace bowtie
