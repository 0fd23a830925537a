#include "bowtie/amalgam.hpp"

#include <sstream>

#include "bowtie/error.hpp"

namespace bowtie {
namespace {

const ValidationOptions kCarrierCheck{.exhaustive_cap = 24, .samples = 1 << 12};

}  // namespace

AmalgamationRing amalgamate(RingPtr r, RingPtr s, RingHom f, IdealSet j) {
    if (!r || !s) throw InputError("amalgamate: missing ring");
    if (f.domain() != r || f.codomain() != s)
        throw PreconditionError("amalgamate: f must map " + r->name() + " to " + s->name());
    if (j.ring() != s) throw PreconditionError("amalgamate: J must be an ideal of " + s->name());
    if (j.is_zero()) throw PreconditionError("amalgamate: J must be nonzero");
    if (!j.is_proper()) throw PreconditionError("amalgamate: J must be proper");

    AmalgamationRing a;
    a.r_ = r;
    a.s_ = s;
    a.f_ = f;
    a.j_ = j;
    const auto ns = s->size();
    const auto js = j.members().members();
    a.lookup_.assign(r->size() * ns, AmalgamationRing::kAbsent);
    for (Elem x = 0; x < r->size(); ++x) {
        for (auto y : js) {
            const auto second = s->add(f(x), y);
            auto& slot = a.lookup_[x * ns + second];
            // (x, f(x)+y) = (x, f(x)+y') forces y = y'.
            if (slot != AmalgamationRing::kAbsent)
                throw TheoremViolation("amalgamate: duplicate carrier pair");
            slot = static_cast<Elem>(a.pairs_.size());
            a.pairs_.emplace_back(x, second);
        }
    }

    const auto n = a.pairs_.size();
    RingTables t;
    t.name = r->name() + "⋈^f " + ideal_label(j) + "⊂" + s->name();
    t.size = n;
    t.zero = a.index_of(r->zero(), s->zero());
    t.one = a.index_of(r->one(), s->one());
    t.add.resize(n * n);
    t.mul.resize(n * n);
    t.labels.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        const auto [x1, y1] = a.pairs_[p];
        t.labels[p] = "(" + r->label(x1) + "," + s->label(y1) + ")";
        for (std::size_t q = 0; q < n; ++q) {
            const auto [x2, y2] = a.pairs_[q];
            const auto sum = a.index_of(r->add(x1, x2), s->add(y1, y2));
            const auto prod = a.index_of(r->mul(x1, x2), s->mul(y1, y2));
            if (sum == AmalgamationRing::kAbsent || prod == AmalgamationRing::kAbsent)
                throw TheoremViolation("amalgamate: carrier is not closed under the ring operations");
            t.add[p * n + q] = sum;
            t.mul[p * n + q] = prod;
        }
    }
    // A subset of R × S closed under both operations is a subring, so a
    // light sampled pass suffices here.
    a.carrier_ = FiniteRing::create(std::move(t), kCarrierCheck);
    return a;
}

AmalgamationRing duplicate(const RingPtr& r, const IdealSet& i) {
    auto a = amalgamate(r, r, identity_hom(r), i);
    a.duplication_ = true;
    // Rename to the customary R⋈I form.
    auto tables = a.carrier_->tables();
    tables.name = r->name() + "⋈" + ideal_label(i);
    a.carrier_ = FiniteRing::create(std::move(tables), kCarrierCheck);
    return a;
}

RingHom AmalgamationRing::first_projection() const {
    std::vector<Elem> map(pairs_.size());
    for (std::size_t k = 0; k < pairs_.size(); ++k) map[k] = pairs_[k].first;
    return trusted_hom(carrier_, r_, std::move(map));
}

IdealSet AmalgamationRing::projection_kernel() const {
    ElementSet s(pairs_.size());
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        if (pairs_[k].first == r_->zero()) s.set(static_cast<Elem>(k));
    return IdealSet::trusted(carrier_, std::move(s));
}

TrivialExtensionAmalgam trivial_extension_as_amalgam(const RingPtr& r, const ModulePtr& m) {
    if (m->size() < 2) throw PreconditionError("trivial_extension_as_amalgam: M must be nonzero");
    auto ext = make_trivial_extension(r, m);
    const auto nm = m->size();
    std::vector<Elem> f(r->size());
    for (Elem x = 0; x < r->size(); ++x) f[x] = static_cast<Elem>(x * nm + m->zero());
    auto hom = make_hom(r, ext, std::move(f));
    auto j = IdealSet::from_members(ext, trivial_extension_module_part(*r, nm));
    auto a = amalgamate(r, ext, hom, j);
    // (r, (r, x)) ↦ (r, x)
    std::vector<Elem> iso(a.pair_labels().size());
    for (std::size_t k = 0; k < iso.size(); ++k) iso[k] = a.pair_labels()[k].second;
    auto phi = make_hom(a.carrier(), ext, std::move(iso));
    if (!is_injective(phi) || !is_surjective(phi))
        throw TheoremViolation("trivial_extension_as_amalgam: map onto R⋉M is not bijective");
    return {std::move(a), std::move(phi)};
}

IdealSet lift_type1(const AmalgamationRing& a, const IdealSet& p) {
    if (p.ring() != a.base()) throw PreconditionError("lift_type1: p is not an ideal of R");
    if (!p.is_proper() || !is_prime(p)) throw PreconditionError("lift_type1: p is not prime");
    const auto& pairs = a.pair_labels();
    ElementSet s(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (p.contains(pairs[k].first)) s.set(static_cast<Elem>(k));
    auto lifted = IdealSet::trusted(a.carrier(), std::move(s));
    if (!is_prime(lifted)) throw TheoremViolation("lift_type1: lifted ideal is not prime");
    return lifted;
}

IdealSet lift_type2(const AmalgamationRing& a, const IdealSet& q) {
    if (q.ring() != a.target()) throw PreconditionError("lift_type2: q is not an ideal of S");
    if (!q.is_proper() || !is_prime(q)) throw PreconditionError("lift_type2: q is not prime");
    if (a.ideal().subset_of(q)) throw PreconditionError("lift_type2: J is contained in q");
    const auto& pairs = a.pair_labels();
    ElementSet s(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (q.contains(pairs[k].second)) s.set(static_cast<Elem>(k));
    auto lifted = IdealSet::trusted(a.carrier(), std::move(s));
    if (!is_ideal(*a.carrier(), lifted.members()) || !is_prime(lifted))
        throw TheoremViolation("lift_type2: lifted ideal is not prime");
    return lifted;
}

std::string TaggedPrime::label() const {
    return (tag == PrimeType::Type1 ? "T1:" : "T2:") + ideal_label(source_ideal);
}

ClassifiedSpectrum classify_spectrum(const AmalgamationRing& a, std::size_t cap) {
    ClassifiedSpectrum c;
    c.carrier_spec = spec(a.carrier(), cap);
    c.spec_r = spec(a.base(), cap);
    c.spec_s = spec(a.target(), cap);
    for (std::size_t k = 0; k < c.spec_s.size(); ++k)
        if (!a.ideal().subset_of(c.spec_s.primes[k])) c.off_vj.push_back(k);

    for (std::size_t k = 0; k < c.spec_r.size(); ++k) {
        TaggedPrime t;
        t.tag = PrimeType::Type1;
        t.source = k;
        t.source_ideal = c.spec_r.primes[k];
        t.ideal = lift_type1(a, t.source_ideal);
        c.primes.push_back(std::move(t));
    }
    for (auto k : c.off_vj) {
        TaggedPrime t;
        t.tag = PrimeType::Type2;
        t.source = k;
        t.source_ideal = c.spec_s.primes[k];
        t.ideal = lift_type2(a, t.source_ideal);
        c.primes.push_back(std::move(t));
    }

    const auto where = describe(a);
    std::vector<bool> hit(c.carrier_spec.size(), false);
    for (auto& t : c.primes) {
        const auto idx = c.carrier_spec.index_of(t.ideal);
        if (idx == c.carrier_spec.size())
            throw TheoremViolation(where + ": lifted prime " + t.label() + " = " +
                                   ideal_members_string(t.ideal) + " is not in the enumerated spectrum");
        if (hit[idx])
            throw TheoremViolation(where + ": two lifts coincide at " + ideal_members_string(t.ideal));
        hit[idx] = true;
        c.carrier_index.push_back(idx);
        const bool remark_max = t.tag == PrimeType::Type1 ? c.spec_r.maximal[t.source]
                                                          : c.spec_s.maximal[t.source];
        t.maximal = c.carrier_spec.maximal[idx];
        if (remark_max != t.maximal)
            throw TheoremViolation(where + ": maximality of " + t.label() + " disagrees with Max description");
    }
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (!hit[k])
            throw TheoremViolation(where + ": prime " + ideal_members_string(c.carrier_spec.primes[k]) +
                                   " is neither type 1 nor type 2");
    return c;
}

std::vector<TaggedPrime> max_classify(const ClassifiedSpectrum& c) {
    std::vector<TaggedPrime> out;
    for (const auto& t : c.primes)
        if (t.maximal) out.push_back(t);
    return out;
}

std::vector<TaggedPrime> max_classify(const AmalgamationRing& a, std::size_t cap) {
    return max_classify(classify_spectrum(a, cap));
}

std::string describe(const AmalgamationRing& a) {
    std::ostringstream os;
    os << a.carrier()->name() << " [R=" << a.base()->name() << ", S=" << a.target()->name()
       << ", J=" << ideal_label(a.ideal()) << ", |carrier|=" << a.carrier()->size() << "]";
    return os.str();
}

}  // namespace bowtie
