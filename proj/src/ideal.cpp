#include "bowtie/ideal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bowtie/error.hpp"

namespace bowtie {
namespace {

void require_same_ring(const IdealSet& a, const IdealSet& b, const char* op) {
    if (a.ring() != b.ring())
        throw PreconditionError(std::string(op) + ": ideals live in different rings");
}

// a + b for additive subgroups a and b: union of the cosets a + y, y in b.
ElementSet sum_sets(const FiniteRing& r, const ElementSet& a, const ElementSet& b) {
    ElementSet out = a;
    const auto a_members = a.members();
    b.for_each([&](Elem y) {
        if (out.test(y)) return;
        for (auto x : a_members) out.set(r.add(x, y));
    });
    return out;
}

}  // namespace

bool is_ideal(const FiniteRing& ring, const ElementSet& s) {
    if (s.universe() != ring.size() || !s.test(ring.zero())) return false;
    const auto m = s.members();
    for (auto a : m) {
        if (!s.test(ring.neg(a))) return false;
        for (auto b : m)
            if (!s.test(ring.add(a, b))) return false;
        for (Elem r = 0; r < ring.size(); ++r)
            if (!s.test(ring.mul(r, a))) return false;
    }
    return true;
}

IdealSet IdealSet::from_members(RingPtr ring, ElementSet members) {
    if (!ring) throw InputError("ideal needs a ring");
    if (!is_ideal(*ring, members))
        throw InputError("subset of " + ring->name() + " is not an ideal");
    return trusted(std::move(ring), std::move(members));
}

IdealSet IdealSet::zero(const RingPtr& ring) {
    ElementSet s(ring->size());
    s.set(ring->zero());
    return trusted(ring, std::move(s));
}

IdealSet IdealSet::whole(const RingPtr& ring) {
    return trusted(ring, ElementSet::full(ring->size()));
}

IdealSet principal_ideal(const RingPtr& ring, Elem g) {
    // R·g is closed under addition since rg + sg = (r+s)g.
    ElementSet s(ring->size());
    for (Elem r = 0; r < ring->size(); ++r) s.set(ring->mul(r, g));
    return IdealSet::trusted(ring, std::move(s));
}

IdealSet ideal_generate(const RingPtr& ring, const std::vector<Elem>& gens) {
    ElementSet acc(ring->size());
    acc.set(ring->zero());
    for (auto g : gens) {
        if (g >= ring->size()) throw InputError("generator index out of range");
        if (acc.test(g)) continue;
        acc = sum_sets(*ring, acc, principal_ideal(ring, g).members());
    }
    return IdealSet::trusted(ring, std::move(acc));
}

std::vector<IdealSet> enumerate_ideals(const RingPtr& ring, std::size_t cap) {
    if (ring->size() > cap)
        throw CapExceeded("ideal enumeration: ring " + ring->name() + " has " +
                          std::to_string(ring->size()) + " elements, cap is " + std::to_string(cap));
    std::set<ElementSet> principals;
    for (Elem g = 0; g < ring->size(); ++g) principals.insert(principal_ideal(ring, g).members());

    // Every ideal is the sum of the principal ideals of its elements.
    std::set<ElementSet> found;
    std::vector<ElementSet> work;
    auto zero = IdealSet::zero(ring).members();
    found.insert(zero);
    work.push_back(zero);
    while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        for (const auto& p : principals) {
            if (p.subset_of(cur)) continue;
            auto next = sum_sets(*ring, cur, p);
            if (found.insert(next).second) work.push_back(std::move(next));
        }
    }
    std::vector<IdealSet> out;
    out.reserve(found.size());
    for (const auto& s : found) out.push_back(IdealSet::trusted(ring, s));
    return out;
}

bool is_prime(const IdealSet& p) {
    if (!p.is_proper()) throw PreconditionError("is_prime: the unit ideal is not prime");
    const auto& r = *p.ring();
    const auto outside = (ElementSet::full(r.size()) - p.members()).members();
    for (auto a : outside)
        for (auto b : outside)
            if (p.contains(r.mul(a, b))) return false;
    return true;
}

bool is_maximal(const IdealSet& p) {
    if (!p.is_proper()) throw PreconditionError("is_maximal: the unit ideal is not maximal");
    const auto& r = *p.ring();
    // Maximal iff P + Ra = R for every a outside P, i.e. 1 - ra in P for some r.
    for (Elem a = 0; a < r.size(); ++a) {
        if (p.contains(a)) continue;
        bool reaches_one = false;
        for (Elem x = 0; x < r.size() && !reaches_one; ++x)
            reaches_one = p.contains(r.sub(r.one(), r.mul(x, a)));
        if (!reaches_one) return false;
    }
    return true;
}

std::size_t SpectrumList::index_of(const IdealSet& p) const {
    auto it = std::find(primes.begin(), primes.end(), p);
    return static_cast<std::size_t>(it - primes.begin());
}

bool SpectrumList::all_maximal() const {
    return std::all_of(maximal.begin(), maximal.end(), [](bool b) { return b; });
}

SpectrumList spec(const RingPtr& ring, std::size_t cap) {
    SpectrumList out;
    out.ring = ring;
    for (auto& i : enumerate_ideals(ring, cap)) {
        if (!i.is_proper() || !is_prime(i)) continue;
        out.maximal.push_back(is_maximal(i));
        out.primes.push_back(std::move(i));
    }
    return out;
}

SpectrumList max_spec(const RingPtr& ring, std::size_t cap) {
    SpectrumList out;
    out.ring = ring;
    for (auto& i : enumerate_ideals(ring, cap)) {
        if (!i.is_proper() || !is_maximal(i)) continue;
        out.primes.push_back(std::move(i));
        out.maximal.push_back(true);
    }
    return out;
}

IdealSet nilradical(const RingPtr& ring) {
    ElementSet s(ring->size());
    for (Elem a = 0; a < ring->size(); ++a) {
        // Powers of a eventually cycle; a is nilpotent iff zero shows up first.
        ElementSet seen(ring->size());
        for (Elem x = a; !seen.test(x); x = ring->mul(x, a)) {
            if (x == ring->zero()) {
                s.set(a);
                break;
            }
            seen.set(x);
        }
    }
    return IdealSet::trusted(ring, std::move(s));
}

IdealSet jacobson(const RingPtr& ring, std::size_t cap) {
    auto acc = ElementSet::full(ring->size());
    for (const auto& m : max_spec(ring, cap).primes) acc &= m.members();
    return IdealSet::trusted(ring, std::move(acc));
}

IdealSet ideal_sum(const IdealSet& a, const IdealSet& b) {
    require_same_ring(a, b, "ideal_sum");
    return IdealSet::trusted(a.ring(), sum_sets(*a.ring(), a.members(), b.members()));
}

IdealSet ideal_intersect(const IdealSet& a, const IdealSet& b) {
    require_same_ring(a, b, "ideal_intersect");
    return IdealSet::trusted(a.ring(), a.members() & b.members());
}

IdealSet ideal_product(const IdealSet& a, const IdealSet& b) {
    require_same_ring(a, b, "ideal_product");
    const auto& r = *a.ring();
    ElementSet products(r.size());
    a.members().for_each([&](Elem x) { b.members().for_each([&](Elem y) { products.set(r.mul(x, y)); }); });
    return ideal_generate(a.ring(), products.members());
}

IdealSet radical(const IdealSet& i) {
    const auto& r = *i.ring();
    ElementSet s(r.size());
    for (Elem a = 0; a < r.size(); ++a) {
        ElementSet seen(r.size());
        for (Elem x = a; !seen.test(x); x = r.mul(x, a)) {
            if (i.contains(x)) {
                s.set(a);
                break;
            }
            seen.set(x);
        }
    }
    return IdealSet::trusted(i.ring(), std::move(s));
}

std::vector<std::size_t> v_of(const SpectrumList& s, const IdealSet& i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.primes.size(); ++k)
        if (i.subset_of(s.primes[k])) out.push_back(k);
    return out;
}

std::string ideal_label(const IdealSet& i) {
    const auto& ring = i.ring();
    std::vector<Elem> gens;
    ElementSet span = IdealSet::zero(ring).members();
    i.members().for_each([&](Elem x) {
        if (span.test(x)) return;
        gens.push_back(x);
        span = sum_sets(*ring, span, principal_ideal(ring, x).members());
    });
    std::ostringstream os;
    os << '(';
    if (gens.empty()) os << ring->label(ring->zero());
    for (std::size_t k = 0; k < gens.size(); ++k) os << (k ? "," : "") << ring->label(gens[k]);
    os << ')';
    return os.str();
}

std::string ideal_members_string(const IdealSet& i) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    i.members().for_each([&](Elem x) {
        os << (first ? "" : ",") << i.ring()->label(x);
        first = false;
    });
    os << '}';
    return os.str();
}

}  // namespace bowtie
