#include "bowtie/hom.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "bowtie/error.hpp"

namespace bowtie {
namespace {

constexpr Elem kUnset = std::numeric_limits<Elem>::max();

// Backtracking over images of the domain's additive generators. With
// `exact_orders` the image of each generator must have the same additive
// order (isomorphism search); otherwise its order must divide.
void search_homs(const RingPtr& r, const RingPtr& s, bool exact_orders,
                 const std::function<bool(const RingHom&)>& visit) {
    const auto gens = r->additive_generators();
    const auto r_orders = r->additive_orders();
    const auto s_orders = s->additive_orders();
    std::vector<Elem> map(r->size(), kUnset);
    map[r->zero()] = s->zero();

    // Extends the map from span(g_0..g_{k-1}) to span(g_0..g_k) with
    // g_k ↦ t. Returns false on an inconsistency.
    auto extend = [&](Elem g, Elem t, std::vector<Elem>& m) {
        std::vector<Elem> queue;
        for (Elem x = 0; x < r->size(); ++x)
            if (m[x] != kUnset) queue.push_back(x);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const auto x = queue[i];
            const auto y = r->add(x, g);
            const auto img = s->add(m[x], t);
            if (m[y] == kUnset) {
                m[y] = img;
                queue.push_back(y);
            } else if (m[y] != img) {
                return false;
            }
        }
        return true;
    };

    bool stop = false;
    std::function<void(std::size_t, const std::vector<Elem>&)> rec =
        [&](std::size_t k, const std::vector<Elem>& partial) {
            if (stop) return;
            if (k == gens.size()) {
                if (partial[r->one()] != s->one()) return;
                if (!check_hom(*r, *s, partial).ok()) return;
                if (!visit(trusted_hom(r, s, partial))) stop = true;
                return;
            }
            const auto g = gens[k];
            for (Elem t = 0; t < s->size() && !stop; ++t) {
                const bool order_ok = exact_orders ? s_orders[t] == r_orders[g]
                                                   : r_orders[g] % s_orders[t] == 0;
                if (!order_ok) continue;
                if (g == r->one() && t != s->one()) continue;
                auto next = partial;
                if (!extend(g, t, next)) continue;
                if (next[r->one()] != kUnset && next[r->one()] != s->one()) continue;
                rec(k + 1, next);
            }
        };
    rec(0, map);
}

}  // namespace

ValidationReport check_hom(const FiniteRing& domain, const FiniteRing& codomain,
                           const std::vector<Elem>& map) {
    ValidationReport report;
    auto fail = [&](Violation v) {
        report.violation = std::move(v);
        return report;
    };
    if (map.size() != domain.size()) return fail({"shape", {}, "map needs one image per domain element"});
    for (auto e : map)
        if (e >= codomain.size()) return fail({"shape", {}, "image index out of range"});
    if (map[domain.zero()] != codomain.zero()) return fail({"zero", {domain.zero()}, "f(0) != 0"});
    if (map[domain.one()] != codomain.one()) return fail({"unity", {domain.one()}, "f(1) != 1"});
    for (Elem a = 0; a < domain.size(); ++a)
        for (Elem b = 0; b < domain.size(); ++b) {
            ++report.checks;
            if (map[domain.add(a, b)] != codomain.add(map[a], map[b]))
                return fail({"additivity", {a, b}, "f(a+b) != f(a)+f(b)"});
            if (map[domain.mul(a, b)] != codomain.mul(map[a], map[b]))
                return fail({"multiplicativity", {a, b}, "f(ab) != f(a)f(b)"});
        }
    return report;
}

RingHom make_hom(RingPtr domain, RingPtr codomain, std::vector<Elem> map) {
    if (!domain || !codomain) throw InputError("hom needs a domain and a codomain");
    auto report = check_hom(*domain, *codomain, map);
    if (!report.ok()) {
        std::ostringstream os;
        os << "invalid hom " << domain->name() << " -> " << codomain->name() << ": "
           << report.violation->axiom;
        if (!report.violation->witness.empty()) {
            os << " (witness";
            for (auto w : report.violation->witness) os << ' ' << domain->label(w);
            os << ')';
        }
        throw InputError(os.str());
    }
    return trusted_hom(std::move(domain), std::move(codomain), std::move(map));
}

RingHom trusted_hom(RingPtr domain, RingPtr codomain, std::vector<Elem> map) {
    RingHom f;
    f.domain_ = std::move(domain);
    f.codomain_ = std::move(codomain);
    f.map_ = std::move(map);
    return f;
}

RingHom identity_hom(const RingPtr& r) {
    std::vector<Elem> map(r->size());
    for (Elem a = 0; a < r->size(); ++a) map[a] = a;
    return trusted_hom(r, r, std::move(map));
}

RingHom compose(const RingHom& g, const RingHom& f) {
    if (f.codomain() != g.domain())
        throw PreconditionError("compose: codomain of f (" + f.codomain()->name() +
                                ") is not the domain of g (" + g.domain()->name() + ")");
    std::vector<Elem> map(f.map().size());
    for (std::size_t a = 0; a < map.size(); ++a) map[a] = g(f(static_cast<Elem>(a)));
    return trusted_hom(f.domain(), g.codomain(), std::move(map));
}

RingHom natural_hom(const RingPtr& domain, const RingPtr& codomain) {
    std::vector<Elem> map(domain->size(), kUnset);
    Elem x = domain->zero();
    Elem y = codomain->zero();
    do {
        map[x] = y;
        x = domain->add(x, domain->one());
        y = codomain->add(y, codomain->one());
    } while (x != domain->zero());
    if (std::find(map.begin(), map.end(), kUnset) != map.end())
        throw PreconditionError("natural_hom: " + domain->name() + " is not generated by its unity");
    return make_hom(domain, codomain, std::move(map));
}

ElementSet image(const RingHom& f) {
    ElementSet s(f.codomain()->size());
    for (auto e : f.map()) s.set(e);
    return s;
}

bool is_surjective(const RingHom& f) { return image(f).is_full(); }

bool is_injective(const RingHom& f) { return image(f).count() == f.domain()->size(); }

IdealSet preimage_ideal(const RingHom& f, const IdealSet& q) {
    if (q.ring() != f.codomain()) throw PreconditionError("preimage_ideal: ideal is not in the codomain");
    ElementSet s(f.domain()->size());
    for (Elem r = 0; r < f.domain()->size(); ++r)
        if (q.contains(f(r))) s.set(r);
    return IdealSet::trusted(f.domain(), std::move(s));
}

IdealSet image_ideal(const RingHom& f, const IdealSet& i) {
    if (i.ring() != f.domain()) throw PreconditionError("image_ideal: ideal is not in the domain");
    ElementSet s(f.codomain()->size());
    i.members().for_each([&](Elem r) { s.set(f(r)); });
    if (!is_ideal(*f.codomain(), s)) throw PreconditionError("image_ideal: image is not an ideal");
    return IdealSet::trusted(f.codomain(), std::move(s));
}

void for_each_hom(const RingPtr& r, const RingPtr& s, const std::function<bool(const RingHom&)>& visit) {
    search_homs(r, s, false, visit);
}

std::vector<RingHom> enumerate_homs(const RingPtr& r, const RingPtr& s) {
    std::vector<RingHom> out;
    for_each_hom(r, s, [&](const RingHom& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

std::optional<RingHom> find_isomorphism(const RingPtr& a, const RingPtr& b) {
    if (a->size() != b->size()) return std::nullopt;
    auto pa = a->additive_orders();
    auto pb = b->additive_orders();
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return std::nullopt;
    std::optional<RingHom> found;
    search_homs(a, b, true, [&](const RingHom& f) {
        if (!is_injective(f)) return true;
        found = f;
        return false;
    });
    return found;
}

Quotient make_quotient(const RingPtr& a, const IdealSet& i) {
    if (i.ring() != a) throw PreconditionError("make_quotient: ideal is not in the ring");
    if (!i.is_proper()) throw PreconditionError("make_quotient: cannot quotient by the unit ideal");
    const auto n = a->size();
    std::vector<Elem> cls(n, kUnset);
    std::vector<Elem> reps;
    const auto members = i.members().members();
    for (Elem x = 0; x < n; ++x) {
        if (cls[x] != kUnset) continue;
        const auto c = static_cast<Elem>(reps.size());
        reps.push_back(x);
        for (auto m : members) cls[a->add(x, m)] = c;
    }
    const auto k = reps.size();
    RingTables t;
    t.name = a->name() + "/" + ideal_label(i);
    t.size = k;
    t.zero = cls[a->zero()];
    t.one = cls[a->one()];
    t.add.resize(k * k);
    t.mul.resize(k * k);
    t.labels.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
        t.labels[p] = i.is_zero() ? a->label(reps[p]) : "[" + a->label(reps[p]) + "]";
        for (std::size_t q = 0; q < k; ++q) {
            t.add[p * k + q] = cls[a->add(reps[p], reps[q])];
            t.mul[p * k + q] = cls[a->mul(reps[p], reps[q])];
        }
    }
    auto ring = FiniteRing::create(std::move(t));
    return {ring, trusted_hom(a, ring, std::move(cls))};
}

}  // namespace bowtie
