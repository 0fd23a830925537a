#include "bowtie/ring.hpp"

#include <random>
#include <sstream>
#include <utility>

#include "bowtie/error.hpp"

namespace bowtie {
namespace {

std::string fmt_violation(const std::string& what, const Violation& v) {
    std::ostringstream os;
    os << what << ": " << v.axiom;
    if (!v.witness.empty()) {
        os << " (witness";
        for (auto w : v.witness) os << ' ' << w;
        os << ')';
    }
    if (!v.detail.empty()) os << ": " << v.detail;
    return os.str();
}

bool in_range(const std::vector<Elem>& table, std::size_t bound) {
    for (auto e : table)
        if (e >= bound) return false;
    return true;
}

// Checks that each row of an n×n table is a permutation of 0..n-1.
std::optional<Violation> check_group_rows(const std::vector<Elem>& add, std::size_t n) {
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            auto s = add[a * n + b];
            if (seen[s]) {
                return Violation{"additive cancellation", {static_cast<Elem>(a), s},
                                 "row of the addition table repeats an entry"};
            }
            seen[s] = 1;
        }
    }
    return std::nullopt;
}

// Axioms on (add, zero) shared by rings and modules.
std::optional<Violation> check_abelian_group(const std::vector<Elem>& add, std::size_t n,
                                             Elem zero, std::uint64_t& checks) {
    for (Elem a = 0; a < n; ++a) {
        if (add[a * n + zero] != a || add[zero * n + a] != a)
            return Violation{"additive identity", {a}, "zero + a != a"};
    }
    if (auto v = check_group_rows(add, n)) return v;
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
            ++checks;
            if (add[a * n + b] != add[b * n + a])
                return Violation{"additive commutativity", {a, b}, "a + b != b + a"};
        }
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                ++checks;
                if (add[add[a * n + b] * n + c] != add[a * n + add[b * n + c]])
                    return Violation{"additive associativity", {a, b, c}, "(a+b)+c != a+(b+c)"};
            }
    return std::nullopt;
}

template <typename F>
std::optional<Violation> over_triples(std::size_t n, const ValidationOptions& opts,
                                      ValidationReport& report, F&& check) {
    if (n <= opts.exhaustive_cap) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c) {
                    ++report.checks;
                    if (auto v = check(a, b, c)) return v;
                }
        return std::nullopt;
    }
    report.exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
        auto a = static_cast<Elem>(rng() % n);
        auto b = static_cast<Elem>(rng() % n);
        auto c = static_cast<Elem>(rng() % n);
        ++report.checks;
        if (auto v = check(a, b, c)) return v;
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_ring(const RingTables& t, const ValidationOptions& opts) {
    ValidationReport report;
    const auto n = t.size;
    auto fail = [&](Violation v) {
        report.violation = std::move(v);
        return report;
    };
    if (n == 0) return fail({"shape", {}, "ring must have at least one element"});
    if (t.add.size() != n * n || t.mul.size() != n * n)
        return fail({"shape", {}, "tables must be size x size"});
    if (t.zero >= n || t.one >= n) return fail({"shape", {}, "zero/one out of range"});
    if (!in_range(t.add, n) || !in_range(t.mul, n))
        return fail({"shape", {}, "table entry out of range"});
    if (!t.labels.empty() && t.labels.size() != n)
        return fail({"shape", {}, "labels must have one entry per element"});
    if (t.zero == t.one) return fail({"nontrivial", {t.zero}, "one == zero"});

    // The additive associativity check is cubic too; route it through the
    // sampler for large tables.
    if (n <= opts.exhaustive_cap) {
        if (auto v = check_abelian_group(t.add, n, t.zero, report.checks)) return fail(*v);
    } else {
        for (Elem a = 0; a < n; ++a)
            if (t.add[a * n + t.zero] != a || t.add[t.zero * n + a] != a)
                return fail({"additive identity", {a}, "zero + a != a"});
        if (auto v = check_group_rows(t.add, n)) return fail(*v);
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                if (t.add[a * n + b] != t.add[b * n + a])
                    return fail({"additive commutativity", {a, b}, "a + b != b + a"});
        auto v = over_triples(n, opts, report, [&](Elem a, Elem b, Elem c) -> std::optional<Violation> {
            if (t.add[t.add[a * n + b] * n + c] != t.add[a * n + t.add[b * n + c]])
                return Violation{"additive associativity", {a, b, c}, "(a+b)+c != a+(b+c)"};
            return std::nullopt;
        });
        if (v) return fail(*v);
    }

    for (Elem a = 0; a < n; ++a)
        for (Elem b = a + 1; b < n; ++b) {
            ++report.checks;
            if (t.mul[a * n + b] != t.mul[b * n + a])
                return fail({"multiplicative commutativity", {a, b}, "ab != ba"});
        }
    for (Elem a = 0; a < n; ++a)
        if (t.mul[t.one * n + a] != a || t.mul[a * n + t.one] != a)
            return fail({"multiplicative identity", {a}, "one * a != a"});

    auto v = over_triples(n, opts, report, [&](Elem a, Elem b, Elem c) -> std::optional<Violation> {
        const auto& m = t.mul;
        const auto& s = t.add;
        if (m[m[a * n + b] * n + c] != m[a * n + m[b * n + c]])
            return Violation{"multiplicative associativity", {a, b, c}, "(ab)c != a(bc)"};
        if (m[a * n + s[b * n + c]] != s[m[a * n + b] * n + m[a * n + c]])
            return Violation{"distributivity", {a, b, c}, "a(b+c) != ab+ac"};
        return std::nullopt;
    });
    if (v) return fail(*v);
    return report;
}

FiniteRing::FiniteRing(RingTables t) : t_(std::move(t)), neg_(t_.size) {
    for (Elem a = 0; a < t_.size; ++a)
        for (Elem b = 0; b < t_.size; ++b)
            if (add(a, b) == t_.zero) {
                neg_[a] = b;
                break;
            }
}

RingPtr FiniteRing::create(RingTables tables, const ValidationOptions& opts) {
    auto report = validate_ring(tables, opts);
    if (!report.ok())
        throw InputError(fmt_violation("invalid ring '" + tables.name + "'", *report.violation));
    return RingPtr(new FiniteRing(std::move(tables)));
}

std::string FiniteRing::label(Elem a) const {
    if (!t_.labels.empty()) return t_.labels[a];
    return std::to_string(a);
}

std::vector<std::size_t> FiniteRing::additive_orders() const {
    std::vector<std::size_t> orders(size());
    for (Elem a = 0; a < size(); ++a) {
        std::size_t k = 1;
        for (Elem x = a; x != zero(); x = add(x, a)) ++k;
        orders[a] = k;
    }
    return orders;
}

std::vector<Elem> FiniteRing::additive_generators() const {
    ElementSet span(size());
    span.set(zero());
    std::vector<Elem> gens;
    for (Elem g = 0; g < size(); ++g) {
        if (span.test(g)) continue;
        gens.push_back(g);
        // span := span + <g>
        std::vector<Elem> frontier = span.members();
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            auto next = add(frontier[i], g);
            if (!span.test(next)) {
                span.set(next);
                frontier.push_back(next);
            }
        }
    }
    return gens;
}

ValidationReport validate_module(const FiniteRing& ring, const ModuleTables& t,
                                 const ValidationOptions& opts) {
    ValidationReport report;
    const auto m = t.size;
    const auto n = ring.size();
    auto fail = [&](Violation v) {
        report.violation = std::move(v);
        return report;
    };
    if (m == 0) return fail({"shape", {}, "module must have at least one element"});
    if (t.add.size() != m * m || t.action.size() != n * m)
        return fail({"shape", {}, "add must be m x m and action |R| x m"});
    if (t.zero >= m || !in_range(t.add, m) || !in_range(t.action, m))
        return fail({"shape", {}, "entry out of range"});
    if (!t.labels.empty() && t.labels.size() != m)
        return fail({"shape", {}, "labels must have one entry per element"});
    if (auto v = check_abelian_group(t.add, m, t.zero, report.checks)) return fail(*v);

    auto act = [&](Elem r, Elem x) { return t.action[r * m + x]; };
    auto madd = [&](Elem x, Elem y) { return t.add[x * m + y]; };
    for (Elem x = 0; x < m; ++x)
        if (act(ring.one(), x) != x) return fail({"unital action", {x}, "1·x != x"});
    if (n * m * m > opts.exhaustive_cap * opts.exhaustive_cap * opts.exhaustive_cap)
        report.exhaustive = false;
    for (Elem r = 0; r < n; ++r)
        for (Elem x = 0; x < m; ++x)
            for (Elem y = 0; y < m; ++y) {
                ++report.checks;
                if (act(r, madd(x, y)) != madd(act(r, x), act(r, y)))
                    return fail({"action additive in module", {r, x, y}, "r(x+y) != rx+ry"});
            }
    for (Elem r = 0; r < n; ++r)
        for (Elem s = 0; s < n; ++s)
            for (Elem x = 0; x < m; ++x) {
                ++report.checks;
                if (act(ring.add(r, s), x) != madd(act(r, x), act(s, x)))
                    return fail({"action additive in ring", {r, s, x}, "(r+s)x != rx+sx"});
                if (act(ring.mul(r, s), x) != act(r, act(s, x)))
                    return fail({"action associative", {r, s, x}, "(rs)x != r(sx)"});
            }
    return report;
}

ModulePtr FiniteModule::create(RingPtr ring, ModuleTables tables, const ValidationOptions& opts) {
    if (!ring) throw InputError("module needs a ring");
    auto report = validate_module(*ring, tables, opts);
    if (!report.ok())
        throw InputError(fmt_violation("invalid module '" + tables.name + "'", *report.violation));
    return ModulePtr(new FiniteModule(std::move(ring), std::move(tables)));
}

std::string FiniteModule::label(Elem x) const {
    if (!t_.labels.empty()) return t_.labels[x];
    return std::to_string(x);
}

RingPtr make_zn(std::size_t n) {
    if (n < 2) throw PreconditionError("make_zn: modulus must be >= 2, got " + std::to_string(n));
    RingTables t;
    t.name = "Z" + std::to_string(n);
    t.size = n;
    t.zero = 0;
    t.one = 1;
    t.add.resize(n * n);
    t.mul.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            t.add[a * n + b] = static_cast<Elem>((a + b) % n);
            t.mul[a * n + b] = static_cast<Elem>((a * b) % n);
        }
    return FiniteRing::create(std::move(t));
}

RingPtr make_product(const RingPtr& a, const RingPtr& b) {
    const auto na = a->size();
    const auto nb = b->size();
    const auto n = na * nb;
    auto idx = [nb](Elem x, Elem y) { return static_cast<Elem>(x * nb + y); };
    RingTables t;
    t.name = a->name() + "x" + b->name();
    t.size = n;
    t.zero = idx(a->zero(), b->zero());
    t.one = idx(a->one(), b->one());
    t.add.resize(n * n);
    t.mul.resize(n * n);
    t.labels.resize(n);
    for (Elem x1 = 0; x1 < na; ++x1)
        for (Elem y1 = 0; y1 < nb; ++y1) {
            const auto i = idx(x1, y1);
            t.labels[i] = "(" + a->label(x1) + "," + b->label(y1) + ")";
            for (Elem x2 = 0; x2 < na; ++x2)
                for (Elem y2 = 0; y2 < nb; ++y2) {
                    const auto j = idx(x2, y2);
                    t.add[i * n + j] = idx(a->add(x1, x2), b->add(y1, y2));
                    t.mul[i * n + j] = idx(a->mul(x1, x2), b->mul(y1, y2));
                }
        }
    return FiniteRing::create(std::move(t));
}

RingPtr make_trivial_extension(const RingPtr& r, const ModulePtr& m) {
    if (m->ring() != r) throw PreconditionError("trivial extension: module is over a different ring");
    const auto nr = r->size();
    const auto nm = m->size();
    const auto n = nr * nm;
    auto idx = [nm](Elem x, Elem y) { return static_cast<Elem>(x * nm + y); };
    RingTables t;
    t.name = r->name() + "|x" + m->name();
    t.size = n;
    t.zero = idx(r->zero(), m->zero());
    t.one = idx(r->one(), m->zero());
    t.add.resize(n * n);
    t.mul.resize(n * n);
    t.labels.resize(n);
    for (Elem r1 = 0; r1 < nr; ++r1)
        for (Elem m1 = 0; m1 < nm; ++m1) {
            const auto i = idx(r1, m1);
            t.labels[i] = "(" + r->label(r1) + "," + m->label(m1) + ")";
            for (Elem r2 = 0; r2 < nr; ++r2)
                for (Elem m2 = 0; m2 < nm; ++m2) {
                    const auto j = idx(r2, m2);
                    t.add[i * n + j] = idx(r->add(r1, r2), m->add(m1, m2));
                    t.mul[i * n + j] = idx(r->mul(r1, r2), m->add(m->act(r1, m2), m->act(r2, m1)));
                }
        }
    return FiniteRing::create(std::move(t));
}

ModulePtr make_regular_module(const RingPtr& r) {
    ModuleTables t;
    t.name = r->name();
    t.size = r->size();
    t.zero = r->zero();
    t.add = r->tables().add;
    t.action = r->tables().mul;
    t.labels = r->tables().labels;
    return FiniteModule::create(r, std::move(t));
}

ElementSet trivial_extension_module_part(const FiniteRing& base, std::size_t module_size) {
    ElementSet s(base.size() * module_size);
    for (std::size_t x = 0; x < module_size; ++x)
        s.set(static_cast<Elem>(base.zero() * module_size + x));
    return s;
}

}  // namespace bowtie
