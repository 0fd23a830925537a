#pragma once

// Brute-force reference implementations, written against the raw tables
// only. Exponential; meant for rings of at most 16 elements.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "bowtie/ring.hpp"

namespace oracle {

using bowtie::Elem;
using bowtie::FiniteRing;
using Set = std::set<Elem>;

inline Set from_mask(unsigned mask) {
    Set s;
    for (Elem i = 0; i < 32; ++i)
        if (mask >> i & 1U) s.insert(i);
    return s;
}

inline bool is_ideal(const FiniteRing& r, const Set& s) {
    if (!s.count(r.zero())) return false;
    for (auto a : s) {
        for (auto b : s)
            if (!s.count(r.add(a, b))) return false;
        for (Elem x = 0; x < r.size(); ++x)
            if (!s.count(r.mul(x, a))) return false;
    }
    return true;
}

/// Every subset closed under addition and absorbing multiplication.
inline std::vector<Set> ideals(const FiniteRing& r) {
    std::vector<Set> out;
    const unsigned n = static_cast<unsigned>(r.size());
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        auto s = from_mask(mask);
        if (is_ideal(r, s)) out.push_back(std::move(s));
    }
    return out;
}

inline bool is_prime(const FiniteRing& r, const Set& p) {
    if (p.size() == r.size()) return false;
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem b = 0; b < r.size(); ++b)
            if (p.count(r.mul(a, b)) && !p.count(a) && !p.count(b)) return false;
    return true;
}

inline std::vector<Set> primes(const FiniteRing& r) {
    std::vector<Set> out;
    for (auto& i : ideals(r))
        if (is_prime(r, i)) out.push_back(i);
    return out;
}

inline bool strict_subset(const Set& a, const Set& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<Set> maximals(const FiniteRing& r) {
    auto all = ideals(r);
    std::vector<Set> out;
    for (auto& i : all) {
        if (i.size() == r.size()) continue;
        bool top = true;
        for (auto& j : all)
            if (j.size() != r.size() && strict_subset(i, j)) top = false;
        if (top) out.push_back(i);
    }
    return out;
}

/// Permutation search for a ring isomorphism; sizes up to about 8.
inline bool isomorphic(const FiniteRing& a, const FiniteRing& b) {
    if (a.size() != b.size()) return false;
    std::vector<Elem> pi(a.size());
    std::iota(pi.begin(), pi.end(), Elem{0});
    do {
        if (pi[a.one()] != b.one()) continue;
        bool ok = true;
        for (Elem x = 0; ok && x < a.size(); ++x)
            for (Elem y = 0; ok && y < a.size(); ++y)
                ok = pi[a.add(x, y)] == b.add(pi[x], pi[y]) && pi[a.mul(x, y)] == b.mul(pi[x], pi[y]);
        if (ok) return true;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
}

/// Checks a claimed isomorphism map directly.
inline bool is_isomorphism(const FiniteRing& a, const FiniteRing& b, const std::vector<Elem>& pi) {
    if (pi.size() != a.size() || a.size() != b.size()) return false;
    if (Set(pi.begin(), pi.end()).size() != pi.size()) return false;
    if (pi[a.one()] != b.one()) return false;
    for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = 0; y < a.size(); ++y)
            if (pi[a.add(x, y)] != b.add(pi[x], pi[y]) || pi[a.mul(x, y)] != b.mul(pi[x], pi[y])) return false;
    return true;
}

inline Set to_set(const std::vector<Elem>& v) { return Set(v.begin(), v.end()); }

}  // namespace oracle
