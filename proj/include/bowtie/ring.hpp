#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bowtie/element_set.hpp"

namespace bowtie {

/// Raw Cayley tables for a candidate ring. Tables are row-major n×n.
struct RingTables {
    std::string name;
    std::size_t size = 0;
    Elem zero = 0;
    Elem one = 0;
    std::vector<Elem> add;
    std::vector<Elem> mul;
    /// Optional display names, one per element. Empty means "use indices".
    std::vector<std::string> labels;
};

/// First violated axiom, with the elements that witness it.
struct Violation {
    std::string axiom;
    std::vector<Elem> witness;
    std::string detail;
};

struct ValidationReport {
    std::optional<Violation> violation;
    /// False when triples were sampled instead of exhausted.
    bool exhaustive = true;
    std::uint64_t checks = 0;

    bool ok() const { return !violation.has_value(); }
};

struct ValidationOptions {
    /// Rings up to this size get the full O(n^3) check.
    std::size_t exhaustive_cap = 96;
    std::uint64_t samples = std::uint64_t{1} << 18;
    std::uint64_t seed = 0x5eed'b0e7'1e00'0001ULL;
};

ValidationReport validate_ring(const RingTables& t, const ValidationOptions& opts = {});

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/**
 * A finite commutative ring with unity, one != zero.
 *
 * Immutable once built; always held through RingPtr so that ideals,
 * homomorphisms and amalgamations can refer back to it.
 */
class FiniteRing {
public:
    /// Validates the tables and throws InputError describing the first
    /// violated axiom.
    static RingPtr create(RingTables tables, const ValidationOptions& opts = {});

    std::size_t size() const { return t_.size; }
    Elem zero() const { return t_.zero; }
    Elem one() const { return t_.one; }
    const std::string& name() const { return t_.name; }

    Elem add(Elem a, Elem b) const { return t_.add[a * t_.size + b]; }
    Elem mul(Elem a, Elem b) const { return t_.mul[a * t_.size + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    std::string label(Elem a) const;
    const RingTables& tables() const { return t_; }

    /// Additive order of every element.
    std::vector<std::size_t> additive_orders() const;

    /// Greedy additive generating set: repeatedly take the smallest index
    /// outside the additive span of the elements taken so far.
    std::vector<Elem> additive_generators() const;

private:
    explicit FiniteRing(RingTables t);

    RingTables t_;
    std::vector<Elem> neg_;
};

/// Raw tables for a candidate module over a fixed ring.
struct ModuleTables {
    std::string name;
    std::size_t size = 0;
    Elem zero = 0;
    std::vector<Elem> add;
    /// |R|×m, action[r*m + x] = r·x.
    std::vector<Elem> action;
    std::vector<std::string> labels;
};

ValidationReport validate_module(const FiniteRing& ring, const ModuleTables& t,
                                 const ValidationOptions& opts = {});

class FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

class FiniteModule {
public:
    static ModulePtr create(RingPtr ring, ModuleTables tables, const ValidationOptions& opts = {});

    const RingPtr& ring() const { return ring_; }
    std::size_t size() const { return t_.size; }
    Elem zero() const { return t_.zero; }
    const std::string& name() const { return t_.name; }
    Elem add(Elem a, Elem b) const { return t_.add[a * t_.size + b]; }
    Elem act(Elem r, Elem x) const { return t_.action[r * t_.size + x]; }
    std::string label(Elem x) const;
    const ModuleTables& tables() const { return t_; }

private:
    FiniteModule(RingPtr ring, ModuleTables t) : ring_(std::move(ring)), t_(std::move(t)) {}

    RingPtr ring_;
    ModuleTables t_;
};

/// Integers modulo n, n >= 2.
RingPtr make_zn(std::size_t n);

/// Componentwise product; element (a, b) has index a*|B| + b.
RingPtr make_product(const RingPtr& a, const RingPtr& b);

/// R⋉M on R×M with (r,m)(r',m') = (rr', rm' + r'm); (r, m) has index r*|M| + m.
RingPtr make_trivial_extension(const RingPtr& r, const ModulePtr& m);

/// R regarded as a module over itself.
ModulePtr make_regular_module(const RingPtr& r);

/// Elements {0}×M inside make_trivial_extension(R, M).
ElementSet trivial_extension_module_part(const FiniteRing& base, std::size_t module_size);

}  // namespace bowtie
