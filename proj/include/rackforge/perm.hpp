#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rackforge {

struct perm_error : std::runtime_error {
    explicit perm_error(const std::string &what) : std::runtime_error(what) {}
};

// A permutation of {0,…,degree−1}, stored as the image vector.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint16_t> images);
    static Permutation identity(unsigned degree);
    // 0-based disjoint-cycle notation, e.g. "(0 1)(2 3)"; whitespace-insensitive.
    static Permutation from_cycles(const std::string &text, unsigned degree);

    unsigned degree() const { return static_cast<unsigned>(img_.size()); }
    std::uint16_t operator()(std::uint16_t i) const { return img_[i]; }
    const std::vector<std::uint16_t> &images() const { return img_; }

    bool is_identity() const;
    Permutation inverse() const;
    Permutation power(long long e) const;
    unsigned order() const;
    bool is_even() const;

    std::string cycle_string() const;  // canonical: cycles sorted, least point first
    // counts[j] = number of j-cycles, including fixed points (j = 1).
    std::vector<std::pair<unsigned, unsigned>> cycle_type() const;

    bool operator==(const Permutation &o) const { return img_ == o.img_; }
    bool operator!=(const Permutation &o) const { return img_ != o.img_; }
    bool operator<(const Permutation &o) const { return img_ < o.img_; }

private:
    std::vector<std::uint16_t> img_;
};

// (p∘r)(i) = p(r(i))
Permutation compose(const Permutation &p, const Permutation &r);
// g·h·g⁻¹
Permutation conjugate(const Permutation &g, const Permutation &h);

struct PermHash {
    std::size_t operator()(const Permutation &p) const;
};

// A finite permutation group given by generators, enumerated by BFS from the
// identity (generators applied in input order). Element order is the BFS
// insertion order; all downstream scans iterate in this order.
class PermGroup {
public:
    PermGroup() = default;
    explicit PermGroup(std::vector<Permutation> generators);
    // A group already known element-by-element (e.g. a filtered subgroup);
    // `members` must be closed under the operation and is kept as given.
    static PermGroup from_elements(std::vector<Permutation> generators,
                                   std::vector<Permutation> members);

    unsigned degree() const;
    const std::vector<Permutation> &generators() const { return gens_; }

    // Enumerates (once) and caches. Throws cap_exceeded past `bound`
    // (default: caps().group_elements).
    const std::vector<Permutation> &elements() const;
    std::uint64_t order() const { return elements().size(); }

    bool contains(const Permutation &p) const;
    std::uint32_t index_of(const Permutation &p) const;  // throws if absent
    const Permutation &element(std::uint32_t i) const { return elements()[i]; }

    void set_enumeration_bound(std::uint64_t bound) { bound_ = bound; }

private:
    std::vector<Permutation> gens_;
    std::uint64_t bound_ = 0;  // 0 = use global cap
    mutable std::vector<Permutation> elems_;
    mutable std::unordered_map<Permutation, std::uint32_t, PermHash> index_;
    void enumerate() const;
};

PermGroup generate(std::vector<Permutation> gens, std::uint64_t bound = 0);

// Conjugation orbit of x under the generators of G, BFS order. Requires x ∈ G.
std::vector<Permutation> conjugacy_class(const PermGroup &G, const Permutation &x);

// Subgroup of elements commuting with x. Requires x ∈ G.
PermGroup centralizer(const PermGroup &G, const Permutation &x);

// Z(G)
std::vector<Permutation> group_center(const PermGroup &G);

// An automorphism of G stored as a full table on the enumerated element list.
class GroupAutomorphism {
public:
    GroupAutomorphism() = default;
    // table[i] = index of the image of element i.
    GroupAutomorphism(const PermGroup &G, std::vector<std::uint32_t> table);
    static GroupAutomorphism identity(const PermGroup &G);

    const PermGroup &domain() const { return *G_; }
    Permutation apply(const Permutation &p) const;
    bool is_identity() const;

    // Checks table(xy) = table(x)·table(y) on all pairs when |G| ≤ limit,
    // else on `samples` deterministic pseudo-random pairs.
    bool validate(std::uint64_t limit = 2000, unsigned samples = 1000) const;

private:
    const PermGroup *G_ = nullptr;
    std::vector<std::uint32_t> table_;
};

// x ↦ t·x·t⁻¹ on the enumerated elements. Throws if t does not normalize G.
GroupAutomorphism automorphism_from_conjugator(const PermGroup &G, const Permutation &t);

}  // namespace rackforge

namespace std {
template <>
struct hash<rackforge::Permutation> {
    size_t operator()(const rackforge::Permutation &p) const {
        return rackforge::PermHash{}(p);
    }
};
}  // namespace std
