#include "rackforge/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "rackforge/caps.hpp"

namespace rackforge {

Permutation::Permutation(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
        if (v >= img_.size() || seen[v])
            throw perm_error("image vector is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(unsigned degree) {
    std::vector<std::uint16_t> img(degree);
    std::iota(img.begin(), img.end(), 0);
    Permutation p;
    p.img_ = std::move(img);
    return p;
}

Permutation Permutation::from_cycles(const std::string &text, unsigned degree) {
    Permutation p = identity(degree);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size()) return p;  // empty string = identity
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '(') throw perm_error("expected '(' in cycle string: " + text);
        ++i;
        std::vector<unsigned> cycle;
        for (;;) {
            skip_ws();
            if (i < text.size() && text[i] == ')') { ++i; break; }
            if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw perm_error("expected point or ')' in cycle string: " + text);
            unsigned v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            if (v >= degree) throw perm_error("point out of range in cycle string: " + text);
            cycle.push_back(v);
            skip_ws();
            if (i < text.size() && text[i] == ',') ++i;
        }
        if (cycle.size() >= 2) {
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                unsigned from = cycle[k], to = cycle[(k + 1) % cycle.size()];
                if (p.img_[from] != from) throw perm_error("repeated point in cycle string: " + text);
                p.img_[from] = static_cast<std::uint16_t>(to);
            }
        }
        skip_ws();
    }
    // re-validate bijectivity (guards against repeated points across cycles)
    return Permutation(std::move(p.img_));
}

bool Permutation::is_identity() const {
    for (unsigned i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::uint16_t> inv(img_.size());
    for (unsigned i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<std::uint16_t>(i);
    Permutation p;
    p.img_ = std::move(inv);
    return p;
}

Permutation Permutation::power(long long e) const {
    Permutation base = e >= 0 ? *this : inverse();
    unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e)
                                  : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
    Permutation acc = identity(degree());
    while (k) {
        if (k & 1) acc = compose(acc, base);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

unsigned Permutation::order() const {
    unsigned ord = 1;
    for (auto [len, count] : cycle_type())
        if (count) ord = std::lcm(ord, len);
    return ord;
}

bool Permutation::is_even() const {
    unsigned transpositions = 0;
    for (auto [len, count] : cycle_type()) transpositions += (len - 1) * count;
    return transpositions % 2 == 0;
}

std::vector<std::pair<unsigned, unsigned>> Permutation::cycle_type() const {
    std::vector<bool> seen(img_.size(), false);
    std::map<unsigned, unsigned> counts;
    for (unsigned i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        unsigned len = 0, j = i;
        do {
            seen[j] = true;
            ++len;
            j = img_[j];
        } while (j != i);
        counts[len]++;
    }
    return {counts.begin(), counts.end()};
}

std::string Permutation::cycle_string() const {
    std::vector<bool> seen(img_.size(), false);
    std::ostringstream out;
    bool any = false;
    for (unsigned i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) { seen[i] = true; continue; }
        any = true;
        out << '(';
        unsigned j = i;
        bool first = true;
        do {
            if (!first) out << ' ';
            first = false;
            out << j;
            seen[j] = true;
            j = img_[j];
        } while (j != i);
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

Permutation compose(const Permutation &p, const Permutation &r) {
    if (p.degree() != r.degree()) throw perm_error("degree mismatch in compose");
    std::vector<std::uint16_t> img(p.degree());
    for (unsigned i = 0; i < p.degree(); ++i) img[i] = p(r(i));
    Permutation out;
    out = Permutation(std::move(img));
    return out;
}

Permutation conjugate(const Permutation &g, const Permutation &h) {
    if (g.degree() != h.degree()) throw perm_error("degree mismatch in conjugate");
    // (g h g⁻¹)(g(i)) = g(h(i))
    std::vector<std::uint16_t> img(g.degree());
    for (unsigned i = 0; i < g.degree(); ++i) img[g(i)] = g(h(i));
    return Permutation(std::move(img));
}

std::size_t PermHash::operator()(const Permutation &p) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p.images()) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return h;
}

PermGroup::PermGroup(std::vector<Permutation> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw perm_error("PermGroup needs at least one generator");
    for (const auto &g : gens_)
        if (g.degree() != gens_[0].degree()) throw perm_error("generators have mixed degrees");
}

PermGroup PermGroup::from_elements(std::vector<Permutation> generators,
                                   std::vector<Permutation> members) {
    PermGroup G(std::move(generators));
    G.elems_ = std::move(members);
    for (std::uint32_t i = 0; i < G.elems_.size(); ++i) G.index_.emplace(G.elems_[i], i);
    if (G.index_.size() != G.elems_.size()) throw perm_error("duplicate members in from_elements");
    return G;
}

unsigned PermGroup::degree() const {
    return gens_.empty() ? 0 : gens_[0].degree();
}

void PermGroup::enumerate() const {
    if (!elems_.empty()) return;
    std::uint64_t bound = bound_ ? bound_ : caps().group_elements;
    elems_.push_back(Permutation::identity(degree()));
    index_.emplace(elems_[0], 0);
    for (std::size_t head = 0; head < elems_.size(); ++head) {
        Permutation cur = elems_[head];  // copy: elems_ may reallocate
        for (const auto &g : gens_) {
            Permutation next = compose(cur, g);
            auto [it, inserted] = index_.emplace(next, static_cast<std::uint32_t>(elems_.size()));
            if (inserted) {
                if (elems_.size() >= bound) {
                    elems_.clear();
                    index_.clear();
                    throw cap_exceeded("enumeration overflow: group exceeds element cap");
                }
                elems_.push_back(std::move(next));
            }
        }
    }
}

const std::vector<Permutation> &PermGroup::elements() const {
    enumerate();
    return elems_;
}

bool PermGroup::contains(const Permutation &p) const {
    enumerate();
    return index_.find(p) != index_.end();
}

std::uint32_t PermGroup::index_of(const Permutation &p) const {
    enumerate();
    auto it = index_.find(p);
    if (it == index_.end()) throw perm_error("element not in group");
    return it->second;
}

PermGroup generate(std::vector<Permutation> gens, std::uint64_t bound) {
    PermGroup G(std::move(gens));
    if (bound) G.set_enumeration_bound(bound);
    G.elements();
    return G;
}

std::vector<Permutation> conjugacy_class(const PermGroup &G, const Permutation &x) {
    if (!G.contains(x)) throw perm_error("class representative not in group");
    std::vector<Permutation> orbit{x};
    std::unordered_map<Permutation, std::uint32_t, PermHash> seen;
    seen.emplace(x, 0);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        Permutation cur = orbit[head];
        for (const auto &g : G.generators()) {
            Permutation next = conjugate(g, cur);
            if (seen.emplace(next, static_cast<std::uint32_t>(orbit.size())).second)
                orbit.push_back(std::move(next));
        }
    }
    return orbit;
}

PermGroup centralizer(const PermGroup &G, const Permutation &x) {
    if (!G.contains(x)) throw perm_error("element not in group");
    std::vector<Permutation> members;
    for (const auto &g : G.elements())
        if (compose(g, x) == compose(x, g)) members.push_back(g);
    std::vector<Permutation> gens = members;
    return PermGroup::from_elements(std::move(gens), std::move(members));
}

std::vector<Permutation> group_center(const PermGroup &G) {
    std::vector<Permutation> out;
    for (const auto &z : G.elements()) {
        bool central = true;
        for (const auto &g : G.generators())
            if (compose(z, g) != compose(g, z)) { central = false; break; }
        if (central) out.push_back(z);
    }
    return out;
}

GroupAutomorphism::GroupAutomorphism(const PermGroup &G, std::vector<std::uint32_t> table)
    : G_(&G), table_(std::move(table)) {
    if (table_.size() != G.order()) throw perm_error("automorphism table size mismatch");
    std::vector<bool> seen(table_.size(), false);
    for (auto v : table_) {
        if (v >= table_.size() || seen[v]) throw perm_error("automorphism table is not a bijection");
        seen[v] = true;
    }
}

GroupAutomorphism GroupAutomorphism::identity(const PermGroup &G) {
    std::vector<std::uint32_t> t(G.order());
    std::iota(t.begin(), t.end(), 0);
    return GroupAutomorphism(G, std::move(t));
}

Permutation GroupAutomorphism::apply(const Permutation &p) const {
    return G_->element(table_[G_->index_of(p)]);
}

bool GroupAutomorphism::is_identity() const {
    for (std::uint32_t i = 0; i < table_.size(); ++i)
        if (table_[i] != i) return false;
    return true;
}

bool GroupAutomorphism::validate(std::uint64_t limit, unsigned samples) const {
    const auto &els = G_->elements();
    auto check = [&](std::uint32_t i, std::uint32_t j) {
        Permutation lhs = G_->element(table_[G_->index_of(compose(els[i], els[j]))]);
        Permutation rhs = compose(G_->element(table_[i]), G_->element(table_[j]));
        return lhs == rhs;
    };
    if (els.size() <= limit) {
        for (std::uint32_t i = 0; i < els.size(); ++i)
            for (std::uint32_t j = 0; j < els.size(); ++j)
                if (!check(i, j)) return false;
        return true;
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;  // fixed seed: deterministic sampling
    auto next = [&] {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return state;
    };
    for (unsigned k = 0; k < samples; ++k) {
        auto i = static_cast<std::uint32_t>(next() % els.size());
        auto j = static_cast<std::uint32_t>(next() % els.size());
        if (!check(i, j)) return false;
    }
    return true;
}

GroupAutomorphism automorphism_from_conjugator(const PermGroup &G, const Permutation &t) {
    for (const auto &g : G.generators())
        if (!G.contains(conjugate(t, g)))
            throw perm_error("conjugator does not normalize the group");
    std::vector<std::uint32_t> table(G.order());
    for (std::uint32_t i = 0; i < G.order(); ++i)
        table[i] = G.index_of(conjugate(t, G.element(i)));
    return GroupAutomorphism(G, std::move(table));
}

}  // namespace rackforge
