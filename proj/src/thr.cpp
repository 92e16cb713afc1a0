#include "rackforge/thr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rackforge/caps.hpp"

namespace rackforge {

namespace {

using Tuple = std::vector<std::uint32_t>;  // element indices into L

struct TupleHash {
    std::size_t operator()(const Tuple &t) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : t) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace

Permutation normalize_representative(const std::vector<Permutation> &tuple) {
    if (tuple.empty()) throw perm_error("empty tuple");
    Permutation prod = tuple.back();
    for (std::size_t i = tuple.size() - 1; i-- > 0;) prod = compose(prod, tuple[i]);
    return prod;
}

std::uint64_t thr_class_size(const THRSpec &spec) {
    if (spec.t < 2) throw std::invalid_argument("twisted homogeneous racks need t >= 2");
    const PermGroup &L = *spec.L;
    // twisted class of ℓ in L under θ: orbit of x ⇀ y = x·y·θ(x⁻¹)
    std::vector<Permutation> orbit{spec.ell};
    std::unordered_map<Permutation, std::uint32_t, PermHash> seen;
    seen.emplace(spec.ell, 0);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        Permutation cur = orbit[head];
        for (const auto &a : L.generators()) {
            Permutation next = compose(compose(a, cur), spec.theta.apply(a.inverse()));
            if (seen.emplace(next, static_cast<std::uint32_t>(orbit.size())).second)
                orbit.push_back(std::move(next));
        }
    }
    std::uint64_t size = orbit.size();
    for (unsigned i = 1; i < spec.t; ++i) size *= L.order();
    return size;
}

Rack build_thr(const THRSpec &spec) {
    if (spec.t < 2) throw std::invalid_argument("twisted homogeneous racks need t >= 2");
    const PermGroup &L = *spec.L;
    if (thr_class_size(spec) > caps().rack_size)
        throw cap_exceeded("twisted homogeneous class exceeds rack cap");

    const unsigned t = spec.t;
    const std::uint32_t e_idx = L.index_of(Permutation::identity(L.degree()));
    Tuple seed(t, e_idx);
    seed[t - 1] = L.index_of(spec.ell);

    // u(ℓ₁,…,ℓ_t) = (θ(ℓ_t), ℓ₁,…,ℓ_{t−1}); a ⇀ y = a·y·u(a⁻¹)
    auto apply_u = [&](const Tuple &x) {
        Tuple out(t);
        out[0] = L.index_of(spec.theta.apply(L.element(x[t - 1])));
        for (unsigned i = 1; i < t; ++i) out[i] = x[i - 1];
        return out;
    };
    auto mul = [&](const Tuple &a, const Tuple &b) {
        Tuple out(t);
        for (unsigned i = 0; i < t; ++i)
            out[i] = L.index_of(compose(L.element(a[i]), L.element(b[i])));
        return out;
    };
    auto inv = [&](const Tuple &a) {
        Tuple out(t);
        for (unsigned i = 0; i < t; ++i) out[i] = L.index_of(L.element(a[i]).inverse());
        return out;
    };

    // generators of L^t: generators of L placed in one slot
    std::vector<Tuple> gens;
    for (unsigned slot = 0; slot < t; ++slot)
        for (const auto &g : L.generators()) {
            Tuple v(t, e_idx);
            v[slot] = L.index_of(g);
            gens.push_back(std::move(v));
        }

    std::vector<Tuple> orbit{seed};
    std::unordered_map<Tuple, std::uint32_t, TupleHash> index;
    index.emplace(seed, 0);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        Tuple cur = orbit[head];
        for (const auto &a : gens) {
            Tuple next = mul(mul(a, cur), apply_u(inv(a)));
            if (index.emplace(next, static_cast<std::uint32_t>(orbit.size())).second) {
                if (orbit.size() >= caps().rack_size)
                    throw cap_exceeded("twisted homogeneous class exceeds rack cap");
                orbit.push_back(std::move(next));
            }
        }
    }

    const auto n = static_cast<unsigned>(orbit.size());
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    std::vector<std::string> labels(n);
    for (unsigned i = 0; i < n; ++i) {
        std::ostringstream lab;
        lab << "(";
        for (unsigned k = 0; k < t; ++k)
            lab << (k ? ";" : "") << L.element(orbit[i][k]).cycle_string();
        lab << ")";
        labels[i] = lab.str();
        for (unsigned j = 0; j < n; ++j) {
            // y ▷ z = y·u(z·y⁻¹)
            Tuple v = mul(orbit[i], apply_u(mul(orbit[j], inv(orbit[i]))));
            table[i][j] = static_cast<std::uint16_t>(index.at(v));
        }
    }
    std::ostringstream prov;
    prov << "thr(t=" << t << ",ell=" << spec.ell.cycle_string() << ")";
    return Rack::validate(std::move(table), std::move(labels), prov.str());
}

TypeDVerdict thr_criteria(const THRSpec &spec) {
    if (spec.t < 2) throw std::invalid_argument("twisted homogeneous racks need t >= 2");
    if (!spec.theta.is_identity()) {
        TypeDVerdict v;
        v.method = "thr_rules(theta!=id unsupported)";
        v.status = TypeDStatus::INCONCLUSIVE;
        return v;
    }
    const PermGroup &L = *spec.L;
    const Permutation &ell = spec.ell;
    const unsigned t = spec.t;
    TypeDVerdict v;
    v.status = TypeDStatus::INCONCLUSIVE;

    auto confirm_by_rack = [&](const char *rule) {
        v.method = rule;
        v.status = TypeDStatus::TYPE_D;
        if (thr_class_size(spec) <= caps().rack_size) {
            Rack X = build_thr(spec);
            TypeDVerdict generic = is_type_D_rack(X);
            if (generic.status == TypeDStatus::TYPE_D) v.witness = generic.witness;
        }
    };

    if (!ell.is_identity()) {
        unsigned ord = ell.order();
        auto qr = quasi_real_types(L, ell);
        for (unsigned j : qr) {
            long diff = 2L * (1L - static_cast<long>(j));
            if (t >= 3 || (t == 2 && (diff % static_cast<long>(ord)) != 0)) {
                confirm_by_rack("thr_quasi_real");
                return v;
            }
        }
        if (ord == 2) {
            if (t > 4 && t % 2 == 0) {
                confirm_by_rack("thr_involution_even_t");
                return v;
            }
            if (t % 2 == 1) {
                TypeDVerdict base = is_type_D_class(L, ell);
                if (base.status == TypeDStatus::TYPE_D) {
                    confirm_by_rack("thr_involution_odd_t");
                    return v;
                }
            }
        }
    } else {
        unsigned long g = std::gcd(static_cast<unsigned long>(t), static_cast<unsigned long>(L.order()));
        unsigned long odd_part = g;
        while (odd_part % 2 == 0) odd_part /= 2;
        if (odd_part > 1) {  // gcd(t,|L|) divisible by an odd prime
            confirm_by_rack("thr_gcd_odd_prime");
            return v;
        }
        if (g % 2 == 0 && t >= 6) {
            confirm_by_rack("thr_gcd_even");
            return v;
        }
        // the checked negatives: L ∈ {A₅, A₆} with t = 2
        if (t == 2 && (L.order() == 60 || L.order() == 360)) {
            if (thr_class_size(spec) <= caps().rack_size) {
                Rack X = build_thr(spec);
                TypeDVerdict generic = is_type_D_rack(X);
                if (generic.status == TypeDStatus::NOT_TYPE_D) {
                    v.status = TypeDStatus::NOT_TYPE_D;
                    v.method = "thr_checked_negative";
                    return v;
                }
            }
        }
    }
    v.method = "thr_rules";
    return v;
}

}  // namespace rackforge
