#pragma once

// Builders shared by the unit tests and the acceptance gate.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lvoa/levi.hpp"
#include "lvoa/maps.hpp"
#include "oracles.hpp"

namespace lvoa::fixtures {

// e^{+-i} summed over copies.
inline std::vector<StateVector> chevalley_values(const CurrentAlgebra& c) {
    std::vector<StateVector> out;
    for (const auto& e : c.raising) out.push_back(e.value);
    for (const auto& f : c.lowering) out.push_back(f.value);
    return out;
}

// Directions sum_j alpha^{ij} of the diagonal Heisenberg subalgebra.
inline std::vector<AmbientVector> diagonal_directions(int n, int l) {
    std::vector<AmbientVector> out;
    for (const auto& v : sublattice_k(n, l, "a").embedding) out.push_back(to_ambient(v));
    return out;
}

// V_N enumerated on its own lattice and embedded in V_{A_{n-1}^{xl}}.
inline Subspace embedded_sublattice_voa(const std::shared_ptr<const LatticeVoa>& ambient, int n, int l,
                                        const Rational& cutoff) {
    const SublatticeVoa s = make_sublattice_voa(ambient, sublattice_n(n, l, "a"));
    const LatticeVoaMap embed = embedding_map(s);
    const GradedBasis basis = enumerate_basis(s.voa->lattice(), {}, cutoff);
    std::map<Rational, std::vector<StateVector>> spans;
    for (const auto& b : basis.blocks()) {
        auto& dst = spans[b.weight];
        for (const auto& st : b.states) dst.push_back(push(embed, StateVector(st)));
    }
    return Subspace(cutoff, spans);
}

// Exact equality of two subspaces on every weight either one examined.
inline bool same_subspace(const Subspace& a, const Subspace& b) {
    for (const auto& [w, v] : a.blocks())
        if (b.basis(w) != v) return false;
    for (const auto& [w, v] : b.blocks())
        if (a.basis(w) != v) return false;
    return true;
}

// Closure property samples: for random a, b in `algebra` and v in `commutant`,
// (a_k b)_m v = 0 for k in [-2, 1] and every m >= 0 with nonnegative output weight.
// Returns the number of failing samples.
inline std::size_t closure_property_failures(const LatticeVoa& voa, const std::vector<StateVector>& algebra,
                                          const Subspace& commutant, std::size_t samples, std::uint64_t seed,
                                          std::size_t* checked = nullptr) {
    std::vector<StateVector> members;
    for (const auto& [w, vs] : commutant.blocks())
        if (w > Rational(0)) members.insert(members.end(), vs.begin(), vs.end());
    if (members.empty() || algebra.empty()) return 0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_a(0, algebra.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_v(0, members.size() - 1);
    std::uniform_int_distribution<int> pick_k(-2, 1);
    std::size_t failures = 0;
    std::size_t done = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        const StateVector& a = algebra[pick_a(rng)];
        const StateVector& b = algebra[pick_a(rng)];
        const StateVector& v = members[pick_v(rng)];
        const StateVector ab = mode(a, pick_k(rng), b, voa);
        if (ab.is_zero()) continue;
        const Rational top = voa.weight(ab) + voa.weight(v) - Rational(1);
        for (std::int64_t m = 0; Rational(m) <= top; ++m) {
            ++done;
            if (!mode(ab, m, v, voa).is_zero()) {
                ++failures;
                break;
            }
        }
    }
    if (checked) *checked = done;
    return failures;
}

// Decomposition of V_{A_1^{xl}} under the diagonal affine sl_2 at level l:
// sum over singular vectors v of charge j of the level-l module dims shifted by wt(v).
inline oracle::Series sl2_decomposition_dims(const LatticeVoa& voa, int l, int top) {
    const CurrentAlgebra cur = diagonal_currents(voa, 2, l);
    oracle::Series out(static_cast<std::size_t>(top + 1), 0);
    for (int j = 0; j <= l; ++j) {
        const Subspace hw = highest_weight_vectors(voa, {cur.raising[0].value}, {cur.lowering[0].value},
                                                   {cur.cartan_directions[0]}, {Rational(j)}, Rational(top));
        const oracle::Series module = oracle::affine_sl2_dims(l, j, top);
        for (const auto& [w, basis] : hw.blocks()) {
            if (basis.empty()) continue;
            const std::int64_t base = w.to_int();
            for (std::int64_t d = 0; base + d <= top; ++d)
                out[static_cast<std::size_t>(base + d)] += static_cast<std::int64_t>(basis.size()) * module[d];
        }
    }
    return out;
}

inline std::vector<std::int64_t> as_series(const std::vector<std::size_t>& dims) {
    return {dims.begin(), dims.end()};
}

}  // namespace lvoa::fixtures
