#pragma once

#include "lvoa/vertex.hpp"

namespace lvoa::testing {

// Root lattice A_{rank} with its Cartan matrix as Gram.
inline GramLattice cartan_a(int rank) {
    IntMatrix g(static_cast<std::size_t>(rank), std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
    std::vector<std::string> labels;
    for (int i = 0; i < rank; ++i) {
        g[i][i] = 2;
        if (i + 1 < rank) g[i][i + 1] = g[i + 1][i] = -1;
        labels.push_back("b" + std::to_string(i + 1));
    }
    return {labels, g};
}

// Standard conformal vector 1/2 sum G^{-1}[a][b] b_a(-1) b_b(-1) 1, built independently of elements.
inline StateVector lattice_omega(const GramLattice& L) {
    StateVector out;
    for (int a = 0; a < L.rank(); ++a)
        for (int b = 0; b < L.rank(); ++b) {
            if (L.gram_inverse()[a][b].is_zero()) continue;
            FockMonomial f;
            f.insert(1, a);
            f.insert(1, b);
            out.add(BasisState(LatticeVector(static_cast<std::size_t>(L.rank()), 0), f),
                    L.gram_inverse()[a][b] / Rational(2));
        }
    return out;
}

inline std::vector<StateVector> all_states(const GramLattice& L, int cutoff) {
    std::vector<StateVector> out;
    const GradedBasis basis = enumerate_basis(L, {}, Rational(cutoff));
    for (const auto& b : basis.blocks())
        for (const auto& s : b.states) out.emplace_back(s);
    return out;
}

}  // namespace lvoa::testing
