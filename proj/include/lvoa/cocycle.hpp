#pragma once

#include <cstdint>
#include <vector>

#include "lvoa/lattice.hpp"

namespace lvoa {

// Bimultiplicative {+1,-1}-valued 2-cocycle on a lattice, stored by its values
// on basis pairs: eps(b_i, b_j) = (-1)^{parity[i][j]}.
class Cocycle {
public:
    // Upper-triangular convention: +1 for i <= j, (-1)^{(b_i,b_j)} for i > j.
    explicit Cocycle(const GramLattice& lattice);
    // Arbitrary basis table; validated against the commutator law.
    Cocycle(const GramLattice& lattice, std::vector<std::vector<int>> basis_table);

    [[nodiscard]] int rank() const { return static_cast<int>(parity_.size()); }
    [[nodiscard]] int basis_value(int i, int j) const { return parity_[i][j] ? -1 : 1; }
    [[nodiscard]] std::vector<std::vector<int>> basis_table() const;

    // Product over i,j of table[i][j]^{alpha_i beta_j}.
    [[nodiscard]] int eval(const LatticeVector& alpha, const LatticeVector& beta) const;

    friend bool operator==(const Cocycle& a, const Cocycle& b) { return a.parity_ == b.parity_; }

private:
    std::vector<std::vector<std::uint8_t>> parity_;
};

Cocycle build_cocycle(const GramLattice& lattice);

// Cocycle on a sublattice obtained by restricting an ambient cocycle.
Cocycle restrict_cocycle(const Cocycle& ambient, const Sublattice& sub);

}  // namespace lvoa
