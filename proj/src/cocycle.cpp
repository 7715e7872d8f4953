#include "lvoa/cocycle.hpp"

#include <stdexcept>

namespace lvoa {

namespace {

std::uint8_t parity_of(std::int64_t x) { return static_cast<std::uint8_t>(((x % 2) + 2) % 2); }

}  // namespace

Cocycle::Cocycle(const GramLattice& lattice) {
    const int r = lattice.rank();
    parity_.assign(static_cast<std::size_t>(r), std::vector<std::uint8_t>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j) parity_[i][j] = parity_of(lattice.gram(i, j));
}

Cocycle::Cocycle(const GramLattice& lattice, std::vector<std::vector<int>> basis_table) {
    const int r = lattice.rank();
    if (static_cast<int>(basis_table.size()) != r) throw std::invalid_argument("Cocycle: table size mismatch");
    parity_.assign(static_cast<std::size_t>(r), std::vector<std::uint8_t>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(basis_table[i].size()) != r) throw std::invalid_argument("Cocycle: table size mismatch");
        for (int j = 0; j < r; ++j) {
            int v = basis_table[i][j];
            if (v != 1 && v != -1) throw std::invalid_argument("Cocycle: entries must be +1 or -1");
            parity_[i][j] = v == -1 ? 1 : 0;
        }
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if ((parity_[i][j] ^ parity_[j][i]) != parity_of(lattice.gram(i, j)))
                throw std::invalid_argument("Cocycle: commutator law violated on basis pair");
}

std::vector<std::vector<int>> Cocycle::basis_table() const {
    std::vector<std::vector<int>> t(parity_.size(), std::vector<int>(parity_.size()));
    for (std::size_t i = 0; i < parity_.size(); ++i)
        for (std::size_t j = 0; j < parity_.size(); ++j) t[i][j] = parity_[i][j] ? -1 : 1;
    return t;
}

int Cocycle::eval(const LatticeVector& alpha, const LatticeVector& beta) const {
    const std::size_t r = parity_.size();
    if (alpha.size() != r || beta.size() != r) throw std::invalid_argument("Cocycle::eval: dimension mismatch");
    unsigned acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if ((alpha[i] & 1) == 0) continue;
        for (std::size_t j = 0; j < r; ++j)
            if (parity_[i][j] && (beta[j] & 1)) acc ^= 1U;
    }
    return acc ? -1 : 1;
}

Cocycle build_cocycle(const GramLattice& lattice) { return Cocycle(lattice); }

Cocycle restrict_cocycle(const Cocycle& ambient, const Sublattice& sub) {
    const int r = sub.lattice.rank();
    std::vector<std::vector<int>> table(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r)));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) table[a][b] = ambient.eval(sub.embedding[a], sub.embedding[b]);
    return Cocycle(sub.lattice, std::move(table));
}

}  // namespace lvoa
