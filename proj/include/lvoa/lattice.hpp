#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvoa/rational.hpp"

namespace lvoa {

using LatticeVector = std::vector<std::int64_t>;  // integer coordinates in a lattice basis
using AmbientVector = std::vector<Rational>;      // rational coordinates in the same basis
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

AmbientVector to_ambient(const LatticeVector& v);

// Even positive-definite integral lattice given by a labeled basis.
class GramLattice {
public:
    GramLattice(std::vector<std::string> labels, IntMatrix gram);

    [[nodiscard]] int rank() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const IntMatrix& gram() const { return gram_; }
    [[nodiscard]] std::int64_t gram(int a, int b) const { return gram_[a][b]; }
    [[nodiscard]] const RationalMatrix& gram_inverse() const { return gram_inverse_; }
    [[nodiscard]] std::int64_t determinant() const { return det_; }
    [[nodiscard]] int index_of(const std::string& label) const;

    [[nodiscard]] std::int64_t inner(const LatticeVector& u, const LatticeVector& v) const;
    [[nodiscard]] Rational inner(const AmbientVector& u, const AmbientVector& v) const;
    [[nodiscard]] Rational inner(const AmbientVector& u, const LatticeVector& v) const;
    [[nodiscard]] std::int64_t norm(const LatticeVector& v) const { return inner(v, v); }
    // Coordinates of the basis vector b_a.
    [[nodiscard]] LatticeVector unit(int a) const;

    [[nodiscard]] nlohmann::json to_json() const;
    static GramLattice from_json(const nlohmann::json& j);

    friend bool operator==(const GramLattice& a, const GramLattice& b) {
        return a.labels_ == b.labels_ && a.gram_ == b.gram_;
    }

private:
    std::vector<std::string> labels_;
    IntMatrix gram_;
    RationalMatrix gram_inverse_;
    std::int64_t det_ = 0;
};

// An abstract lattice together with the ambient coordinates of its basis.
struct Sublattice {
    GramLattice lattice;
    std::vector<LatticeVector> embedding;  // embedding[a] = ambient coords of basis vector a

    [[nodiscard]] LatticeVector embed(const LatticeVector& coords) const;
    [[nodiscard]] AmbientVector embed(const AmbientVector& coords) const;
};

// A_{n-1}^{x l}; basis x^{ij} (1<=i<=n-1, 1<=j<=l) at index (j-1)(n-1)+(i-1).
// `symbol` names the basis ("a" gives labels "a[i,j]").
GramLattice build_a_tensor(int n, int l, const std::string& symbol = "a");
int a_tensor_index(int n, int i, int j);

// Span of x^{ij} - x^{i,j+1} inside A_{n-1}^{x l}, same index convention.
Sublattice sublattice_n(int n, int l, const std::string& symbol = "a");
// Span of the diagonal vectors x^i = sum_j x^{ij}.
Sublattice sublattice_k(int n, int l, const std::string& symbol = "a");

Rational inner(const AmbientVector& u, const AmbientVector& v, const GramLattice& lattice);

// One minimal-norm representative per coset of the dual lattice modulo the
// lattice, in lattice-basis coordinates; zero first, then by (norm, coords).
std::vector<AmbientVector> dual_quotient(const GramLattice& lattice);

// Dense exact linear algebra used on Gram-sized matrices.
Rational determinant(RationalMatrix m);
RationalMatrix inverse(const RationalMatrix& m);
RationalMatrix to_rational(const IntMatrix& m);
// Rational nullspace basis of a dense matrix (rows x cols).
std::vector<AmbientVector> dense_nullspace(const RationalMatrix& m, std::size_t cols);

}  // namespace lvoa
