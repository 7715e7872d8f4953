#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lvoa/commutant.hpp"
#include "lvoa/elements.hpp"

namespace lvoa {

// l = l_1 + ... + l_s with every part >= 1.
class Composition {
public:
    explicit Composition(std::vector<int> parts);
    // "1,2,3"; throws std::invalid_argument on malformed input.
    static Composition parse(const std::string& text);

    [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
    [[nodiscard]] int total() const { return sums_.back(); }
    // s_0 = 0, s_j = l_1 + ... + l_j.
    [[nodiscard]] const std::vector<int>& partial_sums() const { return sums_; }
    [[nodiscard]] std::string str() const;

private:
    std::vector<int> parts_;
    std::vector<int> sums_;
};

// The Levi subalgebra of sl_l inside V_{A~_{l-1}^{x n}}: diagonal currents of each
// block of size >= 2 and an integral basis of the center.
struct LeviRealization {
    Composition comp{{1}};
    int n = 0;
    std::shared_ptr<const LatticeVoa> voa;  // V_{A~_{l-1}^{x n}}, basis "b[i,j]"
    CurrentAlgebra full;                    // diagonal sl_l
    std::vector<CurrentAlgebra> blocks;
    // Primitive integral coefficient vectors c with h = sum_i c_i h^i, first nonzero entry positive.
    std::vector<std::vector<std::int64_t>> center_coefficients;
    std::vector<AmbientVector> center_directions;

    // Every block current and every center state h(-1)1.
    [[nodiscard]] std::vector<StateVector> generators() const;
    // Mode conditions defining the commutant of the Levi generators.
    [[nodiscard]] std::vector<ModeCondition> conditions() const;
};

LeviRealization levi_realization(const Composition& comp, int n);

struct RelativeParafermion {
    Subspace affine;     // generated L_{sl_l}(n,0)
    Subspace commutant;  // inside `affine`
};

// The commutant of the Levi generators inside the generated L_{sl_l}(n,0).
RelativeParafermion relative_parafermion(const LeviRealization& levi, const Rational& cutoff,
                                         const KernelOptions& opts = {});

// Tensor-coset side in V_{A_{n-1}^{x l}}: the commutant of the diagonal sl_n currents
// inside the subalgebra generated by the block-diagonal currents over consecutive
// copies s_{k-1}+1..s_k.
struct TensorCoset {
    Subspace tensor_algebra;
    Subspace commutant;
};
TensorCoset tensor_coset(const Composition& comp, int n, const Rational& cutoff, const KernelOptions& opts = {});

}  // namespace lvoa
