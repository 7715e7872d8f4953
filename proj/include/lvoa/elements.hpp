#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lvoa/maps.hpp"

namespace lvoa {

// A distinguished vector with its name, weight and construction parameters.
struct NamedElement {
    std::string name;
    StateVector value;
    Rational weight;
    nlohmann::json context;
};

// Throws std::logic_error unless value is homogeneous of the expected weight.
NamedElement make_element(std::string name, StateVector value, const LatticeVoa& voa, const Rational& expected,
                          nlohmann::json context = nlohmann::json::object());
nlohmann::json to_json(const NamedElement& e, const GramLattice& lattice);

// alpha^{ij} in V_{A_{n-1}^{x l}} coordinates (root index i, tensor copy j).
LatticeVector tensor_root(const LatticeVoa& voa, int n, int i, int j);

// Diagonal sl_{k+1} inside sum of copies: simple currents, Cartan states and the
// full root-current basis. Non-simple root currents are left-normalized 0-products
// e_{i..j} = (e_i)_0 e_{i+1..j}.
struct CurrentAlgebra {
    std::vector<NamedElement> raising;   // e[i]
    std::vector<NamedElement> lowering;  // f[i] = e^{-i}
    std::vector<NamedElement> cartan;    // h[i] = alpha^i(-1)1
    std::vector<AmbientVector> cartan_directions;
    std::vector<NamedElement> basis;     // every root current and every h[i]
};

// Currents of the simple roots `simple` (consecutive, root indices of A_{n-1})
// summed over the tensor copies `copies`. Throws std::logic_error if the
// 0-product closure does not have dimension (k+1)^2 - 1.
CurrentAlgebra diagonal_currents(const LatticeVoa& voa, int n, const std::vector<int>& copies,
                                 const std::vector<int>& simple);
// All simple roots summed over all l copies.
CurrentAlgebra diagonal_currents(const LatticeVoa& voa, int n, int l);

// 'omega^i: 1/(l+2) sum_{p<q} [1/(2l) x(-1)^2 1 + e^x + e^{-x}], x = alpha^{ip} - alpha^{iq}.
NamedElement prime_omega(const LatticeVoa& voa, int i, int n, int l);

// omega~^i and W~^{3,i} in V_{A~_{l-1}^{x n}} (basis beta^{ij} = tensor_root(voa, l, i, j)).
struct TildeGenerators {
    NamedElement omega;
    NamedElement w3;
};
TildeGenerators tilde_generators(const LatticeVoa& voa_tilde, int i, int n, int l);

// omega^i and W^{3,i} in V_N: the printed formulas and the pullbacks of the tilde
// generators along tau. The pullback is authoritative.
struct UntildeGenerators {
    NamedElement omega;         // pullback
    NamedElement w3;            // pullback
    NamedElement printed_omega;
    NamedElement printed_w3;
    nlohmann::json comparison;  // per generator: equal, proportional factor, differing terms
};
UntildeGenerators untilde_generators(const DualityMaps& maps, int i);

// u^{ij} in V_{A~_1^{x n}}, v^{ij} in V_{A_{n-1}^{x2}}; 1 <= i <= j <= n-1.
NamedElement u_ij(const LatticeVoa& voa_tilde, int i, int j, int n);
NamedElement v_ij(const LatticeVoa& voa, int i, int j, int n);

// 1/2 sum (G^{-1})_{ab} b_a(-1) b_b(-1) 1.
NamedElement lattice_conformal(const LatticeVoa& voa);

// 1/(2(k+h)) sum_{ab} k (P^{-1})_{ab} u_a(-1) u_b with P_{ab} the vacuum
// coefficient of (u_a)_1 u_b. Throws std::invalid_argument on a degenerate pairing.
NamedElement sugawara(const LatticeVoa& voa, const std::vector<NamedElement>& currents, int level, int dual_coxeter);

// omega_full - omega_sub after checking L_sub(m) g = L_full(m) g for m >= -1 on each
// generator g; throws std::logic_error if that fails.
NamedElement coset_conformal(const LatticeVoa& voa, const NamedElement& full, const NamedElement& sub,
                             const std::vector<NamedElement>& generators);

// x_{-1}^{l-1} x for x = sum_j e^{alpha^{ij}}, compared with l! e^{alpha^i}.
struct RepeatedProduct {
    StateVector lhs;
    StateVector target;  // l! e^{alpha^i}
    int sign = 0;        // lhs = sign * target, 0 if not proportional by +-1
};
RepeatedProduct repeated_product(const LatticeVoa& voa, int i, int n, int l);

// c with a = c b, or nullopt; b nonzero.
std::optional<Rational> proportionality(const StateVector& a, const StateVector& b);

}  // namespace lvoa
