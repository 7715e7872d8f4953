#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvoa/vertex.hpp"

namespace lvoa {

// A linear map V_L -> V_M induced by a lattice map: h(-k) -> (fock_map h)(-k)
// on Heisenberg modes and e^beta -> point_sign(beta) e^{point_map beta}.
struct LatticeVoaMap {
    std::string name;
    std::shared_ptr<const LatticeVoa> source;
    std::shared_ptr<const LatticeVoa> target;
    IntMatrix point_map;      // target coords = point_map * source coords
    RationalMatrix fock_map;  // column a = image of source direction a
    std::function<int(const LatticeVector&)> point_sign;
};

// Applies the map termwise; exact.
StateVector push(const LatticeVoaMap& f, const StateVector& v);

// g after f.
LatticeVoaMap compose(const LatticeVoaMap& g, const LatticeVoaMap& f, std::string name = {});
// Requires a unimodular point map.
LatticeVoaMap inverse(const LatticeVoaMap& f, std::string name = {});

// Lift of a lattice isometry to the twisted group algebras. The sign solves
// sign(a+b) = sign(a) sign(b) c(a,b) with c(a,b) = eps_target(phi a, phi b) eps_source(a,b),
// a symmetric bimultiplicative form, by the quadratic refinement fixed by the
// given signs on basis vectors.
LatticeVoaMap isometry_lift(std::string name, std::shared_ptr<const LatticeVoa> source,
                            std::shared_ptr<const LatticeVoa> target, IntMatrix point_map,
                            std::vector<int> basis_signs);

// beta -> -beta with sign -1 on every basis vector; Heisenberg h -> -h.
LatticeVoaMap build_theta(std::shared_ptr<const LatticeVoa> voa);

// Multiplies the sign by (-1)^{k(k-1)/2} in the first coordinate k, breaking the
// homomorphism property; a negative control.
LatticeVoaMap corrupt_signs(const LatticeVoaMap& f);

struct HomomorphismReport {
    bool ok = true;
    bool gram_preserved = true;
    std::size_t pairs = 0;
    std::size_t checks = 0;
    bool sampled = false;
    std::vector<std::string> witnesses;  // "u | m | v" triples in canonical text
};

// Checks f(u_m v) = f(u)_m f(v) for basis states with wt(u)+wt(v) <= cutoff and
// every m giving output weight in [0, cutoff]. Above `sample_limit` pairs a
// seeded uniform sample of that size is checked instead.
HomomorphismReport verify_homomorphism(const LatticeVoaMap& f, const Rational& cutoff,
                                       std::size_t sample_limit = 200000, std::uint64_t seed = 1);

// V_N for a sublattice N of an ambient lattice, with the restricted cocycle.
struct SublatticeVoa {
    Sublattice sub;
    std::shared_ptr<const LatticeVoa> voa;
    std::shared_ptr<const LatticeVoa> ambient;
    RationalMatrix change_of_basis;  // ambient coords -> [N coords; complement coords]
    int complement_rank = 0;
};

SublatticeVoa make_sublattice_voa(std::shared_ptr<const LatticeVoa> ambient, const Sublattice& sub);
LatticeVoaMap embedding_map(const SublatticeVoa& s);
// Rewrites an ambient vector in V_N coordinates; throws std::domain_error if it is not in V_N.
StateVector restrict_to(const SublatticeVoa& s, const StateVector& v);

// All lattices, sublattice VOAs and maps of the rank/level exchange at (n, l):
// N inside A_{n-1}^{xl} and N~ inside A~_{l-1}^{xn}, with tau = tau1 . theta : V_N -> V_N~.
struct DualityMaps {
    int n = 0;
    int l = 0;
    std::shared_ptr<const LatticeVoa> ambient;        // V_{A_{n-1}^{xl}}, basis "a[i,j]"
    std::shared_ptr<const LatticeVoa> ambient_tilde;  // V_{A~_{l-1}^{xn}}, basis "b[i,j]"
    SublatticeVoa n_voa;
    SublatticeVoa n_tilde_voa;
    LatticeVoaMap theta;
    LatticeVoaMap tau1;
    LatticeVoaMap tau;
    LatticeVoaMap tau_inverse;
};

DualityMaps build_duality_maps(int n, int l);
// tau1 alone: a[i,p]-a[i,p+1] -> b[p,i]-b[p,i+1] with basis signs +1.
LatticeVoaMap build_tau1(const SublatticeVoa& n_voa, const SublatticeVoa& n_tilde_voa, int n, int l);
// The relabeling v^{ij} -> u^{ij} between V_{N_n^2} and V_{N~_2^n}; tau1 at l = 2.
LatticeVoaMap build_sigma(const SublatticeVoa& n_voa, const SublatticeVoa& n_tilde_voa, int n);

nlohmann::json to_json(const HomomorphismReport& r);

}  // namespace lvoa
