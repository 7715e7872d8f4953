#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lvoa/vertex.hpp"

namespace lvoa {

// A graded subspace of V_{L+shift} truncated at a cutoff. Each weight block is
// kept in reduced row echelon form over the canonical BasisState order, so two
// equal subspaces have identical blocks. Weights examined but found empty are
// recorded with an empty basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(Rational cutoff, const std::map<Rational, std::vector<StateVector>>& spans);

    [[nodiscard]] const Rational& cutoff() const { return cutoff_; }
    [[nodiscard]] const std::map<Rational, std::vector<StateVector>>& blocks() const { return blocks_; }
    [[nodiscard]] const std::vector<StateVector>& basis(const Rational& w) const;
    [[nodiscard]] std::size_t dim(const Rational& w) const { return basis(w).size(); }
    [[nodiscard]] std::size_t total_dim() const;
    [[nodiscard]] bool contains(const StateVector& v, const LatticeVoa& voa) const;
    // (weight, dim) for every examined weight, ascending.
    [[nodiscard]] std::vector<std::pair<Rational, std::size_t>> graded_dims() const;
    // Dimensions at integer weights 0..floor(cutoff).
    [[nodiscard]] std::vector<std::size_t> integer_dims() const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.blocks_ == b.blocks_; }

private:
    Rational cutoff_;
    std::map<Rational, std::vector<StateVector>> blocks_;
};

std::vector<std::pair<Rational, std::size_t>> graded_dims(const Subspace& s);

// Condition op_m v = 0 for every m >= min_mode (with op_m v of weight >= 0).
struct ModeCondition {
    StateVector op;
    std::int64_t min_mode = 0;
};

// Restricts a computation to states with (direction, point+shift) = value.
struct ChargeConstraint {
    AmbientVector direction;
    Rational value;
};

struct KernelOptions {
    std::size_t max_states = kDefaultMaxStates;
};

// {v of weight <= cutoff : every condition holds}, solved per (weight, charge)
// block as an exact kernel. Blocks come from the coarsest lattice grading under
// which every condition operator is homogeneous.
Subspace kernel_of_modes(const LatticeVoa& voa, const std::vector<ModeCondition>& conditions, const Rational& cutoff,
                         const std::vector<ChargeConstraint>& constraints = {}, const KernelOptions& opts = {});

// The same conditions imposed inside an existing subspace.
Subspace kernel_within(const LatticeVoa& voa, const Subspace& space, const std::vector<ModeCondition>& conditions);

// C_V(U) truncated: v with g_m v = 0 for all generators g and m >= 0. If the
// generators' nonnegative modes kill v, so do those of every iterate a_k b, so
// imposing generator modes is enough.
Subspace commutant_of_generators(const LatticeVoa& voa, const std::vector<StateVector>& generators,
                                 const Rational& cutoff, const KernelOptions& opts = {});

// v with h(m) v = 0 for m >= 0 and every listed direction h.
Subspace heisenberg_commutant(const LatticeVoa& voa, const std::vector<AmbientVector>& directions,
                              const Rational& cutoff, const KernelOptions& opts = {});

// Singular vectors of charge `values` for a Chevalley-type current system:
// e_m v = 0 (m >= 0), f_m v = 0 (m >= 1), h(m) v = 0 (m >= 1), h(0) v = value v.
Subspace highest_weight_vectors(const LatticeVoa& voa, const std::vector<StateVector>& raising,
                                const std::vector<StateVector>& lowering, const std::vector<AmbientVector>& cartan,
                                const std::vector<Rational>& values, const Rational& cutoff,
                                const KernelOptions& opts = {});

struct ClosureReport {
    bool current_algebra = false;  // weight-one generators handled by PBW spanning
    std::size_t rounds = 0;
    std::size_t products = 0;
    std::vector<StateVector> weight_one_basis;
};

// Span of the vertex subalgebra generated by `generators`, truncated at the
// cutoff. Weight-one generators whose span closes into a Lie algebra under
// 0-products use PBW spanning x(-k)s; otherwise generator modes are applied to
// the growing span until nothing new appears.
Subspace generated_subalgebra(const LatticeVoa& voa, const std::vector<StateVector>& generators,
                              const Rational& cutoff, ClosureReport* report = nullptr, const KernelOptions& opts = {});

// Closure of a weight-one family under 0-th products, echelonized.
std::vector<StateVector> lie_closure(const LatticeVoa& voa, const std::vector<StateVector>& currents);

// Post-hoc check that every condition annihilates every basis vector; returns witnesses.
std::vector<std::string> verify_annihilated(const LatticeVoa& voa, const Subspace& space,
                                            const std::vector<ModeCondition>& conditions);

// The h(-1)1 state for a direction h.
StateVector heisenberg_state(const AmbientVector& h, int rank);

}  // namespace lvoa
