#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lvoa/cocycle.hpp"
#include "lvoa/lattice.hpp"
#include "lvoa/state.hpp"

namespace lvoa {

// A lattice vertex operator algebra V_L (or its module V_{L+shift}): the
// lattice, its cocycle and the E^- expansion cache shared by all mode calls.
class LatticeVoa {
public:
    explicit LatticeVoa(GramLattice lattice);
    LatticeVoa(GramLattice lattice, Cocycle cocycle, AmbientVector shift = {});

    [[nodiscard]] const GramLattice& lattice() const { return lattice_; }
    [[nodiscard]] const Cocycle& cocycle() const { return cocycle_; }
    [[nodiscard]] const AmbientVector& shift() const { return shift_; }
    [[nodiscard]] int rank() const { return lattice_.rank(); }

    [[nodiscard]] Rational weight(const BasisState& s) const { return lvoa::weight(s, lattice_, shift_); }
    // Weight of a homogeneous vector; throws std::invalid_argument otherwise. Zero has no weight.
    [[nodiscard]] Rational weight(const StateVector& v) const;
    [[nodiscard]] StateVector vacuum() const { return vacuum_vector(rank()); }

    // Degree-d coefficient of exp(sum_{n>0} alpha(-n) z^n / n), as Fock monomials.
    [[nodiscard]] std::shared_ptr<const std::vector<std::pair<FockMonomial, Rational>>> creation_poly(
        const LatticeVector& alpha, int degree) const;

private:
    using Poly = std::vector<std::pair<FockMonomial, Rational>>;
    struct CreationCache {
        std::mutex mutex;
        std::map<std::pair<LatticeVector, int>, std::shared_ptr<const Poly>> polys;
    };

    GramLattice lattice_;
    Cocycle cocycle_;
    AmbientVector shift_;
    std::shared_ptr<CreationCache> cache_ = std::make_shared<CreationCache>();
};

// h(m) v for h in the rational span of the lattice basis.
StateVector heisenberg_mode(const AmbientVector& h, std::int64_t m, const StateVector& v, const LatticeVoa& voa);

// (e^alpha)_m v from Y(e^alpha,z) = E^-(-alpha,z) E^+(-alpha,z) e_alpha z^alpha.
StateVector exp_mode(const LatticeVector& alpha, std::int64_t m, const StateVector& v, const LatticeVoa& voa);

// u_m v via the normal-ordered closed form of Y(h_1(-n_1)...h_k(-n_k)e^alpha, z).
StateVector mode(const StateVector& u, std::int64_t m, const StateVector& v, const LatticeVoa& voa);
// Same on single basis states with coefficients, accumulated into `out` (unpruned).
void mode_accumulate(const BasisState& u, const Rational& cu, std::int64_t m, const BasisState& v,
                     const Rational& cv, const LatticeVoa& voa, StateVector& out);

// u_m v by recursion on u through the iterate formula; the serial reference
// for `mode`. Memoizes (u-term, m, v-term) triples for the object's lifetime.
class ReferenceModes {
public:
    explicit ReferenceModes(const LatticeVoa& voa) : voa_(voa) {}
    StateVector mode(const StateVector& u, std::int64_t m, const StateVector& v);
    StateVector mode(const BasisState& u, std::int64_t m, const BasisState& v);
    [[nodiscard]] std::size_t memo_size() const { return memo_.size(); }

private:
    struct Key {
        BasisState u;
        std::int64_t m;
        BasisState v;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    const LatticeVoa& voa_;
    std::unordered_map<Key, StateVector, KeyHash> memo_;
};

// Mode result with the cutoff contract: components above the cutoff dropped and flagged.
struct ModeResult {
    StateVector value;
    bool truncated = false;
};
ModeResult mode_truncated(const StateVector& u, std::int64_t m, const StateVector& v, const LatticeVoa& voa,
                          const Rational& cutoff);

// The operator v -> u_m v with a per-instance cache on basis states. Not
// thread-safe; use one instance per worker.
class ModeOperator {
public:
    ModeOperator(const LatticeVoa& voa, StateVector u, std::int64_t m) : voa_(voa), u_(std::move(u)), m_(m) {}
    StateVector apply(const StateVector& v);
    const StateVector& apply(const BasisState& s);

private:
    const LatticeVoa& voa_;
    StateVector u_;
    std::int64_t m_;
    std::unordered_map<BasisState, StateVector, BasisStateHash> cache_;
};

// Translation operator D u = u_{-2} 1.
StateVector translation(const StateVector& u, const LatticeVoa& voa);

struct VirasoroReport {
    bool is_virasoro = false;
    std::optional<Rational> central_charge;
    std::vector<std::string> failures;
    std::size_t commutator_states = 0;  // states on which [L(m),L(n)] was checked
};

// Checks w_0 w = D w, w_1 w = 2w, w_2 w = 0, w_3 w = (c/2)1 and the Virasoro
// bracket on every basis state of weight <= check_weight for m,n in [-2,2].
VirasoroReport virasoro_check(const StateVector& candidate, const LatticeVoa& voa, int check_weight = 4,
                              std::size_t max_states = kDefaultMaxStates);

struct BracketReport {
    bool ok = true;
    std::size_t states = 0;
    std::vector<std::string> failures;
};

// [a_{m+1}, b_{n+1}] = 0 for m, n in [-2,2] on every basis state of weight <= check_weight.
BracketReport commuting_check(const StateVector& a, const StateVector& b, const LatticeVoa& voa, int check_weight = 4,
                              std::size_t max_states = kDefaultMaxStates);

struct CommutatorReport {
    bool ok = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

// [u_p, v_q] w = sum_{i>=0} C(p,i) (u_i v)_{p+q-i} w on every sample state.
CommutatorReport commutator_check(const StateVector& u, const StateVector& v, const std::vector<StateVector>& samples,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& mode_pairs,
                                  const LatticeVoa& voa);

}  // namespace lvoa
