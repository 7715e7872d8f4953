#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lvoa/lattice.hpp"
#include "lvoa/rational.hpp"

namespace lvoa {

inline constexpr int kMaxRank = 12;
inline constexpr int kMaxModes = 16;

// Raised when a state does not fit the fixed-capacity key (too many modes, a
// mode index above 255, or a lattice coordinate outside int8).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Heisenberg monomial b_{d_1}(-m_1) ... b_{d_k}(-m_k) with modes packed as
// (m << 8) | dir and kept sorted descending, so (m, dir) descending.
struct FockMonomial {
    std::array<std::uint16_t, kMaxModes> modes{};
    std::uint8_t size = 0;

    static std::uint16_t pack(int m, int dir) { return static_cast<std::uint16_t>((m << 8) | dir); }
    static int mode_of(std::uint16_t p) { return p >> 8; }
    static int dir_of(std::uint16_t p) { return p & 0xFF; }

    [[nodiscard]] int degree() const;
    [[nodiscard]] int mode(int k) const { return mode_of(modes[k]); }
    [[nodiscard]] int dir(int k) const { return dir_of(modes[k]); }
    void insert(int m, int dir);
    void insert_packed(std::uint16_t p);
    void erase(int k);
    [[nodiscard]] std::vector<std::pair<int, int>> list() const;  // (dir, m) pairs in canonical order

    auto operator<=>(const FockMonomial&) const = default;
    bool operator==(const FockMonomial&) const = default;
};

// One basis element h(-m)...  (x) e^point of V_L; point in lattice coordinates.
struct BasisState {
    std::array<std::int8_t, kMaxRank> point{};
    std::uint8_t rank = 0;
    FockMonomial fock;

    BasisState() = default;
    BasisState(const LatticeVector& p, const FockMonomial& f);
    static BasisState vacuum(int rank);

    [[nodiscard]] LatticeVector lattice_point() const;
    [[nodiscard]] int degree() const { return fock.degree(); }
    [[nodiscard]] bool is_pure_exponential() const { return fock.size == 0; }

    auto operator<=>(const BasisState&) const = default;
    bool operator==(const BasisState&) const = default;
};

struct BasisStateHash {
    std::size_t operator()(const BasisState& s) const noexcept;
};

// Conformal weight degree + (point+shift, point+shift)/2.
Rational weight(const BasisState& s, const GramLattice& lattice, const AmbientVector& shift = {});
// The h(0)-eigenvalue (h, point+shift).
Rational h_weight(const BasisState& s, const AmbientVector& h, const GramLattice& lattice,
                  const AmbientVector& shift = {});

// Sparse exact-rational combination of basis states; zero coefficients are never stored.
class StateVector {
public:
    using Terms = std::map<BasisState, Rational>;

    StateVector() = default;
    explicit StateVector(const BasisState& s, Rational c = Rational(1));

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] Rational coefficient(const BasisState& s) const;

    void add(const BasisState& s, const Rational& c);
    void add_mul(const BasisState& s, const Rational& a, const Rational& b);
    void axpy(const Rational& a, const StateVector& x);  // this += a*x
    StateVector& operator+=(const StateVector& o);
    StateVector& operator-=(const StateVector& o);
    StateVector& operator*=(const Rational& c);
    void prune();  // drop zero coefficients left by add_mul

    friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
    friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
    friend StateVector operator*(const Rational& c, StateVector a) { return a *= c; }
    friend bool operator==(const StateVector& a, const StateVector& b) { return a.terms_ == b.terms_; }

    // Direct access for accumulation loops; callers must prune() afterwards.
    Terms& raw() { return terms_; }

private:
    Terms terms_;
};

// Vacuum 1 (x) e^0.
StateVector vacuum_vector(int rank);
// 1 (x) e^alpha.
StateVector exponential(const LatticeVector& alpha);
// h_1(-m_1)...h_k(-m_k) (x) e^alpha with each h a rational combination of basis directions.
StateVector fock_product(const std::vector<std::pair<AmbientVector, int>>& factors, const LatticeVector& alpha);

// Canonical text: terms in key order, "coef*b(-m)...e^(p1,p2)" with basis labels.
std::string to_text(const BasisState& s, const GramLattice& lattice);
std::string to_text(const StateVector& v, const GramLattice& lattice);

// Complete list of basis states of weight <= cutoff, grouped by weight.
class GradedBasis {
public:
    struct Block {
        Rational weight;
        std::vector<BasisState> states;
    };

    GradedBasis(GramLattice lattice, AmbientVector shift, Rational cutoff, std::vector<Block> blocks);

    [[nodiscard]] const GramLattice& lattice() const { return lattice_; }
    [[nodiscard]] const AmbientVector& shift() const { return shift_; }
    [[nodiscard]] const Rational& cutoff() const { return cutoff_; }
    [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
    [[nodiscard]] const Block* block(const Rational& w) const;
    [[nodiscard]] std::size_t total_size() const;
    // (block index, position) of a state, or nullopt-like (-1,-1) if absent.
    [[nodiscard]] std::pair<int, int> locate(const BasisState& s) const;
    [[nodiscard]] std::vector<std::pair<Rational, std::size_t>> dims() const;

private:
    GramLattice lattice_;
    AmbientVector shift_;
    Rational cutoff_;
    std::vector<Block> blocks_;
    std::unordered_map<BasisState, std::pair<int, int>, BasisStateHash> index_;
};

inline constexpr std::size_t kDefaultMaxStates = 2'000'000;

class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All states of weight <= cutoff in V_{L+shift}. `extra_radius` widens the
// lattice-point search box (used to test exhaustiveness).
GradedBasis enumerate_basis(const GramLattice& lattice, const AmbientVector& shift, const Rational& cutoff,
                            std::size_t max_states = kDefaultMaxStates, int extra_radius = 0);
// Lattice points beta with (beta+shift)^2/2 <= cutoff, sorted.
std::vector<LatticeVector> lattice_points(const GramLattice& lattice, const AmbientVector& shift,
                                          const Rational& cutoff, int extra_radius = 0);
// All Fock monomials of the given degree over `rank` colors, canonical order.
std::vector<FockMonomial> fock_monomials(int degree, int rank);

}  // namespace lvoa
