#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvoa/levi.hpp"

namespace lvoa {

// Invalid parameters or an exceeded guard; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunOptions {
    std::size_t max_states = kDefaultMaxStates;
    std::uint64_t seed = 1;
    std::size_t sample_limit = 200000;
    int check_weight = 4;
};

// Every report carries "command", "parameters", "pass" and command-specific
// tables. Keys are emitted in sorted order, so reports are byte-stable.
struct Report {
    nlohmann::json body;
    [[nodiscard]] bool pass() const { return body.value("pass", false); }
};

// Rationals as "p/q" in lowest terms with q > 0, integers as "p".
std::string rational_string(const Rational& r);
// [{"weight": "w", "dim": d}, ...] ascending.
nlohmann::json dims_json(const Subspace& s);

// Lattice data of A_{n-1}^{xl}, K and N: Gram matrices, determinants, dual
// quotient sizes and the orthogonality (K, N) = 0.
Report cmd_lattice_info(int n, int l);

// virasoro_check on a named family: "prime-omega" ('omega^i in V_{A_{n-1}^{xl}}),
// "omega-tilde" (in V_{A~_{l-1}^{xn}}), "omega" (pullback to V_N), "u" (u^{ii},
// l = 2), "lattice", "sugawara" or "coset" (diagonal L_{sl_n}(l,0)). "coset"
// also checks that the Sugawara and coset Virasoro modes commute.
Report cmd_virasoro(int n, int l, const std::string& which, const RunOptions& opts = {});

// (A) commutant of the diagonal sl_n currents in V_{A_{n-1}^{xl}} and (B) the
// Heisenberg commutant inside the generated L_{sl_l}(n,0) in V_{A~_{l-1}^{xn}}.
Report cmd_duality(int n, int l, const Rational& cutoff, const RunOptions& opts = {});

// Tensor coset against relative parafermion for a composition of l.
Report cmd_levi_duality(const Composition& comp, int n, const Rational& cutoff, const RunOptions& opts = {});

// tau: homomorphism check, generator images and W(0) -> W~(0) per weight.
// `corrupt` replaces tau by a sign-corrupted copy as a negative control.
Report cmd_map_check(int n, int l, const Rational& cutoff, bool corrupt = false, const RunOptions& opts = {});

// Flattened projection: a "key,value" header then one row per scalar leaf,
// keyed by its JSON path such as K.gram[0][0].
std::string to_csv(const nlohmann::json& report);

}  // namespace lvoa
