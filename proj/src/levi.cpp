#include "lvoa/levi.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lvoa {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("Composition: no parts");
    sums_.push_back(0);
    for (int p : parts_) {
        if (p < 1) throw std::invalid_argument("Composition: parts must be positive");
        sums_.push_back(sums_.back() + p);
    }
}

Composition Composition::parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("Composition: cannot parse '" + text + "'");
        }
        if (used != item.size()) throw std::invalid_argument("Composition: cannot parse '" + text + "'");
        parts.push_back(v);
    }
    return Composition(std::move(parts));
}

std::string Composition::str() const {
    std::string s;
    for (std::size_t k = 0; k < parts_.size(); ++k) s += (k ? "," : "") + std::to_string(parts_[k]);
    return s;
}

std::vector<StateVector> LeviRealization::generators() const {
    std::vector<StateVector> out;
    for (const auto& b : blocks) {
        for (const auto& e : b.raising) out.push_back(e.value);
        for (const auto& f : b.lowering) out.push_back(f.value);
    }
    for (const auto& h : center_directions) out.push_back(heisenberg_state(h, voa->rank()));
    return out;
}

std::vector<ModeCondition> LeviRealization::conditions() const {
    std::vector<ModeCondition> out;
    for (const auto& g : generators()) out.push_back({g, 0});
    for (const auto& b : blocks)
        for (const auto& h : b.cartan) out.push_back({h.value, 0});
    return out;
}

namespace {

// Scales a rational vector to a primitive integral one with first nonzero entry positive.
std::vector<std::int64_t> primitive(const AmbientVector& v) {
    std::int64_t den = 1;
    for (const auto& x : v)
        if (!x.is_zero()) den = std::lcm(den, x.den());
    std::vector<std::int64_t> out;
    std::int64_t g = 0;
    for (const auto& x : v) {
        const std::int64_t k = (x * Rational(den)).to_int();
        out.push_back(k);
        g = std::gcd(g, k < 0 ? -k : k);
    }
    std::int64_t sign = 1;
    for (auto k : out)
        if (k != 0) {
            sign = k < 0 ? -1 : 1;
            break;
        }
    for (auto& k : out) k = sign * k / g;
    return out;
}

}  // namespace

LeviRealization levi_realization(const Composition& comp, int n) {
    const int l = comp.total();
    if (l < 2 || n < 2) throw std::invalid_argument("levi_realization: need l >= 2 and n >= 2");
    LeviRealization lr;
    lr.comp = comp;
    lr.n = n;
    lr.voa = std::make_shared<const LatticeVoa>(build_a_tensor(l, n, "b"));
    lr.full = diagonal_currents(*lr.voa, l, n);
    std::vector<int> copies;
    for (int j = 1; j <= n; ++j) copies.push_back(j);
    std::vector<int> block_roots;
    const auto& s = comp.partial_sums();
    for (std::size_t k = 1; k < s.size(); ++k) {
        std::vector<int> simple;
        for (int i = s[k - 1] + 1; i <= s[k] - 1; ++i) simple.push_back(i);
        if (simple.empty()) continue;
        lr.blocks.push_back(diagonal_currents(*lr.voa, l, copies, simple));
        block_roots.insert(block_roots.end(), simple.begin(), simple.end());
    }
    // Center: sum_i c_i h^i orthogonal to every block Cartan; (h^i, h^j) = n A_ij.
    RationalMatrix rows;
    for (int j : block_roots) {
        AmbientVector row(static_cast<std::size_t>(l - 1), Rational(0));
        for (int i = 1; i <= l - 1; ++i) row[i - 1] = Rational(i == j ? 2 : (i == j - 1 || i == j + 1) ? -1 : 0);
        rows.push_back(std::move(row));
    }
    for (const auto& v : dense_nullspace(rows, static_cast<std::size_t>(l - 1))) {
        auto c = primitive(v);
        AmbientVector dir(static_cast<std::size_t>(lr.voa->rank()), Rational(0));
        for (int i = 1; i <= l - 1; ++i)
            for (std::size_t t = 0; t < dir.size(); ++t)
                dir[t] += Rational(c[i - 1]) * lr.full.cartan_directions[i - 1][t];
        lr.center_coefficients.push_back(std::move(c));
        lr.center_directions.push_back(std::move(dir));
    }
    return lr;
}

RelativeParafermion relative_parafermion(const LeviRealization& levi, const Rational& cutoff,
                                         const KernelOptions& opts) {
    std::vector<StateVector> gens;
    for (const auto& e : levi.full.raising) gens.push_back(e.value);
    for (const auto& f : levi.full.lowering) gens.push_back(f.value);
    Subspace affine = generated_subalgebra(*levi.voa, gens, cutoff, nullptr, opts);
    Subspace commutant = kernel_within(*levi.voa, affine, levi.conditions());
    return {std::move(affine), std::move(commutant)};
}

TensorCoset tensor_coset(const Composition& comp, int n, const Rational& cutoff, const KernelOptions& opts) {
    const int l = comp.total();
    if (n < 2) throw std::invalid_argument("tensor_coset: need n >= 2");
    const LatticeVoa voa(build_a_tensor(n, l, "a"));
    std::vector<int> simple;
    for (int i = 1; i <= n - 1; ++i) simple.push_back(i);
    std::vector<StateVector> block_gens;
    const auto& s = comp.partial_sums();
    for (std::size_t k = 1; k < s.size(); ++k) {
        std::vector<int> copies;
        for (int j = s[k - 1] + 1; j <= s[k]; ++j) copies.push_back(j);
        const CurrentAlgebra block = diagonal_currents(voa, n, copies, simple);
        for (const auto& e : block.raising) block_gens.push_back(e.value);
        for (const auto& f : block.lowering) block_gens.push_back(f.value);
    }
    Subspace tensor = generated_subalgebra(voa, block_gens, cutoff, nullptr, opts);
    const CurrentAlgebra diag = diagonal_currents(voa, n, l);
    std::vector<ModeCondition> conds;
    for (const auto& e : diag.raising) conds.push_back({e.value, 0});
    for (const auto& f : diag.lowering) conds.push_back({f.value, 0});
    for (const auto& h : diag.cartan) conds.push_back({h.value, 0});
    Subspace commutant = kernel_within(voa, tensor, conds);
    return {std::move(tensor), std::move(commutant)};
}

}  // namespace lvoa
