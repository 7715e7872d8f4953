#include "lvoa/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lvoa {

int FockMonomial::degree() const {
    int d = 0;
    for (int k = 0; k < size; ++k) d += mode(k);
    return d;
}

void FockMonomial::insert(int m, int dir) {
    if (m <= 0 || m > 255 || dir < 0 || dir > 255) throw CapacityError("FockMonomial: mode or direction out of range");
    insert_packed(pack(m, dir));
}

void FockMonomial::insert_packed(std::uint16_t p) {
    if (size >= kMaxModes) throw CapacityError("FockMonomial: too many modes");
    int k = size;
    while (k > 0 && modes[k - 1] < p) {
        modes[k] = modes[k - 1];
        --k;
    }
    modes[k] = p;
    ++size;
}

void FockMonomial::erase(int k) {
    for (int j = k; j + 1 < size; ++j) modes[j] = modes[j + 1];
    --size;
    modes[size] = 0;
}

std::vector<std::pair<int, int>> FockMonomial::list() const {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k < size; ++k) out.emplace_back(dir(k), mode(k));
    return out;
}

BasisState::BasisState(const LatticeVector& p, const FockMonomial& f) : fock(f) {
    if (p.size() > static_cast<std::size_t>(kMaxRank)) throw CapacityError("BasisState: rank exceeds capacity");
    rank = static_cast<std::uint8_t>(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] < -127 || p[a] > 127) throw CapacityError("BasisState: lattice coordinate out of range");
        point[a] = static_cast<std::int8_t>(p[a]);
    }
}

BasisState BasisState::vacuum(int rank) { return {LatticeVector(static_cast<std::size_t>(rank), 0), FockMonomial{}}; }

LatticeVector BasisState::lattice_point() const {
    LatticeVector p(rank);
    for (int a = 0; a < rank; ++a) p[a] = point[a];
    return p;
}

std::size_t BasisStateHash::operator()(const BasisState& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
    };
    for (int a = 0; a < s.rank; ++a) mix(static_cast<std::uint8_t>(s.point[a]));
    mix(s.fock.size);
    for (int k = 0; k < s.fock.size; ++k) mix(s.fock.modes[k]);
    return static_cast<std::size_t>(h);
}

namespace {

AmbientVector shifted_point(const BasisState& s, const AmbientVector& shift) {
    AmbientVector p(s.rank);
    for (int a = 0; a < s.rank; ++a) p[a] = Rational(s.point[a]);
    if (!shift.empty())
        for (int a = 0; a < s.rank; ++a) p[a] += shift[a];
    return p;
}

}  // namespace

Rational weight(const BasisState& s, const GramLattice& lattice, const AmbientVector& shift) {
    AmbientVector p = shifted_point(s, shift);
    return Rational(s.degree()) + lattice.inner(p, p) / Rational(2);
}

Rational h_weight(const BasisState& s, const AmbientVector& h, const GramLattice& lattice, const AmbientVector& shift) {
    return lattice.inner(h, shifted_point(s, shift));
}

StateVector::StateVector(const BasisState& s, Rational c) {
    if (!c.is_zero()) terms_.emplace(s, std::move(c));
}

Rational StateVector::coefficient(const BasisState& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
}

void StateVector::add(const BasisState& s, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void StateVector::add_mul(const BasisState& s, const Rational& a, const Rational& b) {
    auto [it, inserted] = terms_.try_emplace(s);
    it->second.add_mul(a, b);
}

void StateVector::axpy(const Rational& a, const StateVector& x) {
    if (a.is_zero()) return;
    for (const auto& [s, c] : x.terms_) {
        auto [it, inserted] = terms_.try_emplace(s);
        it->second.add_mul(a, c);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

StateVector& StateVector::operator+=(const StateVector& o) {
    axpy(Rational(1), o);
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
    axpy(Rational(-1), o);
    return *this;
}

StateVector& StateVector::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, x] : terms_) x *= c;
    return *this;
}

void StateVector::prune() { std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); }); }

StateVector vacuum_vector(int rank) { return StateVector(BasisState::vacuum(rank)); }

StateVector exponential(const LatticeVector& alpha) { return StateVector(BasisState(alpha, FockMonomial{})); }

StateVector fock_product(const std::vector<std::pair<AmbientVector, int>>& factors, const LatticeVector& alpha) {
    StateVector acc(BasisState(alpha, FockMonomial{}));
    for (const auto& [h, m] : factors) {
        StateVector next;
        for (const auto& [s, c] : acc.terms()) {
            for (std::size_t a = 0; a < h.size(); ++a) {
                if (h[a].is_zero()) continue;
                BasisState t = s;
                t.fock.insert(m, static_cast<int>(a));
                next.add(t, c * h[a]);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

std::string to_text(const BasisState& s, const GramLattice& lattice) {
    std::ostringstream os;
    for (int k = 0; k < s.fock.size; ++k) os << lattice.labels()[s.fock.dir(k)] << "(-" << s.fock.mode(k) << ")";
    os << "e^(";
    for (int a = 0; a < s.rank; ++a) os << (a ? "," : "") << static_cast<int>(s.point[a]);
    os << ")";
    return os.str();
}

std::string to_text(const StateVector& v, const GramLattice& lattice) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : v.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*" << to_text(s, lattice);
    }
    return os.str();
}

GradedBasis::GradedBasis(GramLattice lattice, AmbientVector shift, Rational cutoff, std::vector<Block> blocks)
    : lattice_(std::move(lattice)), shift_(std::move(shift)), cutoff_(std::move(cutoff)), blocks_(std::move(blocks)) {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        for (std::size_t i = 0; i < blocks_[b].states.size(); ++i)
            index_.emplace(blocks_[b].states[i], std::make_pair(static_cast<int>(b), static_cast<int>(i)));
}

const GradedBasis::Block* GradedBasis::block(const Rational& w) const {
    for (const auto& b : blocks_)
        if (b.weight == w) return &b;
    return nullptr;
}

std::size_t GradedBasis::total_size() const { return index_.size(); }

std::pair<int, int> GradedBasis::locate(const BasisState& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? std::make_pair(-1, -1) : it->second;
}

std::vector<std::pair<Rational, std::size_t>> GradedBasis::dims() const {
    std::vector<std::pair<Rational, std::size_t>> out;
    for (const auto& b : blocks_) out.emplace_back(b.weight, b.states.size());
    return out;
}

std::vector<LatticeVector> lattice_points(const GramLattice& lattice, const AmbientVector& shift,
                                          const Rational& cutoff, int extra_radius) {
    const int r = lattice.rank();
    AmbientVector sh = shift.empty() ? AmbientVector(static_cast<std::size_t>(r), Rational(0)) : shift;
    const Rational bound = cutoff * Rational(2);
    // |x_a + shift_a| <= sqrt(bound * ginv_aa) for any x with norm <= bound.
    std::vector<std::int64_t> lo(static_cast<std::size_t>(r)), hi(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) {
        double rad = std::sqrt(std::max(0.0, bound.to_double() * lattice.gram_inverse()[a][a].to_double()));
        double c = sh[a].to_double();
        lo[a] = static_cast<std::int64_t>(std::floor(-rad - c)) - 1 - extra_radius;
        hi[a] = static_cast<std::int64_t>(std::ceil(rad - c)) + 1 + extra_radius;
    }
    std::vector<LatticeVector> out;
    LatticeVector x(lo);
    for (;;) {
        AmbientVector p(static_cast<std::size_t>(r));
        for (int a = 0; a < r; ++a) p[a] = Rational(x[a]) + sh[a];
        if (lattice.inner(p, p) <= bound) out.push_back(x);
        int k = 0;
        while (k < r && ++x[k] > hi[k]) {
            x[k] = lo[k];
            ++k;
        }
        if (k == r) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void fock_rec(int remaining, int max_packed, int rank, FockMonomial& cur, std::vector<FockMonomial>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    // Next mode must not exceed the previous one in packed order.
    for (int m = std::min(remaining, 255); m >= 1; --m) {
        for (int d = rank - 1; d >= 0; --d) {
            int p = FockMonomial::pack(m, d);
            if (p > max_packed) continue;
            cur.insert_packed(static_cast<std::uint16_t>(p));
            fock_rec(remaining - m, p, rank, cur, out);
            cur.erase(cur.size - 1);
        }
    }
}

}  // namespace

std::vector<FockMonomial> fock_monomials(int degree, int rank) {
    std::vector<FockMonomial> out;
    if (degree < 0) return out;
    FockMonomial cur;
    fock_rec(degree, 0xFFFF, rank, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

GradedBasis enumerate_basis(const GramLattice& lattice, const AmbientVector& shift, const Rational& cutoff,
                            std::size_t max_states, int extra_radius) {
    if (cutoff.sign() < 0) throw std::invalid_argument("enumerate_basis: cutoff must be >= 0");
    if (lattice.rank() > kMaxRank) throw CapacityError("enumerate_basis: rank exceeds capacity");
    auto points = lattice_points(lattice, shift, cutoff, extra_radius);
    std::map<Rational, std::vector<BasisState>> by_weight;
    std::map<int, std::vector<FockMonomial>> fock_cache;
    std::size_t count = 0;
    for (const auto& p : points) {
        BasisState base(p, FockMonomial{});
        Rational w0 = weight(base, lattice, shift);
        const int max_deg = (cutoff - w0).floor().to_int();
        for (int d = 0; d <= max_deg; ++d) {
            auto it = fock_cache.find(d);
            if (it == fock_cache.end()) it = fock_cache.emplace(d, fock_monomials(d, lattice.rank())).first;
            auto& bucket = by_weight[w0 + Rational(d)];
            for (const auto& f : it->second) {
                if (++count > max_states)
                    throw GuardError("enumerate_basis: more than " + std::to_string(max_states) + " states");
                bucket.emplace_back(p, f);
            }
        }
    }
    std::vector<GradedBasis::Block> blocks;
    for (auto& [w, states] : by_weight) {
        std::sort(states.begin(), states.end());
        blocks.push_back({w, std::move(states)});
    }
    return {lattice, shift, cutoff, std::move(blocks)};
}

}  // namespace lvoa
