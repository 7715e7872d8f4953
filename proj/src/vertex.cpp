#include "lvoa/vertex.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#ifdef LVOA_HAVE_OPENMP
#include <omp.h>
#endif

namespace lvoa {

namespace {

std::int64_t binom_int(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int parity_sign(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

// (alpha, beta+shift), required to be an integer.
std::int64_t pairing_with_point(const LatticeVoa& voa, const std::vector<std::int64_t>& g_alpha,
                                const BasisState& v) {
    Rational s(0);
    for (int d = 0; d < voa.rank(); ++d) {
        if (g_alpha[d] == 0) continue;
        Rational coord(v.point[d]);
        if (!voa.shift().empty()) coord += voa.shift()[d];
        s.add_mul(Rational(g_alpha[d]), coord);
    }
    if (!s.is_integer()) throw std::domain_error("mode: non-integral pairing between lattice point and module shift");
    return s.to_int();
}

std::vector<std::int64_t> gram_times(const GramLattice& L, const BasisState& s) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(L.rank()), 0);
    for (int a = 0; a < L.rank(); ++a) {
        if (s.point[a] == 0) continue;
        for (int d = 0; d < L.rank(); ++d) out[d] += L.gram(a, d) * s.point[a];
    }
    return out;
}

// (b_a, point+shift) for every direction a.
std::vector<Rational> point_pairings(const LatticeVoa& voa, const BasisState& v) {
    const auto gv = gram_times(voa.lattice(), v);
    std::vector<Rational> out(gv.begin(), gv.end());
    if (!voa.shift().empty()) {
        for (int a = 0; a < voa.rank(); ++a)
            for (int b = 0; b < voa.rank(); ++b)
                if (voa.lattice().gram(a, b) != 0) out[a].add_mul(Rational(voa.lattice().gram(a, b)), voa.shift()[b]);
    }
    return out;
}

struct Partial {
    FockMonomial fock;
    Rational coef;
    std::int64_t zpow;
};

void merge_into(FockMonomial& dst, const FockMonomial& src) {
    for (int k = 0; k < src.size; ++k) dst.insert_packed(src.modes[k]);
}

std::vector<BasisState> states_up_to(const LatticeVoa& voa, int check_weight, std::size_t max_states) {
    const GradedBasis basis = enumerate_basis(voa.lattice(), voa.shift(), Rational(check_weight), max_states);
    std::vector<BasisState> states;
    for (const auto& b : basis.blocks())
        for (const auto& st : b.states) states.push_back(st);
    return states;
}

// Sums c * row over state ids with a dense scratch vector.
class DenseAccumulator {
public:
    void add(int id, const Rational& c) {
        if (static_cast<std::size_t>(id) >= val_.size()) {
            val_.resize(static_cast<std::size_t>(id) + 1024);
            mark_.resize(val_.size(), 0);
        }
        if (!mark_[id]) {
            mark_[id] = 1;
            touched_.push_back(id);
        }
        val_[id] += c;
    }
    void add_mul(int id, const Rational& a, const Rational& b) {
        add(id, Rational(0));
        val_[id].add_mul(a, b);
    }
    // True if every accumulated entry vanished; resets the accumulator.
    bool clear_is_zero() {
        bool zero = true;
        for (int id : touched_) {
            if (!val_[id].is_zero()) zero = false;
            val_[id] = Rational(0);
            mark_[id] = 0;
        }
        touched_.clear();
        return zero;
    }

private:
    std::vector<Rational> val_;
    std::vector<char> mark_;
    std::vector<int> touched_;
};

// Cached actions op_m s of a few fixed vectors on interned basis states. Not
// thread-safe; one instance per worker.
class IndexedModes {
public:
    using Row = std::vector<std::pair<int, Rational>>;

    IndexedModes(const LatticeVoa& voa, std::vector<StateVector> ops) : voa_(voa), ops_(std::move(ops)) {}

    int intern(const BasisState& s) {
        auto [it, inserted] = ids_.try_emplace(s, static_cast<int>(states_.size()));
        if (inserted) states_.push_back(s);
        return it->second;
    }
    [[nodiscard]] const BasisState& state(int id) const { return states_[static_cast<std::size_t>(id)]; }

    const Row& row(int op, std::int64_t m, int id) {
        auto& slot = cache_[{op, m}];
        if (static_cast<std::size_t>(id) >= slot.size()) slot.resize(static_cast<std::size_t>(id) + 1);
        auto& cell = slot[static_cast<std::size_t>(id)];
        if (!cell) {
            StateVector out;
            const BasisState s = states_[static_cast<std::size_t>(id)];
            for (const auto& [su, cu] : ops_[static_cast<std::size_t>(op)].terms())
                mode_accumulate(su, cu, m, s, Rational(1), voa_, out);
            out.prune();
            auto r = std::make_unique<Row>();
            r->reserve(out.size());
            for (const auto& [t, c] : out.terms()) r->emplace_back(intern(t), c);
            cell = std::move(r);
        }
        return *cell;
    }

    void apply(int op, std::int64_t m, int id, const Rational& c, DenseAccumulator& acc) {
        for (const auto& [t, x] : row(op, m, id)) acc.add_mul(t, c, x);
    }

    // c * outer_{mo} inner_{mi} s
    void compose(int outer, std::int64_t mo, int inner, std::int64_t mi, int id, const Rational& c,
                 DenseAccumulator& acc) {
        const Row first = row(inner, mi, id);
        for (const auto& [t, x] : first) {
            const Rational cx = c * x;
            for (const auto& [u, y] : row(outer, mo, t)) acc.add_mul(u, cx, y);
        }
    }

private:
    const LatticeVoa& voa_;
    std::vector<StateVector> ops_;
    std::vector<BasisState> states_;
    std::unordered_map<BasisState, int, BasisStateHash> ids_;
    std::map<std::pair<int, std::int64_t>, std::vector<std::unique_ptr<Row>>> cache_;
};

// Runs `check` on every state with a per-worker table; failures sorted, at most five per worker.
template <class Check>
std::vector<std::string> bracket_failures(const LatticeVoa& voa, const std::vector<StateVector>& ops,
                                          const std::vector<BasisState>& states, Check check) {
    std::vector<std::string> failures;
    const long count = static_cast<long>(states.size());
#pragma omp parallel
    {
        IndexedModes table(voa, ops);
        DenseAccumulator acc;
        std::vector<std::string> local;
#pragma omp for schedule(dynamic, 8)
        for (long idx = 0; idx < count; ++idx) {
            const int sid = table.intern(states[static_cast<std::size_t>(idx)]);
            for (auto& f : check(table, sid, acc))
                if (local.size() < 5) local.push_back(std::move(f));
        }
#pragma omp critical
        failures.insert(failures.end(), local.begin(), local.end());
    }
    std::sort(failures.begin(), failures.end());
    return failures;
}

}  // namespace

LatticeVoa::LatticeVoa(GramLattice lattice) : lattice_(lattice), cocycle_(lattice) {}

LatticeVoa::LatticeVoa(GramLattice lattice, Cocycle cocycle, AmbientVector shift)
    : lattice_(std::move(lattice)), cocycle_(std::move(cocycle)), shift_(std::move(shift)) {
    if (cocycle_.rank() != lattice_.rank()) throw std::invalid_argument("LatticeVoa: cocycle rank mismatch");
    if (!shift_.empty() && static_cast<int>(shift_.size()) != lattice_.rank())
        throw std::invalid_argument("LatticeVoa: shift dimension mismatch");
}

Rational LatticeVoa::weight(const StateVector& v) const {
    if (v.is_zero()) throw std::invalid_argument("weight: zero vector has no weight");
    std::optional<Rational> w;
    for (const auto& [s, c] : v.terms()) {
        Rational ws = weight(s);
        if (w && *w != ws) throw std::invalid_argument("weight: vector is not homogeneous");
        w = ws;
    }
    return *w;
}

std::shared_ptr<const std::vector<std::pair<FockMonomial, Rational>>> LatticeVoa::creation_poly(
    const LatticeVector& alpha, int degree) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->polys.find({alpha, degree});
        if (it != cache_->polys.end()) return it->second;
    }
    Poly result;
    if (degree == 0) {
        result.emplace_back(FockMonomial{}, Rational(1));
    } else {
        // d S_d = sum_{n=1}^{d} alpha(-n) S_{d-n}
        std::map<FockMonomial, Rational> acc;
        for (int n = 1; n <= degree; ++n) {
            auto lower = creation_poly(alpha, degree - n);
            for (const auto& [f, c] : *lower) {
                for (int a = 0; a < rank(); ++a) {
                    if (alpha[a] == 0) continue;
                    FockMonomial g = f;
                    g.insert(n, a);
                    acc[g].add_mul(c, Rational(alpha[a]));
                }
            }
        }
        const Rational inv(1, degree);
        for (auto& [f, c] : acc)
            if (!c.is_zero()) result.emplace_back(f, c * inv);
    }
    auto ptr = std::make_shared<const Poly>(std::move(result));
    std::lock_guard lock(cache_->mutex);
    return cache_->polys.emplace(std::make_pair(alpha, degree), ptr).first->second;
}

StateVector heisenberg_mode(const AmbientVector& h, std::int64_t m, const StateVector& v, const LatticeVoa& voa) {
    const auto& L = voa.lattice();
    const int r = L.rank();
    if (static_cast<int>(h.size()) != r) throw std::invalid_argument("heisenberg_mode: dimension mismatch");
    StateVector out;
    if (m < 0) {
        for (const auto& [s, c] : v.terms()) {
            for (int a = 0; a < r; ++a) {
                if (h[a].is_zero()) continue;
                BasisState t = s;
                t.fock.insert(static_cast<int>(-m), a);
                out.add_mul(t, c, h[a]);
            }
        }
    } else if (m == 0) {
        for (const auto& [s, c] : v.terms()) out.add_mul(s, c, h_weight(s, h, L, voa.shift()));
    } else {
        // (h, b_d) for every direction d
        std::vector<Rational> hd(static_cast<std::size_t>(r), Rational(0));
        for (int d = 0; d < r; ++d)
            for (int a = 0; a < r; ++a)
                if (!h[a].is_zero() && L.gram(a, d) != 0) hd[d].add_mul(h[a], Rational(L.gram(a, d)));
        for (const auto& [s, c] : v.terms()) {
            for (int k = 0; k < s.fock.size; ++k) {
                if (s.fock.mode(k) != m || hd[s.fock.dir(k)].is_zero()) continue;
                BasisState t = s;
                t.fock.erase(k);
                out.add_mul(t, c, hd[s.fock.dir(k)] * Rational(m));
            }
        }
    }
    out.prune();
    return out;
}

StateVector exp_mode(const LatticeVector& alpha, std::int64_t m, const StateVector& v, const LatticeVoa& voa) {
    const auto& L = voa.lattice();
    if (static_cast<int>(alpha.size()) != L.rank()) throw std::invalid_argument("exp_mode: dimension mismatch");
    BasisState ua(alpha, FockMonomial{});
    const auto g_alpha = gram_times(L, ua);
    StateVector out;
    for (const auto& [s, c] : v.terms()) {
        const std::int64_t ab = pairing_with_point(voa, g_alpha, s);
        const int eps = voa.cocycle().eval(alpha, s.lattice_point());
        LatticeVector target = s.lattice_point();
        for (std::size_t a = 0; a < target.size(); ++a) target[a] += alpha[a];
        // E^+(-alpha,z) F = prod_j (h_j(-q_j) - (alpha,h_j) z^{-q_j}); pick the kept subset.
        const int k = s.fock.size;
        for (std::uint32_t drop = 0; drop < (1U << k); ++drop) {
            Rational coef(c * Rational(eps));
            std::int64_t zpow = ab;
            FockMonomial kept;
            bool zero = false;
            for (int j = 0; j < k; ++j) {
                if (drop & (1U << j)) {
                    const std::int64_t pa = g_alpha[s.fock.dir(j)];
                    if (pa == 0) {
                        zero = true;
                        break;
                    }
                    coef *= Rational(-pa);
                    zpow -= s.fock.mode(j);
                } else {
                    kept.insert_packed(s.fock.modes[j]);
                }
            }
            if (zero) continue;
            // E^-(-alpha,z) contributes z^d; need zpow + d = -m-1.
            const std::int64_t d = -m - 1 - zpow;
            if (d < 0) continue;
            auto poly = voa.creation_poly(alpha, static_cast<int>(d));
            for (const auto& [f, pc] : *poly) {
                FockMonomial g = kept;
                merge_into(g, f);
                out.add_mul(BasisState(target, g), coef, pc);
            }
        }
    }
    out.prune();
    return out;
}

void mode_accumulate(const BasisState& u, const Rational& cu, std::int64_t m, const BasisState& v,
                     const Rational& cv, const LatticeVoa& voa, StateVector& out) {
    const auto& L = voa.lattice();
    const LatticeVector alpha = u.lattice_point();
    const auto g_alpha = gram_times(L, u);
    const std::int64_t ab = pairing_with_point(voa, g_alpha, v);
    // Output Fock degree is fixed by the grading.
    const std::int64_t out_degree = u.degree() + v.degree() - m - 1 - ab;
    if (out_degree < 0) return;

    const std::vector<Rational> hb = point_pairings(voa, v);
    const int eps = voa.cocycle().eval(alpha, v.lattice_point());
    LatticeVector target = v.lattice_point();
    for (std::size_t a = 0; a < target.size(); ++a) target[a] += alpha[a];
    const Rational base = cu * cv * Rational(eps);

    const int k = u.fock.size;
    std::vector<Partial> cur, next;
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        // Bits of mask pick the factors contributing their creation part.
        cur.clear();
        cur.push_back({v.fock, base, 0});
        for (int i = 0; i < k && !cur.empty(); ++i) {
            if (mask & (1U << i)) continue;
            const int ni = u.fock.mode(i);
            const int ai = u.fock.dir(i);
            const std::int64_t sgn = parity_sign(ni - 1);
            next.clear();
            for (const auto& p : cur) {
                if (!hb[ai].is_zero()) next.push_back({p.fock, p.coef * hb[ai] * Rational(sgn), p.zpow - ni});
                for (int j = 0; j < p.fock.size; ++j) {
                    const std::int64_t g = L.gram(ai, p.fock.dir(j));
                    if (g == 0) continue;
                    const int q = p.fock.mode(j);
                    FockMonomial f = p.fock;
                    f.erase(j);
                    // h(q) z^{-q-n} C(-q-1, n-1) contracted with b(-q): q (h, b)
                    const std::int64_t factor = q * g * sgn * binom_int(q + ni - 1, ni - 1);
                    next.push_back({f, p.coef * Rational(factor), p.zpow - q - ni});
                }
            }
            std::swap(cur, next);
        }
        for (const auto& p : cur) {
            const int s = p.fock.size;
            for (std::uint32_t drop = 0; drop < (1U << s); ++drop) {
                Rational coef = p.coef;
                std::int64_t zpow = p.zpow + ab;
                FockMonomial kept;
                bool zero = false;
                for (int j = 0; j < s; ++j) {
                    if (drop & (1U << j)) {
                        const std::int64_t pa = g_alpha[p.fock.dir(j)];
                        if (pa == 0) {
                            zero = true;
                            break;
                        }
                        coef *= Rational(-pa);
                        zpow -= p.fock.mode(j);
                    } else {
                        kept.insert_packed(p.fock.modes[j]);
                    }
                }
                if (zero) continue;
                // Creation parts of the chosen factors and E^- share total z-degree.
                const std::int64_t total = -m - 1 - zpow;
                if (total < 0) continue;
                std::vector<int> creators;
                for (int i = 0; i < k; ++i)
                    if (mask & (1U << i)) creators.push_back(i);
                // Distribute `total` as extra degree e_i >= 0 on each creator, rest to E^-.
                auto distribute = [&](auto&& self, std::size_t idx, std::int64_t left, FockMonomial f,
                                      Rational c) -> void {
                    if (idx == creators.size()) {
                        auto poly = voa.creation_poly(alpha, static_cast<int>(left));
                        for (const auto& [g, pc] : *poly) {
                            FockMonomial h = f;
                            merge_into(h, g);
                            out.add_mul(BasisState(target, h), c, pc);
                        }
                        return;
                    }
                    const int ni = u.fock.mode(creators[idx]);
                    const int ai = u.fock.dir(creators[idx]);
                    for (std::int64_t e = 0; e <= left; ++e) {
                        FockMonomial g = f;
                        g.insert(static_cast<int>(ni + e), ai);
                        self(self, idx + 1, left - e, g, c * Rational(binom_int(ni + e - 1, ni - 1)));
                    }
                };
                distribute(distribute, 0, total, kept, coef);
            }
        }
    }
}

StateVector mode(const StateVector& u, std::int64_t m, const StateVector& v, const LatticeVoa& voa) {
    StateVector out;
    for (const auto& [su, cu] : u.terms())
        for (const auto& [sv, cv] : v.terms()) mode_accumulate(su, cu, m, sv, cv, voa, out);
    out.prune();
    return out;
}

std::size_t ReferenceModes::KeyHash::operator()(const Key& k) const noexcept {
    BasisStateHash h;
    return h(k.u) * 31 + h(k.v) * 1000003 + static_cast<std::size_t>(k.m);
}

StateVector ReferenceModes::mode(const StateVector& u, std::int64_t m, const StateVector& v) {
    StateVector out;
    for (const auto& [su, cu] : u.terms())
        for (const auto& [sv, cv] : v.terms()) out.axpy(cu * cv, mode(su, m, sv));
    return out;
}

StateVector ReferenceModes::mode(const BasisState& u, std::int64_t m, const BasisState& v) {
    Key key{u, m, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto& L = voa_.lattice();
    const auto g_alpha = gram_times(L, u);
    const std::int64_t ab = pairing_with_point(voa_, g_alpha, v);
    StateVector result;
    if (u.degree() + v.degree() - m - 1 - ab < 0) {
        // graded vanishing
    } else if (u.fock.size == 0) {
        const LatticeVector alpha = u.lattice_point();
        bool is_vacuum = true;
        for (auto x : alpha) is_vacuum = is_vacuum && x == 0;
        if (is_vacuum) {
            if (m == -1) result = StateVector(v);
        } else {
            result = exp_mode(alpha, m, StateVector(v), voa_);
        }
    } else {
        // u = h(-k) w with a = h(-1)1, a_j = h(j):
        // (a_{-k} w)_m = sum_i (-1)^i C(-k,i) [h(-k-i) w_{m+i} - (-1)^k w_{-k+m-i} h(i)]
        const int kk = u.fock.mode(0);
        const int dir = u.fock.dir(0);
        BasisState w = u;
        w.fock.erase(0);
        const AmbientVector h = to_ambient(L.unit(dir));
        const StateVector vv(v);
        const auto g_w = gram_times(L, w);
        const std::int64_t ab_w = pairing_with_point(voa_, g_w, v);
        const std::int64_t first_max = w.degree() + v.degree() - m - 1 - ab_w;
        for (std::int64_t i = 0; i <= first_max; ++i) {
            const Rational c = Rational(parity_sign(i)) * binomial(-kk, i);
            StateVector inner = mode(w, m + i, v);
            if (inner.is_zero()) continue;
            result.axpy(c, heisenberg_mode(h, -kk - i, inner, voa_));
        }
        const Rational sk(-parity_sign(kk));
        for (std::int64_t i = 0; i <= v.degree(); ++i) {
            StateVector hv = heisenberg_mode(h, i, vv, voa_);
            if (hv.is_zero()) continue;
            const Rational c = Rational(parity_sign(i)) * binomial(-kk, i) * sk;
            for (const auto& [s, cs] : hv.terms()) result.axpy(c * cs, mode(w, -kk + m - i, s));
        }
    }
    memo_.emplace(std::move(key), result);
    return result;
}

ModeResult mode_truncated(const StateVector& u, std::int64_t m, const StateVector& v, const LatticeVoa& voa,
                          const Rational& cutoff) {
    ModeResult r;
    StateVector full = mode(u, m, v, voa);
    for (const auto& [s, c] : full.terms()) {
        if (voa.weight(s) > cutoff) r.truncated = true;
        else r.value.add(s, c);
    }
    return r;
}

const StateVector& ModeOperator::apply(const BasisState& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    StateVector out;
    for (const auto& [su, cu] : u_.terms()) mode_accumulate(su, cu, m_, s, Rational(1), voa_, out);
    out.prune();
    return cache_.emplace(s, std::move(out)).first->second;
}

StateVector ModeOperator::apply(const StateVector& v) {
    StateVector out;
    for (const auto& [s, c] : v.terms()) out.axpy(c, apply(s));
    return out;
}

StateVector translation(const StateVector& u, const LatticeVoa& voa) { return mode(u, -2, voa.vacuum(), voa); }

VirasoroReport virasoro_check(const StateVector& candidate, const LatticeVoa& voa, int check_weight,
                              std::size_t max_states) {
    VirasoroReport rep;
    if (candidate.is_zero() || voa.weight(candidate) != Rational(2))
        throw std::invalid_argument("virasoro_check: candidate must be homogeneous of weight 2");
    const StateVector& w = candidate;
    if (mode(w, 0, w, voa) != translation(w, voa)) rep.failures.emplace_back("w_0 w != D w");
    StateVector w1 = mode(w, 1, w, voa);
    if (w1 != Rational(2) * w) rep.failures.emplace_back("w_1 w != 2 w");
    if (!mode(w, 2, w, voa).is_zero()) rep.failures.emplace_back("w_2 w != 0");
    StateVector w3 = mode(w, 3, w, voa);
    const BasisState vac = BasisState::vacuum(voa.rank());
    if (w3.size() > 1 || (w3.size() == 1 && w3.terms().begin()->first != vac)) {
        rep.failures.emplace_back("w_3 w is not a multiple of the vacuum");
    } else {
        rep.central_charge = Rational(2) * w3.coefficient(vac);
    }
    if (!rep.failures.empty()) return rep;

    const Rational c = *rep.central_charge;
    const std::vector<BasisState> states = states_up_to(voa, check_weight, max_states);
    rep.commutator_states = states.size();
    // [L(m),L(n)] - (m-n)L(m+n) - c/12 (m^3-m) delta_{m+n,0}, m < n; the rest follow by antisymmetry.
    rep.failures = bracket_failures(voa, {w}, states, [&](IndexedModes& t, int sid, DenseAccumulator& acc) {
        std::vector<std::string> bad;
        for (int mm = -2; mm <= 2; ++mm)
            for (int nn = mm + 1; nn <= 2; ++nn) {
                t.compose(0, mm + 1, 0, nn + 1, sid, Rational(1), acc);
                t.compose(0, nn + 1, 0, mm + 1, sid, Rational(-1), acc);
                t.apply(0, mm + nn + 1, sid, Rational(nn - mm), acc);
                if (mm + nn == 0) acc.add(sid, -c * Rational(mm * mm * mm - mm, 12));
                if (!acc.clear_is_zero())
                    bad.push_back("[L(" + std::to_string(mm) + "),L(" + std::to_string(nn) + ")] fails on " +
                                  to_text(t.state(sid), voa.lattice()));
            }
        return bad;
    });
    rep.is_virasoro = rep.failures.empty();
    return rep;
}

BracketReport commuting_check(const StateVector& a, const StateVector& b, const LatticeVoa& voa, int check_weight,
                              std::size_t max_states) {
    BracketReport rep;
    const std::vector<BasisState> states = states_up_to(voa, check_weight, max_states);
    rep.states = states.size();
    rep.failures = bracket_failures(voa, {a, b}, states, [&](IndexedModes& t, int sid, DenseAccumulator& acc) {
        std::vector<std::string> bad;
        for (int mm = -2; mm <= 2; ++mm)
            for (int nn = -2; nn <= 2; ++nn) {
                t.compose(0, mm + 1, 1, nn + 1, sid, Rational(1), acc);
                t.compose(1, nn + 1, 0, mm + 1, sid, Rational(-1), acc);
                if (!acc.clear_is_zero())
                    bad.push_back("[A(" + std::to_string(mm) + "),B(" + std::to_string(nn) + ")] fails on " +
                                  to_text(t.state(sid), voa.lattice()));
            }
        return bad;
    });
    rep.ok = rep.failures.empty();
    return rep;
}

CommutatorReport commutator_check(const StateVector& u, const StateVector& v, const std::vector<StateVector>& samples,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& mode_pairs,
                                  const LatticeVoa& voa) {
    CommutatorReport rep;
    const std::int64_t top = (voa.weight(u) + voa.weight(v)).floor().to_int() - 1;
    for (const auto& [p, q] : mode_pairs) {
        std::vector<StateVector> products;  // u_i v for 0 <= i <= top
        for (std::int64_t i = 0; i <= top; ++i) products.push_back(mode(u, i, v, voa));
        for (const auto& w : samples) {
            StateVector lhs = mode(u, p, mode(v, q, w, voa), voa);
            lhs -= mode(v, q, mode(u, p, w, voa), voa);
            StateVector rhs;
            for (std::int64_t i = 0; i <= top; ++i) {
                if (products[static_cast<std::size_t>(i)].is_zero()) continue;
                rhs.axpy(binomial(p, i), mode(products[static_cast<std::size_t>(i)], p + q - i, w, voa));
            }
            ++rep.checked;
            if (lhs != rhs) {
                rep.ok = false;
                if (rep.failures.size() < 5)
                    rep.failures.push_back("p=" + std::to_string(p) + " q=" + std::to_string(q) + " w=" +
                                           to_text(w, voa.lattice()));
            }
        }
    }
    return rep;
}

}  // namespace lvoa
