#include "lvoa/maps.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace lvoa {

namespace {

int parity_sign(std::int64_t k) { return ((k % 2) + 2) % 2 == 0 ? 1 : -1; }

// Expands a Fock monomial under direction d -> sum_b matrix[b][d] b.
std::map<FockMonomial, Rational> expand_fock(const FockMonomial& f, const RationalMatrix& matrix) {
    std::map<FockMonomial, Rational> cur{{FockMonomial{}, Rational(1)}};
    for (int k = 0; k < f.size; ++k) {
        const int m = f.mode(k);
        const int d = f.dir(k);
        std::map<FockMonomial, Rational> next;
        for (const auto& [g, c] : cur) {
            for (std::size_t b = 0; b < matrix.size(); ++b) {
                const Rational& x = matrix[b][static_cast<std::size_t>(d)];
                if (x.is_zero()) continue;
                FockMonomial h = g;
                h.insert(m, static_cast<int>(b));
                next[h].add_mul(c, x);
            }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        cur = std::move(next);
    }
    return cur;
}

LatticeVector times(const IntMatrix& m, const LatticeVector& x) {
    LatticeVector y(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

AmbientVector times(const RationalMatrix& m, const LatticeVector& x) {
    AmbientVector y(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0 && !m[i][j].is_zero()) y[i].add_mul(m[i][j], Rational(x[j]));
    return y;
}

template <class M>
M multiply(const M& a, const M& b) {
    using T = typename M::value_type::value_type;
    M out(a.size(), typename M::value_type(b.empty() ? 0 : b[0].size(), T(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

RationalMatrix transpose(const RationalMatrix& m) {
    if (m.empty()) return {};
    RationalMatrix t(m[0].size(), AmbientVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

}  // namespace

StateVector push(const LatticeVoaMap& f, const StateVector& v) {
    StateVector out;
    for (const auto& [s, c] : v.terms()) {
        const LatticeVector beta = s.lattice_point();
        const LatticeVector image = times(f.point_map, beta);
        const Rational coef = c * Rational(f.point_sign(beta));
        for (const auto& [g, x] : expand_fock(s.fock, f.fock_map)) out.add(BasisState(image, g), coef * x);
    }
    return out;
}

LatticeVoaMap compose(const LatticeVoaMap& g, const LatticeVoaMap& f, std::string name) {
    LatticeVoaMap h;
    h.name = name.empty() ? g.name + "." + f.name : std::move(name);
    h.source = f.source;
    h.target = g.target;
    h.point_map = multiply(g.point_map, f.point_map);
    h.fock_map = multiply(g.fock_map, f.fock_map);
    auto fs = f.point_sign;
    auto gs = g.point_sign;
    auto fp = f.point_map;
    h.point_sign = [fs, gs, fp](const LatticeVector& b) { return fs(b) * gs(times(fp, b)); };
    return h;
}

LatticeVoaMap inverse(const LatticeVoaMap& f, std::string name) {
    const RationalMatrix inv = lvoa::inverse(to_rational(f.point_map));
    IntMatrix pinv(inv.size(), LatticeVector(inv.size(), 0));
    for (std::size_t i = 0; i < inv.size(); ++i)
        for (std::size_t j = 0; j < inv.size(); ++j) {
            if (!inv[i][j].is_integer()) throw std::invalid_argument("inverse: point map is not unimodular");
            pinv[i][j] = inv[i][j].to_int();
        }
    LatticeVoaMap h;
    h.name = name.empty() ? f.name + "^-1" : std::move(name);
    h.source = f.target;
    h.target = f.source;
    h.point_map = pinv;
    h.fock_map = lvoa::inverse(f.fock_map);
    auto fs = f.point_sign;
    h.point_sign = [fs, pinv](const LatticeVector& g) { return fs(times(pinv, g)); };
    return h;
}

LatticeVoaMap isometry_lift(std::string name, std::shared_ptr<const LatticeVoa> source,
                            std::shared_ptr<const LatticeVoa> target, IntMatrix point_map,
                            std::vector<int> basis_signs) {
    const int rs = source->rank();
    const int rt = target->rank();
    if (static_cast<int>(point_map.size()) != rt || static_cast<int>(basis_signs.size()) != rs)
        throw std::invalid_argument("isometry_lift: dimension mismatch");
    std::vector<LatticeVector> images;
    for (int a = 0; a < rs; ++a) {
        LatticeVector col(static_cast<std::size_t>(rt));
        for (int b = 0; b < rt; ++b) col[b] = point_map[b][a];
        images.push_back(std::move(col));
    }
    for (int a = 0; a < rs; ++a)
        for (int b = 0; b < rs; ++b)
            if (target->lattice().inner(images[a], images[b]) != source->lattice().gram(a, b))
                throw std::invalid_argument("isometry_lift: point map does not preserve the Gram form");
    // c(a,b) parity table of the symmetric correction form.
    std::vector<std::vector<int>> c(static_cast<std::size_t>(rs), std::vector<int>(static_cast<std::size_t>(rs)));
    for (int a = 0; a < rs; ++a)
        for (int b = 0; b < rs; ++b) {
            const int v = target->cocycle().eval(images[a], images[b]) *
                          source->cocycle().basis_value(a, b);
            c[a][b] = v == -1 ? 1 : 0;
        }
    std::vector<int> s(basis_signs.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (basis_signs[a] != 1 && basis_signs[a] != -1) throw std::invalid_argument("isometry_lift: signs must be +-1");
        s[a] = basis_signs[a] == -1 ? 1 : 0;
    }
    LatticeVoaMap f;
    f.name = std::move(name);
    f.source = std::move(source);
    f.target = std::move(target);
    f.fock_map = to_rational(point_map);
    f.point_map = std::move(point_map);
    f.point_sign = [c, s](const LatticeVector& k) {
        std::int64_t parity = 0;
        const std::size_t r = k.size();
        for (std::size_t a = 0; a < r; ++a) {
            parity += s[a] * k[a];
            parity += c[a][a] * (k[a] * (k[a] - 1) / 2);
            for (std::size_t b = a + 1; b < r; ++b) parity += c[a][b] * k[a] * k[b];
        }
        return parity_sign(parity);
    };
    return f;
}

LatticeVoaMap build_theta(std::shared_ptr<const LatticeVoa> voa) {
    const int r = voa->rank();
    IntMatrix p(static_cast<std::size_t>(r), LatticeVector(static_cast<std::size_t>(r), 0));
    for (int a = 0; a < r; ++a) p[a][a] = -1;
    return isometry_lift("theta", voa, voa, std::move(p), std::vector<int>(static_cast<std::size_t>(r), -1));
}

LatticeVoaMap corrupt_signs(const LatticeVoaMap& f) {
    LatticeVoaMap g = f;
    g.name = f.name + "[corrupted]";
    auto fs = f.point_sign;
    g.point_sign = [fs](const LatticeVector& k) { return fs(k) * parity_sign(k[0] * (k[0] - 1) / 2); };
    return g;
}

HomomorphismReport verify_homomorphism(const LatticeVoaMap& f, const Rational& cutoff, std::size_t sample_limit,
                                       std::uint64_t seed) {
    HomomorphismReport rep;
    const LatticeVoa& src = *f.source;
    const LatticeVoa& tgt = *f.target;
    for (int a = 0; a < src.rank(); ++a)
        for (int b = 0; b < src.rank(); ++b) {
            LatticeVector ea(static_cast<std::size_t>(src.rank()), 0), eb = ea;
            ea[a] = 1;
            eb[b] = 1;
            if (tgt.lattice().inner(times(f.point_map, ea), times(f.point_map, eb)) != src.lattice().gram(a, b))
                rep.gram_preserved = false;
        }
    const GradedBasis basis = enumerate_basis(src.lattice(), src.shift(), cutoff);
    std::vector<std::pair<BasisState, Rational>> states;
    for (const auto& blk : basis.blocks())
        for (const auto& s : blk.states) states.emplace_back(s, blk.weight);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            if (states[i].second + states[j].second <= cutoff) pairs.emplace_back(i, j);
    if (pairs.size() > sample_limit) {
        std::mt19937_64 rng(seed);
        std::vector<std::pair<std::size_t, std::size_t>> picked;
        std::sample(pairs.begin(), pairs.end(), std::back_inserter(picked), sample_limit, rng);
        pairs = std::move(picked);
        rep.sampled = true;
    }
    rep.pairs = pairs.size();
    std::size_t checks = 0;
    std::vector<std::string> witnesses;
    const long np = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 32) reduction(+ : checks)
    for (long t = 0; t < np; ++t) {
        const auto& [i, j] = pairs[static_cast<std::size_t>(t)];
        const StateVector u(states[i].first), v(states[j].first);
        const StateVector fu = push(f, u), fv = push(f, v);
        const Rational top = states[i].second + states[j].second - Rational(1);
        const std::int64_t hi = top.floor().to_int();
        const std::int64_t lo = -(cutoff - top).floor().to_int();
        for (std::int64_t m = lo; m <= hi; ++m) {
            ++checks;
            if (push(f, mode(u, m, v, src)) == mode(fu, m, fv, tgt)) continue;
#pragma omp critical
            if (witnesses.size() < 5)
                witnesses.push_back(to_text(u, src.lattice()) + " | " + std::to_string(m) + " | " +
                                    to_text(v, src.lattice()));
        }
    }
    std::sort(witnesses.begin(), witnesses.end());
    rep.checks = checks;
    rep.witnesses = std::move(witnesses);
    rep.ok = rep.gram_preserved && rep.witnesses.empty();
    return rep;
}

SublatticeVoa make_sublattice_voa(std::shared_ptr<const LatticeVoa> ambient, const Sublattice& sub) {
    SublatticeVoa s{sub, nullptr, ambient, {}, 0};
    s.voa = std::make_shared<const LatticeVoa>(sub.lattice, restrict_cocycle(ambient->cocycle(), sub));
    const int r = ambient->rank();
    RationalMatrix pairing;
    for (const auto& e : sub.embedding) {
        AmbientVector row(static_cast<std::size_t>(r), Rational(0));
        for (int b = 0; b < r; ++b)
            for (int a = 0; a < r; ++a)
                if (e[a] != 0) row[b] += Rational(e[a] * ambient->lattice().gram(a, b));
        pairing.push_back(std::move(row));
    }
    const auto complement = dense_nullspace(pairing, static_cast<std::size_t>(r));
    RationalMatrix b;
    for (const auto& e : sub.embedding) b.push_back(to_ambient(e));
    for (const auto& c : complement) b.push_back(c);
    if (static_cast<int>(b.size()) != r) throw std::invalid_argument("make_sublattice_voa: embedding is degenerate");
    s.change_of_basis = lvoa::inverse(transpose(b));
    s.complement_rank = static_cast<int>(complement.size());
    return s;
}

LatticeVoaMap embedding_map(const SublatticeVoa& s) {
    const int r = s.ambient->rank();
    const int k = s.voa->rank();
    IntMatrix p(static_cast<std::size_t>(r), LatticeVector(static_cast<std::size_t>(k), 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < r; ++b) p[b][a] = s.sub.embedding[a][b];
    LatticeVoaMap f;
    f.name = "embed";
    f.source = s.voa;
    f.target = s.ambient;
    f.fock_map = to_rational(p);
    f.point_map = std::move(p);
    // The restricted cocycle agrees with the ambient one on embedded points.
    f.point_sign = [](const LatticeVector&) { return 1; };
    return f;
}

StateVector restrict_to(const SublatticeVoa& s, const StateVector& v) {
    const int k = s.voa->rank();
    std::map<std::pair<LatticeVector, FockMonomial>, Rational> acc;
    for (const auto& [st, c] : v.terms()) {
        const AmbientVector coords = times(s.change_of_basis, st.lattice_point());
        LatticeVector point(static_cast<std::size_t>(k));
        for (std::size_t a = 0; a < coords.size(); ++a) {
            if (static_cast<int>(a) >= k) {
                if (!coords[a].is_zero()) throw std::domain_error("restrict_to: lattice point outside the sublattice");
            } else {
                if (!coords[a].is_integer()) throw std::domain_error("restrict_to: non-integral sublattice point");
                point[a] = coords[a].to_int();
            }
        }
        for (const auto& [g, x] : expand_fock(st.fock, s.change_of_basis)) acc[{point, g}].add_mul(c, x);
    }
    StateVector out;
    for (const auto& [key, c] : acc) {
        if (c.is_zero()) continue;
        const FockMonomial& g = key.second;
        for (int j = 0; j < g.size; ++j)
            if (g.dir(j) >= k) throw std::domain_error("restrict_to: Heisenberg modes outside the sublattice");
        out.add(BasisState(key.first, g), c);
    }
    return out;
}

LatticeVoaMap build_tau1(const SublatticeVoa& n_voa, const SublatticeVoa& n_tilde_voa, int n, int l) {
    const int r = (n - 1) * (l - 1);
    IntMatrix p(static_cast<std::size_t>(r), LatticeVector(static_cast<std::size_t>(r), 0));
    for (int i = 1; i <= n - 1; ++i)
        for (int q = 1; q <= l - 1; ++q) p[a_tensor_index(l, q, i)][a_tensor_index(n, i, q)] = 1;
    return isometry_lift("tau1", n_voa.voa, n_tilde_voa.voa, std::move(p),
                         std::vector<int>(static_cast<std::size_t>(r), 1));
}

LatticeVoaMap build_sigma(const SublatticeVoa& n_voa, const SublatticeVoa& n_tilde_voa, int n) {
    LatticeVoaMap f = build_tau1(n_voa, n_tilde_voa, n, 2);
    f.name = "sigma";
    return f;
}

DualityMaps build_duality_maps(int n, int l) {
    if (n < 2 || l < 2) throw std::invalid_argument("build_duality_maps: n and l must be >= 2");
    auto ambient = std::make_shared<const LatticeVoa>(build_a_tensor(n, l, "a"));
    auto ambient_tilde = std::make_shared<const LatticeVoa>(build_a_tensor(l, n, "b"));
    SublatticeVoa n_voa = make_sublattice_voa(ambient, sublattice_n(n, l, "a"));
    SublatticeVoa n_tilde_voa = make_sublattice_voa(ambient_tilde, sublattice_n(l, n, "b"));
    LatticeVoaMap theta = build_theta(n_voa.voa);
    LatticeVoaMap tau1 = build_tau1(n_voa, n_tilde_voa, n, l);
    LatticeVoaMap tau = compose(tau1, theta, "tau");
    LatticeVoaMap tau_inverse = inverse(tau, "tau^-1");
    DualityMaps d{n, l, ambient, ambient_tilde, std::move(n_voa), std::move(n_tilde_voa),
                  std::move(theta), std::move(tau1), std::move(tau), std::move(tau_inverse)};
    return d;
}

nlohmann::json to_json(const HomomorphismReport& r) {
    return {{"ok", r.ok},           {"gram_preserved", r.gram_preserved}, {"pairs", r.pairs},
            {"checks", r.checks},   {"sampled", r.sampled},               {"witnesses", r.witnesses}};
}

}  // namespace lvoa
