#include "lvoa/elements.hpp"

#include <stdexcept>

#include "lvoa/commutant.hpp"

namespace lvoa {

namespace {

LatticeVector zero_point(int rank) { return LatticeVector(static_cast<std::size_t>(rank), 0); }

LatticeVector plus(LatticeVector a, const LatticeVector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

LatticeVector minus(LatticeVector a, const LatticeVector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

LatticeVector negate(LatticeVector a) {
    for (auto& x : a) x = -x;
    return a;
}

LatticeVector scaled(LatticeVector a, std::int64_t c) {
    for (auto& x : a) x *= c;
    return a;
}

// x(-1)^2 1
StateVector square(const LatticeVector& x) {
    const AmbientVector h = to_ambient(x);
    return fock_product({{h, 1}, {h, 1}}, zero_point(static_cast<int>(x.size())));
}

// x(-1)^2 y(-1) 1
StateVector cubic(const LatticeVector& x, const LatticeVector& y) {
    const AmbientVector hx = to_ambient(x);
    return fock_product({{hx, 1}, {hx, 1}, {to_ambient(y), 1}}, zero_point(static_cast<int>(x.size())));
}

// x(-1) e^gamma
StateVector dressed(const LatticeVector& x, const LatticeVector& gamma) {
    return fock_product({{to_ambient(x), 1}}, gamma);
}

nlohmann::json compare(const StateVector& printed, const StateVector& pulled) {
    std::size_t differing = 0;
    StateVector diff = printed - pulled;
    differing = diff.size();
    nlohmann::json j{{"equal", diff.is_zero()},
                     {"differing_terms", differing},
                     {"printed_terms", printed.size()},
                     {"pullback_terms", pulled.size()}};
    if (auto c = proportionality(printed, pulled)) j["factor"] = c->str();
    else j["factor"] = nullptr;
    return j;
}

}  // namespace

NamedElement make_element(std::string name, StateVector value, const LatticeVoa& voa, const Rational& expected,
                          nlohmann::json context) {
    // The zero vector is homogeneous of every weight; W~^{3,i} vanishes at n = 2.
    if (value.is_zero()) return {std::move(name), std::move(value), expected, std::move(context)};
    Rational w;
    try {
        w = voa.weight(value);
    } catch (const std::invalid_argument&) {
        throw std::logic_error("make_element: " + name + " is not homogeneous");
    }
    if (w != expected) throw std::logic_error("make_element: " + name + " has weight " + w.str());
    return {std::move(name), std::move(value), w, std::move(context)};
}

nlohmann::json to_json(const NamedElement& e, const GramLattice& lattice) {
    return {{"name", e.name}, {"weight", e.weight.str()}, {"context", e.context}, {"value", to_text(e.value, lattice)}};
}

LatticeVector tensor_root(const LatticeVoa& voa, int n, int i, int j) {
    LatticeVector v = zero_point(voa.rank());
    const int idx = a_tensor_index(n, i, j);
    if (i < 1 || i > n - 1 || j < 1 || idx >= voa.rank()) throw std::out_of_range("tensor_root: index out of range");
    v[idx] = 1;
    return v;
}

CurrentAlgebra diagonal_currents(const LatticeVoa& voa, int n, const std::vector<int>& copies,
                                 const std::vector<int>& simple) {
    if (simple.empty() || copies.empty()) throw std::invalid_argument("diagonal_currents: empty index set");
    for (std::size_t k = 1; k < simple.size(); ++k)
        if (simple[k] != simple[k - 1] + 1) throw std::invalid_argument("diagonal_currents: simple roots must be consecutive");
    const nlohmann::json ctx{{"n", n}, {"copies", copies}, {"simple", simple}};
    CurrentAlgebra out;
    const int k = static_cast<int>(simple.size());
    // e[a..b] for positions a <= b in `simple`.
    std::vector<std::vector<StateVector>> pos(static_cast<std::size_t>(k)), neg(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        StateVector e, f;
        AmbientVector h(static_cast<std::size_t>(voa.rank()), Rational(0));
        for (int j : copies) {
            const LatticeVector r = tensor_root(voa, n, simple[a], j);
            e += exponential(r);
            f += exponential(negate(r));
            for (std::size_t t = 0; t < r.size(); ++t) h[t] += Rational(r[t]);
        }
        const std::string tag = "[" + std::to_string(simple[a]) + "]";
        out.raising.push_back(make_element("e" + tag, e, voa, Rational(1), ctx));
        out.lowering.push_back(make_element("f" + tag, f, voa, Rational(1), ctx));
        out.cartan.push_back(make_element("h" + tag, fock_product({{h, 1}}, zero_point(voa.rank())), voa, Rational(1), ctx));
        out.cartan_directions.push_back(h);
        pos[a].resize(static_cast<std::size_t>(k));
        neg[a].resize(static_cast<std::size_t>(k));
        pos[a][a] = e;
        neg[a][a] = f;
    }
    for (int len = 1; len < k; ++len)
        for (int a = 0; a + len < k; ++a) {
            pos[a][a + len] = mode(pos[a][a], 0, pos[a + 1][a + len], voa);
            neg[a][a + len] = mode(neg[a][a], 0, neg[a + 1][a + len], voa);
        }
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            const std::string tag = a == b ? "[" + std::to_string(simple[a]) + "]"
                                           : "[" + std::to_string(simple[a]) + ".." + std::to_string(simple[b]) + "]";
            out.basis.push_back(make_element("e" + tag, pos[a][b], voa, Rational(1), ctx));
            out.basis.push_back(make_element("f" + tag, neg[a][b], voa, Rational(1), ctx));
        }
    for (const auto& h : out.cartan) out.basis.push_back(h);
    std::vector<StateVector> values;
    for (const auto& b : out.basis) values.push_back(b.value);
    const std::size_t expect = static_cast<std::size_t>((k + 1) * (k + 1) - 1);
    if (out.basis.size() != expect || lie_closure(voa, values).size() != expect)
        throw std::logic_error("diagonal_currents: 0-product closure is not sl_" + std::to_string(k + 1));
    return out;
}

CurrentAlgebra diagonal_currents(const LatticeVoa& voa, int n, int l) {
    std::vector<int> copies, simple;
    for (int j = 1; j <= l; ++j) copies.push_back(j);
    for (int i = 1; i <= n - 1; ++i) simple.push_back(i);
    return diagonal_currents(voa, n, copies, simple);
}

NamedElement prime_omega(const LatticeVoa& voa, int i, int n, int l) {
    StateVector sum;
    for (int p = 1; p <= l; ++p)
        for (int q = p + 1; q <= l; ++q) {
            const LatticeVector x = minus(tensor_root(voa, n, i, p), tensor_root(voa, n, i, q));
            sum.axpy(Rational(1, 2 * l), square(x));
            sum += exponential(x);
            sum += exponential(negate(x));
        }
    return make_element("pw[" + std::to_string(i) + "]", Rational(1, l + 2) * sum, voa, Rational(2),
                        {{"i", i}, {"n", n}, {"l", l}});
}

TildeGenerators tilde_generators(const LatticeVoa& voa_tilde, int i, int n, int l) {
    auto beta = [&](int p) { return tensor_root(voa_tilde, l, i, p); };
    auto x = [&](int p, int q) { return minus(beta(p), beta(q)); };
    StateVector omega;
    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            omega.axpy(Rational(1, 2 * n), square(x(p, q)));
            omega += exponential(x(p, q));
            omega += exponential(x(q, p));
        }
    omega *= Rational(1, n + 2);
    StateVector w3;
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
            for (int r = 1; r <= n; ++r)
                if (p != q && p != r) w3 += cubic(x(p, q), x(p, r));
    for (int q = 1; q <= n; ++q)
        for (int r = 1; r <= n; ++r) {
            if (q == r) continue;
            LatticeVector bracket = zero_point(voa_tilde.rank());
            for (int p = 1; p <= n; ++p) {
                if (p != q) bracket = plus(bracket, x(p, q));
                if (p != r) bracket = plus(bracket, x(p, r));
            }
            w3.axpy(Rational(-3 * n), dressed(bracket, x(q, r)));
        }
    const nlohmann::json ctx{{"i", i}, {"n", n}, {"l", l}};
    return {make_element("omega_tilde[" + std::to_string(i) + "]", omega, voa_tilde, Rational(2), ctx),
            make_element("wt3[" + std::to_string(i) + "]", w3, voa_tilde, Rational(3), ctx)};
}

UntildeGenerators untilde_generators(const DualityMaps& maps, int i) {
    const int n = maps.n;
    const int l = maps.l;
    if (i < 1 || i > l - 1) throw std::out_of_range("untilde_generators: index out of range");
    const LatticeVoa& amb = *maps.ambient;
    const LatticeVoa& vn = *maps.n_voa.voa;
    const nlohmann::json ctx{{"i", i}, {"n", n}, {"l", l}};

    const TildeGenerators t = tilde_generators(*maps.ambient_tilde, i, n, l);
    const StateVector omega = push(maps.tau_inverse, restrict_to(maps.n_tilde_voa, t.omega.value));
    const StateVector w3 = push(maps.tau_inverse, restrict_to(maps.n_tilde_voa, t.w3.value));

    // gamma_k = alpha^{ki} - alpha^{k,i+1}, k = 1..n-1.
    std::vector<LatticeVector> gamma(static_cast<std::size_t>(n));
    for (int k = 1; k <= n - 1; ++k) gamma[k] = minus(tensor_root(amb, n, k, i), tensor_root(amb, n, k, i + 1));
    auto span = [&](int a, int b) {
        LatticeVector s = zero_point(amb.rank());
        for (int k = a; k <= b; ++k) s = plus(s, gamma[k]);
        return s;
    };
    StateVector p_omega;
    for (int p = 1; p <= n - 1; ++p)
        for (int q = p; q <= n - 1; ++q) {
            const LatticeVector g = span(p, q);
            p_omega.axpy(Rational(1, 2 * n), square(g));
            const Rational s((p - q + 1) % 2 == 0 ? 1 : -1);
            p_omega.axpy(s, exponential(g));
            p_omega.axpy(s, exponential(negate(g)));
        }
    p_omega *= Rational(1, n + 2);

    // B_p = -sum_{k<p} k gamma_k + sum_{k>=p} (n-k) gamma_k.
    auto b_vec = [&](int p) {
        LatticeVector s = zero_point(amb.rank());
        for (int k = 1; k < p; ++k) s = minus(s, scaled(gamma[k], k));
        for (int k = p; k <= n - 1; ++k) s = plus(s, scaled(gamma[k], n - k));
        return s;
    };
    StateVector p_w3;
    for (int p = 1; p <= n; ++p) {
        const LatticeVector bp = b_vec(p);
        for (int q = 1; q <= p - 1; ++q) p_w3 -= cubic(span(q, p - 1), bp);
        for (int q = p; q <= n - 1; ++q) p_w3 -= cubic(span(p, q), bp);
    }
    for (int q = 1; q <= n; ++q)
        for (int r = 1; r <= n; ++r) {
            if (q == r) continue;
            const LatticeVector bracket = negate(plus(b_vec(q), b_vec(r)));
            const Rational s(((q - r) % 2 + 2) % 2 == 0 ? 3 * n : -3 * n);
            const LatticeVector g = r < q ? negate(span(r, q - 1)) : span(q, r - 1);
            p_w3.axpy(s, dressed(bracket, g));
        }
    const StateVector printed_omega = restrict_to(maps.n_voa, p_omega);
    const StateVector printed_w3 = restrict_to(maps.n_voa, p_w3);

    UntildeGenerators out{make_element("omega[" + std::to_string(i) + "]", omega, vn, Rational(2), ctx),
                          make_element("w3[" + std::to_string(i) + "]", w3, vn, Rational(3), ctx),
                          make_element("omega_printed[" + std::to_string(i) + "]", printed_omega, vn, Rational(2), ctx),
                          make_element("w3_printed[" + std::to_string(i) + "]", printed_w3, vn, Rational(3), ctx),
                          nlohmann::json::object()};
    out.comparison["omega"] = compare(printed_omega, omega);
    out.comparison["w3"] = compare(printed_w3, w3);
    return out;
}

NamedElement u_ij(const LatticeVoa& voa_tilde, int i, int j, int n) {
    if (i < 1 || i > j || j > n - 1) throw std::out_of_range("u_ij: index out of range");
    const LatticeVector x = minus(tensor_root(voa_tilde, 2, 1, i), tensor_root(voa_tilde, 2, 1, j + 1));
    StateVector v = Rational(1, 16) * square(x);
    v.axpy(Rational(-1, 4), exponential(x));
    v.axpy(Rational(-1, 4), exponential(negate(x)));
    return make_element("u[" + std::to_string(i) + "," + std::to_string(j) + "]", v, voa_tilde, Rational(2),
                        {{"i", i}, {"j", j}, {"n", n}});
}

NamedElement v_ij(const LatticeVoa& voa, int i, int j, int n) {
    if (i < 1 || i > j || j > n - 1) throw std::out_of_range("v_ij: index out of range");
    LatticeVector x = zero_point(voa.rank());
    for (int k = i; k <= j; ++k) x = plus(x, minus(tensor_root(voa, n, k, 1), tensor_root(voa, n, k, 2)));
    StateVector v = Rational(1, 16) * square(x);
    v.axpy(Rational(-1, 4), exponential(x));
    v.axpy(Rational(-1, 4), exponential(negate(x)));
    return make_element("v[" + std::to_string(i) + "," + std::to_string(j) + "]", v, voa, Rational(2),
                        {{"i", i}, {"j", j}, {"n", n}});
}

NamedElement lattice_conformal(const LatticeVoa& voa) {
    const int r = voa.rank();
    StateVector out;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            const Rational& g = voa.lattice().gram_inverse()[a][b];
            if (g.is_zero()) continue;
            out.axpy(g / Rational(2), fock_product({{to_ambient(voa.lattice().unit(a)), 1},
                                                    {to_ambient(voa.lattice().unit(b)), 1}},
                                                   zero_point(r)));
        }
    return make_element("omega_L", out, voa, Rational(2), {{"rank", r}});
}

NamedElement sugawara(const LatticeVoa& voa, const std::vector<NamedElement>& currents, int level, int dual_coxeter) {
    const std::size_t d = currents.size();
    if (d == 0 || level + dual_coxeter == 0) throw std::invalid_argument("sugawara: empty or critical");
    const BasisState vac = BasisState::vacuum(voa.rank());
    RationalMatrix pairing(d, AmbientVector(d, Rational(0)));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const StateVector p = mode(currents[a].value, 1, currents[b].value, voa);
            if (p.size() > 1 || (p.size() == 1 && p.terms().begin()->first != vac))
                throw std::invalid_argument("sugawara: 1-product is not a vacuum multiple");
            pairing[a][b] = p.coefficient(vac);
        }
    if (determinant(pairing).is_zero()) throw std::invalid_argument("sugawara: degenerate pairing");
    const RationalMatrix dual = inverse(pairing);
    StateVector out;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            if (dual[a][b].is_zero()) continue;
            out.axpy(Rational(level) * dual[a][b], mode(currents[a].value, -1, currents[b].value, voa));
        }
    out *= Rational(1, 2 * (level + dual_coxeter));
    return make_element("omega_sug", out, voa, Rational(2), {{"level", level}, {"dual_coxeter", dual_coxeter}});
}

NamedElement coset_conformal(const LatticeVoa& voa, const NamedElement& full, const NamedElement& sub,
                             const std::vector<NamedElement>& generators) {
    for (const auto& g : generators) {
        const std::int64_t top = g.weight.floor().to_int();
        for (std::int64_t m = -1; m <= top; ++m)
            if (mode(full.value, m + 1, g.value, voa) != mode(sub.value, m + 1, g.value, voa))
                throw std::logic_error("coset_conformal: L(" + std::to_string(m) + ") differs on " + g.name);
    }
    const StateVector diff = full.value - sub.value;
    return make_element("omega_coset", diff, voa, Rational(2), {{"full", full.name}, {"sub", sub.name}});
}

RepeatedProduct repeated_product(const LatticeVoa& voa, int i, int n, int l) {
    StateVector x;
    LatticeVector total = zero_point(voa.rank());
    for (int j = 1; j <= l; ++j) {
        const LatticeVector r = tensor_root(voa, n, i, j);
        x += exponential(r);
        total = plus(total, r);
    }
    StateVector y = x;
    for (int k = 1; k < l; ++k) y = mode(x, -1, y, voa);
    std::int64_t fact = 1;
    for (int k = 2; k <= l; ++k) fact *= k;
    RepeatedProduct out{y, Rational(fact) * exponential(total), 0};
    if (auto c = proportionality(out.lhs, out.target)) {
        if (*c == Rational(1)) out.sign = 1;
        if (*c == Rational(-1)) out.sign = -1;
    }
    return out;
}

std::optional<Rational> proportionality(const StateVector& a, const StateVector& b) {
    if (b.is_zero()) return std::nullopt;
    const auto& [s, cb] = *b.terms().begin();
    const Rational c = a.coefficient(s) / cb;
    if (a == c * b) return c;
    return std::nullopt;
}

}  // namespace lvoa
