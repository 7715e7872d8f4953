#include "lvoa/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lvoa {

AmbientVector to_ambient(const LatticeVector& v) {
    AmbientVector r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(x);
    return r;
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = to_ambient(m[i]);
    return r;
}

Rational determinant(RationalMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k].add_mul(-f, m[c][k]);
        }
    }
    return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(n, AmbientVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k].add_mul(-f, a[c][k]);
                inv[r][k].add_mul(-f, inv[c][k]);
            }
        }
    }
    return inv;
}

std::vector<AmbientVector> dense_nullspace(const RationalMatrix& m, std::size_t cols) {
    RationalMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational piv = a[row][c];
        for (auto& x : a[row]) x /= piv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c].is_zero()) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < cols; ++k) a[r][k].add_mul(-f, a[row][k]);
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<AmbientVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        AmbientVector v(cols, Rational(0));
        v[f] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

GramLattice::GramLattice(std::vector<std::string> labels, IntMatrix gram)
    : labels_(std::move(labels)), gram_(std::move(gram)) {
    const std::size_t r = labels_.size();
    if (r == 0) throw std::invalid_argument("GramLattice: rank must be positive");
    if (gram_.size() != r) throw std::invalid_argument("GramLattice: gram size does not match labels");
    for (std::size_t i = 0; i < r; ++i) {
        if (gram_[i].size() != r) throw std::invalid_argument("GramLattice: gram is not square");
        if (gram_[i][i] % 2 != 0) throw std::invalid_argument("GramLattice: lattice is not even");
        for (std::size_t j = 0; j < r; ++j)
            if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("GramLattice: gram is not symmetric");
    }
    RationalMatrix g = to_rational(gram_);
    for (std::size_t k = 1; k <= r; ++k) {
        RationalMatrix minor(k);
        for (std::size_t i = 0; i < k; ++i) minor[i].assign(g[i].begin(), g[i].begin() + static_cast<long>(k));
        if (lvoa::determinant(minor).sign() <= 0)
            throw std::invalid_argument("GramLattice: gram is not positive definite");
    }
    det_ = lvoa::determinant(g).to_int();
    gram_inverse_ = inverse(g);
}

int GramLattice::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::out_of_range("GramLattice: unknown label " + label);
    return static_cast<int>(it - labels_.begin());
}

std::int64_t GramLattice::inner(const LatticeVector& u, const LatticeVector& v) const {
    if (static_cast<int>(u.size()) != rank() || static_cast<int>(v.size()) != rank())
        throw std::invalid_argument("inner: dimension mismatch");
    std::int64_t s = 0;
    for (int a = 0; a < rank(); ++a) {
        if (u[a] == 0) continue;
        for (int b = 0; b < rank(); ++b) s += u[a] * gram_[a][b] * v[b];
    }
    return s;
}

Rational GramLattice::inner(const AmbientVector& u, const AmbientVector& v) const {
    if (static_cast<int>(u.size()) != rank() || static_cast<int>(v.size()) != rank())
        throw std::invalid_argument("inner: dimension mismatch");
    Rational s(0);
    for (int a = 0; a < rank(); ++a) {
        if (u[a].is_zero()) continue;
        for (int b = 0; b < rank(); ++b) {
            if (gram_[a][b] == 0 || v[b].is_zero()) continue;
            s.add_mul(u[a] * Rational(gram_[a][b]), v[b]);
        }
    }
    return s;
}

Rational GramLattice::inner(const AmbientVector& u, const LatticeVector& v) const {
    if (static_cast<int>(u.size()) != rank() || static_cast<int>(v.size()) != rank())
        throw std::invalid_argument("inner: dimension mismatch");
    Rational s(0);
    for (int a = 0; a < rank(); ++a) {
        if (u[a].is_zero()) continue;
        std::int64_t w = 0;
        for (int b = 0; b < rank(); ++b) w += gram_[a][b] * v[b];
        if (w != 0) s.add_mul(u[a], Rational(w));
    }
    return s;
}

LatticeVector GramLattice::unit(int a) const {
    LatticeVector v(static_cast<std::size_t>(rank()), 0);
    v.at(static_cast<std::size_t>(a)) = 1;
    return v;
}

nlohmann::json GramLattice::to_json() const {
    return nlohmann::json{{"rank", rank()}, {"labels", labels_}, {"gram", gram_}};
}

GramLattice GramLattice::from_json(const nlohmann::json& j) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto gram = j.at("gram").get<IntMatrix>();
    if (j.contains("rank") && j.at("rank").get<int>() != static_cast<int>(labels.size()))
        throw std::invalid_argument("GramLattice: rank does not match labels");
    return {std::move(labels), std::move(gram)};
}

LatticeVector Sublattice::embed(const LatticeVector& coords) const {
    LatticeVector out(embedding.empty() ? 0 : embedding.front().size(), 0);
    for (std::size_t a = 0; a < coords.size(); ++a)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords[a] * embedding[a][k];
    return out;
}

AmbientVector Sublattice::embed(const AmbientVector& coords) const {
    AmbientVector out(embedding.empty() ? 0 : embedding.front().size(), Rational(0));
    for (std::size_t a = 0; a < coords.size(); ++a) {
        if (coords[a].is_zero()) continue;
        for (std::size_t k = 0; k < out.size(); ++k)
            if (embedding[a][k] != 0) out[k].add_mul(coords[a], Rational(embedding[a][k]));
    }
    return out;
}

int a_tensor_index(int n, int i, int j) { return (j - 1) * (n - 1) + (i - 1); }

GramLattice build_a_tensor(int n, int l, const std::string& symbol) {
    if (n < 2) throw std::invalid_argument("build_a_tensor: n must be >= 2");
    if (l < 1) throw std::invalid_argument("build_a_tensor: l must be >= 1");
    const int r = (n - 1) * l;
    std::vector<std::string> labels(static_cast<std::size_t>(r));
    IntMatrix gram(static_cast<std::size_t>(r), LatticeVector(static_cast<std::size_t>(r), 0));
    for (int j = 1; j <= l; ++j) {
        for (int i = 1; i <= n - 1; ++i) {
            const int a = a_tensor_index(n, i, j);
            labels[a] = symbol + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
            for (int p = 1; p <= n - 1; ++p) {
                const int b = a_tensor_index(n, p, j);
                if (p == i) gram[a][b] = 2;
                else if (std::abs(p - i) == 1) gram[a][b] = -1;
            }
        }
    }
    return {std::move(labels), std::move(gram)};
}

namespace {

Sublattice make_sublattice(const GramLattice& ambient, std::vector<std::string> labels,
                           std::vector<LatticeVector> embedding) {
    const std::size_t r = embedding.size();
    IntMatrix gram(r, LatticeVector(r, 0));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) gram[a][b] = ambient.inner(embedding[a], embedding[b]);
    return Sublattice{GramLattice(std::move(labels), std::move(gram)), std::move(embedding)};
}

}  // namespace

Sublattice sublattice_n(int n, int l, const std::string& symbol) {
    if (l < 2) throw std::invalid_argument("sublattice_n: l must be >= 2");
    GramLattice ambient = build_a_tensor(n, l, symbol);
    std::vector<std::string> labels;
    std::vector<LatticeVector> emb;
    for (int j = 1; j <= l - 1; ++j) {
        for (int i = 1; i <= n - 1; ++i) {
            LatticeVector v(static_cast<std::size_t>(ambient.rank()), 0);
            v[a_tensor_index(n, i, j)] = 1;
            v[a_tensor_index(n, i, j + 1)] = -1;
            emb.push_back(std::move(v));
            const std::string is = std::to_string(i);
            labels.push_back(symbol + "[" + is + "," + std::to_string(j) + "]-" + symbol + "[" + is + "," +
                             std::to_string(j + 1) + "]");
        }
    }
    return make_sublattice(ambient, std::move(labels), std::move(emb));
}

Sublattice sublattice_k(int n, int l, const std::string& symbol) {
    GramLattice ambient = build_a_tensor(n, l, symbol);
    std::vector<std::string> labels;
    std::vector<LatticeVector> emb;
    for (int i = 1; i <= n - 1; ++i) {
        LatticeVector v(static_cast<std::size_t>(ambient.rank()), 0);
        for (int j = 1; j <= l; ++j) v[a_tensor_index(n, i, j)] = 1;
        emb.push_back(std::move(v));
        labels.push_back(symbol + "[" + std::to_string(i) + "]");
    }
    return make_sublattice(ambient, std::move(labels), std::move(emb));
}

Rational inner(const AmbientVector& u, const AmbientVector& v, const GramLattice& lattice) {
    return lattice.inner(u, v);
}

std::vector<AmbientVector> dual_quotient(const GramLattice& lattice) {
    const int r = lattice.rank();
    if (r > 4) throw std::invalid_argument("dual_quotient: rank guard (<= 4) exceeded");
    const RationalMatrix& ginv = lattice.gram_inverse();
    const std::int64_t det = lattice.determinant();

    // Coset classes: x = G^{-1} y for y in [0, det)^r, reduced mod Z^r.
    std::map<AmbientVector, bool> classes;
    LatticeVector y(static_cast<std::size_t>(r), 0);
    auto frac = [](const Rational& q) { return q - q.floor(); };
    for (;;) {
        AmbientVector x(static_cast<std::size_t>(r), Rational(0));
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (y[b] != 0) x[a].add_mul(ginv[a][b], Rational(y[b]));
        for (auto& c : x) c = frac(c);
        classes.emplace(std::move(x), true);
        int k = 0;
        while (k < r && ++y[k] == det) y[k++] = 0;
        if (k == r) break;
    }

    std::vector<std::pair<Rational, AmbientVector>> reps;
    for (const auto& [cls, unused] : classes) {
        (void)unused;
        Rational best_norm = lattice.inner(cls, cls);
        AmbientVector best = cls;
        // Any shorter vector c+z has |(c+z)_a| <= sqrt(norm * ginv_aa).
        std::vector<std::int64_t> radius(static_cast<std::size_t>(r));
        for (int a = 0; a < r; ++a)
            radius[a] = static_cast<std::int64_t>(std::ceil(std::sqrt(best_norm.to_double() * ginv[a][a].to_double()))) + 1;
        LatticeVector z(static_cast<std::size_t>(r));
        for (int a = 0; a < r; ++a) z[a] = -radius[a];
        for (;;) {
            AmbientVector cand = cls;
            for (int a = 0; a < r; ++a) cand[a] += Rational(z[a]);
            Rational nrm = lattice.inner(cand, cand);
            if (nrm < best_norm || (nrm == best_norm && cand < best)) {
                best_norm = nrm;
                best = cand;
            }
            int k = 0;
            while (k < r && ++z[k] > radius[k]) {
                z[k] = -radius[k];
                ++k;
            }
            if (k == r) break;
        }
        reps.emplace_back(best_norm, std::move(best));
    }
    std::sort(reps.begin(), reps.end());
    std::vector<AmbientVector> out;
    out.reserve(reps.size());
    for (auto& [n, v] : reps) out.push_back(std::move(v));
    if (static_cast<std::int64_t>(out.size()) != det) throw std::logic_error("dual_quotient: coset count mismatch");
    return out;
}

}  // namespace lvoa
