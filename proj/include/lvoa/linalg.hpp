#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lvoa/rational.hpp"

namespace lvoa {

template <class Key>
using SparseVec = std::map<Key, Rational>;

// dst += a * src, dropping entries that cancel.
template <class Key>
void sparse_axpy(SparseVec<Key>& dst, const Rational& a, const SparseVec<Key>& src) {
    for (const auto& [k, v] : src) {
        auto [it, inserted] = dst.try_emplace(k);
        it->second.add_mul(a, v);
        if (it->second.is_zero()) dst.erase(it);
    }
}

// Row echelon form over an ordered key set. Each row's pivot is its smallest
// key and carries coefficient 1; no two rows share a pivot.
template <class Key>
class Echelon {
public:
    [[nodiscard]] SparseVec<Key> reduce(SparseVec<Key> v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto p = rows_.find(it->first);
            if (p == rows_.end()) {
                ++it;
                continue;
            }
            const Key k = it->first;
            const Rational c = -it->second;
            sparse_axpy(v, c, p->second);
            it = v.upper_bound(k);
        }
        return v;
    }

    // Adds v to the span; returns the normalized new row, or nullopt if v was dependent.
    std::optional<SparseVec<Key>> insert(SparseVec<Key> v) {
        v = reduce(std::move(v));
        if (v.empty()) return std::nullopt;
        const Rational inv = Rational(1) / v.begin()->second;
        for (auto& [k, x] : v) x *= inv;
        const Key pivot = v.begin()->first;
        rows_.emplace(pivot, v);
        return v;
    }

    [[nodiscard]] bool contains(const SparseVec<Key>& v) const { return reduce(v).empty(); }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }

    // Reduced row echelon form: every pivot key appears only in its own row.
    [[nodiscard]] std::vector<SparseVec<Key>> reduced_rows() const {
        std::map<Key, SparseVec<Key>> done;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseVec<Key> row = it->second;
            auto jt = std::next(row.begin());
            while (jt != row.end()) {
                auto p = done.find(jt->first);
                if (p == done.end()) {
                    ++jt;
                    continue;
                }
                const Key k = jt->first;
                const Rational c = -jt->second;
                sparse_axpy(row, c, p->second);
                jt = row.upper_bound(k);
            }
            done.emplace(it->first, std::move(row));
        }
        std::vector<SparseVec<Key>> out;
        out.reserve(done.size());
        for (auto& [k, r] : done) out.push_back(std::move(r));
        return out;
    }

private:
    std::map<Key, SparseVec<Key>> rows_;
};

// Kernel of a linear map supplied one column at a time. Each column image is
// reduced against earlier pivots while tracking the column combination; a
// column that reduces to zero yields a kernel vector over column indices.
template <class Key>
class KernelBuilder {
public:
    std::optional<SparseVec<int>> add_column(int column, SparseVec<Key> image) {
        SparseVec<int> combo{{column, Rational(1)}};
        auto it = image.begin();
        while (it != image.end()) {
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) {
                ++it;
                continue;
            }
            const Key k = it->first;
            const Rational c = -it->second;
            sparse_axpy(image, c, p->second.first);
            sparse_axpy(combo, c, p->second.second);
            it = image.upper_bound(k);
        }
        if (image.empty()) return combo;
        const Rational inv = Rational(1) / image.begin()->second;
        for (auto& [k, x] : image) x *= inv;
        for (auto& [k, x] : combo) x *= inv;
        const Key pivot = image.begin()->first;
        pivots_.emplace(pivot, std::make_pair(std::move(image), std::move(combo)));
        return std::nullopt;
    }

    [[nodiscard]] std::size_t rank() const { return pivots_.size(); }

private:
    std::map<Key, std::pair<SparseVec<Key>, SparseVec<int>>> pivots_;
};

}  // namespace lvoa
