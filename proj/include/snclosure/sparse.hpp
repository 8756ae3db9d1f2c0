#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "snclosure/scalar.hpp"

namespace snclosure {

/* Sparse coordinate vector: (index, value) pairs sorted by index, values
 * nonzero.  Index space is the caller's business (matrix columns, tensor
 * words, ...). */
template <ExactScalar K>
struct SparseVec {
    std::vector<std::pair<std::int32_t, K>> terms;

    SparseVec() = default;

    static SparseVec unit(std::int32_t i, K c = K(1)) {
        SparseVec v;
        if (!snclosure::is_zero(c)) v.terms.emplace_back(i, std::move(c));
        return v;
    }

    bool is_zero() const { return terms.empty(); }
    std::size_t nnz() const { return terms.size(); }
    std::int32_t lead() const { return terms.front().first; }
    const K& lead_coeff() const { return terms.front().second; }

    const K* get(std::int32_t i) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), i,
                                   [](const auto& t, std::int32_t j) { return t.first < j; });
        if (it == terms.end() || it->first != i) return nullptr;
        return &it->second;
    }

    void set(std::int32_t i, K c) {
        auto it = std::lower_bound(terms.begin(), terms.end(), i,
                                   [](const auto& t, std::int32_t j) { return t.first < j; });
        if (it != terms.end() && it->first == i) {
            if (snclosure::is_zero(c))
                terms.erase(it);
            else
                it->second = std::move(c);
        } else if (!snclosure::is_zero(c)) {
            terms.emplace(it, i, std::move(c));
        }
    }

    void scale(K c) {
        if (snclosure::is_zero(c)) {
            terms.clear();
            return;
        }
        for (auto& t : terms) t.second = t.second * c;
    }

    void divide_by(K c) {
        for (auto& t : terms) t.second = divide(t.second, c);
    }

    void negate() {
        for (auto& t : terms) t.second = -t.second;
    }

    // *this += c*w  (merge; drops cancelled terms)
    void axpy(K c, const SparseVec& w) {
        if (snclosure::is_zero(c) || w.is_zero()) return;
        std::vector<std::pair<std::int32_t, K>> out;
        out.reserve(terms.size() + w.terms.size());
        std::size_t i = 0, j = 0;
        while (i < terms.size() && j < w.terms.size()) {
            if (terms[i].first < w.terms[j].first) {
                out.push_back(std::move(terms[i++]));
            } else if (terms[i].first > w.terms[j].first) {
                out.emplace_back(w.terms[j].first, c * w.terms[j].second);
                ++j;
            } else {
                K s = terms[i].second + c * w.terms[j].second;
                if (!snclosure::is_zero(s)) out.emplace_back(terms[i].first, std::move(s));
                ++i;
                ++j;
            }
        }
        while (i < terms.size()) out.push_back(std::move(terms[i++]));
        for (; j < w.terms.size(); ++j) out.emplace_back(w.terms[j].first, c * w.terms[j].second);
        terms = std::move(out);
    }

    friend SparseVec operator+(SparseVec a, const SparseVec& b) {
        a.axpy(K(1), b);
        return a;
    }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) {
        a.axpy(K(-1), b);
        return a;
    }
    friend SparseVec operator*(const K& c, SparseVec v) {
        v.scale(c);
        return v;
    }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms == b.terms; }
};

/* Sparse matrix as a list of sparse rows over one scalar type.  All stored
 * entries are nonzero. */
template <ExactScalar K>
struct SparseMatrix {
    std::int32_t nrows = 0;
    std::int32_t ncols = 0;
    std::vector<SparseVec<K>> row;

    SparseMatrix() = default;
    SparseMatrix(std::int32_t r, std::int32_t c) : nrows(r), ncols(c), row(r) {}

    static SparseMatrix identity(std::int32_t n) {
        SparseMatrix m(n, n);
        for (std::int32_t i = 0; i < n; ++i) m.row[i] = SparseVec<K>::unit(i);
        return m;
    }

    K entry(std::int32_t r, std::int32_t c) const {
        const K* p = row[r].get(c);
        return p ? *p : K(0);
    }
    void set(std::int32_t r, std::int32_t c, K v) { row[r].set(c, std::move(v)); }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.nrows == b.nrows && a.ncols == b.ncols && a.row == b.row;
    }
};

}  // namespace snclosure
