#pragma once

#include <map>
#include <vector>

#include "snclosure/rank_ring.hpp"

namespace snclosure {

/* Words index the n^n basis of A^{tensor n}: a word is the digit list
 * (d_0, ..., d_{n-1}), d_i the basis index in tensor slot i.  The linear
 * index is the base-n value with slot 0 most significant, so numeric order
 * equals lexicographic order on digit lists. */

inline std::int32_t ambient_dim(int n) {
    std::int32_t d = 1;
    for (int i = 0; i < n; ++i) d *= n;
    return d;
}

inline std::int32_t word_pack(const std::vector<int>& digits, int n) {
    std::int32_t idx = 0;
    for (int d : digits) idx = idx * n + d;
    return idx;
}

inline std::vector<int> word_unpack(std::int32_t idx, int n) {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
        d[i] = idx % n;
        idx /= n;
    }
    return d;
}

template <ExactScalar K>
struct TensorElement {
    const RankRing<K>* ring = nullptr;
    SparseVec<K> coords;
};

namespace detail {
template <ExactScalar K>
void check_same_tensor_parent(const TensorElement<K>& a, const TensorElement<K>& b) {
    if (!a.ring || !b.ring || *a.ring != *b.ring)
        throw mismatch_error("tensor elements have different parents");
}
}  // namespace detail

template <ExactScalar K>
TensorElement<K> tensor_unit(const RankRing<K>& ring) {
    return {&ring, SparseVec<K>::unit(0)};
}

// a in tensor slot i (1-based), unity elsewhere: the element a^(i).
template <ExactScalar K>
TensorElement<K> embed(const RankRing<K>& ring, const RingElement<K>& a, int i) {
    if (*a.ring != ring) throw mismatch_error("element does not belong to this ring");
    if (i < 1 || i > ring.n) throw mismatch_error("embed: slot out of range");
    std::int32_t scale = 1;
    for (int s = 0; s < ring.n - i; ++s) scale *= ring.n;
    TensorElement<K> t{&ring, {}};
    for (int k = 0; k < ring.n; ++k)
        if (!is_zero(a.coords[k])) t.coords.terms.emplace_back((std::int32_t)k * scale, a.coords[k]);
    return t;
}

template <ExactScalar K>
TensorElement<K> operator+(TensorElement<K> a, const TensorElement<K>& b) {
    detail::check_same_tensor_parent(a, b);
    a.coords.axpy(K(1), b.coords);
    return a;
}

template <ExactScalar K>
TensorElement<K> operator-(TensorElement<K> a, const TensorElement<K>& b) {
    detail::check_same_tensor_parent(a, b);
    a.coords.axpy(K(-1), b.coords);
    return a;
}

template <ExactScalar K>
TensorElement<K> operator*(const K& c, TensorElement<K> a) {
    a.coords.scale(c);
    return a;
}

template <ExactScalar K>
bool operator==(const TensorElement<K>& a, const TensorElement<K>& b) {
    detail::check_same_tensor_parent(a, b);
    return a.coords == b.coords;
}

namespace detail {

// u * (basis_k in slot `slot`), the slotwise product expanded by the
// structure constants; the workhorse of saturation.
template <ExactScalar K>
SparseVec<K> mult_slot_basis(const RankRing<K>& ring, const SparseVec<K>& u, int k, int slot) {
    const int n = ring.n;
    std::int32_t scale = 1;
    for (int s = 0; s < n - 1 - slot; ++s) scale *= n;
    std::map<std::int32_t, K> acc;
    for (const auto& t : u.terms) {
        int d = (t.first / scale) % n;
        const auto& col = ring.table[d][k];
        for (int m = 0; m < n; ++m) {
            if (is_zero(col[m])) continue;
            std::int32_t w = t.first + (std::int32_t)(m - d) * scale;
            auto [it, fresh] = acc.emplace(w, t.second * col[m]);
            if (!fresh) it->second = it->second + t.second * col[m];
        }
    }
    SparseVec<K> out;
    for (auto& [w, c] : acc)
        if (!is_zero(c)) out.terms.emplace_back(w, std::move(c));
    return out;
}

}  // namespace detail

// Componentwise product in A^(tensor n), bilinear over the word basis.
// Word pairs expand slot by slot through the structure constants; zero
// slot products prune the whole branch.
template <ExactScalar K>
TensorElement<K> tensor_mult(const TensorElement<K>& u, const TensorElement<K>& v) {
    detail::check_same_tensor_parent(u, v);
    const RankRing<K>& ring = *u.ring;
    const int n = ring.n;
    std::map<std::int32_t, K> acc;
    std::vector<std::pair<std::int32_t, K>> partial, next;
    for (const auto& tu : u.coords.terms) {
        std::vector<int> du = word_unpack(tu.first, n);
        for (const auto& tv : v.coords.terms) {
            std::vector<int> dv = word_unpack(tv.first, n);
            partial.clear();
            partial.emplace_back(0, tu.second * tv.second);
            for (int s = 0; s < n && !partial.empty(); ++s) {
                const auto& col = ring.table[du[s]][dv[s]];
                next.clear();
                for (const auto& [idx, coeff] : partial)
                    for (int m = 0; m < n; ++m) {
                        if (is_zero(col[m])) continue;
                        next.emplace_back(idx * n + m, coeff * col[m]);
                    }
                partial.swap(next);
            }
            for (auto& [w, c] : partial) {
                auto [it, fresh] = acc.emplace(w, c);
                if (!fresh) it->second = it->second + c;
            }
        }
    }
    TensorElement<K> out{&ring, {}};
    for (auto& [w, c] : acc)
        if (!is_zero(c)) out.coords.terms.emplace_back(w, std::move(c));
    return out;
}

// Permute tensor slots: slot sigma(s) of the result carries slot s's digit.
template <ExactScalar K>
TensorElement<K> sn_act(const std::vector<int>& sigma, const TensorElement<K>& u) {
    const RankRing<K>& ring = *u.ring;
    const int n = ring.n;
    if ((int)sigma.size() != n) throw mismatch_error("sn_act: permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (int s : sigma) {
        if (s < 0 || s >= n || seen[s]) throw mismatch_error("sn_act: not a permutation");
        seen[s] = true;
    }
    std::map<std::int32_t, K> acc;
    for (const auto& t : u.coords.terms) {
        std::vector<int> d = word_unpack(t.first, n);
        std::vector<int> nd(n);
        for (int s = 0; s < n; ++s) nd[sigma[s]] = d[s];
        acc.emplace(word_pack(nd, n), t.second);
    }
    TensorElement<K> out{&ring, {}};
    for (auto& [w, c] : acc) out.coords.terms.emplace_back(w, std::move(c));
    return out;
}

}  // namespace snclosure
