#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "snclosure/tensor.hpp"

namespace snclosure {

/* One fundamental relation: the j-th elementary symmetric expression in the
 * slot embeddings of a basis element, minus s_j of that element. */
template <ExactScalar K>
struct Relation {
    int basis_index;
    int degree;
    TensorElement<K> element;
};

/* Generators of the closure ideal: one relation per non-unity basis element
 * and degree j in 1..n.  The unity is skipped, its relations are
 * identically zero. */
template <ExactScalar K>
std::vector<Relation<K>> relations(const RankRing<K>& A) {
    const int n = A.n;
    std::vector<Relation<K>> gens;
    for (int b = 1; b < n; ++b) {
        CharPoly<K> p = char_poly(A, basis_element(A, b));
        // elementary symmetric polynomials in b^(1), ..., b^(n) by the
        // slot-recurrence E_j <- E_j + E_{j-1} * b^(slot)
        std::vector<SparseVec<K>> E(n + 1);
        E[0] = SparseVec<K>::unit(0);
        for (int slot = 0; slot < n; ++slot)
            for (int j = std::min(slot + 1, n); j >= 1; --j) {
                SparseVec<K> add = detail::mult_slot_basis(A, E[j - 1], b, slot);
                E[j].axpy(K(1), add);
            }
        for (int j = 1; j <= n; ++j) {
            TensorElement<K> g{&A, E[j]};
            g.coords.axpy(-p.s(j), SparseVec<K>::unit(0));
            gens.push_back({b, j, std::move(g)});
        }
    }
    return gens;
}

struct CloseOptions {
    int max_rank = 6;  // refuse larger ranks; 6 is the hard ceiling
};

/* The closure G(A/B) = A^(tensor n) / I with its module structure: ideal
 * basis in canonical normal form (RREF over fields, row HNF over ZZ), free
 * rank, torsion invariant factors (ZZ only), and the residue basis given by
 * the non-pivot words in lexicographic word order. */
template <ExactScalar K>
class ClosureRing {
  public:
    ClosureRing(RankRing<K> ring, RowBasis<K> ideal)
        : ring_(std::move(ring)), ideal_(std::move(ideal)), ambient_(ideal_.cols()) {
        ideal_rank_ = ideal_.rank();
        std::vector<bool> pivot(ambient_, false);
        for (std::int32_t c : ideal_.pivot_cols()) pivot[c] = true;
        for (std::int32_t w = 0; w < ambient_; ++w)
            if (!pivot[w]) residue_words_.push_back(w);
        if constexpr (scalar_traits<K>::tag == BaseTag::integers) {
            SparseMatrix<ZZ> m(ideal_rank_, ambient_);
            for (std::int32_t i = 0; i < ideal_rank_; ++i) m.row[i] = ideal_.rows()[i];
            invariant_factors_ = snf(m);
            for (const ZZ& d : invariant_factors_)
                if (d != 1) torsion_.push_back(d);
        }
        free_rank_ = ambient_ - ideal_rank_;
    }

    const RankRing<K>& ring() const { return ring_; }
    int rank_n() const { return ring_.n; }
    std::int32_t ambient() const { return ambient_; }
    std::int32_t ideal_rank() const { return ideal_rank_; }
    std::int32_t free_rank() const { return free_rank_; }
    const std::vector<ZZ>& torsion() const { return torsion_; }
    const std::vector<ZZ>& invariant_factors() const { return invariant_factors_; }
    const std::vector<std::int32_t>& residue_words() const { return residue_words_; }
    const RowBasis<K>& ideal() const { return ideal_; }

    bool has_torsion() const { return !torsion_.empty(); }

    // Canonical coset representative modulo the ideal; zero exactly on
    // ideal members.
    SparseVec<K> reduce(const SparseVec<K>& u) const { return ideal_.reduce(u); }
    SparseVec<K> reduce(const TensorElement<K>& u) const {
        if (*u.ring != ring_) throw mismatch_error("tensor element from a different ring");
        return ideal_.reduce(u.coords);
    }

    bool ideal_contains(const TensorElement<K>& u) const { return reduce(u).is_zero(); }
    bool ideal_contains(const SparseVec<K>& u) const { return ideal_.reduce(u).is_zero(); }

    // Multiplication of residues: lift, multiply in the tensor power, reduce.
    SparseVec<K> quotient_mult(const SparseVec<K>& u, const SparseVec<K>& v) const {
        TensorElement<K> a{&ring_, u}, b{&ring_, v};
        return reduce(tensor_mult(a, b));
    }

  private:
    RankRing<K> ring_;
    RowBasis<K> ideal_;
    std::int32_t ambient_;
    std::int32_t ideal_rank_ = 0;
    std::int32_t free_rank_ = 0;
    std::vector<ZZ> torsion_;
    std::vector<ZZ> invariant_factors_;
    std::vector<std::int32_t> residue_words_;
};

/* Fixed-point saturation of the relation ideal: close the span of the
 * generators under multiplication by every single-slot basis embedding
 * b_k^(i).  Words are products of these, so the fixed point is closed under
 * multiplication by every word, hence by all of A^(tensor n).  The worklist
 * holds every row the basis ever created; a row is processed exactly once. */
template <ExactScalar K>
RowBasis<K> saturate(const RankRing<K>& A, const std::vector<Relation<K>>& gens) {
    const int n = A.n;
    RowBasis<K> basis(ambient_dim(n));
    std::vector<SparseVec<K>> worklist;
    for (const auto& g : gens) basis.insert(g.element.coords, &worklist);
    for (std::size_t next = 0; next < worklist.size(); ++next) {
        SparseVec<K> row = worklist[next];  // copy: the vector may reallocate
        for (int k = 1; k < n; ++k)
            for (int slot = 0; slot < n; ++slot)
                basis.insert(detail::mult_slot_basis(A, row, k, slot), &worklist);
    }
    basis.finalize();
    return basis;
}

template <ExactScalar K>
ClosureRing<K> close(const RankRing<K>& A, const CloseOptions& opts = {}) {
    const int limit = std::min(opts.max_rank, 6);
    if (A.n > limit)
        throw resource_guard_error(
            A.n, limit,
            "refusing direct closure at rank " + std::to_string(A.n) + " (limit " +
                std::to_string(limit) + "; raise with --max-n, hard ceiling 6)");
    return ClosureRing<K>(A, saturate(A, relations(A)));
}

/* Structure constants of the closure on its residue basis.  Only defined
 * when the closure is a free module (no torsion). */
template <ExactScalar K>
std::vector<std::vector<SparseVec<K>>> closure_structure_constants(const ClosureRing<K>& G) {
    if (G.has_torsion())
        throw unsupported_error("closure has torsion: no canonical structure constant table");
    const auto& words = G.residue_words();
    const std::int32_t r = (std::int32_t)words.size();
    std::vector<std::vector<SparseVec<K>>> t(r, std::vector<SparseVec<K>>(r));
    for (std::int32_t i = 0; i < r; ++i)
        for (std::int32_t j = i; j < r; ++j) {
            t[i][j] = G.quotient_mult(SparseVec<K>::unit(words[i]), SparseVec<K >::unit(words[j]));
            if (j != i) t[j][i] = t[i][j];
        }
    return t;
}

/* Gram determinant of the trace form of the closure, computed from the
 * quotient structure constants.  Requires a torsion-free closure. */
template <ExactScalar K>
K closure_discriminant(const ClosureRing<K>& G) {
    auto t = closure_structure_constants(G);
    const auto& words = G.residue_words();
    const std::int32_t r = (std::int32_t)words.size();
    std::vector<std::int32_t> pos(G.ambient(), -1);
    for (std::int32_t i = 0; i < r; ++i) pos[words[i]] = i;
    // tau[l] = trace of multiplication by residue word l
    std::vector<K> tau(r, K(0));
    for (std::int32_t l = 0; l < r; ++l)
        for (std::int32_t k = 0; k < r; ++k) {
            const K* c = t[l][k].get(words[k]);
            if (c) tau[l] = tau[l] + *c;
        }
    SparseMatrix<K> gram(r, r);
    for (std::int32_t i = 0; i < r; ++i)
        for (std::int32_t j = 0; j < r; ++j) {
            K g(0);
            for (const auto& term : t[i][j].terms) g = g + term.second * tau[pos[term.first]];
            if (!is_zero(g)) gram.set(i, j, g);
        }
    return det(gram);
}

// A ring is degenerate (R_n-shaped) when every product of non-unity basis
// elements vanishes.
template <ExactScalar K>
bool is_degenerate_ring(const RankRing<K>& A) {
    for (int i = 1; i < A.n; ++i)
        for (int j = 1; j < A.n; ++j)
            for (int k = 0; k < A.n; ++k)
                if (!is_zero(A.table[i][j][k])) return false;
    return true;
}

struct GradedDims {
    // dimension of the quotient restricted to each content class (the
    // multidegree composition a_0..a_{n-1}), and the per-partition totals
    std::map<std::vector<int>, long> by_class;
    std::map<std::vector<int>, long> by_partition;
    long total = 0;
};

/* Content grading of G(R_n/K): the ideal of a degenerate ring is
 * homogeneous for word content, so the quotient dimension splits by
 * content class.  Classes aggregate to partitions by sorting the content. */
template <FieldScalar K>
GradedDims graded_dims(const ClosureRing<K>& G) {
    const RankRing<K>& A = G.ring();
    if (!is_degenerate_ring(A))
        throw unsupported_error("content grading is only defined for degenerate rings");
    const int n = A.n;
    GradedDims out;
    auto content = [&](std::int32_t w) {
        std::vector<int> a(n, 0);
        for (int s = 0; s < n; ++s) {
            a[w % n]++;
            w /= n;
        }
        return a;
    };
    for (std::int32_t w = 0; w < G.ambient(); ++w) out.by_class[content(w)] += 1;
    for (const auto& row : G.ideal().rows()) {
        std::vector<int> a = content(row.lead());
        for (const auto& t : row.terms)
            if (content(t.first) != a)
                throw std::logic_error("closure ideal of a degenerate ring must be homogeneous");
        out.by_class[a] -= 1;
    }
    for (const auto& [a, d] : out.by_class) {
        std::vector<int> parts = a;
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        out.by_partition[parts] += d;
        out.total += d;
    }
    return out;
}

}  // namespace snclosure
