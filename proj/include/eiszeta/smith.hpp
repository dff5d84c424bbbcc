#ifndef EISZETA_SMITH_HPP
#define EISZETA_SMITH_HPP

#include <stdexcept>
#include <vector>

#include "eiszeta/rational.hpp"

namespace eiszeta {

using IntMat = std::vector<std::vector<Int>>;

inline IntMat identity_mat(int n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int m = static_cast<int>(b[0].size());
    IntMat r(n, std::vector<Int>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

inline std::vector<Int> mat_vec(const IntMat& a, const std::vector<Int>& v) {
    int n = static_cast<int>(a.size());
    std::vector<Int> r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < static_cast<int>(v.size()); ++j) r[i] += a[i][j] * v[j];
    return r;
}

inline Int mat_det(IntMat m) {
    // fraction-free Gaussian elimination (Bareiss)
    int n = static_cast<int>(m.size());
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct SmithResult {
    IntMat U, D, V;  // M = U * D * V, U and V unimodular, D diagonal
};

/// Smith normal form with both transforms retained, so that coset
/// representatives derived from it are deterministic.
inline SmithResult smith_normal_form(IntMat M) {
    int n = static_cast<int>(M.size());
    IntMat U = identity_mat(n);   // accumulated inverse row ops
    IntMat V = identity_mat(n);   // accumulated inverse column ops

    auto swap_rows = [&](int a, int b) {
        std::swap(M[a], M[b]);
        for (int j = 0; j < n; ++j) std::swap(U[j][a], U[j][b]);
    };
    auto swap_cols = [&](int a, int b) {
        for (int i = 0; i < n; ++i) std::swap(M[i][a], M[i][b]);
        std::swap(V[a], V[b]);
    };
    auto add_row = [&](int dst, int src, const Int& c) {
        for (int j = 0; j < n; ++j) M[dst][j] += c * M[src][j];
        for (int j = 0; j < n; ++j) U[j][src] -= c * U[j][dst];
    };
    auto add_col = [&](int dst, int src, const Int& c) {
        for (int i = 0; i < n; ++i) M[i][dst] += c * M[i][src];
        for (int j = 0; j < n; ++j) V[src][j] -= c * V[dst][j];
    };
    auto negate_row = [&](int a) {
        for (int j = 0; j < n; ++j) M[a][j] = -M[a][j];
        for (int j = 0; j < n; ++j) U[j][a] = -U[j][a];
    };

    for (int k = 0; k < n; ++k) {
        while (true) {
            // move a pivot of minimal absolute value to (k,k)
            int pi = -1, pj = -1;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j)
                    if (M[i][j] != 0 &&
                        (pi < 0 || abs(M[i][j]) < abs(M[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;  // rest is zero
            if (pi != k) swap_rows(k, pi);
            if (pj != k) swap_cols(k, pj);

            bool clean = true;
            for (int i = k + 1; i < n; ++i)
                if (M[i][k] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), M[i][k].get_mpz_t(), M[k][k].get_mpz_t());
                    add_row(i, k, -q);
                    if (M[i][k] != 0) clean = false;
                }
            for (int j = k + 1; j < n; ++j)
                if (M[k][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), M[k][j].get_mpz_t(), M[k][k].get_mpz_t());
                    add_col(j, k, -q);
                    if (M[k][j] != 0) clean = false;
                }
            if (!clean) continue;

            // divisibility fix-up: pivot must divide the remaining block
            bool fixed = true;
            for (int i = k + 1; i < n && fixed; ++i)
                for (int j = k + 1; j < n && fixed; ++j)
                    if (M[i][j] % M[k][k] != 0) {
                        add_row(k, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (M[k][k] < 0) negate_row(k);
    }
    return SmithResult{U, M, V};
}

}  // namespace eiszeta

#endif
