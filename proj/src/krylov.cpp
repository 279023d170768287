// Copyright 2026 The qcurrent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcurrent/krylov.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace qcurrent {

namespace {

// One Arnoldi factorization A V_m = V_m H_m + h_{m+1,m} v_{m+1} e_m^T.
// Returns the reached basis size (may stop early on breakdown).
int arnoldi(const SparseMatrix& A, const ComplexVector& v0, int m,
            DenseMatrix& V, DenseMatrix& H, double breakdown_tol) {
    const Eigen::Index n = v0.size();
    V.resize(n, m + 1);
    H.setZero(m + 1, m);
    double beta = v0.norm();
    V.col(0) = v0 / beta;
    for (int j = 0; j < m; ++j) {
        ComplexVector w = A * V.col(j);
        // modified Gram-Schmidt with one reorthogonalization pass
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                Complex h = V.col(i).dot(w);
                w -= h * V.col(i);
                H(i, j) += h;
            }
        }
        double hn = w.norm();
        H(j + 1, j) = hn;
        if (hn < breakdown_tol) return j + 1;  // invariant subspace found
        V.col(j + 1) = w / hn;
    }
    return m;
}

}  // namespace

ComplexVector krylov_expv(const SparseMatrix& A, const ComplexVector& v, double t,
                          const KrylovOptions& opts) {
    std::vector<double> grid = {t};
    ComplexVector out;
    krylov_expv_grid(A, v, grid, [&](std::size_t, const ComplexVector& y) { out = y; }, opts);
    return out;
}

void krylov_expv_grid(const SparseMatrix& A, const ComplexVector& v,
                      const std::vector<double>& tau_grid,
                      const std::function<void(std::size_t, const ComplexVector&)>& observe,
                      const KrylovOptions& opts) {
    const int m = opts.max_subspace;
    double anorm = 0.0;
    for (int k = 0; k < A.outerSize(); ++k) {
        double colsum = 0.0;
        for (SparseMatrix::InnerIterator it(A, k); it; ++it) colsum += std::abs(it.value());
        anorm = std::max(anorm, colsum);
    }
    anorm = std::max(anorm, 1e-30);

    ComplexVector w = v;
    double tcur = 0.0;
    std::size_t gi = 0;
    // emit any leading tau = 0 points
    while (gi < tau_grid.size() && tau_grid[gi] <= 0.0) observe(gi++, w);

    double dt = std::min(1.0, double(m) / anorm);
    int substeps = 0;
    DenseMatrix V, H;
    while (gi < tau_grid.size()) {
        if (++substeps > opts.max_substeps) {
            throw PropagationError("krylov_expv: sub-step budget exhausted");
        }
        const double beta = w.norm();
        if (beta == 0.0) {  // exp(At) 0 = 0
            while (gi < tau_grid.size()) observe(gi++, w);
            break;
        }
        const int mk = arnoldi(A, w, m, V, H, 1e-14 * anorm);
        const bool invariant = (mk < m) || (std::abs(H(mk, mk - 1)) < 1e-14 * anorm);
        // largest step currently needed
        double remaining = tau_grid.back() - tcur;
        double step = invariant ? remaining : std::min(dt, remaining);
        for (;;) {
            DenseMatrix Hm = H.topLeftCorner(mk, mk);
            DenseMatrix F = (step * Hm).exp();
            // Expokit-style local error estimate from the last basis vector
            double err = invariant ? 0.0 : std::abs(H(mk, mk - 1)) * std::abs(F(mk - 1, 0)) * beta * step;
            if (err <= opts.tol * std::max(1.0, beta) || invariant) {
                // emit all grid points inside (tcur, tcur + step]
                while (gi < tau_grid.size() && tau_grid[gi] <= tcur + step + 1e-14) {
                    double s = std::min(std::max(tau_grid[gi] - tcur, 0.0), step);
                    DenseMatrix Fs = (s * Hm).exp();
                    ComplexVector y = V.leftCols(mk) * (beta * Fs.col(0));
                    observe(gi++, y);
                }
                w = V.leftCols(mk) * (beta * F.col(0));
                tcur += step;
                if (!invariant && err < 0.1 * opts.tol * std::max(1.0, beta)) dt = step * 1.6;
                break;
            }
            step *= 0.5;
            dt = step;
            if (step < 1e-14 * std::max(1.0, std::abs(tau_grid.back()))) {
                throw PropagationError("krylov_expv: step underflow (tol unreachable)");
            }
        }
    }
}

std::vector<RitzPair> shift_invert_eigs(const SparseMatrix& A, Complex sigma, int nev,
                                        int max_basis, double tol) {
    const Eigen::Index n = A.rows();
    SparseMatrix M = A;
    SparseMatrix id(n, n);
    id.setIdentity();
    M = (A - sigma * id).pruned();
    M.makeCompressed();
    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(M);
    lu.factorize(M);
    if (lu.info() != Eigen::Success) {
        throw SpectralError("shift_invert_eigs: factorization of (A - sigma I) failed");
    }
    // Arnoldi on the inverse operator
    const int m = std::min<int>(max_basis, int(n));
    DenseMatrix V(n, m + 1), H = DenseMatrix::Zero(m + 1, m);
    // fixed pseudo-random start vector (LCG) so repeated runs are bit-identical
    ComplexVector v0(n);
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    for (Eigen::Index i = 0; i < n; ++i) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        double re = double(s >> 11) / double(1ull << 53) - 0.5;
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        double im = double(s >> 11) / double(1ull << 53) - 0.5;
        v0[i] = Complex(1.0 + 1e-3 * re, 1e-3 * im);
    }
    V.col(0) = v0 / v0.norm();
    int mk = m;
    for (int j = 0; j < m; ++j) {
        ComplexVector w = lu.solve(V.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                Complex h = V.col(i).dot(w);
                w -= h * V.col(i);
                H(i, j) += h;
            }
        }
        double hn = w.norm();
        H(j + 1, j) = hn;
        if (hn < 1e-14) { mk = j + 1; break; }
        V.col(j + 1) = w / hn;
    }
    Eigen::ComplexEigenSolver<DenseMatrix> es(H.topLeftCorner(mk, mk));
    if (es.info() != Eigen::Success) throw SpectralError("shift_invert_eigs: Ritz solve failed");
    std::vector<RitzPair> pairs;
    const double hlast = std::abs(H(mk, mk - 1));
    for (int i = 0; i < mk; ++i) {
        Complex theta = es.eigenvalues()[i];
        if (std::abs(theta) < 1e-14) continue;
        // residual bound for the shift-inverted problem
        double res = hlast * std::abs(es.eigenvectors()(mk - 1, i)) / std::abs(theta);
        if (res > tol) continue;
        pairs.push_back({sigma + 1.0 / theta, res});
    }
    if (pairs.empty()) {
        throw SpectralError("shift_invert_eigs: no Ritz value converged to tolerance");
    }
    std::sort(pairs.begin(), pairs.end(), [&](const RitzPair& a, const RitzPair& b) {
        return std::abs(a.value - sigma) < std::abs(b.value - sigma);
    });
    if (int(pairs.size()) > nev) pairs.resize(nev);
    return pairs;
}

}  // namespace qcurrent
