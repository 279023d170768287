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

#ifndef QCURRENT_KRYLOV_HPP
#define QCURRENT_KRYLOV_HPP

#include <functional>
#include <vector>

#include "qcurrent/types.hpp"

namespace qcurrent {

struct KrylovOptions {
    double tol = 1e-10;      // local error tolerance per step
    int max_subspace = 50;   // Arnoldi basis size cap per step
    int max_substeps = 100000;
};

/// y = exp(A t) v via Arnoldi projection with adaptive sub-stepping
/// (error model after Expokit). Throws PropagationError on step underflow.
ComplexVector krylov_expv(const SparseMatrix& A, const ComplexVector& v, double t,
                          const KrylovOptions& opts = {});

/// Walks exp(A tau) v across an increasing tau grid, invoking
/// observe(k, v_k) at every grid point (k indexes tau_grid). Grid points are
/// hit by sub-stepping from one to the next; state is carried, not restarted.
void krylov_expv_grid(const SparseMatrix& A, const ComplexVector& v,
                      const std::vector<double>& tau_grid,
                      const std::function<void(std::size_t, const ComplexVector&)>& observe,
                      const KrylovOptions& opts = {});

struct RitzPair {
    Complex value;       // eigenvalue of A (back-transformed)
    double residual;     // ||A x - lambda x|| / |shift-inverted pairing|
};

/// Eigenvalues of A nearest the shift sigma via shift-invert Arnoldi on
/// (A - sigma I)^-1. Returns up to nev converged Ritz values sorted by
/// distance from sigma. Throws SpectralError if the factorization fails or
/// nothing converges.
std::vector<RitzPair> shift_invert_eigs(const SparseMatrix& A, Complex sigma, int nev,
                                        int max_basis = 80, double tol = 1e-9);

}  // namespace qcurrent

#endif  // QCURRENT_KRYLOV_HPP
