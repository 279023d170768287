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

#ifndef QCURRENT_OPERATORS_HPP
#define QCURRENT_OPERATORS_HPP

#include <utility>
#include <vector>

#include "qcurrent/types.hpp"

// Elementary operator algebra on the system Hilbert space and superoperator
// assembly on the doubled (vectorized) space.
//
// Conventions, fixed globally:
//   * vec(rho) stacks the columns of rho (column-major, Eigen's native order).
//     Under this convention vec(A rho B) = (B^T (x) A) vec(rho).
//   * Tensor factors are ordered left to right; site 0 is the leftmost factor.
//   * Spin basis is (|up>, |down>), sigma^z = diag(1, -1),
//     sigma^- = |down><up|.

namespace qcurrent::ops {

enum class PauliAxis { X, Y, Z, Plus, Minus };

/// 2x2 Pauli (or ladder) matrix; sigma^+- = (sigma^x +- i sigma^y)/2.
SparseMatrix pauli(PauliAxis axis);

/// Truncated Fock-space annihilation/creation pair on {|0>,...,|nmax-1>}.
/// The annihilation operator carries sqrt(n) on the first superdiagonal.
/// Throws TruncationError for nmax < 2.
std::pair<SparseMatrix, SparseMatrix> boson_ops(int nmax);

SparseMatrix identity(Eigen::Index dim);

/// Kronecker product A (x) B with deterministic entry order.
SparseMatrix kron(const SparseMatrix& A, const SparseMatrix& B);

/// I (x) ... (x) op (x) ... (x) I with `op` at tensor slot `site`
/// (site 0 = leftmost factor). All local factors have dimension local_dim.
SparseMatrix embed_at_site(const SparseMatrix& op, int site, int nsites,
                           int local_dim);

/// Column-stacking vectorization and its inverse.
ComplexVector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const ComplexVector& v);

/// vec(I_d): the left null vector of every Lindblad generator; taking the
/// inner product with it implements the trace of a vectorized operator.
ComplexVector trace_vector(Eigen::Index dim);

Complex trace_of_vec(const ComplexVector& v);

/// Superoperator for rho -> A rho:   I (x) A.
SparseMatrix spre(const SparseMatrix& A);
/// Superoperator for rho -> rho A:   A^T (x) I.
SparseMatrix spost(const SparseMatrix& A);
/// Superoperator for rho -> A rho B: B^T (x) A.
SparseMatrix sandwich(const SparseMatrix& A, const SparseMatrix& B);

/// Lindblad generator as a dim^2 x dim^2 matrix under column stacking:
///   L rho = -i[H, rho] + sum_j (L_j rho L_j^+ - 1/2 {L_j^+ L_j, rho})
/// i.e. -i(I(x)H - H^T(x)I)
///      + sum_j [conj(L_j)(x)L_j - 1/2 I(x)(L_j^+L_j) - 1/2 (L_j^+L_j)^T(x)I].
SparseMatrix assemble_liouvillian(const SparseMatrix& H,
                                  const std::vector<SparseMatrix>& jump_ops);

/// Largest |dense(i,j) - sparse(i,j)|; used by the storage-agreement checks.
double max_abs_diff(const DenseMatrix& dense, const SparseMatrix& sparse);

inline DenseMatrix to_dense(const SparseMatrix& m) { return DenseMatrix(m); }

SparseMatrix to_sparse(const DenseMatrix& m, double prune_tol = 0.0);

bool is_hermitian(const SparseMatrix& m, double tol);

}  // namespace qcurrent::ops

#endif  // QCURRENT_OPERATORS_HPP
