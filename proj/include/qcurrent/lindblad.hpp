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

#ifndef QCURRENT_LINDBLAD_HPP
#define QCURRENT_LINDBLAD_HPP

#include <Eigen/SparseLU>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qcurrent/krylov.hpp"
#include "qcurrent/operators.hpp"
#include "qcurrent/types.hpp"

namespace qcurrent {

struct JumpChannel {
    SparseMatrix op;       // Lindblad operator (rate absorbed, e.g. sqrt(gamma) sigma^-)
    double weight = -1.0;  // counting weight nu_j; jumps are counted with nu_j = -1
                           // for a purely dissipative process
};

/// Numerical policy shared by the engine operations. All switch points are
/// runtime configuration (the stated defaults favor exactness below
/// `dense_dim` and direct sparse factorization above).
struct SolverPolicy {
    Eigen::Index dense_dim = 256;      // Liouvillian dim at or below which dense
                                       // null-space / eigendecomposition is used
    Eigen::Index dense_expm_dim = 256; // dense scaling-and-squaring propagation limit
    double degeneracy_rtol = 1e-8;     // second eigenvalue below this * ||L|| flags
                                       // a degenerate steady state
    double residual_rtol = 1e-10;      // steady-state residual gate, relative to ||L||
    KrylovOptions krylov;              // tol 1e-10, basis cap 50
};

/// A Hamiltonian, its weighted jump channels, and the (lazily assembled)
/// Liouvillian supermatrix, plus free-form metadata that is carried into
/// every output file.
class LindbladSystem {
  public:
    LindbladSystem(SparseMatrix hamiltonian, std::vector<JumpChannel> jumps,
                   std::map<std::string, std::string> metadata = {});

    Eigen::Index dim() const { return dim_; }              // Hilbert dimension
    Eigen::Index super_dim() const { return dim_ * dim_; } // Liouvillian dimension
    const SparseMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<JumpChannel>& jumps() const { return jumps_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    /// dim^2 x dim^2 generator; assembled on first use, then cached.
    const SparseMatrix& liouvillian() const;

    /// 1-norm of the Liouvillian (cached); scale for relative tolerances.
    double liouvillian_norm() const;

  private:
    SparseMatrix hamiltonian_;
    std::vector<JumpChannel> jumps_;
    std::map<std::string, std::string> metadata_;
    Eigen::Index dim_;
    mutable std::mutex mutex_;
    mutable std::optional<SparseMatrix> liouvillian_;
    mutable double norm_ = -1.0;
};

struct SteadyState {
    ComplexVector rho_vec;  // trace-one vectorized density matrix
    double residual = 0.0;  // ||L rho_vec||
    double purity = 0.0;    // Tr[rho^2]
};

struct SpectralInfo {
    std::vector<Complex> eigenvalues;  // sorted by descending real part
    double gap = 0.0;                  // -Re[lambda_1]
};

/// Trace-normalized null vector of the Liouvillian.
/// Direct dense null-space below policy.dense_dim, trace-replaced sparse LU
/// above. Throws DegenerateSteadyStateError when a second near-null mode is
/// detected and SolverError if the residual gate fails.
SteadyState steady_state(const LindbladSystem& sys, const SolverPolicy& policy = {});

/// nev eigenvalues of the Liouvillian closest to zero real part.
/// Dense eigendecomposition below policy.dense_dim; shift-invert Arnoldi
/// (shifts on the real axis) above.
SpectralInfo liouvillian_spectrum(const LindbladSystem& sys, int nev,
                                  const SolverPolicy& policy = {});

/// v(tau_k) = exp(L tau_k) v0 for an increasing grid starting at tau >= 0.
/// Dense scaling-and-squaring with step reuse below policy.dense_expm_dim,
/// Krylov exponential action above.
std::vector<ComplexVector> propagate(const LindbladSystem& sys, const ComplexVector& v0,
                                     const std::vector<double>& tau_grid,
                                     const SolverPolicy& policy = {});

/// Streaming form: observe(k, v_k) is called per grid point and vectors are
/// not stored. Used by the correlation pipeline where only scalars survive.
void propagate_observe(const LindbladSystem& sys, const ComplexVector& v0,
                       const std::vector<double>& tau_grid,
                       const std::function<void(std::size_t, const ComplexVector&)>& observe,
                       const SolverPolicy& policy = {});

/// Caches one direct factorization of (i omega I - L) per frequency
/// (omega = 0 uses the trace-replaced gauge-fixed form). Thread-safe; solves
/// against a cached factorization may run concurrently with lookups.
class ResolventCache {
  public:
    explicit ResolventCache(const LindbladSystem& sys) : sys_(sys) {}

    /// y with (i omega I - L) y = rhs. At omega = 0 the right-hand side must
    /// be orthogonal to vec(I) (zero-mode projected) and the solution is
    /// gauge-fixed to vec(I)^+ y = 0; otherwise throws SolverError.
    ComplexVector solve(double omega, const ComplexVector& rhs);

    void clear();

  private:
    struct Factor;
    std::shared_ptr<Factor> factor_for(double omega);

    const LindbladSystem& sys_;
    std::mutex mutex_;
    std::map<double, std::shared_ptr<Factor>> factors_;
};

/// One-shot resolvent solve (see ResolventCache::solve).
ComplexVector resolvent_solve(const LindbladSystem& sys, double omega,
                              const ComplexVector& rhs, const SolverPolicy& policy = {});

}  // namespace qcurrent

#endif  // QCURRENT_LINDBLAD_HPP
