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

#include "qcurrent/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace qcurrent {

namespace {

std::vector<SparseMatrix> bare_ops(const std::vector<JumpChannel>& jumps) {
    std::vector<SparseMatrix> ops;
    ops.reserve(jumps.size());
    for (const auto& j : jumps) ops.push_back(j.op);
    return ops;
}

// Replace row `row` of M by vec(I)^T. Imposing the trace this way turns the
// singular steady-state / zero-frequency systems into nonsingular ones; the
// dropped row is implied by solvability (rhs orthogonal to the left null
// vector).
SparseMatrix trace_replaced(const SparseMatrix& M, Eigen::Index dim, Eigen::Index row = 0) {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(M.nonZeros()) + static_cast<size_t>(dim));
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(M, k); it; ++it) {
            if (it.row() != row) trips.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index i = 0; i < dim; ++i) trips.emplace_back(row, i * (dim + 1), Complex(1.0));
    SparseMatrix out(M.rows(), M.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
    return out;
}

SteadyState finalize_steady(const LindbladSystem& sys, ComplexVector rho_vec,
                            const SolverPolicy& policy) {
    const Complex tr = ops::trace_of_vec(rho_vec);
    if (std::abs(tr) < 1e-14) throw SolverError("steady_state: traceless null vector");
    rho_vec /= tr;
    // Hermitize: the exact steady state is Hermitian, the solver result is
    // Hermitian only up to roundoff.
    DenseMatrix rho = ops::unvectorize(rho_vec);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho_vec = ops::vectorize(rho);
    SteadyState ss;
    ss.residual = (sys.liouvillian() * rho_vec).norm();
    ss.purity = std::real((rho * rho).trace());
    ss.rho_vec = std::move(rho_vec);
    const double gate = policy.residual_rtol * std::max(sys.liouvillian_norm(), 1.0);
    if (!(ss.residual <= gate)) {
        throw SolverError("steady_state: residual " + std::to_string(ss.residual) +
                          " exceeds gate " + std::to_string(gate));
    }
    return ss;
}

}  // namespace

LindbladSystem::LindbladSystem(SparseMatrix hamiltonian, std::vector<JumpChannel> jumps,
                               std::map<std::string, std::string> metadata)
    : hamiltonian_(std::move(hamiltonian)),
      jumps_(std::move(jumps)),
      metadata_(std::move(metadata)),
      dim_(hamiltonian_.rows()) {
    if (hamiltonian_.rows() != hamiltonian_.cols() || dim_ < 1) {
        throw ShapeError("LindbladSystem: Hamiltonian must be square with dim >= 1");
    }
    for (const auto& j : jumps_) {
        if (j.op.rows() != dim_ || j.op.cols() != dim_) {
            throw ShapeError("LindbladSystem: jump operator dimension mismatch");
        }
    }
}

const SparseMatrix& LindbladSystem::liouvillian() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!liouvillian_) {
        liouvillian_ = ops::assemble_liouvillian(hamiltonian_, bare_ops(jumps_));
    }
    return *liouvillian_;
}

double LindbladSystem::liouvillian_norm() const {
    const SparseMatrix& L = liouvillian();
    std::lock_guard<std::mutex> lock(mutex_);
    if (norm_ < 0.0) {
        double n = 0.0;
        for (int k = 0; k < L.outerSize(); ++k) {
            double colsum = 0.0;
            for (SparseMatrix::InnerIterator it(L, k); it; ++it) colsum += std::abs(it.value());
            n = std::max(n, colsum);
        }
        norm_ = n;
    }
    return norm_;
}

SteadyState steady_state(const LindbladSystem& sys, const SolverPolicy& policy) {
    const Eigen::Index D = sys.super_dim();
    const SparseMatrix& L = sys.liouvillian();
    if (D <= policy.dense_dim) {
        // dense null space via eigendecomposition; also the degeneracy check
        Eigen::ComplexEigenSolver<DenseMatrix> es(ops::to_dense(L));
        if (es.info() != Eigen::Success) throw SolverError("steady_state: dense eig failed");
        std::vector<int> order(D);
        for (Eigen::Index i = 0; i < D; ++i) order[i] = int(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(es.eigenvalues()[a]) < std::abs(es.eigenvalues()[b]);
        });
        const double scale = std::max(sys.liouvillian_norm(), 1.0);
        if (D > 1 && std::abs(es.eigenvalues()[order[1]]) < policy.degeneracy_rtol * scale) {
            throw DegenerateSteadyStateError(
                "steady_state: null space dimension > 1 (second eigenvalue " +
                std::to_string(std::abs(es.eigenvalues()[order[1]])) + ")");
        }
        return finalize_steady(sys, es.eigenvectors().col(order[0]), policy);
    }
    // sparse route: trace-replaced direct solve
    SparseMatrix A = trace_replaced(L, sys.dim());
    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
        throw DegenerateSteadyStateError(
            "steady_state: trace-replaced factorization is singular; "
            "steady state may be degenerate");
    }
    ComplexVector b = ComplexVector::Zero(D);
    b[0] = 1.0;
    return finalize_steady(sys, lu.solve(b), policy);
}

SpectralInfo liouvillian_spectrum(const LindbladSystem& sys, int nev,
                                  const SolverPolicy& policy) {
    if (nev < 2) throw SpectralError("liouvillian_spectrum: nev must be >= 2");
    const Eigen::Index D = sys.super_dim();
    SpectralInfo info;
    if (D <= policy.dense_dim) {
        Eigen::ComplexEigenSolver<DenseMatrix> es(ops::to_dense(sys.liouvillian()));
        if (es.info() != Eigen::Success) throw SpectralError("liouvillian_spectrum: eig failed");
        std::vector<Complex> evs(es.eigenvalues().data(), es.eigenvalues().data() + D);
        std::sort(evs.begin(), evs.end(),
                  [](Complex a, Complex b) { return a.real() > b.real(); });
        if (int(evs.size()) > nev) evs.resize(nev);
        info.eigenvalues = std::move(evs);
    } else {
        // shift-invert probes along the negative real axis pick up the
        // slowest decay modes; the zero mode always converges first.
        const double scale = std::max(sys.liouvillian_norm(), 1.0);
        std::vector<Complex> collected;
        for (double frac : {2e-3, 1e-2, 5e-2}) {
            Complex sigma(frac * scale * 0.05, 0.0);
            try {
                auto pairs = shift_invert_eigs(sys.liouvillian(), sigma, nev + 2, 60, 1e-8);
                for (const auto& p : pairs) {
                    bool dup = false;
                    for (Complex c : collected) {
                        if (std::abs(c - p.value) < 1e-7 * scale) { dup = true; break; }
                    }
                    if (!dup) collected.push_back(p.value);
                }
            } catch (const SpectralError&) {
                // try the next shift
            }
            if (int(collected.size()) >= nev) break;
        }
        if (collected.empty()) throw SpectralError("liouvillian_spectrum: no mode converged");
        std::sort(collected.begin(), collected.end(),
                  [](Complex a, Complex b) { return a.real() > b.real(); });
        if (int(collected.size()) > nev) collected.resize(nev);
        info.eigenvalues = std::move(collected);
    }
    info.gap = info.eigenvalues.size() > 1 ? -info.eigenvalues[1].real() : 0.0;
    if (std::abs(info.gap) < 1e-12) info.gap = std::max(info.gap, 0.0);
    return info;
}

void propagate_observe(const LindbladSystem& sys, const ComplexVector& v0,
                       const std::vector<double>& tau_grid,
                       const std::function<void(std::size_t, const ComplexVector&)>& observe,
                       const SolverPolicy& policy) {
    if (v0.size() != sys.super_dim()) throw ShapeError("propagate: v0 length != dim^2");
    if (tau_grid.empty()) return;
    if (tau_grid.front() < 0.0) throw PropagationError("propagate: tau grid must start >= 0");
    for (std::size_t k = 1; k < tau_grid.size(); ++k) {
        if (tau_grid[k] < tau_grid[k - 1]) {
            throw PropagationError("propagate: tau grid must be non-decreasing");
        }
    }
    const Eigen::Index D = sys.super_dim();
    if (D <= policy.dense_expm_dim) {
        // dense scaling-and-squaring where the grid is uniform enough to
        // reuse one step matrix; otherwise exponentiate per interval
        DenseMatrix L = ops::to_dense(sys.liouvillian());
        ComplexVector v = v0;
        double tprev = 0.0;
        DenseMatrix estep;
        double cached_dt = -1.0;
        for (std::size_t k = 0; k < tau_grid.size(); ++k) {
            const double dt = tau_grid[k] - tprev;
            if (dt > 0.0) {
                if (std::abs(dt - cached_dt) > 1e-14 * std::max(1.0, dt)) {
                    estep = (dt * L).exp();
                    cached_dt = dt;
                }
                v = estep * v;
                tprev = tau_grid[k];
            }
            observe(k, v);
        }
        return;
    }
    krylov_expv_grid(sys.liouvillian(), v0, tau_grid, observe, policy.krylov);
}

std::vector<ComplexVector> propagate(const LindbladSystem& sys, const ComplexVector& v0,
                                     const std::vector<double>& tau_grid,
                                     const SolverPolicy& policy) {
    std::vector<ComplexVector> out(tau_grid.size());
    propagate_observe(sys, v0, tau_grid,
                      [&](std::size_t k, const ComplexVector& v) { out[k] = v; }, policy);
    return out;
}

struct ResolventCache::Factor {
    Eigen::SparseLU<SparseMatrix> lu;
    bool gauge_fixed = false;  // omega = 0: trace-replaced system
};

std::shared_ptr<ResolventCache::Factor> ResolventCache::factor_for(double omega) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = factors_.find(omega);
        if (it != factors_.end()) return it->second;
    }
    auto f = std::make_shared<Factor>();
    const SparseMatrix& L = sys_.liouvillian();
    if (omega == 0.0) {
        SparseMatrix A = trace_replaced(SparseMatrix(-L), sys_.dim());
        f->lu.analyzePattern(A);
        f->lu.factorize(A);
        f->gauge_fixed = true;
    } else {
        SparseMatrix id(L.rows(), L.cols());
        id.setIdentity();
        SparseMatrix A = (Complex(0.0, omega) * id - L).pruned();
        A.makeCompressed();
        f->lu.analyzePattern(A);
        f->lu.factorize(A);
    }
    if (f->lu.info() != Eigen::Success) {
        throw SolverError("resolvent: factorization failed at omega = " + std::to_string(omega));
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = factors_.emplace(omega, std::move(f));
    return it->second;
}

ComplexVector ResolventCache::solve(double omega, const ComplexVector& rhs) {
    if (rhs.size() != sys_.super_dim()) throw ShapeError("resolvent: rhs length != dim^2");
    auto f = factor_for(omega);
    if (f->gauge_fixed) {
        const Complex tr = ops::trace_of_vec(rhs);
        if (std::abs(tr) > 1e-10 * std::max(1.0, rhs.norm())) {
            throw SolverError(
                "resolvent: omega = 0 right-hand side is not orthogonal to the "
                "left null vector (trace = " + std::to_string(std::abs(tr)) + ")");
        }
        ComplexVector b = rhs;
        b[0] = 0.0;
        return f->lu.solve(b);
    }
    return f->lu.solve(rhs);
}

void ResolventCache::clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    factors_.clear();
}

ComplexVector resolvent_solve(const LindbladSystem& sys, double omega,
                              const ComplexVector& rhs, const SolverPolicy&) {
    ResolventCache cache(sys);
    return cache.solve(omega, rhs);
}

}  // namespace qcurrent
