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

#include "qcurrent/operators.hpp"

#include <cmath>

namespace qcurrent::ops {

SparseMatrix pauli(PauliAxis axis) {
    SparseMatrix m(2, 2);
    switch (axis) {
        case PauliAxis::X:
            m.insert(0, 1) = 1.0;
            m.insert(1, 0) = 1.0;
            break;
        case PauliAxis::Y:
            m.insert(0, 1) = Complex(0, -1);
            m.insert(1, 0) = Complex(0, 1);
            break;
        case PauliAxis::Z:
            m.insert(0, 0) = 1.0;
            m.insert(1, 1) = -1.0;
            break;
        case PauliAxis::Plus:
            m.insert(0, 1) = 1.0;  // |up><down|
            break;
        case PauliAxis::Minus:
            m.insert(1, 0) = 1.0;  // |down><up|
            break;
    }
    m.makeCompressed();
    return m;
}

std::pair<SparseMatrix, SparseMatrix> boson_ops(int nmax) {
    if (nmax < 2) {
        throw TruncationError("boson_ops: Fock truncation must satisfy nmax >= 2, got " +
                              std::to_string(nmax));
    }
    SparseMatrix a(nmax, nmax);
    a.reserve(Eigen::VectorXi::Constant(nmax, 1));
    for (int n = 1; n < nmax; ++n) a.insert(n - 1, n) = std::sqrt(double(n));
    a.makeCompressed();
    SparseMatrix adag = a.adjoint();
    return {a, adag};
}

SparseMatrix identity(Eigen::Index dim) {
    SparseMatrix id(dim, dim);
    id.setIdentity();
    return id;
}

SparseMatrix kron(const SparseMatrix& A, const SparseMatrix& B) {
    SparseMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(A.nonZeros()) * static_cast<size_t>(B.nonZeros()));
    for (int ka = 0; ka < A.outerSize(); ++ka) {
        for (SparseMatrix::InnerIterator ia(A, ka); ia; ++ia) {
            for (int kb = 0; kb < B.outerSize(); ++kb) {
                for (SparseMatrix::InnerIterator ib(B, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * B.rows() + ib.row(),
                                       ia.col() * B.cols() + ib.col(),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
    return out;
}

SparseMatrix embed_at_site(const SparseMatrix& op, int site, int nsites, int local_dim) {
    if (op.rows() != local_dim || op.cols() != local_dim) {
        throw ShapeError("embed_at_site: operator dimension " + std::to_string(op.rows()) +
                         " does not match local_dim " + std::to_string(local_dim));
    }
    if (site < 0 || site >= nsites) {
        throw ShapeError("embed_at_site: site " + std::to_string(site) +
                         " outside [0, " + std::to_string(nsites) + ")");
    }
    // I_(d^site) (x) op (x) I_(d^(nsites-site-1)); identities collapsed.
    Eigen::Index left = 1, right = 1;
    for (int k = 0; k < site; ++k) left *= local_dim;
    for (int k = site + 1; k < nsites; ++k) right *= local_dim;
    SparseMatrix out = op;
    if (left > 1) out = kron(identity(left), out);
    if (right > 1) out = kron(out, identity(right));
    return out;
}

ComplexVector vectorize(const DenseMatrix& rho) {
    return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const ComplexVector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (d * d != v.size()) {
        throw ShapeError("unvectorize: length " + std::to_string(v.size()) +
                         " is not a perfect square");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), d, d);
}

ComplexVector trace_vector(Eigen::Index dim) {
    ComplexVector t = ComplexVector::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) t[i * (dim + 1)] = 1.0;
    return t;
}

Complex trace_of_vec(const ComplexVector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    Complex tr = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) tr += v[i * (d + 1)];
    return tr;
}

SparseMatrix spre(const SparseMatrix& A) { return kron(identity(A.rows()), A); }

SparseMatrix spost(const SparseMatrix& A) {
    return kron(SparseMatrix(A.transpose()), identity(A.rows()));
}

SparseMatrix sandwich(const SparseMatrix& A, const SparseMatrix& B) {
    return kron(SparseMatrix(B.transpose()), A);
}

SparseMatrix assemble_liouvillian(const SparseMatrix& H,
                                  const std::vector<SparseMatrix>& jump_ops) {
    const Eigen::Index d = H.rows();
    if (H.cols() != d) throw ShapeError("assemble_liouvillian: Hamiltonian not square");
    SparseMatrix id = identity(d);
    SparseMatrix L = (-kI) * SparseMatrix(kron(id, H) - kron(SparseMatrix(H.transpose()), id));
    for (const auto& Lk : jump_ops) {
        if (Lk.rows() != d || Lk.cols() != d) {
            throw ShapeError("assemble_liouvillian: jump operator dimension mismatch");
        }
        SparseMatrix LdL = (SparseMatrix(Lk.adjoint()) * Lk).pruned();
        L = (L + kron(Lk.conjugate(), Lk) - 0.5 * kron(id, LdL) -
             0.5 * kron(SparseMatrix(LdL.transpose()), id))
                .pruned();
    }
    L.makeCompressed();
    return L;
}

double max_abs_diff(const DenseMatrix& dense, const SparseMatrix& sparse) {
    return (dense - DenseMatrix(sparse)).cwiseAbs().maxCoeff();
}

SparseMatrix to_sparse(const DenseMatrix& m, double prune_tol) {
    SparseMatrix out = m.sparseView(1.0, prune_tol);
    out.makeCompressed();
    return out;
}

bool is_hermitian(const SparseMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    SparseMatrix diff = SparseMatrix(m - SparseMatrix(m.adjoint()));
    double maxabs = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
            maxabs = std::max(maxabs, std::abs(it.value()));
        }
    }
    return maxabs <= tol;
}

}  // namespace qcurrent::ops
