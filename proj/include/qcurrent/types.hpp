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

#ifndef QCURRENT_TYPES_HPP
#define QCURRENT_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcurrent {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr Complex kI{0.0, 1.0};

// Error hierarchy. Everything thrown by the library derives from Error so
// the harness can record per-point failures and keep sweeping.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct DegenerateSteadyStateError : SolverError {
    using SolverError::SolverError;
};

struct PropagationError : SolverError {
    using SolverError::SolverError;
};

struct SpectralError : SolverError {
    using SolverError::SolverError;
};

struct TruncationError : Error {
    using Error::Error;
};

struct FitError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

}  // namespace qcurrent

#endif  // QCURRENT_TYPES_HPP
