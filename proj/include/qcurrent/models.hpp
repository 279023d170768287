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

#ifndef QCURRENT_MODELS_HPP
#define QCURRENT_MODELS_HPP

#include <utility>
#include <vector>

#include "qcurrent/lindblad.hpp"

namespace qcurrent {

/// Anisotropic spin-1/2 Heisenberg lattice with local decay, couplings in
/// units of gamma.
struct XYZParams {
    double Jx = 0.9;
    double Jy = 1.0;
    double Jz = 1.0;
    double gamma = 1.0;
    int rows = 1;
    int cols = 2;
    bool periodic = true;
    // Wrap-around on an extent-2 direction revisits the same unordered pair.
    // false (default): each unordered pair contributes one bond term.
    // true: bonds keep their per-site multiplicity (pair counted twice).
    // Recorded in metadata; the two conventions differ on 2x2 and 2x3.
    bool double_count_wrap_bonds = false;
    int max_sites = 9;  // capacity cap for the dense/Krylov pipelines
};

/// Kerr resonator with two-photon drive and single-photon loss, in a Fock
/// space truncated at nmax.
struct KerrParams {
    double Delta = 0.0;  // detuning
    double U = 1.0 / 30.0;
    double G = 1.0;      // two-photon drive amplitude, G >= 0
    double gamma = 1.0;
    int nmax = 0;        // 0: use the heuristic ceil(4 sqrt(G^2+1) / (2U)), capped at 120
};

/// Undirected nearest-neighbor bonds of the rows x cols torus (deduplicated
/// or with wrap multiplicity, see XYZParams).
std::vector<std::pair<int, int>> lattice_bonds(int rows, int cols, bool periodic,
                                               bool double_count_wrap);

/// H = sum_<i,j> sum_a J_a sigma_i^a sigma_j^a, jumps sqrt(gamma) sigma_j^-
/// (weight -1 each). Throws CapacityError above params.max_sites.
LindbladSystem build_xyz(const XYZParams& params);

/// H = -Delta a^+a + (U/2) a^+a^+aa + (G/4)(a^+a^+ + aa), jump sqrt(gamma) a.
LindbladSystem build_kerr(const KerrParams& params);

int default_kerr_nmax(const KerrParams& params);

/// Steady-state population in the top Fock levels [nmax-5, nmax); the
/// truncation is accepted when this is below `tol`. Throws TruncationError
/// (naming the tail mass) otherwise.
double check_kerr_truncation(const LindbladSystem& sys, const SteadyState& ss,
                             double tol = 1e-8);

/// <a^+ a> in the steady state.
double kerr_occupation(const LindbladSystem& sys, const SteadyState& ss);

}  // namespace qcurrent

#endif  // QCURRENT_MODELS_HPP
