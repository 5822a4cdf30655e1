// Copyright 2026 The ncpkit Authors.
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

#ifndef NCPKIT_LINALG_HPP_
#define NCPKIT_LINALG_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ncpkit::linalg {

/// y = A x for a symmetric operator A.
using SymmetricOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct EigenOptions {
    std::size_t max_basis = 64;   // Krylov basis size before a restart
    std::size_t keep = 8;         // Ritz vectors kept across a restart
    std::size_t max_restarts = 2000;
    double tolerance = 1e-11;     // absolute residual norm ||A x - theta x||
    std::uint64_t seed = 1;
};

struct EigenPair {
    double value = 0;
    std::vector<double> vector; // unit norm
    double residual = 0;
    std::size_t restarts = 0;
    bool converged = false;
};

/**
 * Smallest eigenpair of a symmetric operator restricted to the orthogonal
 * complement of `deflate` (orthonormal vectors). Restarted Lanczos extension
 * with full reorthogonalisation and Rayleigh-Ritz on the whole basis; when the
 * basis spans the complement the answer is exact up to rounding.
 */
EigenPair smallest_eigenpair(std::size_t n, const SymmetricOperator &op,
                             std::span<const std::vector<double>> deflate = {},
                             const EigenOptions &options = {});

/// Largest eigenvalue, via the smallest eigenpair of -A.
EigenPair largest_eigenpair(std::size_t n, const SymmetricOperator &op,
                            std::span<const std::vector<double>> deflate = {},
                            const EigenOptions &options = {});

/// f(x, grad) returns the objective and fills grad.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
    std::size_t max_iterations = 500;
    std::size_t history = 12;
    double gradient_tolerance = 1e-10; // on the infinity norm
    double relative_tolerance = 1e-15; // stop when progress stalls
};

struct LbfgsResult {
    double value = 0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Limited-memory BFGS with backtracking (Armijo) line search. Minimises in
/// place.
LbfgsResult lbfgs_minimize(std::vector<double> &x, const Objective &f, const LbfgsOptions &options = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

} // namespace ncpkit::linalg

#endif // NCPKIT_LINALG_HPP_
