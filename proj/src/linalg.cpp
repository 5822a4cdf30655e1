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

#include <ncpkit/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace ncpkit::linalg {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Removes components along `deflate` and the first `cols` columns of V, twice.
void orthogonalize(VectorXd &w, std::span<const std::vector<double>> deflate, const MatrixXd &V,
                   Eigen::Index cols) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &q : deflate) {
            Eigen::Map<const VectorXd> qv(q.data(), static_cast<Eigen::Index>(q.size()));
            w -= qv.dot(w) * qv;
        }
        if (cols > 0) {
            const VectorXd h = V.leftCols(cols).transpose() * w;
            w -= V.leftCols(cols) * h;
        }
    }
}

} // namespace

EigenPair smallest_eigenpair(std::size_t n, const SymmetricOperator &op,
                             std::span<const std::vector<double>> deflate, const EigenOptions &options) {
    if (n == 0)
        throw std::invalid_argument("eigensolver on an empty operator");
    if (deflate.size() >= n)
        throw std::invalid_argument("deflation space covers the whole space");
    for (const auto &q : deflate)
        if (q.size() != n)
            throw std::invalid_argument("deflation vector has the wrong length");

    const auto N = static_cast<Eigen::Index>(n);
    const std::size_t complement_dim = n - deflate.size();
    const auto max_basis =
        static_cast<Eigen::Index>(std::max<std::size_t>(2, std::min(options.max_basis, complement_dim)));
    const auto keep = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::max<std::size_t>(1, options.keep)),
                                             max_basis - 1);

    MatrixXd V(N, max_basis), W(N, max_basis);
    Eigen::Index cols = 0;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    auto random_vector = [&] {
        VectorXd v(N);
        for (Eigen::Index i = 0; i < N; ++i)
            v[i] = gauss(rng);
        return v;
    };

    auto apply = [&](Eigen::Index col) {
        op(std::span<const double>(V.col(col).data(), n), std::span<double>(W.col(col).data(), n));
        // Keep the operator on the complement of the deflation space.
        VectorXd w = W.col(col);
        for (const auto &q : deflate) {
            Eigen::Map<const VectorXd> qv(q.data(), N);
            w -= qv.dot(w) * qv;
        }
        W.col(col) = w;
    };

    // Appends direction w to the basis; falls back to random vectors when w
    // lies in the span. Returns false once the basis spans the complement.
    auto append = [&](VectorXd w) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            const double before = w.norm();
            orthogonalize(w, deflate, V, cols);
            const double after = w.norm();
            if (after > 1e-10 * std::max(before, 1e-300) && after > 1e-300) {
                V.col(cols) = w / after;
                apply(cols);
                ++cols;
                return true;
            }
            if (static_cast<std::size_t>(cols) >= complement_dim)
                return false;
            w = random_vector();
        }
        return false;
    };

    EigenPair result;
    append(random_vector());
    VectorXd next;
    bool exhausted = false;
    for (std::size_t restart = 0;; ++restart) {
        while (cols < max_basis && !exhausted) {
            if (next.size() == N) {
                exhausted = !append(next);
                next.resize(0);
            } else {
                exhausted = !append(W.col(cols - 1));
            }
        }
        const MatrixXd H = V.leftCols(cols).transpose() * W.leftCols(cols);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (H + H.transpose()));
        const VectorXd s = es.eigenvectors().col(0);
        const double theta = es.eigenvalues()[0];
        VectorXd x = V.leftCols(cols) * s;
        const VectorXd r = W.leftCols(cols) * s - theta * x;
        const double res = r.norm();

        result.value = theta;
        result.residual = res;
        result.restarts = restart;
        const bool full = static_cast<std::size_t>(cols) >= complement_dim || exhausted;
        if (res <= options.tolerance || full || restart >= options.max_restarts) {
            result.converged = res <= options.tolerance || full;
            result.vector.assign(x.data(), x.data() + N);
            const double nx = norm(result.vector);
            for (auto &v : result.vector)
                v /= nx;
            return result;
        }
        // Thick restart: keep the lowest Ritz vectors and continue from the
        // residual of the target pair.
        const Eigen::Index k = std::min(keep, cols - 1);
        const MatrixXd S = es.eigenvectors().leftCols(k);
        const MatrixXd Vk = V.leftCols(cols) * S;
        const MatrixXd Wk = W.leftCols(cols) * S;
        V.leftCols(k) = Vk;
        W.leftCols(k) = Wk;
        cols = k;
        next = r;
    }
}

EigenPair largest_eigenpair(std::size_t n, const SymmetricOperator &op,
                            std::span<const std::vector<double>> deflate, const EigenOptions &options) {
    auto negated = [&](std::span<const double> x, std::span<double> y) {
        op(x, y);
        for (auto &v : y)
            v = -v;
    };
    EigenPair p = smallest_eigenpair(n, negated, deflate, options);
    p.value = -p.value;
    return p;
}

LbfgsResult lbfgs_minimize(std::vector<double> &x, const Objective &f, const LbfgsOptions &options) {
    const std::size_t n = x.size();
    std::vector<double> g(n), x_new(n), g_new(n), d(n);
    LbfgsResult result;
    double fx = f(x, g);
    result.evaluations = 1;

    struct Pair {
        std::vector<double> s, y;
        double rho;
    };
    std::deque<Pair> memory;
    std::vector<double> alpha_buf;

    auto inf_norm = [](const std::vector<double> &v) {
        double m = 0;
        for (double a : v)
            m = std::max(m, std::abs(a));
        return m;
    };

    for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
        if (inf_norm(g) <= options.gradient_tolerance) {
            result.converged = true;
            break;
        }
        // Two-loop recursion.
        d = g;
        alpha_buf.assign(memory.size(), 0.0);
        for (std::size_t k = memory.size(); k-- > 0;) {
            alpha_buf[k] = memory[k].rho * dot(memory[k].s, d);
            for (std::size_t i = 0; i < n; ++i)
                d[i] -= alpha_buf[k] * memory[k].y[i];
        }
        double gamma = 1.0;
        if (!memory.empty()) {
            const auto &last = memory.back();
            gamma = dot(last.s, last.y) / dot(last.y, last.y);
        } else {
            gamma = 1.0 / std::max(norm(g), 1e-300);
        }
        for (auto &v : d)
            v *= gamma;
        for (std::size_t k = 0; k < memory.size(); ++k) {
            const double beta = memory[k].rho * dot(memory[k].y, d);
            for (std::size_t i = 0; i < n; ++i)
                d[i] += (alpha_buf[k] - beta) * memory[k].s[i];
        }
        for (auto &v : d)
            v = -v;
        double slope = dot(g, d);
        if (!(slope < 0)) {
            memory.clear();
            for (std::size_t i = 0; i < n; ++i)
                d[i] = -g[i] / std::max(norm(g), 1e-300);
            slope = dot(g, d);
        }

        double step = 1.0;
        double f_new = 0;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            for (std::size_t i = 0; i < n; ++i)
                x_new[i] = x[i] + step * d[i];
            f_new = f(x_new, g_new);
            ++result.evaluations;
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            break;

        Pair p{std::vector<double>(n), std::vector<double>(n), 0};
        for (std::size_t i = 0; i < n; ++i) {
            p.s[i] = x_new[i] - x[i];
            p.y[i] = g_new[i] - g[i];
        }
        const double sy = dot(p.s, p.y);
        if (sy > 1e-300) {
            p.rho = 1.0 / sy;
            memory.push_back(std::move(p));
            if (memory.size() > options.history)
                memory.pop_front();
        }
        const double progress = fx - f_new;
        x.swap(x_new);
        g.swap(g_new);
        fx = f_new;
        if (progress <= options.relative_tolerance * std::max(1.0, std::abs(fx))) {
            result.converged = inf_norm(g) <= options.gradient_tolerance;
            ++result.iterations;
            break;
        }
    }
    result.value = fx;
    return result;
}

} // namespace ncpkit::linalg
