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

#include <ncpkit/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include <ncpkit/linalg.hpp>

namespace ncpkit {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void laplacian_apply(const Graph &g, std::span<const double> x, std::span<double> y) {
    for (node u = 0; u < g.num_nodes(); ++u) {
        double acc = static_cast<double>(g.degree(u)) * x[u];
        for (node v : g.neighbors(u))
            acc -= x[v];
        y[u] = acc;
    }
}

MatrixXd dense_laplacian(const Graph &g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    MatrixXd L = MatrixXd::Zero(n, n);
    for (node u = 0; u < g.num_nodes(); ++u) {
        L(u, u) = static_cast<double>(g.degree(u));
        for (node v : g.neighbors(u))
            L(u, v) = -1.0;
    }
    return L;
}

std::vector<double> degrees(const Graph &g) {
    std::vector<double> d(g.num_nodes());
    for (node u = 0; u < g.num_nodes(); ++u)
        d[u] = static_cast<double>(g.degree(u));
    return d;
}

double rayleigh_residual(const Graph &g, const std::vector<double> &x, double lambda) {
    std::vector<double> lx(x.size());
    laplacian_apply(g, x, lx);
    double num = 0, den = 0;
    for (node u = 0; u < g.num_nodes(); ++u) {
        const double dx = static_cast<double>(g.degree(u)) * x[u];
        num += (lx[u] - lambda * dx) * (lx[u] - lambda * dx);
        den += dx * dx;
    }
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

void fix_sign(std::vector<double> &x) {
    double scale = 0;
    for (double v : x)
        scale = std::max(scale, std::abs(v));
    for (double v : x) {
        if (std::abs(v) > 1e-12 * scale) {
            if (v < 0)
                for (auto &w : x)
                    w = -w;
            return;
        }
    }
}

} // namespace

SpectralCertificate spectral_lower_bound(const Graph &g, const SpectralOptions &options) {
    const count n = g.num_nodes();
    if (n < 2)
        throw std::invalid_argument("spectral bound needs at least two nodes");
    SpectralCertificate cert;
    const auto components = connected_components(g);
    if (components.size() > 1) {
        cert.connected = false;
        cert.x_hat.assign(n, 0.0);
        const count total = g.total_volume();
        const std::vector<node> *pick = nullptr;
        count vol = 0;
        for (const auto &c : components) {
            vol = 0;
            for (node u : c)
                vol += g.degree(u);
            if (vol > 0 && vol < total) {
                pick = &c;
                break;
            }
        }
        if (pick) {
            for (node u = 0; u < n; ++u)
                cert.x_hat[u] = -1.0 / static_cast<double>(total - vol);
            for (node u : *pick)
                cert.x_hat[u] = 1.0 / static_cast<double>(vol);
        } else {
            // Some node is isolated; its indicator is orthogonal to d.
            for (const auto &c : components)
                if (c.size() == 1 && g.degree(c.front()) == 0) {
                    cert.x_hat[c.front()] = 1.0;
                    break;
                }
        }
        const double nx = linalg::norm(cert.x_hat);
        for (auto &v : cert.x_hat)
            v /= nx;
        fix_sign(cert.x_hat);
        cert.lambda = 0;
        cert.bound_any_size = 0;
        cert.residual = rayleigh_residual(g, cert.x_hat, 0.0);
        return cert;
    }

    const auto d = degrees(g);
    std::vector<double> inv_sqrt(n), q(n);
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0, dsum = 0;
    for (node u = 0; u < n; ++u) {
        inv_sqrt[u] = 1.0 / std::sqrt(d[u]);
        q[u] = std::sqrt(d[u]);
        dmin = std::min(dmin, d[u]);
        dmax = std::max(dmax, d[u]);
        dsum += d[u];
    }
    for (auto &v : q)
        v /= std::sqrt(dsum);
    auto op = [&](std::span<const double> y, std::span<double> out) {
        for (node u = 0; u < n; ++u) {
            double acc = y[u];
            for (node v : g.neighbors(u))
                acc -= inv_sqrt[u] * inv_sqrt[v] * y[v];
            out[u] = acc;
        }
    };
    std::vector<std::vector<double>> deflate{q};
    linalg::EigenOptions eo;
    eo.seed = options.seed;
    eo.max_basis = std::min<std::size_t>(n - 1, 96);
    eo.tolerance = 0.1 * options.tolerance * std::sqrt(dmin / dmax);
    std::vector<double> x(n);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const auto pair = linalg::smallest_eigenpair(n, op, deflate, eo);
        for (node u = 0; u < n; ++u)
            x[u] = pair.vector[u] * inv_sqrt[u];
        std::vector<double> lx(n);
        laplacian_apply(g, x, lx);
        double num = 0, den = 0;
        for (node u = 0; u < n; ++u) {
            num += x[u] * lx[u];
            den += d[u] * x[u] * x[u];
        }
        cert.lambda = num / den;
        cert.residual = rayleigh_residual(g, x, cert.lambda);
        cert.converged = pair.converged && cert.residual <= options.tolerance;
        if (cert.converged)
            break;
        eo.tolerance *= 0.01;
        eo.max_restarts *= 2;
    }
    const double nx = linalg::norm(x);
    for (auto &v : x)
        v /= nx;
    fix_sign(x);
    cert.x_hat = std::move(x);
    cert.orthogonality = std::abs(linalg::dot(cert.x_hat, d)) / linalg::norm(d);
    cert.bound_any_size = cert.lambda / 2.0;

    if (n <= options.dense_check_limit) {
        MatrixXd N = dense_laplacian(g);
        for (node u = 0; u < n; ++u)
            for (node v = 0; v < n; ++v)
                N(u, v) *= inv_sqrt[u] * inv_sqrt[v];
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(N, Eigen::EigenvaluesOnly);
        cert.dense_lambda = es.eigenvalues()[1];
        if (std::abs(*cert.dense_lambda - cert.lambda) > 1e-8)
            cert.converged = false;
    }
    return cert;
}

double laplacian_norm(const Graph &g) {
    const count n = g.num_nodes();
    if (n == 0 || g.num_edges() == 0)
        return 0.0;
    if (n <= 300) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense_laplacian(g), Eigen::EigenvaluesOnly);
        return es.eigenvalues()[static_cast<Eigen::Index>(n) - 1];
    }
    linalg::EigenOptions eo;
    eo.tolerance = 1e-10 * static_cast<double>(g.max_degree());
    eo.max_basis = 96;
    auto op = [&](std::span<const double> x, std::span<double> y) { laplacian_apply(g, x, y); };
    const auto pair = linalg::largest_eigenpair(n, op, {}, eo);
    return pair.value + pair.residual;
}

DualCheck check_dual_certificate(const Graph &g, std::span<const double> u, double v, count dense_limit) {
    const count n = g.num_nodes();
    if (u.size() != n)
        throw std::invalid_argument("dual vector has the wrong length");
    const auto d = degrees(g);
    const double norm_l = laplacian_norm(g);
    DualCheck check;
    check.threshold = -1e-8 * norm_l;

    auto op = [&](std::span<const double> x, std::span<double> y) {
        laplacian_apply(g, x, y);
        const double dx = linalg::dot(d, x);
        for (node i = 0; i < n; ++i)
            y[i] = 0.25 * y[i] - u[i] * x[i] - v * d[i] * dx;
    };
    linalg::EigenOptions eo;
    eo.max_basis = std::min<std::size_t>(n, 300);
    eo.tolerance = 1e-11 * std::max(norm_l, 1.0);
    eo.seed = 0x5eed;
    const auto pair = linalg::smallest_eigenpair(n, op, {}, eo);
    check.min_eigenvalue = pair.value - pair.residual;

    if (n <= dense_limit) {
        MatrixXd M = 0.25 * dense_laplacian(g);
        for (node i = 0; i < n; ++i) {
            M(i, i) -= u[i];
            for (node j = 0; j < n; ++j)
                M(i, j) -= v * d[i] * d[j];
        }
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
        check.min_eigenvalue = std::min(check.min_eigenvalue, es.eigenvalues()[0]);
    }
    check.passed = check.min_eigenvalue >= check.threshold;
    return check;
}

namespace {

std::size_t default_rank(count n) {
    return std::min<std::size_t>(32, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n)))));
}

MatrixXd sparse_times(const Graph &g, const MatrixXd &R) {
    MatrixXd out(R.rows(), R.cols());
    for (node u = 0; u < g.num_nodes(); ++u) {
        Eigen::RowVectorXd acc = static_cast<double>(g.degree(u)) * R.row(u);
        for (node v : g.neighbors(u))
            acc -= R.row(v);
        out.row(u) = acc;
    }
    return out;
}

void normalize_rows(MatrixXd &R) {
    for (Eigen::Index i = 0; i < R.rows(); ++i) {
        const double nr = R.row(i).norm();
        if (nr > 0)
            R.row(i) /= nr;
        else {
            R.row(i).setZero();
            R(i, i % R.cols()) = 1.0;
        }
    }
}

void project_orthogonal(MatrixXd &R, const VectorXd &d) {
    const Eigen::RowVectorXd c = d.transpose() * R;
    R -= d * c / d.squaredNorm();
}

struct Feasibility {
    double row_error = 0;
    double orthogonality = 0;
};

Feasibility feasibility(const MatrixXd &R, const VectorXd &d) {
    Feasibility f;
    for (Eigen::Index i = 0; i < R.rows(); ++i)
        f.row_error = std::max(f.row_error, std::abs(R.row(i).norm() - 1.0));
    f.orthogonality = (d.transpose() * R).norm() / d.norm();
    return f;
}

// Alternating projections onto {R'd = 0} and unit rows.
void make_feasible(MatrixXd &R, const VectorXd &d) {
    for (int it = 0; it < 2000; ++it) {
        project_orthogonal(R, d);
        normalize_rows(R);
        const auto f = feasibility(R, d);
        if (f.orthogonality <= 1e-12 && f.row_error <= 1e-14)
            break;
    }
}

double primal_objective(const Graph &g, const MatrixXd &R) {
    return 0.25 * (R.array() * sparse_times(g, R).array()).sum();
}

struct PrimalResult {
    MatrixXd R;
    double value = 0;
    Eigen::RowVectorXd y;
    double sigma = 0;
    bool feasible = false;
};

// Burer-Monteiro descent with an augmented Lagrangian on R'd = 0 and
// Riemannian gradient steps on the product of spheres.
PrimalResult solve_primal(const Graph &g, const VectorXd &d, std::size_t rank, std::size_t iterations,
                          std::uint64_t seed, const MatrixXd *warm) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    const auto r = static_cast<Eigen::Index>(rank);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    MatrixXd R(n, r);
    MatrixXd padded;
    if (warm) {
        R.setZero();
        R.leftCols(warm->cols()) = *warm;
        padded = R;
        make_feasible(padded, d);
        // Small perturbation in the new directions lets the descent use them.
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = warm->cols(); j < r; ++j)
                R(i, j) = 1e-3 * gauss(rng);
    } else {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < r; ++j)
                R(i, j) = gauss(rng);
    }
    make_feasible(R, d);

    const double dd = d.squaredNorm();
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(r);
    double sigma = 10.0 / dd;
    const double sigma_max = 1e3 / dd;
    auto lagrangian = [&](const MatrixXd &X) {
        const Eigen::RowVectorXd c = d.transpose() * X;
        return primal_objective(g, X) + y.dot(c) + 0.5 * sigma * c.squaredNorm();
    };

    PrimalResult best;
    best.R = warm ? padded : R;
    best.value = primal_objective(g, best.R);
    best.feasible = true;
    double step = 0.1;
    std::size_t used = 0;
    for (int outer = 0; outer < 60 && used < iterations; ++outer) {
        double gn = 0;
        for (int it = 0; it < 500 && used < iterations; ++it, ++used) {
            const Eigen::RowVectorXd c = d.transpose() * R;
            MatrixXd G = 0.5 * sparse_times(g, R) + d * (y + sigma * c);
            const VectorXd radial = (G.array() * R.array()).rowwise().sum();
            G -= radial.asDiagonal() * R;
            gn = G.squaredNorm();
            if (gn < 1e-22)
                break;
            const double f0 = lagrangian(R);
            MatrixXd next;
            bool ok = false;
            for (int tries = 0; tries < 60; ++tries) {
                next = R - step * G;
                normalize_rows(next);
                if (lagrangian(next) <= f0 - 1e-4 * step * gn) {
                    ok = true;
                    break;
                }
                step *= 0.5;
            }
            if (!ok)
                break;
            R = std::move(next);
            step *= 2;
        }
        const Eigen::RowVectorXd c = d.transpose() * R;
        y += sigma * c;
        sigma = std::min(1.5 * sigma, sigma_max);
        if (c.norm() <= 1e-11 * d.norm() && gn < 1e-18)
            break;
    }

    MatrixXd feasible = R;
    make_feasible(feasible, d);
    const double value = primal_objective(g, feasible);
    const auto f = feasibility(feasible, d);
    if (f.row_error <= 1e-8 && f.orthogonality <= 1e-8 && value < best.value) {
        best.R = std::move(feasible);
        best.value = value;
    }
    best.y = y;
    best.sigma = sigma;
    return best;
}

// Orthonormal basis of the complement of d as a Householder reflection;
// columns 1..n-1 of H.
MatrixXd complement_basis(const VectorXd &d) {
    const auto n = d.size();
    VectorXd w = d / d.norm();
    w[0] += w[0] >= 0 ? 1.0 : -1.0;
    MatrixXd H = MatrixXd::Identity(n, n) - 2.0 * w * w.transpose() / w.squaredNorm();
    return H.rightCols(n - 1);
}

// Maximises sum(u) + n lambda_min(Q'(L/4 - Diag u)Q) through a log-sum-exp
// smoothing of lambda_min with decreasing temperature.
std::vector<double> polish_dual(const MatrixXd &QLQ, const MatrixXd &Q, std::vector<double> u) {
    const auto n = Q.rows();
    const auto k = Q.cols();
    for (double mu : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        auto objective = [&](std::span<const double> x, std::span<double> grad) {
            Eigen::Map<const VectorXd> uv(x.data(), n);
            const MatrixXd B = QLQ - Q.transpose() * uv.asDiagonal() * Q;
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(B);
            const VectorXd &lam = es.eigenvalues();
            VectorXd w(k);
            for (Eigen::Index i = 0; i < k; ++i)
                w[i] = std::exp(-(lam[i] - lam[0]) / mu);
            const double s = w.sum();
            w /= s;
            const double value = uv.sum() + static_cast<double>(n) * (lam[0] - mu * std::log(s));
            const MatrixXd X = Q * es.eigenvectors();
            const VectorXd g = VectorXd::Ones(n) - static_cast<double>(n) * (X.array().square().matrix() * w);
            for (Eigen::Index i = 0; i < n; ++i)
                grad[i] = -g[i];
            return -value;
        };
        linalg::LbfgsOptions lo;
        lo.max_iterations = 3000;
        lo.gradient_tolerance = 1e-9;
        linalg::lbfgs_minimize(u, objective, lo);
    }
    return u;
}

double complement_min_eigenvalue(const Graph &g, const std::vector<double> &u, const std::vector<double> &dhat,
                                 const MatrixXd *QLQ, const MatrixXd *Q) {
    const count n = g.num_nodes();
    if (QLQ) {
        Eigen::Map<const VectorXd> uv(u.data(), static_cast<Eigen::Index>(n));
        const MatrixXd B = *QLQ - Q->transpose() * uv.asDiagonal() * *Q;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(B, Eigen::EigenvaluesOnly);
        return es.eigenvalues()[0];
    }
    auto op = [&](std::span<const double> x, std::span<double> y) {
        laplacian_apply(g, x, y);
        for (node i = 0; i < n; ++i)
            y[i] = 0.25 * y[i] - u[i] * x[i];
    };
    linalg::EigenOptions eo;
    eo.max_basis = 96;
    eo.tolerance = 1e-11 * static_cast<double>(g.max_degree());
    std::vector<std::vector<double>> deflate{dhat};
    const auto pair = linalg::smallest_eigenpair(n, op, deflate, eo);
    return pair.value - pair.residual;
}

double dual_min_eigenvalue(const Graph &g, const std::vector<double> &u, double v, const std::vector<double> &d,
                           const MatrixXd *L) {
    const count n = g.num_nodes();
    if (L) {
        MatrixXd M = 0.25 * *L;
        Eigen::Map<const VectorXd> dv(d.data(), static_cast<Eigen::Index>(n));
        M -= v * dv * dv.transpose();
        for (node i = 0; i < n; ++i)
            M(i, i) -= u[i];
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
        return es.eigenvalues()[0];
    }
    auto op = [&](std::span<const double> x, std::span<double> y) {
        laplacian_apply(g, x, y);
        const double dx = linalg::dot(d, x);
        for (node i = 0; i < n; ++i)
            y[i] = 0.25 * y[i] - u[i] * x[i] - v * d[i] * dx;
    };
    linalg::EigenOptions eo;
    eo.max_basis = 128;
    eo.tolerance = 1e-11 * static_cast<double>(g.max_degree());
    const auto pair = linalg::smallest_eigenpair(n, op, {}, eo);
    return pair.value - pair.residual;
}

bool is_complete(const Graph &g) {
    const count n = g.num_nodes();
    return n >= 2 && g.num_edges() == n * (n - 1) / 2;
}

} // namespace

SdpCertificate sdp_lower_bound(const Graph &g, const SdpOptions &options) {
    const count n = g.num_nodes();
    if (n < 2)
        throw std::invalid_argument("sdp bound needs at least two nodes");
    if (!is_connected(g))
        throw std::invalid_argument("sdp bound requires a connected graph");
    const auto dvec = degrees(g);
    const Eigen::Map<const VectorXd> d(dvec.data(), static_cast<Eigen::Index>(n));
    const double vol = static_cast<double>(g.total_volume());
    SdpCertificate cert;
    cert.norm_l = laplacian_norm(g);

    if (is_complete(g) && n <= 64) {
        // L = nI - J: every feasible Y gives (1/4) L . Y = n^2 / 4; u = n/4 and
        // v = -1 / (4 (n-1)^2) make the dual matrix vanish.
        const double nd = static_cast<double>(n);
        cert.closed_form = true;
        cert.rank = n;
        MatrixXd R = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / nd);
        normalize_rows(R);
        cert.embedding.assign(R.data(), R.data() + R.size());
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            cert.embedding.data(), R.rows(), R.cols()) = R;
        cert.primal_value = primal_objective(g, R);
        cert.u.assign(n, nd / 4.0);
        cert.v = -1.0 / (4.0 * (nd - 1) * (nd - 1));
        cert.dual_value = nd * nd / 4.0;
        const auto f = feasibility(R, d);
        cert.row_error = f.row_error;
        cert.orthogonality = f.orthogonality;
    } else {
        const std::size_t rank = options.rank ? options.rank : default_rank(n);
        if (rank < 2)
            throw std::invalid_argument("sdp rank must be at least 2");
        MatrixXd warm;
        const MatrixXd *warm_ptr = nullptr;
        if (!options.warm_start.empty()) {
            if (options.warm_start_rank == 0 || options.warm_start_rank > rank ||
                options.warm_start.size() != n * options.warm_start_rank)
                throw std::invalid_argument("warm start has the wrong shape");
            warm = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                options.warm_start.data(), static_cast<Eigen::Index>(n),
                static_cast<Eigen::Index>(options.warm_start_rank));
            warm_ptr = &warm;
        }
        PrimalResult primal = solve_primal(g, d, rank, options.iterations, options.seed, warm_ptr);
        cert.rank = rank;
        cert.primal_value = primal.value;
        cert.embedding.resize(n * rank);
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            cert.embedding.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank)) = primal.R;
        const auto f = feasibility(primal.R, d);
        cert.row_error = f.row_error;
        cert.orthogonality = f.orthogonality;

        // Dual estimate from first-order conditions at the primal point.
        const Eigen::RowVectorXd c = d.transpose() * primal.R;
        const MatrixXd G = 0.5 * sparse_times(g, primal.R) + d * (primal.y + primal.sigma * c);
        std::vector<double> u(n);
        for (node i = 0; i < n; ++i)
            u[i] = 0.5 * G.row(i).dot(primal.R.row(i));

        std::vector<double> dhat(dvec);
        for (auto &x : dhat)
            x /= d.norm();
        MatrixXd Q, QLQ, L;
        const bool dense = n <= options.polish_limit;
        if (dense) {
            L = dense_laplacian(g);
            Q = complement_basis(d);
            QLQ = Q.transpose() * (0.25 * L) * Q;
            u = polish_dual(QLQ, Q, std::move(u));
        }
        const double shift =
            complement_min_eigenvalue(g, u, dhat, dense ? &QLQ : nullptr, dense ? &Q : nullptr);
        for (auto &x : u)
            x += shift;

        // Finite v: the d direction needs a large positive weight. Try a grid
        // and keep the value that survives the final shift best.
        double best_value = -std::numeric_limits<double>::infinity();
        double best_v = 0, best_shift = 0;
        for (double k_scale = 1.0; k_scale <= 1e6 * 1.0001; k_scale *= 10.0) {
            const double v = -k_scale * cert.norm_l / d.squaredNorm();
            const double lm = dual_min_eigenvalue(g, u, v, dvec, dense ? &L : nullptr);
            // Rounding slack of the eigenvalue estimate, scaled by the norm of M.
            const double margin = 1e-11 * cert.norm_l + 1e-13 * std::abs(v) * d.squaredNorm();
            double sum = 0;
            for (double x : u)
                sum += x;
            const double value = sum + static_cast<double>(n) * (lm - margin);
            if (value > best_value) {
                best_value = value;
                best_v = v;
                best_shift = lm - margin;
            }
        }
        for (auto &x : u)
            x += best_shift;
        cert.u = std::move(u);
        cert.v = best_v;
        cert.dual_value = 0;
        for (double x : cert.u)
            cert.dual_value += x;
    }

    cert.bound_at_half_volume = 2.0 * cert.dual_value / vol;
    const DualCheck check = check_dual_certificate(g, cert.u, cert.v);
    cert.min_eig_slack = check.min_eigenvalue;
    cert.certified = check.passed;
    const double gap = cert.primal_value - cert.dual_value;
    cert.converged = cert.row_error <= 1e-8 && cert.orthogonality <= 1e-8 && gap >= -1e-8 * std::max(1.0, cert.primal_value) &&
                     gap <= 1e-3 * std::max(1.0, cert.primal_value);
    return cert;
}

BoundsReport bounds_report(const Graph &g, const std::string &network, bool with_sdp,
                           const SpectralOptions &spectral, const SdpOptions &sdp) {
    BoundsReport report;
    report.network = network;
    report.spectral = spectral_lower_bound(g, spectral);
    report.spectral_lb = report.spectral.bound_any_size;
    report.certified = report.spectral.converged;
    report.sdp_lb = kNaN;
    report.ratio = kNaN;
    if (with_sdp) {
        report.sdp = sdp_lower_bound(g, sdp);
        report.sdp_lb = report.sdp->bound_at_half_volume;
        report.ratio = report.spectral_lb > 0 ? report.sdp_lb / report.spectral_lb : kNaN;
        report.certified = report.certified && report.sdp->certified;
    }
    return report;
}

void write_bounds_csv(std::ostream &out, std::span<const BoundsReport> rows) {
    out << "network,spectral_lb,sdp_lb_half_volume,ratio,certified\n";
    auto num = [](double x) {
        if (std::isnan(x))
            return std::string("nan");
        std::ostringstream s;
        s << std::fixed << std::setprecision(6) << x;
        return s.str();
    };
    for (const auto &r : rows)
        out << r.network << ',' << num(r.spectral_lb) << ',' << num(r.sdp_lb) << ',' << num(r.ratio) << ','
            << (r.certified ? "yes" : "flagged") << '\n';
}

} // namespace ncpkit
