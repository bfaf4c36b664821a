/*
 * Copyright 2026 The ezone Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ezone/qp.hpp"

#include "ezone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ezone::opt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Inequalities G x >= h, where G stacks the dense rows of C and signed unit
// rows for the finite variable bounds.
class Inequalities
{
public:
    explicit Inequalities(const QpProblem& qp) : c_(qp.C)
    {
        const auto n = qp.g.size();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (qp.lower.size() == n && std::isfinite(qp.lower[i]))
                bounds_.push_back({i, 1.0, qp.lower[i]});
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            if (qp.upper.size() == n && std::isfinite(qp.upper[i]))
                bounds_.push_back({i, -1.0, -qp.upper[i]});
        }
        h_.resize(rows());
        if (dense() > 0)
            h_.head(dense()) = qp.d;
        for (std::size_t k = 0; k < bounds_.size(); ++k)
            h_[dense() + static_cast<Eigen::Index>(k)] = bounds_[k].rhs;
    }

    [[nodiscard]] Eigen::Index dense() const { return c_.rows(); }
    [[nodiscard]] Eigen::Index rows() const { return c_.rows() + static_cast<Eigen::Index>(bounds_.size()); }
    [[nodiscard]] const VectorXd& rhs() const { return h_; }

    [[nodiscard]] VectorXd apply(const VectorXd& x) const
    {
        VectorXd out(rows());
        if (dense() > 0)
            out.head(dense()).noalias() = c_ * x;
        for (std::size_t k = 0; k < bounds_.size(); ++k)
            out[dense() + static_cast<Eigen::Index>(k)] = bounds_[k].sign * x[bounds_[k].index];
        return out;
    }

    [[nodiscard]] VectorXd apply_transpose(const VectorXd& v, Eigen::Index n) const
    {
        VectorXd out = VectorXd::Zero(n);
        if (dense() > 0)
            out.noalias() += c_.transpose() * v.head(dense());
        for (std::size_t k = 0; k < bounds_.size(); ++k)
            out[bounds_[k].index] += bounds_[k].sign * v[dense() + static_cast<Eigen::Index>(k)];
        return out;
    }

    // M += G' diag(w) G
    void add_normal(const VectorXd& w, MatrixXd& m) const
    {
        if (dense() > 0) {
            const MatrixXd scaled = w.head(dense()).cwiseSqrt().asDiagonal() * c_;
            m.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
        }
        for (std::size_t k = 0; k < bounds_.size(); ++k)
            m(bounds_[k].index, bounds_[k].index) += w[dense() + static_cast<Eigen::Index>(k)];
    }

    void split_bound_multipliers(const VectorXd& z, Eigen::Index n, VectorXd& lower, VectorXd& upper) const
    {
        lower = VectorXd::Zero(n);
        upper = VectorXd::Zero(n);
        for (std::size_t k = 0; k < bounds_.size(); ++k) {
            const double zk = z[dense() + static_cast<Eigen::Index>(k)];
            (bounds_[k].sign > 0 ? lower : upper)[bounds_[k].index] += zk;
        }
    }

private:
    struct Bound
    {
        Eigen::Index index;
        double sign;
        double rhs;
    };

    const MatrixXd& c_;
    std::vector<Bound> bounds_;
    VectorXd h_;
};

double max_step(const VectorXd& v, const VectorXd& dv)
{
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv[i] < 0.0)
            alpha = std::min(alpha, -v[i] / dv[i]);
    }
    return alpha;
}

}  // namespace

QpSolution solve_qp(const QpProblem& qp, const QpOptions& options)
{
    const Eigen::Index n = qp.g.size();
    const Eigen::Index me = qp.A.rows();
    if (qp.H.rows() != n || qp.H.cols() != n || (me > 0 && qp.A.cols() != n) ||
        (qp.C.rows() > 0 && qp.C.cols() != n) || qp.b.size() != me || qp.d.size() != qp.C.rows())
        throw ArgumentError("solve_qp: inconsistent dimensions");

    const Inequalities ineq(qp);
    const Eigen::Index mi = ineq.rows();
    const VectorXd& h = ineq.rhs();

    VectorXd x = VectorXd::Zero(n);
    VectorXd y = VectorXd::Zero(me);
    VectorXd s = (ineq.apply(x) - h).cwiseMax(1.0);
    VectorXd z = VectorXd::Ones(mi);

    const double scale_p = 1.0 + (me > 0 ? qp.b.lpNorm<Eigen::Infinity>() : 0.0);
    const double scale_g = 1.0 + (mi > 0 ? h.cwiseAbs().cwiseMin(1e6).maxCoeff() : 0.0);

    QpSolution out;
    struct Iterate
    {
        VectorXd x, y, s, z;
    };
    Iterate best{x, y, s, z};
    double best_score = std::numeric_limits<double>::infinity();
    MatrixXd m(n, n);
    Eigen::LLT<MatrixXd> llt;
    MatrixXd minv_at;
    Eigen::LDLT<MatrixXd> schur;

    for (int it = 0; it < options.max_iterations; ++it) {
        const VectorXd gx = ineq.apply(x);
        const VectorXd r_d = qp.H * x + qp.g - (me > 0 ? VectorXd(qp.A.transpose() * y) : VectorXd::Zero(n)) -
                             ineq.apply_transpose(z, n);
        const VectorXd r_p = me > 0 ? VectorXd(qp.A * x - qp.b) : VectorXd();
        const VectorXd r_g = gx - s - h;
        const double mu = mi > 0 ? s.dot(z) / static_cast<double>(mi) : 0.0;

        out.iterations = it;
        const double dual_err = (r_d.cwiseAbs().array() / (1.0 + qp.g.cwiseAbs().array())).maxCoeff();
        const double eq_err = me > 0 ? r_p.lpNorm<Eigen::Infinity>() / scale_p : 0.0;
        const double ineq_err = mi > 0 ? r_g.lpNorm<Eigen::Infinity>() / scale_g : 0.0;
        const double err = std::max({dual_err, eq_err, ineq_err});
        if (!std::isfinite(err) || !std::isfinite(mu))
            break;
        if (err <= options.tolerance && mu <= options.complementarity_tolerance) {
            out.converged = true;
            best = {x, y, s, z};
            break;
        }
        // Roundoff can stall the residuals once mu is tiny; keep the best iterate.
        const double score = std::max(err / options.tolerance, mu / options.complementarity_tolerance);
        if (score < best_score) {
            best_score = score;
            best = {x, y, s, z};
        }

        const VectorXd w = z.cwiseQuotient(s);
        m = qp.H;
        ineq.add_normal(w, m);
        m.triangularView<Eigen::StrictlyUpper>() = m.transpose().triangularView<Eigen::StrictlyUpper>();
        // Symmetric equilibration keeps the barrier weights' dynamic range out
        // of the factorization; the small shift only affects refinement speed.
        const VectorXd eq = m.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
        const MatrixXd scaled = eq.asDiagonal() * m * eq.asDiagonal();
        double reg = 1e-14;
        for (int attempt = 0; attempt < 12; ++attempt) {
            llt.compute(scaled + reg * MatrixXd::Identity(n, n));
            if (llt.info() == Eigen::Success)
                break;
            reg *= 100.0;
        }
        auto m_solve = [&](const VectorXd& r) -> VectorXd { return eq.cwiseProduct(llt.solve(eq.cwiseProduct(r))); };
        auto m_solve_cols = [&](const MatrixXd& r) -> MatrixXd {
            return eq.asDiagonal() * llt.solve(eq.asDiagonal() * r);
        };
        if (me > 0) {
            minv_at = m_solve_cols(qp.A.transpose());
            schur.compute(qp.A * minv_at);
        }

        // Solves [M -A'; A 0] (dx, dy) = (r1, r2) with refinement against the
        // unregularized matrix.
        auto reduced = [&](const VectorXd& r1, const VectorXd& r2, VectorXd& dx, VectorXd& dy) {
            auto once = [&](const VectorXd& a, const VectorXd& b, VectorXd& px, VectorXd& py) {
                const VectorXd base = m_solve(a);
                if (me > 0) {
                    py = schur.solve(b - qp.A * base);
                    px = base + minv_at * py;
                } else {
                    py.resize(0);
                    px = base;
                }
            };
            once(r1, r2, dx, dy);
            for (int pass = 0; pass < 3; ++pass) {
                VectorXd e1 = r1 - m.selfadjointView<Eigen::Lower>() * dx;
                if (me > 0)
                    e1.noalias() += qp.A.transpose() * dy;
                const VectorXd e2 = me > 0 ? VectorXd(r2 - qp.A * dx) : VectorXd();
                VectorXd cx, cy;
                once(e1, e2, cx, cy);
                dx += cx;
                if (me > 0)
                    dy += cy;
            }
        };

        // Newton step for complementarity target rc (s o z -> s o z + rc).
        auto newton = [&](const VectorXd& rc, VectorXd& dx, VectorXd& dy, VectorXd& ds, VectorXd& dz) {
            const VectorXd t = (rc - z.cwiseProduct(r_g)).cwiseQuotient(s);
            reduced(-r_d + ineq.apply_transpose(t, n), me > 0 ? VectorXd(-r_p) : VectorXd(), dx, dy);
            ds = ineq.apply(dx) + r_g;
            dz = (rc - z.cwiseProduct(ds)).cwiseQuotient(s);
        };

        VectorXd dx, dy, ds, dz;
        const VectorXd sz = s.cwiseProduct(z);
        newton(-sz, dx, dy, ds, dz);
        const double ap_aff = max_step(s, ds);
        const double ad_aff = max_step(z, dz);
        double sigma = 0.0;
        if (mi > 0) {
            const double mu_aff = (s + ap_aff * ds).dot(z + ad_aff * dz) / static_cast<double>(mi);
            sigma = std::pow(std::clamp(mu_aff / std::max(mu, 1e-300), 0.0, 1.0), 3);
        }
        const VectorXd rc = -sz - ds.cwiseProduct(dz) + VectorXd::Constant(mi, sigma * mu);
        newton(rc, dx, dy, ds, dz);

        // One step length for primal and dual: with H != 0 the dual residual
        // depends on x, so split lengths stall it.
        const double alpha = std::min(1.0, 0.99 * std::min(max_step(s, ds), max_step(z, dz)));
        x += alpha * dx;
        s += alpha * ds;
        if (me > 0)
            y += alpha * dy;
        z += alpha * dz;
        out.iterations = it + 1;
    }

    out.x = std::move(best.x);
    out.y = std::move(best.y);
    out.z = best.z.head(ineq.dense());
    ineq.split_bound_multipliers(best.z, n, out.z_lower, out.z_upper);
    return out;
}

}  // namespace ezone::opt
