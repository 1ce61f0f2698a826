#include "pairsim/lanczos.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pairsim/errors.hpp"

namespace pairsim {

LanczosResult lanczos_lowest(const LinearOperator& op, Eigen::VectorXd start,
                             const LanczosOptions& opts)
{
    const Eigen::Index n = start.size();
    if (n == 0)
        throw DimensionError("Lanczos on an empty space");
    const double start_norm = start.norm();
    if (!(start_norm > 0.0))
        throw ArgumentError("Lanczos start vector must be nonzero");

    const Eigen::Index m = std::min<Eigen::Index>(opts.max_krylov, n);
    Eigen::MatrixXd basis(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd v = start / start_norm;

    LanczosResult out;
    double last_residual = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
        basis.col(0) = v;
        double prev_theta = std::numeric_limits<double>::infinity();
        Eigen::VectorXd ritz;
        double theta = 0.0;
        Eigen::Index used = 0;

        for (Eigen::Index j = 0; j < m; ++j) {
            Eigen::VectorXd w = op(basis.col(j));
            alpha[j] = basis.col(j).dot(w);
            w -= alpha[j] * basis.col(j);
            if (j > 0)
                w -= beta[j - 1] * basis.col(j - 1);
            // two passes of classical Gram-Schmidt against the whole basis
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd h = basis.leftCols(j + 1).transpose() * w;
                w -= basis.leftCols(j + 1) * h;
            }
            beta[j] = w.norm();
            ++out.iterations;

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(alpha.head(j + 1), beta.head(j), Eigen::ComputeEigenvectors);
            theta = tri.eigenvalues()[0];
            ritz = tri.eigenvectors().col(0);
            used = j + 1;

            const double tol = opts.residual_tol * std::max(std::abs(theta), opts.scale);
            const double resid_est = std::abs(beta[j] * ritz[j]);
            const bool settled = std::abs(theta - prev_theta) <
                                 opts.eigenvalue_change_tol * std::max(1.0, std::abs(theta));
            const bool exhausted = beta[j] <= 1e-14 * std::max(std::abs(theta), opts.scale);
            if ((settled && resid_est < tol) || exhausted)
                break;
            prev_theta = theta;
            if (j + 1 < m)
                basis.col(j + 1) = w / beta[j];
        }

        Eigen::VectorXd x = basis.leftCols(used) * ritz;
        x.normalize();
        const Eigen::VectorXd hx = op(x);
        const double e = x.dot(hx);
        const double residual = (hx - e * x).norm();
        out.eigenvalue = e;
        out.vector = x;
        out.residual = residual;
        out.restarts = restart;
        last_residual = residual;
        if (residual <= opts.residual_tol * std::max(std::abs(e), opts.scale))
            return out;
        v = x;
    }
    throw SolverError("Lanczos did not converge; residual " + std::to_string(last_residual),
                      last_residual);
}

} // namespace pairsim
