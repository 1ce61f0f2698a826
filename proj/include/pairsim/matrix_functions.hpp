#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pairsim/errors.hpp"

namespace pairsim {

/// -x log2 x with the 0 log 0 = 0 convention; arguments are clamped to [0, 1].
inline double entropy_term(double x)
{
    if (x <= 0.0 || x >= 1.0)
        return 0.0;
    return -x * std::log2(x);
}

/// Eigenvalues of a Hermitian matrix, ascending.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m)
{
    using Plain = typename Derived::PlainObject;
    const Plain sym = (m + m.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().template cast<double>();
}

/// Square root of a Hermitian PSD matrix; small negative eigenvalues are clamped to 0.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& m)
{
    using Plain = typename Derived::PlainObject;
    const Plain sym = (m + m.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

/// Base-2 logarithm of a Hermitian positive-definite matrix.
template <typename Derived>
typename Derived::PlainObject hermitian_log2(const Eigen::MatrixBase<Derived>& m)
{
    using Plain = typename Derived::PlainObject;
    const Plain sym = (m + m.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    Eigen::VectorXd logs = es.eigenvalues();
    for (Eigen::Index i = 0; i < logs.size(); ++i) {
        if (!(logs[i] > 0.0))
            throw DomainError("matrix logarithm of a singular matrix");
        logs[i] = std::log2(logs[i]);
    }
    return es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().adjoint();
}

/// Von Neumann entropy -Tr rho log2 rho of a unit-trace Hermitian PSD matrix.
template <typename Derived>
double vn_entropy(const Eigen::MatrixBase<Derived>& rho)
{
    if (rho.rows() != rho.cols())
        throw DimensionError("density matrix must be square");
    const double tr = std::real(rho.trace());
    if (std::abs(tr - 1.0) > 1e-8)
        throw ValidationError("density matrix trace deviates from 1");
    const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        s += entropy_term(ev[i]);
    return s;
}

} // namespace pairsim
