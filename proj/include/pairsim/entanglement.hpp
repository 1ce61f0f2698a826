#pragma once

#include <complex>

#include <Eigen/Dense>

#include "pairsim/exact_solver.hpp"
#include "pairsim/matrix_functions.hpp"

namespace pairsim {

/// Base-2 binary entropy h(f); throws DomainError outside [0, 1] by more than 1e-12.
double binary_entropy(double f);

/// 2 max(|<c+_k c+_kbar c_k'bar c_k'>| - sqrt(nn * tilde_tilde), 0).
double concurrence_closed(const FourModeEvenBlock& block);

using Matrix8c = Eigen::Matrix<std::complex<double>, 8, 8>;
using Vector8c = Eigen::Matrix<std::complex<double>, 8, 1>;

/// The conjugation T = [[0, I4], [I4, 0]] acting in the even-parity basis
/// {|0>, c1+c2+|0>, c1+c3+|0>, c1+c4+|0>, -|0bar>, c2c1|0bar>, c3c1|0bar>, c4c1|0bar>}
/// with |0bar> = c1+c2+c3+c4+|0>.
Matrix8c parity_conjugation();

/// Even-parity density matrix of four fermion modes, validated on construction
/// (Hermitian, trace 1, min eigenvalue >= -1e-12).
class EvenParityState8 {
public:
    explicit EvenParityState8(const Matrix8c& rho);

    /// Embeds the four-mode block with modes (1, 2, 3, 4) = (k, kbar, k', k'bar).
    static EvenParityState8 from_block(const FourModeEvenBlock& block);
    /// |psi><psi| for a normalized even-parity vector.
    static EvenParityState8 from_pure(const Vector8c& psi);

    const Matrix8c& matrix() const { return rho_; }

private:
    Matrix8c rho_;
};

/// Max(2 lambda_max - Tr R, 0), R = sqrt(rho^1/2 T rho* T rho^1/2).
/// `conj` defaults to parity_conjugation(); it is a parameter so the oracle
/// suite can be mutation-tested.
double concurrence_general(const EvenParityState8& rho, const Matrix8c& conj = parity_conjugation());

struct FormationEntanglement {
    double e_qsp = 0.0;  ///< four-mode entanglement of formation, 4 h(f+)
    double e_pair = 0.0; ///< bipartite (k kbar | k' k'bar) value, h(f+)
};

FormationEntanglement eof_from_concurrence(double c);

/// h(f_k) + h(f_k') - S(block).
double mutual_information(const FourModeEvenBlock& block);

/// The four-mode block viewed as two qubits (pair full = up).
/// Bloch vectors lie on z; the correlation tensor is diag(cxx, cxx, czz).
struct TwoQubitRep {
    double rz_a = 0.0;
    double rz_b = 0.0;
    double cxx = 0.0;
    double czz = 0.0;

    /// rho = rho_a rho_b + 1/4 C_{mu nu} sigma^mu sigma^nu, in the block basis order.
    Eigen::Matrix4d matrix() const;
};

TwoQubitRep two_qubit_rep(const FourModeEvenBlock& block);

/// S(A | B) after a projective measurement on B along (sin theta, 0, cos theta).
double conditional_entropy(const TwoQubitRep& rep, double theta);

struct DiscordResult {
    double value = 0.0;
    double theta = 0.0;            ///< minimizing measurement angle
    double conditional = 0.0;      ///< min_theta S(A|B_theta)
};

/// Discord D(A|B), measurement on B = (k', k'bar): minimized on a 181-point
/// grid over [0, pi/2] and refined by golden section to 1e-10 in theta.
DiscordResult discord_detail(const FourModeEvenBlock& block);
double discord(const FourModeEvenBlock& block);

/// Closed-form strong-coupling values for half filling.
struct StrongCouplingLimits {
    int omega = 0;
    double nn = 0.0;       ///< (omega - 2) / (4 (omega - 1))
    double inner = 0.0;    ///< omega / (4 (omega - 1))
    double c = 0.0;        ///< 1 / (omega - 1)
    double i_approx = 0.0; ///< (1 + 1/omega) / 2
    double s_approx = 0.0; ///< (3 - 1/omega) / 2
    double d_approx = 0.0; ///< (1 - log2(3)/2)(3 + 1/omega) / 2
    double d_inf = 0.0;    ///< 3/2 - 3 log2(3) / 4
};

StrongCouplingLimits strong_coupling_limits(int omega);

/// The four-mode block of the uniform-amplitude state (f = 1/2 everywhere).
FourModeEvenBlock strong_coupling_block(int omega);

} // namespace pairsim
