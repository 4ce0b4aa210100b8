#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sqz/errors.hpp"

// N-mode Bogoliubov transformations phi = [[U, conj V], [V, conj U]] in
// SU(N,N), quasi-free states P on C^N + C^N, the constructive
// diagonalization to gauge-invariant form, and the Z-matrix picture of
// squeezed states.

namespace sqz::bogoliubov {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// The signature matrix S = diag(1_N, -1_N).
Matrix s_matrix(Eigen::Index n);

/// The antilinear involution J applied to a vector: J(f + g) = conj g + conj f.
Vector j_apply(const Vector& v);

/// J P J as a matrix (J is antilinear, so this conjugates the entries).
Matrix j_sandwich(const Matrix& p);

struct BogoliubovN {
  Matrix U;
  Matrix V;

  Eigen::Index modes() const { return U.rows(); }
  Matrix phi() const;       // 2N x 2N block matrix
  Matrix phi_star() const;  // its adjoint

  static BogoliubovN identity(Eigen::Index n);
  /// phi_tau for one mode: U = cosh r, V = e^{-i theta} sinh r.
  static BogoliubovN single_mode(double r, double theta);
};

struct Violation {
  std::string relation;
  double residual;
};

/// Empty iff phi S phi* = S and J phi* = phi* J within tol (max-norm),
/// i.e. U*U - V*V = 1 and U* conj(V) = V* conj(U).
std::vector<Violation> validate(const BogoliubovN& phi, double tol);
bool is_valid(const BogoliubovN& phi, double tol);

/// Group product (apply `first`, then `second`) and inverse S phi* S.
BogoliubovN compose(const BogoliubovN& second, const BogoliubovN& first);
BogoliubovN inverse(const BogoliubovN& phi);

struct QuasiFreeState {
  Matrix P;  // 2N x 2N, P* S = S P, S P >= 0, P + J P J = 1

  Eigen::Index modes() const { return P.rows() / 2; }
  static QuasiFreeState vacuum(Eigen::Index n);
};

/// Gauge-invariant state P_rho = diag(1 + rho, -rho), rho_i >= 0.
QuasiFreeState gauge_state(const std::vector<double>& rho_diag);

/// State transport P -> (phi*)^{-1} P phi*.
QuasiFreeState act_on_state(const BogoliubovN& phi, const QuasiFreeState& state);

/// True iff ||P^2 - P||_max <= tol.
bool is_pure(const QuasiFreeState& state, double tol);

struct Diagonalization {
  BogoliubovN phi;          // phi* P (phi*)^{-1} is gauge-invariant diagonal
  std::vector<double> rho;  // occupations, sorted ascending
};

/// Constructive diagonalization: eigenbasis of (S P~)^{1/2} S (S P~)^{1/2}
/// with P~ = P - 1/2, S-orthonormalized on the positive eigenspaces.
/// Throws DomainError when S P~ is not positive definite within tol.
Diagonalization diagonalize(const QuasiFreeState& state, double tol);

struct ZMatrix {
  Matrix Z;  // symmetric strict contraction
};

/// Z = -(U*)^{-1} V*; satisfies Z = Z^t and Z Z* = 1 - (U U*)^{-1}.
ZMatrix z_matrix(const BogoliubovN& phi);

/// Canonical preimage: U = (1 - Z Z*)^{-1/2} (Hermitian positive root),
/// V = -conj(Z) U. Right-unitary gauge freedom is fixed by this choice.
BogoliubovN phi_from_z(const ZMatrix& z);

struct TakagiFactorization {
  Matrix W;           // unitary
  Eigen::VectorXd D;  // singular values, descending
};

/// Takagi factorization Z = W^t diag(D) W of a complex symmetric matrix.
/// SVD-based; repeated singular values are resolved by the unitary that
/// symmetrizes the degenerate block (principal square root of that block).
TakagiFactorization takagi(const ZMatrix& z);

/// Squared norm of the unnormalized squeezed vector,
/// det(1 - Z Z*)^{-1/2}; determinant route.
double norm_constant(const ZMatrix& z);
/// The norm itself, det(1 - Z Z*)^{-1/4}.
double norm_constant_root(const ZMatrix& z);
/// Product form prod_i (1 - D_i^2)^{-1/2} over the Takagi singular values.
double norm_constant_product(const ZMatrix& z);

/// Occupation distribution of a thermal mode: p_k = (1 - q) q^k with
/// q = rho / (1 + rho), k = 0..n_max.
std::vector<double> thermal_occupations(double rho, int n_max);

}  // namespace sqz::bogoliubov
