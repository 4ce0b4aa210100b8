#include "sqz/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace sqz::bogoliubov {

namespace {

void require_square_same(const Matrix& u, const Matrix& v, const char* who) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows())
    throw DomainError(std::string(who) + ": U and V must be square of equal size");
}

double max_norm(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_symmetric(const Matrix& z, const char* who) {
  if (z.rows() != z.cols()) throw DomainError(std::string(who) + ": Z must be square");
  const double scale = std::max(1.0, max_norm(z));
  if (max_norm(z - z.transpose()) > 1e-12 * scale)
    throw DomainError(std::string(who) + ": Z must be symmetric");
}

/// Eigenvalues of Z Z* (Hermitian PSD); used for contraction checks.
Eigen::VectorXd zzstar_spectrum(const Matrix& z) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(z * z.adjoint());
  return es.eigenvalues();
}

void require_contraction(const Matrix& z, const char* who) {
  const auto spec = zzstar_spectrum(z);
  if (spec.size() > 0 && spec.maxCoeff() >= 1.0)
    throw DomainError(std::string(who) + ": Z must be a strict contraction");
}

}  // namespace

Matrix s_matrix(Eigen::Index n) {
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  s.bottomRightCorner(n, n) *= -1.0;
  return s;
}

Vector j_apply(const Vector& v) {
  const Eigen::Index n = v.size() / 2;
  Vector out(2 * n);
  out.head(n) = v.tail(n).conjugate();
  out.tail(n) = v.head(n).conjugate();
  return out;
}

Matrix j_sandwich(const Matrix& p) {
  const Eigen::Index n = p.rows() / 2;
  Matrix x = Matrix::Zero(2 * n, 2 * n);
  x.topRightCorner(n, n) = Matrix::Identity(n, n);
  x.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return x * p.conjugate() * x;
}

Matrix BogoliubovN::phi() const {
  const Eigen::Index n = modes();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = U;
  m.topRightCorner(n, n) = V.conjugate();
  m.bottomLeftCorner(n, n) = V;
  m.bottomRightCorner(n, n) = U.conjugate();
  return m;
}

Matrix BogoliubovN::phi_star() const { return phi().adjoint(); }

BogoliubovN BogoliubovN::identity(Eigen::Index n) {
  return {Matrix::Identity(n, n), Matrix::Zero(n, n)};
}

BogoliubovN BogoliubovN::single_mode(double r, double theta) {
  BogoliubovN phi;
  phi.U = Matrix::Constant(1, 1, Complex(std::cosh(r), 0.0));
  phi.V = Matrix::Constant(1, 1, std::polar(std::sinh(r), -theta));
  return phi;
}

std::vector<Violation> validate(const BogoliubovN& phi, double tol) {
  require_square_same(phi.U, phi.V, "validate");
  const Eigen::Index n = phi.modes();
  const Matrix id = Matrix::Identity(n, n);
  std::vector<Violation> out;
  const double r1 = max_norm(phi.U.adjoint() * phi.U - phi.V.adjoint() * phi.V - id);
  if (r1 > tol) out.push_back({"U*U - V*V = 1", r1});
  const double r2 =
      max_norm(phi.U.adjoint() * phi.V.conjugate() - phi.V.adjoint() * phi.U.conjugate());
  if (r2 > tol) out.push_back({"U* conj(V) = V* conj(U)", r2});
  return out;
}

bool is_valid(const BogoliubovN& phi, double tol) { return validate(phi, tol).empty(); }

BogoliubovN compose(const BogoliubovN& second, const BogoliubovN& first) {
  if (second.modes() != first.modes())
    throw DomainError("compose: dimension mismatch");
  return {second.U * first.U + second.V.conjugate() * first.V,
          second.V * first.U + second.U.conjugate() * first.V};
}

BogoliubovN inverse(const BogoliubovN& phi) {
  require_square_same(phi.U, phi.V, "inverse");
  return {phi.U.adjoint(), -phi.V.transpose()};
}

QuasiFreeState QuasiFreeState::vacuum(Eigen::Index n) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  p.topLeftCorner(n, n) = Matrix::Identity(n, n);
  return {p};
}

QuasiFreeState gauge_state(const std::vector<double>& rho_diag) {
  const Eigen::Index n = static_cast<Eigen::Index>(rho_diag.size());
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rho_diag[static_cast<size_t>(i)] < 0.0)
      throw DomainError("gauge_state: occupations must be >= 0");
    p(i, i) = 1.0 + rho_diag[static_cast<size_t>(i)];
    p(n + i, n + i) = -rho_diag[static_cast<size_t>(i)];
  }
  return {p};
}

QuasiFreeState act_on_state(const BogoliubovN& phi, const QuasiFreeState& state) {
  if (2 * phi.modes() != state.P.rows())
    throw DomainError("act_on_state: dimension mismatch");
  const auto violations = validate(phi, 1e-8);
  if (!violations.empty())
    throw DomainError("act_on_state: invalid Bogoliubov matrix (" +
                      violations.front().relation + ")");
  const Matrix s = s_matrix(phi.modes());
  // (phi*)^{-1} = S phi S
  return {s * phi.phi() * s * state.P * phi.phi_star()};
}

bool is_pure(const QuasiFreeState& state, double tol) {
  return max_norm(state.P * state.P - state.P) <= tol;
}

Diagonalization diagonalize(const QuasiFreeState& state, double tol) {
  const Eigen::Index n2 = state.P.rows();
  if (n2 % 2 != 0 || state.P.cols() != n2)
    throw DomainError("diagonalize: P must be square of even dimension");
  const Eigen::Index n = n2 / 2;
  const Matrix s = s_matrix(n);

  // S P~ with P~ = P - 1/2 must be Hermitian positive definite.
  Matrix sp = s * (state.P - 0.5 * Matrix::Identity(n2, n2));
  if (max_norm(sp - sp.adjoint()) > std::max(tol, 1e-10) * std::max(1.0, max_norm(sp)))
    throw DomainError("diagonalize: invalid state (S P~ not Hermitian)");
  sp = 0.5 * (sp + sp.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es_sp(sp);
  if (es_sp.eigenvalues().minCoeff() <= tol)
    throw DomainError("diagonalize: invalid state (S P~ not positive definite)");
  const Matrix root = es_sp.eigenvectors() *
                      es_sp.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
                      es_sp.eigenvectors().adjoint();
  Matrix k = root * s * root;
  k = 0.5 * (k + k.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);

  // Positive eigenvalues ascending; eigenvalues of K come in +- pairs.
  std::vector<Eigen::Index> pos;
  for (Eigen::Index i = 0; i < n2; ++i)
    if (es.eigenvalues()(i) > 0.0) pos.push_back(i);
  if (static_cast<Eigen::Index>(pos.size()) != n)
    throw DomainError("diagonalize: invalid state (spectrum not paired)");

  // v_i = S root chi_i are eigenvectors of P~; S-orthonormalize them.
  std::vector<Vector> basis;
  std::vector<double> rho;
  basis.reserve(static_cast<size_t>(n));
  for (Eigen::Index idx : pos) {
    Vector v = s * root * es.eigenvectors().col(idx);
    for (const Vector& u : basis) v -= (u.adjoint() * s * v)(0, 0) * u;
    const double norm_sq = ((v.adjoint() * s * v)(0, 0)).real();
    if (norm_sq <= 0.0)
      throw DomainError("diagonalize: S-norm collapse on positive eigenspace");
    basis.push_back(v / std::sqrt(norm_sq));
    rho.push_back(std::max(es.eigenvalues()(idx) - 0.5, 0.0));
  }

  // B = [v_1..v_N | J v_1..J v_N] satisfies B* S B = S, so phi = S B S.
  Matrix b(n2, n2);
  for (Eigen::Index i = 0; i < n; ++i) {
    b.col(i) = basis[static_cast<size_t>(i)];
    b.col(n + i) = j_apply(basis[static_cast<size_t>(i)]);
  }
  const Matrix phi_full = s * b * s;
  BogoliubovN phi{phi_full.topLeftCorner(n, n), phi_full.bottomLeftCorner(n, n)};
  return {std::move(phi), std::move(rho)};
}

ZMatrix z_matrix(const BogoliubovN& phi) {
  require_square_same(phi.U, phi.V, "z_matrix");
  // Z = -(U*)^{-1} V*
  return {-phi.U.adjoint().partialPivLu().solve(phi.V.adjoint())};
}

BogoliubovN phi_from_z(const ZMatrix& z) {
  require_symmetric(z.Z, "phi_from_z");
  const Eigen::Index n = z.Z.rows();
  const Matrix one_minus = Matrix::Identity(n, n) - z.Z * z.Z.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (one_minus + one_minus.adjoint()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DomainError("phi_from_z: Z must be a strict contraction");
  if (es.eigenvalues().minCoeff() < 1e-10)
    std::cerr << "squeezeflow: phi_from_z: 1 - Z Z* nearly singular, "
                 "min eigenvalue "
              << es.eigenvalues().minCoeff() << "\n";
  Eigen::VectorXd inv_root = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix u = es.eigenvectors() * inv_root.cast<Complex>().asDiagonal() *
                   es.eigenvectors().adjoint();
  return {u, -z.Z.conjugate() * u};
}

TakagiFactorization takagi(const ZMatrix& z) {
  require_symmetric(z.Z, "takagi");
  const Eigen::Index n = z.Z.rows();
  if (n == 0) return {Matrix(0, 0), Eigen::VectorXd(0)};

  Eigen::JacobiSVD<Matrix> svd(z.Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  const Matrix a = svd.matrixU();

  // For symmetric Z the unitary C = A^t B commutes with Sigma and is
  // symmetric on every degenerate block; X = sqrt(conj C) then symmetrizes:
  // Z = (A X) Sigma (A X)^t.
  const Matrix c_conj = (a.transpose() * svd.matrixV()).conjugate();
  Matrix x = Matrix::Identity(n, n);
  const double cluster_tol = 1e-8 * (1.0 + sigma(0));
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && sigma(stop - 1) - sigma(stop) <= cluster_tol) ++stop;
    const Eigen::Index len = stop - start;
    if (sigma(start) > 1e-14 * (1.0 + sigma(0))) {
      Matrix block = c_conj.block(start, start, len, len);
      block = 0.5 * (block + block.transpose());
      if (len == 1) {
        x(start, start) = std::sqrt(block(0, 0));
      } else {
        Eigen::ComplexEigenSolver<Matrix> es(block);
        Vector roots = es.eigenvalues();
        for (Eigen::Index i = 0; i < len; ++i) roots(i) = std::sqrt(roots(i));
        x.block(start, start, len, len) = es.eigenvectors() * roots.asDiagonal() *
                                          es.eigenvectors().inverse();
      }
    }
    start = stop;
  }

  const Matrix q = a * x;
  if (max_norm(q * sigma.cast<Complex>().asDiagonal() * q.transpose() - z.Z) >
      1e-8 * (1.0 + sigma(0)))
    throw EvaluationError("takagi: factorization residual too large");
  return {q.transpose(), sigma};
}

double norm_constant(const ZMatrix& z) {
  require_symmetric(z.Z, "norm_constant");
  require_contraction(z.Z, "norm_constant");
  const Eigen::Index n = z.Z.rows();
  const Complex det = (Matrix::Identity(n, n) - z.Z * z.Z.adjoint()).determinant();
  return 1.0 / std::sqrt(det.real());
}

double norm_constant_root(const ZMatrix& z) { return std::sqrt(norm_constant(z)); }

double norm_constant_product(const ZMatrix& z) {
  require_contraction(z.Z, "norm_constant_product");
  const auto factors = takagi(z);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < factors.D.size(); ++i)
    acc += std::log1p(-factors.D(i) * factors.D(i));
  return std::exp(-0.5 * acc);
}

std::vector<double> thermal_occupations(double rho, int n_max) {
  if (rho < 0.0) throw DomainError("thermal_occupations: rho must be >= 0");
  if (n_max < 1) throw DomainError("thermal_occupations: n_max must be >= 1");
  const double q = rho / (1.0 + rho);
  std::vector<double> p(static_cast<size_t>(n_max) + 1);
  double w = 1.0 - q;
  for (auto& pk : p) {
    pk = w;
    w *= q;
  }
  return p;
}

}  // namespace sqz::bogoliubov
