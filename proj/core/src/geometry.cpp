#include "sqz/geometry.hpp"

#include <cmath>

namespace sqz::geometry {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

void require_symmetric_tangent(const Matrix& t, const char* who) {
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string(who) + ": tangent must be symmetric");
}

void require_interior(const Matrix& z, const char* who) {
  if (spectral_norm(z) >= 1.0)
    throw DomainError(std::string(who) + ": Z must be a strict contraction");
}

}  // namespace

Complex hermitian_form(const TangentPair& tp) {
  require_interior(tp.Z.Z, "hermitian_form");
  require_symmetric_tangent(tp.T1, "hermitian_form");
  require_symmetric_tangent(tp.T2, "hermitian_form");
  const Eigen::Index n = tp.Z.Z.rows();
  const Matrix& z = tp.Z.Z;
  const Matrix left = Matrix::Identity(n, n) - z * z.adjoint();
  const Matrix right = Matrix::Identity(n, n) - z.adjoint() * z;
  const Matrix a = left.partialPivLu().solve(tp.T1);
  const Matrix b = right.partialPivLu().solve(tp.T2.adjoint());
  return (a * b).trace();
}

Complex hermitian_form_via_u(const TangentPair& tp) {
  require_symmetric_tangent(tp.T1, "hermitian_form_via_u");
  require_symmetric_tangent(tp.T2, "hermitian_form_via_u");
  const Matrix u = bogoliubov::phi_from_z(tp.Z).U;
  const Matrix a = u.adjoint() * tp.T1 * u.conjugate();
  const Matrix b = u.adjoint() * tp.T2 * u.conjugate();
  return (a * b.adjoint()).trace();
}

DiskTensors disk_tensors(Complex z) {
  const double mod_sq = std::norm(z);
  if (mod_sq >= 1.0) throw DomainError("disk_tensors: |z| must be < 1");
  const double coeff = 1.0 / ((1.0 - mod_sq) * (1.0 - mod_sq));
  return {coeff, coeff};
}

double kahler_potential(const ZMatrix& z) {
  const Eigen::Index n = z.Z.rows();
  Matrix gram = z.Z * z.Z.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda >= 1.0) throw DomainError("kahler_potential: Z must be a strict contraction");
    acc -= std::log1p(-lambda);
  }
  return acc;
}

double fd_check(const ZMatrix& z, const Matrix& t1, const Matrix& t2, double step) {
  require_symmetric_tangent(t1, "fd_check");
  require_symmetric_tangent(t2, "fd_check");
  if (!(step > 0.0)) throw DomainError("fd_check: step must be > 0");

  const double margin = 1.0 - spectral_norm(z.Z);
  if (margin <= 0.0) throw DomainError("fd_check: Z must be a strict contraction");
  const double tangent_scale =
      std::max({1.0, spectral_norm(t1), spectral_norm(t2)});
  const double s = step * margin / tangent_scale;

  auto potential_at = [&](Complex w1, Complex w2) {
    return kahler_potential(ZMatrix{z.Z + w1 * t1 + w2 * t2});
  };
  // 4-point stencils per direction: mixed second differences of the four
  // real coordinate pairs combined into the Wirtinger derivative
  // d/dw1 d/dconj(w2) = (dx1 - i dy1)(dx2 + i dy2)/4.
  const Complex i(0.0, 1.0);
  auto mixed = [&](Complex e1, Complex e2) {
    return (potential_at(s * e1, s * e2) - potential_at(s * e1, -s * e2) -
            potential_at(-s * e1, s * e2) + potential_at(-s * e1, -s * e2)) /
           (4.0 * s * s);
  };
  const double dxx = mixed(1.0, 1.0);
  const double dxy = mixed(1.0, i);
  const double dyx = mixed(i, 1.0);
  const double dyy = mixed(i, i);
  const Complex numeric = 0.25 * Complex(dxx + dyy, dxy - dyx);
  return std::abs(numeric - hermitian_form({z, t1, t2}));
}

double gaussian_curvature_disk(Complex z) {
  if (std::norm(z) >= 1.0)
    throw DomainError("gaussian_curvature_disk: |z| must be < 1");
  return -4.0;
}

}  // namespace sqz::geometry
