#pragma once

#include <complex>

#include "sqz/bogoliubov.hpp"

// Kaehler geometry of the squeezed-state manifold
// M = { Z : Z = Z^t, Z Z* < 1 }: Hermitian structure, Poincare-disk
// tensors for one mode, Kaehler potential, and a finite-difference check
// tying the two together.

namespace sqz::geometry {

using bogoliubov::Matrix;
using bogoliubov::ZMatrix;
using Complex = std::complex<double>;

/// Base point with two holomorphic tangent directions (symmetric matrices).
struct TangentPair {
  ZMatrix Z;
  Matrix T1;
  Matrix T2;
};

/// h(T1, T2) = tr((1 - Z Z*)^{-1} T1 (1 - Z* Z)^{-1} T2*).
Complex hermitian_form(const TangentPair& tp);

/// Same value through tr((U* T1 conj U)(U* T2 conj U)*) with U = phi_from_z(Z).U;
/// kept as an independent route for cross-checking.
Complex hermitian_form_via_u(const TangentPair& tp);

struct DiskTensors {
  double g_coeff;      // metric coefficient of |dz|^2
  double omega_coeff;  // curvature 2-form coefficient of (i/2) dz ^ dzbar
};

/// Both coefficients equal (1 - |z|^2)^{-2} on the unit disk.
DiskTensors disk_tensors(Complex z);

/// -tr log(1 - Z Z*), twice the log of the squeezed-vector norm squared.
double kahler_potential(const ZMatrix& z);

/// |central-difference mixed Wirtinger derivative of the potential along
/// (T1, conj T2) minus hermitian_form|. The step is scaled by the margin of
/// Z to the boundary of M.
double fd_check(const ZMatrix& z, const Matrix& t1, const Matrix& t2, double step);

/// Gaussian curvature of the one-mode disk metric: -4, independent of z.
double gaussian_curvature_disk(Complex z);

}  // namespace sqz::geometry
