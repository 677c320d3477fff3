#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "constants.hpp"

// Dense complex operator algebra for 1-4 spin-1/2 sites (dim <= 16).
// Conventions: spin operators are sigma/2 (eigenvalues +-1/2); Hamiltonians
// are in angular frequency units (rad/s); density matrices are unit trace.
namespace nvnmr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};

inline Matrix pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: axis must be x, y or z");
  }
  return m;
}

// (dir . sigma)/2 for a unit direction.
inline Matrix spin_along(const Vector3& dir) {
  if (std::abs(dir.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("spin_along: direction is not a unit vector");
  Matrix m(2, 2);
  m << dir.z(), Complex(dir.x(), -dir.y()),
       Complex(dir.x(), dir.y()), -dir.z();
  return 0.5 * m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

// Spin operator of `site` along `dir`, identity on the other sites.
inline Matrix embed_single_site(const Vector3& dir, int site, int n_sites) {
  if (n_sites < 1 || n_sites > 4)
    throw std::invalid_argument("embed_single_site: n_sites must be 1..4");
  if (site < 0 || site >= n_sites)
    throw std::invalid_argument("embed_single_site: site out of range");
  Matrix op = spin_along(dir);
  Matrix out(1, 1);
  out.setOnes();
  for (int k = 0; k < n_sites; ++k)
    out = kron(out, k == site ? op : identity(2));
  return out;
}

inline Matrix embed_single_site(char axis, int site, int n_sites) {
  Vector3 dir = Vector3::Zero();
  dir(axis == 'x' ? 0 : axis == 'y' ? 1 : 2) = 1.0;
  if (axis != 'x' && axis != 'y' && axis != 'z')
    throw std::invalid_argument("embed_single_site: axis must be x, y or z");
  return embed_single_site(dir, site, n_sites);
}

inline bool is_hermitian(const Matrix& m, double rel_tol = 1e-12) {
  double scale = m.norm();
  if (scale == 0.0) return true;
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

// Pure spin-1/2 state with Bloch angles (theta, phi) about the local
// (x, y, z) axes: rho = 1/2 + cos(theta) Iz + sin(theta)cos(phi) Ix
//                        + sin(theta)sin(phi) Iy.
inline Matrix bloch_state(double theta, double phi) {
  Matrix rho(2, 2);
  double ct = std::cos(theta), st = std::sin(theta);
  rho << 0.5 * (1.0 + ct), 0.5 * st * Complex(std::cos(phi), -std::sin(phi)),
         0.5 * st * Complex(std::cos(phi), std::sin(phi)), 0.5 * (1.0 - ct);
  return rho;
}

// exp(-i H dt) by eigendecomposition; exact for Hermitian H.
inline Matrix propagator(const Matrix& h_rad, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h_rad);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("propagator: eigendecomposition failed");
  Eigen::VectorXcd phases(h_rad.rows());
  for (Eigen::Index k = 0; k < h_rad.rows(); ++k)
    phases(k) = std::polar(1.0, -es.eigenvalues()(k) * dt);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// One exact piecewise-constant step rho -> U rho U^dagger.
// Preconditions: H Hermitian, dt > 0, dt * ||H|| <= 0.5 (Frobenius bound
// on the spectral norm, so the guard is conservative).
inline Matrix evolve_step(const Matrix& rho, const Matrix& h_rad, double dt) {
  if (rho.rows() != h_rad.rows() || rho.cols() != h_rad.cols())
    throw std::invalid_argument("evolve_step: dimension mismatch");
  if (dt <= 0.0) throw std::invalid_argument("evolve_step: dt must be > 0");
  if (!is_hermitian(h_rad))
    throw std::invalid_argument("evolve_step: H is not Hermitian");
  if (dt * h_rad.norm() > 0.5)
    throw std::invalid_argument("evolve_step: step-size guard violated (dt*||H|| > 0.5)");
  Matrix u = propagator(h_rad, dt);
  return u * rho * u.adjoint();
}

// Re Tr(rho * op).
inline double expectation(const Matrix& rho, const Matrix& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  Complex tr = (rho * op).trace();
  return tr.real();
}

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace detail {

// Closed-form SU(2) propagator exp(-i (h . sigma/2) dt) for a single spin.
inline Eigen::Matrix2cd propagator2(const Vector3& h_rad, double dt) {
  double w = h_rad.norm();
  double half = 0.5 * w * dt;
  double c = std::cos(half);
  double sinc = (w > 0.0) ? std::sin(half) / w : 0.5 * dt;
  Eigen::Matrix2cd u;
  Complex mi{0.0, -1.0};
  u << c + mi * sinc * h_rad.z(), mi * sinc * Complex(h_rad.x(), -h_rad.y()),
       mi * sinc * Complex(h_rad.x(), h_rad.y()), c - mi * sinc * h_rad.z();
  return u;
}

// exp(-i H dt) for 4x4 Hermitian H via scaling-and-squaring with a
// Taylor kernel; machine-precision for dt*||H|| <~ 1 and ~3x faster than
// eigendecomposition, which matters in the propagation hot loop.
inline Eigen::Matrix4cd propagator4(const Eigen::Matrix4cd& h_rad, double dt) {
  Eigen::Matrix4cd a = Complex(0.0, -dt) * h_rad;
  double n = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (n > 0.05 && squarings < 30) { n *= 0.5; ++squarings; }
  a *= std::ldexp(1.0, -squarings);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity() + a / 8.0;
  for (int k = 7; k >= 1; --k)
    u = Eigen::Matrix4cd::Identity() + (a / double(k)) * u;
  for (int i = 0; i < squarings; ++i) u = u * u;
  return u;
}

} // namespace detail

} // namespace nvnmr
