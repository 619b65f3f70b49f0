#include "dmsq/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dmsq/error.hpp"

namespace dmsq {

StabilityReport is_stable(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solver failed to converge on drift matrix");
  }
  StabilityReport report;
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  report.margin = -std::numeric_limits<double>::infinity();
  for (const auto& z : report.eigenvalues) report.margin = std::max(report.margin, z.real());
  report.stable = report.margin < -kStabilityEpsilon;
  return report;
}

StabilityReport is_stable(const DriftMatrix& a) { return is_stable(a.matrix()); }

CovarianceMatrix::CovarianceMatrix(std::size_t n_mech, Eigen::MatrixXd entries)
    : n_mech_(n_mech), entries_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(2 * (n_mech + 1));
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("covariance matrix must be " + std::to_string(dim) + "x" +
                                std::to_string(dim));
  }
}

double CovarianceMatrix::variance(ModeId mode, Quadrature quad) const {
  const std::size_t i = layout().index(mode, quad);
  return entries_(i, i);
}

double CovarianceMatrix::covariance(ModeId mode) const {
  const QuadratureLayout lay = layout();
  return entries_(lay.x(mode), lay.y(mode));
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t n_mech) {
  const auto dim = static_cast<Eigen::Index>(2 * (n_mech + 1));
  return CovarianceMatrix(n_mech, 0.5 * Eigen::MatrixXd::Identity(dim, dim));
}

double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v,
                         const Eigen::MatrixXd& q) {
  const double qn = q.norm();
  const Eigen::MatrixXd r = a * v + v * a.transpose() + q;
  return qn > 0.0 ? r.norm() / qn : r.norm();
}

namespace {

Eigen::MatrixXd solve_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  const Eigen::Index nn = n * n;
  // Column-major vec: V(i, j) sits at i + n j.
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(nn, nn);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index row = i + n * j;
      for (Eigen::Index k = 0; k < n; ++k) {
        op(row, k + n * j) += a(i, k);
        op(row, i + n * k) += a(j, k);
      }
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op);
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), nn);
  Eigen::VectorXd x = lu.solve(rhs);
  // one step of iterative refinement
  const Eigen::VectorXd r = rhs - op * x;
  x += lu.solve(r);
  return Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
}

Eigen::MatrixXd solve_schur(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  // A = U T U^H. With Y = U^H V conj(U): T Y + Y T^T = -U^H Q conj(U).
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<Eigen::MatrixXd> schur(a);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& u = schur.matrixU();
  const Eigen::MatrixXcd c = -(u.adjoint() * q.cast<std::complex<double>>() * u.conjugate());

  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) rhs -= t(j, k) * y.col(k);
    Eigen::MatrixXcd shifted = t;
    shifted.diagonal().array() += t(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (u * y * u.transpose()).real();
}

}  // namespace

Eigen::MatrixXd solve_lyapunov_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q,
                                      LyapunovMethod method) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    throw std::invalid_argument("Lyapunov operands must be square and of equal size");
  }
  if (method == LyapunovMethod::kAuto) {
    method = static_cast<std::size_t>(a.rows()) <= kKroneckerMaxDim ? LyapunovMethod::kKronecker
                                                                     : LyapunovMethod::kSchur;
  }
  Eigen::MatrixXd v = method == LyapunovMethod::kKronecker ? solve_kronecker(a, q) : solve_schur(a, q);
  return 0.5 * (v + v.transpose());
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const NoiseMatrix& q,
                                const LyapunovOptions& options) {
  const StabilityReport st = is_stable(a);
  if (!st.stable) throw UnstableSystemError(st.margin);
  const Eigen::MatrixXd qm = q.matrix();
  Eigen::MatrixXd v = solve_lyapunov_matrix(a.matrix(), qm, options.method);
  const double res = lyapunov_residual(a.matrix(), v, qm);
  if (!(res < options.residual_tolerance)) {
    throw NumericalError("Lyapunov solve is ill-conditioned: relative residual " +
                         std::to_string(res) + " exceeds tolerance");
  }
  return CovarianceMatrix(a.n_mech(), std::move(v));
}

OdeResult integrate_covariance_ode(const DriftMatrix& a, const NoiseMatrix& q,
                                   const CovarianceMatrix& v0, const OdeOptions& options) {
  const StabilityReport st = is_stable(a);
  if (!st.stable) throw UnstableSystemError(st.margin);
  double radius = 0.0;
  for (const auto& z : st.eigenvalues) radius = std::max(radius, std::abs(z));
  const double h = options.step_factor / radius;

  const Eigen::MatrixXd& am = a.matrix();
  const Eigen::MatrixXd qm = q.matrix();
  Eigen::MatrixXd v = v0.matrix();
  Eigen::MatrixXd m(v.rows(), v.cols());
  Eigen::MatrixXd k1(v.rows(), v.cols()), k2(v.rows(), v.cols()), k3(v.rows(), v.cols()),
      k4(v.rows(), v.cols()), tmp(v.rows(), v.cols());

  const auto rhs = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
    m.noalias() = am * x;
    out = m + m.transpose() + qm;
  };

  std::size_t step = 0;
  double dnorm = 0.0;
  for (;; ++step) {
    rhs(v, k1);
    dnorm = k1.norm();
    if (dnorm < options.tolerance) break;
    if (step >= options.max_steps || !std::isfinite(dnorm)) {
      throw NumericalError("covariance ODE did not converge within " +
                           std::to_string(options.max_steps) + " steps (||dV/dt|| = " +
                           std::to_string(dnorm) + ")");
    }
    tmp = v + (0.5 * h) * k1;
    rhs(tmp, k2);
    tmp = v + (0.5 * h) * k2;
    rhs(tmp, k3);
    tmp = v + h * k3;
    rhs(tmp, k4);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return OdeResult{CovarianceMatrix(a.n_mech(), std::move(v)), step, h, dnorm};
}

OdeResult integrate_covariance_ode(const DriftMatrix& a, const NoiseMatrix& q,
                                   const OdeOptions& options) {
  const Eigen::Index dim = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXd v0 = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double damping = -a.matrix()(i, i);
    v0(i, i) = damping > 0.0 ? q.diagonal()(i) / (2.0 * damping) : 0.5;
  }
  return integrate_covariance_ode(a, q, CovarianceMatrix(a.n_mech(), std::move(v0)), options);
}

}  // namespace dmsq
