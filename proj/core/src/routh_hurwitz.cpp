#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dmsq/steady_state.hpp"

namespace dmsq {
namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Berkowitz: det(sI - A_k) = T_k det(sI - A_{k-1}) with the lower-triangular
// Toeplitz T_k built from [1, -a_kk, -r c, -r A c, -r A^2 c, ...], where r and
// c are the new row and column of the leading k x k block.
std::vector<Real> berkowitz(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  std::vector<Real> poly{Real(1)};
  for (Eigen::Index k = 0; k < n; ++k) {
    std::vector<Real> toeplitz(static_cast<std::size_t>(k) + 2);
    toeplitz[0] = 1;
    toeplitz[1] = -Real(a(k, k));
    std::vector<Real> col(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) col[i] = Real(a(i, k));
    for (Eigen::Index p = 0; p < k; ++p) {
      Real dot = 0;
      for (Eigen::Index i = 0; i < k; ++i) dot += Real(a(k, i)) * col[i];
      toeplitz[p + 2] = -dot;
      std::vector<Real> next(static_cast<std::size_t>(k), Real(0));
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) next[i] += Real(a(i, j)) * col[j];
      }
      col.swap(next);
    }
    std::vector<Real> out(poly.size() + 1, Real(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) out[i] += toeplitz[i - j] * poly[j];
    }
    poly.swap(out);
  }
  return poly;
}

bool routh_table_positive(const std::vector<Real>& c) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return true;
  const std::size_t width = n / 2 + 1;
  std::vector<Real> prev(width, Real(0)), cur(width, Real(0));
  for (std::size_t i = 0, j = 0; i <= n; i += 2, ++j) prev[j] = c[i];
  for (std::size_t i = 1, j = 0; i <= n; i += 2, ++j) cur[j] = c[i];
  if (!(prev[0] > 0)) return false;
  for (std::size_t row = 1; row <= n; ++row) {
    if (!(cur[0] > 0)) return false;
    if (row == n) break;
    std::vector<Real> next(width, Real(0));
    for (std::size_t j = 0; j + 1 < width; ++j) {
      next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
    }
    prev.swap(cur);
    cur.swap(next);
  }
  return true;
}

void check_dim(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  if (static_cast<std::size_t>(a.rows()) > kRouthHurwitzMaxDim) {
    throw std::invalid_argument("Routh-Hurwitz check limited to dimension " +
                                std::to_string(kRouthHurwitzMaxDim) + "; use is_stable");
  }
}

}  // namespace

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& a) {
  check_dim(a);
  const std::vector<Real> exact = berkowitz(a);
  std::vector<double> out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) out[i] = exact[i].convert_to<double>();
  return out;
}

bool routh_hurwitz_check(const Eigen::MatrixXd& a) {
  check_dim(a);
  return routh_table_positive(berkowitz(a));
}

bool routh_hurwitz_check(const DriftMatrix& a) { return routh_hurwitz_check(a.matrix()); }

}  // namespace dmsq
