#include "elascat/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace elascat {

std::vector<Cx> matvec(const CMatrix& a, const std::vector<Cx>& x) {
  if (x.size() != a.cols()) throw NumericalError("matvec: size mismatch");
  std::vector<Cx> y(a.rows(), Cx(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Cx* row = a.data() + i * a.cols();
    Cx acc(0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

LuFactors lu_factor(CMatrix a) {
  if (a.rows() != a.cols()) throw NumericalError("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  std::vector<int> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > 0.0)) throw NumericalError("lu_factor: singular matrix");
    piv[k] = static_cast<int>(p);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const Cx pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Cx m = a(i, k) / pivot;
      a(i, k) = m;
      if (m != Cx(0.0)) {
        const Cx* rk = a.data() + k * n;
        Cx* ri = a.data() + i * n;
        for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
      }
    }
  }
  return {std::move(a), std::move(piv)};
}

std::vector<Cx> lu_solve(const LuFactors& f, std::vector<Cx> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw NumericalError("lu_solve: size mismatch");
  // rows of L were swapped in full during factorization, so the permutation
  // must be applied to b before the triangular solves
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = static_cast<std::size_t>(f.piv[k]);
    if (p != k) std::swap(b[k], b[p]);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) b[k] -= f.lu(k, j) * b[j];
    b[k] /= f.lu(k, k);
  }
  return b;
}

std::vector<Cx> solve(const CMatrix& a, const std::vector<Cx>& b) {
  return lu_solve(lu_factor(a), b);
}

namespace {

double norm1(const std::vector<Cx>& v) {
  double s = 0.0;
  for (const Cx& c : v) s += std::abs(c);
  return s;
}

std::vector<Cx> lu_solve_transpose(const LuFactors& f, std::vector<Cx> b) {
  // Solves A^T x = b given A = P^T L U: U^T y = b, L^T z = y, x = P^T z.
  const std::size_t n = f.lu.rows();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) b[k] -= f.lu(j, k) * b[j];
    b[k] /= f.lu(k, k);
  }
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t j = k + 1; j < n; ++j) b[k] -= f.lu(j, k) * b[j];
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t p = static_cast<std::size_t>(f.piv[k]);
    if (p != k) std::swap(b[k], b[p]);
  }
  return b;
}

}  // namespace

double condition_estimate(const CMatrix& a) {
  const std::size_t n = a.rows();
  double a_norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    a_norm1 = std::max(a_norm1, col);
  }
  const LuFactors f = lu_factor(a);
  // Hager's estimator for ||A^{-1}||_1.
  std::vector<Cx> x(n, Cx(1.0 / static_cast<double>(n)));
  double est = 0.0;
  for (int pass = 0; pass < 5; ++pass) {
    std::vector<Cx> y = lu_solve(f, x);
    est = std::max(est, norm1(y));
    std::vector<Cx> xi(n);
    for (std::size_t i = 0; i < n; ++i)
      xi[i] = std::abs(y[i]) > 0.0 ? y[i] / std::abs(y[i]) : Cx(1.0);
    std::vector<Cx> z = lu_solve_transpose(f, xi);
    std::size_t jmax = 0;
    double zmax = 0.0;
    Cx ztx(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      ztx += z[i] * x[i];
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        jmax = i;
      }
    }
    if (zmax <= std::abs(ztx)) break;
    std::fill(x.begin(), x.end(), Cx(0.0));
    x[jmax] = Cx(1.0);
  }
  return a_norm1 * est;
}

CgResult cg_solve(const std::vector<double>& a, const std::vector<double>& b,
                  double rel_tol, int max_iter) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw NumericalError("cg_solve: size mismatch");
  std::vector<double> x(n, 0.0), r = b, p = b, ap(n);
  const double b_norm = norm2(b);
  if (b_norm == 0.0) return {x, 0, 0.0};
  double rs = 0.0;
  for (double v : r) rs += v * v;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(rs) <= rel_tol * b_norm) break;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = a.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * p[j];
      ap[i] = acc;
    }
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0)) throw NumericalError("cg_solve: matrix not positive definite");
    const double alpha = rs / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    double rs_new = 0.0;
    for (double v : r) rs_new += v * v;
    const double beta = rs_new / rs;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rs = rs_new;
  }
  const double rel = std::sqrt(rs) / b_norm;
  if (rel > rel_tol)
    throw NumericalError("cg_solve: no convergence, residual " + std::to_string(rel));
  return {std::move(x), it, rel};
}

}  // namespace elascat
