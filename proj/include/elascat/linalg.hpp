#ifndef ELASCAT_LINALG_HPP
#define ELASCAT_LINALG_HPP

#include <vector>

#include "elascat/core.hpp"

namespace elascat {

// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Cx(0.0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Cx* data() { return data_.data(); }
  const Cx* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Cx> data_;
};

std::vector<Cx> matvec(const CMatrix& a, const std::vector<Cx>& x);

// LU factorization with partial pivoting, stored in place.
struct LuFactors {
  CMatrix lu;
  std::vector<int> piv;
};

LuFactors lu_factor(CMatrix a);  // throws NumericalError if singular
std::vector<Cx> lu_solve(const LuFactors& f, std::vector<Cx> b);
std::vector<Cx> solve(const CMatrix& a, const std::vector<Cx>& b);

// 1-norm condition estimate (Hager-style) from an LU factorization.
double condition_estimate(const CMatrix& a);

// Dense real symmetric positive definite system, solved by conjugate
// gradients to the given relative residual.
struct CgResult {
  std::vector<double> x;
  int iterations;
  double relative_residual;
};

CgResult cg_solve(const std::vector<double>& a,  // row-major n x n, SPD
                  const std::vector<double>& b, double rel_tol, int max_iter);

inline double norm2(const std::vector<Cx>& v) {
  double s = 0.0;
  for (const Cx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace elascat

#endif
