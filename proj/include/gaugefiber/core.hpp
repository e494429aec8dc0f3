#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "gaugefiber/errors.hpp"

namespace gaugefiber {

using cplx = std::complex<double>;

/// Dense row-major complex matrix with inline storage for up to 4x4.
/// Every fiber in this library has dimension 1..4, so this covers all
/// metric components, basis matrices and transition matrices without
/// heap traffic. Determinants and inverses are provided for the square
/// dimensions that actually occur in transitions (1..3).
class Mat {
 public:
  Mat(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1 || rows > 4 || cols > 4)
      raise(errc::unsupported_dimension,
            "matrix dimensions must be within 1..4, got " +
                std::to_string(rows) + "x" + std::to_string(cols));
    a_.fill(cplx(0.0, 0.0));
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i * cols_ + j)];
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < x.cols_; ++j)
        if (x(i, j) != y(i, j)) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_)
      raise(errc::dimension_mismatch, "matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < o.cols_; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    Mat r = *this;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) += o(i, j);
    return r;
  }

  Mat operator-(const Mat& o) const {
    Mat r = *this;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) -= o(i, j);
    return r;
  }

  Mat operator*(cplx s) const {
    Mat r = *this;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) *= s;
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Mat conjugate() const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
  }

  /// Conjugate transpose.
  Mat adjoint() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }

  cplx det() const {
    if (!square()) raise(errc::not_square, "determinant of a non-square matrix");
    switch (rows_) {
      case 1:
        return (*this)(0, 0);
      case 2:
        return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
      case 3: {
        const Mat& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
      }
      default:
        raise(errc::unsupported_dimension, "determinant supported for 1..3 only");
    }
  }

  /// True when |det| is negligible against the entry scale.
  bool singular() const {
    double scale = max_abs();
    if (scale == 0.0) return true;
    return std::abs(det()) <= 1e-12 * std::pow(scale, rows_);
  }

  Mat inverse() const {
    if (!square()) raise(errc::not_square, "inverse of a non-square matrix");
    cplx d = det();
    if (singular())
      raise(errc::singular_matrix, "matrix is singular (|det| = " +
                                       std::to_string(std::abs(d)) + ")");
    Mat r(rows_, cols_);
    switch (rows_) {
      case 1:
        r(0, 0) = 1.0 / d;
        break;
      case 2:
        r(0, 0) = (*this)(1, 1) / d;
        r(0, 1) = -(*this)(0, 1) / d;
        r(1, 0) = -(*this)(1, 0) / d;
        r(1, 1) = (*this)(0, 0) / d;
        break;
      case 3: {
        const Mat& m = *this;
        // adjugate / det
        r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
        r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
        r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
        r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
        r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
        r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
        r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
        r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
        r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
        break;
      }
      default:
        raise(errc::unsupported_dimension, "inverse supported for 1..3 only");
    }
    return r;
  }

 private:
  int rows_;
  int cols_;
  std::array<cplx, 16> a_;
};

inline Mat operator*(cplx s, const Mat& m) { return m * s; }

inline double max_abs_diff(const Mat& x, const Mat& y) {
  double m = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
  return m;
}

/// max |S^dagger S - I|, the unitarity defect.
inline double unitarity_residual(const Mat& s) {
  return max_abs_diff(s.adjoint() * s, Mat::identity(s.cols()));
}

/// Sign of the permutation (i, j, k) of {0, 1, 2}; 0 on repeats.
inline int levi_civita3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i) * (k - i) * (k - j) > 0) ? 1 : -1;
}

/// "%.6e" rendering used by the plain-text reports.
inline std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

/// Short general-purpose rendering for matrix dumps.
inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string fmt_cplx(cplx z) {
  std::string s = "(" + fmt_num(z.real());
  s += z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+";
  s += fmt_num(std::abs(z.imag())) + "i)";
  return s;
}

inline std::string fmt_mat(const Mat& m, const std::string& indent = "  ") {
  std::string s;
  for (int i = 0; i < m.rows(); ++i) {
    s += indent + "[";
    for (int j = 0; j < m.cols(); ++j) {
      s += " " + fmt_cplx(m(i, j));
    }
    s += " ]\n";
  }
  return s;
}

}  // namespace gaugefiber
