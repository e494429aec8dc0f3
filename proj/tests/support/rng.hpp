#pragma once

#include <random>

#include "gaugefiber/core.hpp"
#include "gaugefiber/metrics.hpp"

namespace testsupport {

using gaugefiber::cplx;
using gaugefiber::Mat;

/// Deterministic generator for the randomized suites.
struct Rng {
  explicit Rng(unsigned long long seed) : eng(seed) {}

  std::mt19937_64 eng;

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }

  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }

  cplx gaussian_cplx() {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(eng), n(eng)};
  }

  /// Nonzero complex scalar with modulus in [lo, hi].
  cplx cplx_in_annulus(double lo, double hi) {
    const double r = uniform(lo, hi);
    const double phi = uniform(0.0, 6.283185307179586);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  Mat gaussian_matrix(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gaussian_cplx();
    return m;
  }

  /// Haar-ish unitary: Gram-Schmidt of a Gaussian matrix.
  Mat unitary(int n) {
    for (;;) {
      Mat g = gaussian_matrix(n);
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        for (int prev = 0; prev < k; ++prev) {
          cplx coeff = 0.0;
          for (int r = 0; r < n; ++r) coeff += std::conj(g(r, prev)) * g(r, k);
          for (int r = 0; r < n; ++r) g(r, k) -= coeff * g(r, prev);
        }
        double norm2 = 0.0;
        for (int r = 0; r < n; ++r) norm2 += std::norm(g(r, k));
        if (norm2 < 1e-12) {
          ok = false;
          break;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (int r = 0; r < n; ++r) g(r, k) *= inv;
      }
      if (ok) return g;
    }
  }

  /// Unitary with determinant exactly driven to 1 (first column rescaled
  /// by the conjugate phase of det).
  Mat special_unitary(int n) {
    Mat u = unitary(n);
    const cplx d = u.det();
    const cplx phase = std::conj(d) / std::abs(d);
    for (int r = 0; r < n; ++r) u(r, 0) *= phase;
    return u;
  }

  /// Invertible with singular values in [0.5, 2]: condition number <= 4,
  /// so frame changes never wash out the tolerances.
  Mat invertible(int n) {
    const Mat u = unitary(n);
    const Mat v = unitary(n);
    Mat s(n, n);
    for (int i = 0; i < n; ++i) s(i, i) = uniform(0.5, 2.0);
    return u * s * v;
  }

  /// Exactly conjugate-symmetric positive-definite matrix with
  /// eigenvalues in [0.5, 2].
  Mat hermitian_posdef(int n) {
    const Mat u = unitary(n);
    std::vector<double> lam(static_cast<size_t>(n));
    for (double& l : lam) l = uniform(0.5, 2.0);
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        cplx v = 0.0;
        for (int k = 0; k < n; ++k)
          v += lam[static_cast<size_t>(k)] * u(i, k) * std::conj(u(j, k));
        if (i == j) v = cplx(v.real(), 0.0);
        out(i, j) = v;
        out(j, i) = std::conj(v);
      }
    return out;
  }

  /// Concordant pair: the canonical (I, 1) pushed through a bounded
  /// random frame change.
  std::pair<gaugefiber::HermitianMetric, gaugefiber::SkewMetric>
  concordant_pair(gaugefiber::BundleTag tag) {
    const int n = gaugefiber::fiber_dim(tag);
    const Mat s = invertible(n);
    gaugefiber::HermitianMetric dm(tag, Mat::identity(n));
    gaugefiber::SkewMetric d(tag, cplx(1.0, 0.0));
    return {gaugefiber::transform_hermitian(dm, s),
            gaugefiber::transform_skew(d, s)};
  }
};

}  // namespace testsupport
