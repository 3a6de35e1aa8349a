#pragma once

// Dense complex linear algebra on 2^n dimensional spaces. This is the
// fallback representation for everything the sparse Pauli algebra cannot do:
// inverses, principal logarithms, partial traces, finite differences in a
// spectral parameter. Dimensions stay at desk scale (<= 2^12), so plain
// eigendecompositions are fine.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace isinglab {

using cplx = std::complex<double>;
using Dense = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI = cplx(0.0, 1.0);

// Dense dimension cap, overridable through ISING_LAB_MAX_QUBITS.
inline int max_dense_qubits() {
  if (const char* s = std::getenv("ISING_LAB_MAX_QUBITS")) {
    int v = std::atoi(s);
    if (v > 0 && v <= 24) return v;
  }
  return 12;
}

inline void require_square(const Dense& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

inline void require_same_dim(const Dense& a, const Dense& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

// Relative Frobenius distance with the symmetric denominator
// max(|a|, |b|, 1e-30). The floor makes 0 vs 0 count as agreement, which is
// the right convention for identities between rank-deficient operators.
inline double rel_dist(const Dense& a, const Dense& b) {
  require_same_dim(a, b, "rel_dist");
  const double den = std::max({a.norm(), b.norm(), 1e-30});
  return (a - b).norm() / den;
}

// Distance modulo one global U(1) factor: min over |z| = 1 of |a - z b| / den.
// Used for approximation statements that are projective, e.g. rational gates
// carrying a spurious overall phase relative to a bare exponential.
inline double phase_aligned_dist(const Dense& a, const Dense& b) {
  require_same_dim(a, b, "phase_aligned_dist");
  const cplx g = (b.adjoint() * a).trace();
  const cplx z = std::abs(g) < 1e-300 ? cplx(1.0, 0.0) : g / std::abs(g);
  const double den = std::max({a.norm(), b.norm(), 1e-30});
  return (a - z * b).norm() / den;
}

inline double spectral_norm(const Dense& a) {
  Eigen::JacobiSVD<Dense> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline int numerical_rank(const Dense& a, double threshold = 1e-10) {
  Eigen::JacobiSVD<Dense> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = threshold * std::max(sv(0), 1.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

// Standard Kronecker product, a on the high bits. With the repo-wide
// little-endian site order, an operator acting as op_j on site j is
// kron(op_n, ..., op_1).
inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Dense mat_inv(const Dense& a, double cond_bound = 1e10) {
  require_square(a, "mat_inv");
  // PartialPivLU::rcond() is only meaningful for invertible input, so the
  // singularity gate uses singular values instead
  Eigen::JacobiSVD<Dense> svd(a);
  const auto& sv = svd.singularValues();
  const double rc = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  if (!(rc > 1.0 / cond_bound)) {
    std::ostringstream os;
    os << "mat_inv: reciprocal condition estimate " << rc
       << " below bound, matrix treated as singular";
    throw std::runtime_error(os.str());
  }
  return a.partialPivLu().inverse();
}

inline Dense mat_exp(const Dense& a) {
  require_square(a, "mat_exp");
  if (!a.allFinite()) throw std::invalid_argument("mat_exp: non-finite input");
  return a.exp();
}

// Principal matrix logarithm through eigendecomposition. Every matrix logged
// here is similar to a unitary at the evaluation points used, so the
// eigenvector basis is well conditioned; we still check and refuse rather
// than silently return garbage.
inline Dense mat_log(const Dense& a, double vec_cond_bound = 1e8) {
  require_square(a, "mat_log");
  Eigen::ComplexEigenSolver<Dense> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("mat_log: eigendecomposition failed");
  }
  const auto& w = es.eigenvalues();
  std::ostringstream bad;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double m = std::abs(w(i));
    if (m < 1e-14 ||
        (w(i).real() < 0.0 && std::abs(w(i).imag()) <= 1e-12 * m)) {
      bad << (bad.tellp() > 0 ? ", " : "") << w(i);
    }
  }
  if (bad.tellp() > 0) {
    throw std::runtime_error(
        "mat_log: eigenvalue(s) on the closed negative real axis, principal "
        "branch undefined: " + bad.str());
  }
  const Dense& v = es.eigenvectors();
  Eigen::JacobiSVD<Dense> svd(v);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > vec_cond_bound) {
    throw std::runtime_error("mat_log: eigenvector basis too ill-conditioned");
  }
  Dense logd = Dense::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < w.size(); ++i) logd(i, i) = std::log(w(i));
  return v * logd * mat_inv(v, vec_cond_bound * 10);
}

// Auxiliary qubit lives at the most significant bit, so tracing it out is a
// two-block sum and physical sites keep their indices.
inline Dense partial_trace_aux(const Dense& a) {
  require_square(a, "partial_trace_aux");
  if (a.rows() % 2 != 0) {
    throw std::invalid_argument("partial_trace_aux: odd dimension");
  }
  const Eigen::Index d = a.rows() / 2;
  return a.topLeftCorner(d, d) + a.bottomRightCorner(d, d);
}

inline Dense dense_pow(Dense a, long n) {
  require_square(a, "dense_pow");
  if (n < 0) throw std::invalid_argument("dense_pow: negative exponent");
  Dense out = Dense::Identity(a.rows(), a.cols());
  while (n > 0) {
    if (n & 1) out = out * a;
    a = a * a;
    n >>= 1;
  }
  return out;
}

inline Dense traceless_part(const Dense& a) {
  require_square(a, "traceless_part");
  const cplx t = a.trace() / static_cast<double>(a.rows());
  return a - t * Dense::Identity(a.rows(), a.cols());
}

// Least-squares scalar s minimizing |a - s b|.
inline cplx fit_scalar(const Dense& a, const Dense& b) {
  const cplx den = (b.adjoint() * b).trace();
  if (std::abs(den) < 1e-300) return cplx(0.0, 0.0);
  return (b.adjoint() * a).trace() / den;
}

struct FdResult {
  Dense value;
  double error_estimate;  // Richardson step difference, 0 if no refinement
};

// Central finite difference of order r in {1, 2} with one optional Richardson
// refinement. Step h is clamped to the regime where truncation and roundoff
// balance for doubles.
template <class F>
FdResult fd_derivative(F&& f, double x0, int order, double h = 1e-4,
                       bool richardson = true) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("fd_derivative: order must be 1 or 2");
  }
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw std::invalid_argument("fd_derivative: step outside [1e-6, 1e-2]");
  }
  auto stencil = [&](double s) -> Dense {
    if (order == 1) {
      Dense d = (f(x0 + s) - f(x0 - s)) / (2.0 * s);
      return d;
    }
    Dense d = (f(x0 + s) - 2.0 * f(x0) + f(x0 - s)) / (s * s);
    return d;
  };
  Dense coarse = stencil(h);
  if (!coarse.allFinite()) {
    throw std::runtime_error("fd_derivative: non-finite function values");
  }
  if (!richardson) return {std::move(coarse), 0.0};
  Dense fine = stencil(h / 2.0);
  if (!fine.allFinite()) {
    throw std::runtime_error("fd_derivative: non-finite function values");
  }
  // both stencils are O(h^2) accurate, so (4 fine - coarse) / 3 cancels the
  // leading term
  Dense extr = (4.0 * fine - coarse) / 3.0;
  return {std::move(extr), (fine - coarse).norm()};
}

}  // namespace isinglab
