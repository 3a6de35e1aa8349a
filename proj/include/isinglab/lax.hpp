#pragma once

// Integrability core: the Majorana R-operator, inhomogeneous monodromy and
// transfer matrices in a factorized auxiliary representation, and the
// residuals for the Yang-Baxter and RTT relations.
//
// One auxiliary qubit (the most significant one, index N+1) carries two
// auxiliary modes gamma_a -> X_aux and gamma_b -> Y_aux. A physical mode j
// is represented as i (gamma_a gamma_b) (x) Gamma_j = -Z_aux Gamma_j, which
// keeps all 2N + 2 modes mutually anticommuting on N + 1 qubits.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "isinglab/dense.hpp"
#include "isinglab/fermion.hpp"
#include "isinglab/pauli.hpp"

namespace isinglab {

struct Inhomogeneity {
  std::vector<double> eta;  // eta[j], 1-based, length 2N + 1 with eta[0] unused

  static Inhomogeneity homogeneous(int N) {
    Inhomogeneity v;
    v.eta.assign(2 * N + 1, 0.0);
    return v;
  }

  // staggered pattern eta_j = (-1)^j omega / 2, the pattern whose special
  // points lambda = +-omega/2 generate the trotterized circuit
  static Inhomogeneity staggered(int N, double omega) {
    Inhomogeneity v;
    v.eta.assign(2 * N + 1, 0.0);
    for (int j = 1; j <= 2 * N; ++j) {
      v.eta[j] = ((j % 2 == 0) ? 1.0 : -1.0) * omega / 2.0;
    }
    return v;
  }

  static Inhomogeneity random(int N, std::mt19937_64& rng, double scale = 0.5) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Inhomogeneity v;
    v.eta.assign(2 * N + 1, 0.0);
    for (int j = 1; j <= 2 * N; ++j) v.eta[j] = u(rng);
    return v;
  }
};

class ModeRep {
 public:
  static constexpr int aux_a = 0;
  static constexpr int aux_b = -1;

  explicit ModeRep(int N) : N_(N), n_(N + 1) {
    check_site_count(n_);
    ga_ = PauliSum::x(n_, n_);
    gb_ = PauliSum::y(n_, n_);
    const PauliSum zaux = PauliSum::z(n_, n_);
    modes_.push_back(PauliSum::identity(n_));  // 1-based
    for (int j = 1; j <= 2 * N; ++j) {
      modes_.push_back(zaux * embedded(jw_gamma(j, N), n_) * cplx(-1, 0));
    }
  }

  int sites() const { return N_; }
  int qubits() const { return n_; }

  const PauliSum& mode(int label) const {
    if (label == aux_a) return ga_;
    if (label == aux_b) return gb_;
    if (label < 1 || label > 2 * N_) {
      throw std::out_of_range("ModeRep: unknown mode label");
    }
    return modes_[std::size_t(label)];
  }

 private:
  int N_, n_;
  PauliSum ga_, gb_;
  std::vector<PauliSum> modes_;
};

// R_{u,v}(lambda) = (gamma_u - gamma_v)/sqrt2 *
//                   (1 + tanh(lambda) gamma_u gamma_v) / (1 + i tanh(lambda)).
// Expanding with gamma^2 = 1 gives the two-term form
//   [(1 + t) gamma_u - (1 - t) gamma_v] / (sqrt2 (1 + i t)),
// so products of R factors stay sparse. At lambda = 0 this is the Majorana
// permutation (gamma_u - gamma_v)/sqrt2.
inline PauliSum r_operator_sparse(const ModeRep& rep, int u, int v,
                                  double lambda) {
  if (u == v) throw std::invalid_argument("r_operator: identical modes");
  const double t = std::tanh(lambda);
  const cplx den = std::sqrt(2.0) * cplx(1.0, t);
  return (rep.mode(u) * cplx(1.0 + t, 0) - rep.mode(v) * cplx(1.0 - t, 0)) /
         den;
}

inline Dense r_operator(const ModeRep& rep, int u, int v, double lambda) {
  return r_operator_sparse(rep, u, v, lambda).to_dense();
}

// monodromy T_aux(lambda | eta) = R_{aux,2N}(lambda - eta_{2N}) ... down to
// R_{aux,1}(lambda - eta_1); the index 2N factor sits leftmost
inline Dense monodromy(const ModeRep& rep, int aux, double lambda,
                       const Inhomogeneity& eta) {
  const int N = rep.sites();
  if (eta.eta.size() != std::size_t(2 * N + 1)) {
    throw std::invalid_argument("monodromy: inhomogeneity length mismatch");
  }
  PauliSum m = r_operator_sparse(rep, aux, 2 * N, lambda - eta.eta[2 * N]);
  for (int j = 2 * N - 1; j >= 1; --j) {
    m = m * r_operator_sparse(rep, aux, j, lambda - eta.eta[std::size_t(j)]);
  }
  return m.to_dense();
}

// transfer matrix on the N physical qubits: plain partial trace over the
// auxiliary qubit, no 1/2 normalization
inline Dense transfer(const ModeRep& rep, double lambda,
                      const Inhomogeneity& eta) {
  return partial_trace_aux(monodromy(rep, ModeRep::aux_a, lambda, eta));
}

// Yang-Baxter residual on three modes of the N = 1 representation
// (two qubits): R_12(l - m) R_13(l) R_23(m) = R_23(m) R_13(l) R_12(l - m)
// with (1, 2, 3) = (gamma_a, gamma_b, gamma_1).
inline double ybe_residual(const ModeRep& rep, double lambda, double mu) {
  const Dense r12 = r_operator(rep, ModeRep::aux_a, ModeRep::aux_b, lambda - mu);
  const Dense r13 = r_operator(rep, ModeRep::aux_a, 1, lambda);
  const Dense r23 = r_operator(rep, ModeRep::aux_b, 1, mu);
  return rel_dist(r12 * r13 * r23, r23 * r13 * r12);
}

// RTT residual: R_ab(l - m) T_a(l) T_b(m) = T_b(m) T_a(l) R_ab(l - m)
inline double rtt_residual(const ModeRep& rep, double lambda, double mu,
                           const Inhomogeneity& eta) {
  const Dense rab =
      r_operator(rep, ModeRep::aux_a, ModeRep::aux_b, lambda - mu);
  const Dense ta = monodromy(rep, ModeRep::aux_a, lambda, eta);
  const Dense tb = monodromy(rep, ModeRep::aux_b, mu, eta);
  return rel_dist(rab * ta * tb, tb * ta * rab);
}

inline double transfer_commute_residual(const ModeRep& rep, double lambda,
                                        double mu, const Inhomogeneity& eta) {
  const Dense a = transfer(rep, lambda, eta);
  const Dense b = transfer(rep, mu, eta);
  return rel_dist(a * b, b * a);
}

// tau(0 | 0) is proportional to the twisted translation. The fitted constant
// under the literal product order and unnormalized partial trace used here is
// (-1)^{N+1} sqrt(2); it is asserted real with |c| = sqrt2, and the
// proportionality itself is a hard invariant.
inline cplx calibrate_trace_convention(int N) {
  const ModeRep rep(N);
  const Dense tau = transfer(rep, 0.0, Inhomogeneity::homogeneous(N));
  const Dense u = twisted_translation(N).to_dense();
  const cplx c = fit_scalar(tau, u);
  if (rel_dist(tau, c * u) > 1e-12) {
    throw std::runtime_error(
        "calibrate_trace_convention: tau(0|0) is not proportional to the "
        "twisted translation, convention broken");
  }
  if (std::abs(c.imag()) > 1e-12 || std::abs(std::abs(c) - std::sqrt(2.0)) > 1e-12) {
    throw std::runtime_error(
        "calibrate_trace_convention: fitted constant drifted from "
        "(-1)^{N+1} sqrt(2)");
  }
  return c;
}

inline cplx calibration_constant(int N) {
  // closed form of the fitted constant above
  return cplx((N % 2 == 0) ? -std::sqrt(2.0) : std::sqrt(2.0), 0.0);
}

// Closed forms of the transfer matrix at the two staggered special points,
// with tau_cal = tau / calibration_constant and t = tanh(omega):
//   tau_cal(+omega/2 | omega) = U prod_j (1 + s_j t Gamma_{2j} Gamma_{2j+1}) / (1 + i t)
//   tau_cal(-omega/2 | omega) = U prod_j (1 - t Gamma_{2j-1} Gamma_{2j}) / (1 - i t)
// where s_j = -1 at the boundary j = N (mode 2N + 1 wraps to 1) and +1 else.
inline Dense transfer_special_closed(int N, double omega, int sign) {
  const auto g = jw_all(N);
  const double t = std::tanh(omega);
  const PauliSum id = PauliSum::identity(N);
  PauliSum prod = twisted_translation(N);
  for (int j = 1; j <= N; ++j) {
    if (sign > 0) {
      const PauliSum& left = g[std::size_t(2 * j)];
      const PauliSum& right = (j == N) ? g[1] : g[std::size_t(2 * j + 1)];
      const double s = (j == N) ? -1.0 : 1.0;
      prod = prod * ((id + left * right * cplx(s * t, 0)) / cplx(1.0, t));
    } else {
      prod = prod *
             ((id - g[std::size_t(2 * j - 1)] * g[std::size_t(2 * j)] * cplx(t, 0)) /
              cplx(1.0, -t));
    }
  }
  return prod.to_dense();
}

}  // namespace isinglab
