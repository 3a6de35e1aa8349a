#pragma once

// Bit-packed Pauli-string algebra. A term is i^phase * X^x * Z^z with x, z
// n-bit masks (site j lives at bit j-1, site 1 is the least significant bit,
// and that little-endian order is the convention everywhere in this repo).
// A sum maps (x, z) keys to complex coefficients with the i-powers folded in.
// Products only ever touch masks and signs, so the term layer is exact.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "isinglab/dense.hpp"

namespace isinglab {

inline constexpr int kMaxSites = 64;
inline constexpr double kPruneEps = 1e-14;

// i^k for k mod 4, exact
inline cplx ipow(int k) {
  static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return tab[((k % 4) + 4) % 4];
}

inline void check_site_count(int n) {
  if (n < 1 || n > kMaxSites) {
    throw std::invalid_argument("site count must be in [1, 64]");
  }
}

struct PauliTerm {
  int n = 1;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase = 0;  // exponent of i, mod 4

  bool operator==(const PauliTerm&) const = default;
};

// (i^pa X^xa Z^za)(i^pb X^xb Z^zb): commuting Z^za past X^xb costs
// (-1)^{|za & xb|}, i.e. two units of i-phase per overlapping site.
inline PauliTerm term_mul(const PauliTerm& a, const PauliTerm& b) {
  if (a.n != b.n) throw std::invalid_argument("term_mul: dimension mismatch");
  PauliTerm c;
  c.n = a.n;
  c.x = a.x ^ b.x;
  c.z = a.z ^ b.z;
  c.phase = (a.phase + b.phase + 2 * (std::popcount(a.z & b.x) & 1)) % 4;
  return c;
}

class PauliSum {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;  // (x, z)
  using Map = std::map<Key, cplx>;

  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) { check_site_count(n); }

  int sites() const { return n_; }
  const Map& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  static PauliSum zero(int n) { return PauliSum(n); }

  static PauliSum identity(int n) {
    PauliSum s(n);
    s.add(0, 0, cplx(1, 0));
    return s;
  }

  // site j is 1-based
  static PauliSum x(int j, int n) { return single(j, n, true, false); }
  static PauliSum z(int j, int n) { return single(j, n, false, true); }
  static PauliSum y(int j, int n) {
    PauliSum s = single(j, n, true, true);  // X Z at site j
    return s * kI;                          // Y = i X Z
  }

  void add(std::uint64_t x, std::uint64_t z, cplx c) {
    check_masks(x, z);
    auto [it, fresh] = terms_.try_emplace({x, z}, c);
    if (!fresh) it->second += c;
    if (std::abs(it->second) < kPruneEps) terms_.erase(it);
  }

  void add(const PauliTerm& t, cplx scale = cplx(1, 0)) {
    if (t.n != n_) throw std::invalid_argument("add: dimension mismatch");
    add(t.x, t.z, ipow(t.phase) * scale);
  }

  cplx coeff(std::uint64_t x, std::uint64_t z) const {
    auto it = terms_.find({x, z});
    return it == terms_.end() ? cplx(0, 0) : it->second;
  }

  PauliSum& operator+=(const PauliSum& o) {
    check_dim(o);
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  PauliSum& operator-=(const PauliSum& o) {
    check_dim(o);
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  PauliSum& operator*=(cplx s) {
    if (std::abs(s) < kPruneEps) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator/(PauliSum a, cplx s) { return a *= (cplx(1, 0) / s); }

  // bilinear extension of term_mul, canonicalized
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    a.check_dim(b);
    PauliSum out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        const double sgn =
            (std::popcount(ka.second & kb.first) & 1) ? -1.0 : 1.0;
        out.add(ka.first ^ kb.first, ka.second ^ kb.second, ca * cb * sgn);
      }
    }
    return out;
  }

  // (c X^x Z^z)^dagger = conj(c) Z^z X^x = conj(c) (-1)^{|x & z|} X^x Z^z
  PauliSum dagger() const {
    PauliSum out(n_);
    for (const auto& [k, c] : terms_) {
      const double sgn = (std::popcount(k.first & k.second) & 1) ? -1.0 : 1.0;
      out.add(k.first, k.second, std::conj(c) * sgn);
    }
    return out;
  }

  // Pauli strings are traceless except the identity
  cplx trace() const {
    return coeff(0, 0) * std::pow(2.0, double(n_));
  }

  // Frobenius norm; strings are orthogonal with |string|^2 = 2^n
  double frobenius() const {
    double s2 = 0;
    for (const auto& [k, c] : terms_) s2 += std::norm(c);
    return std::sqrt(s2 * std::pow(2.0, double(n_)));
  }

  bool is_hermitian(double eps = 1e-12) const {
    PauliSum d = *this - dagger();
    return d.frobenius() <= eps * std::max(1.0, frobenius());
  }

  void prune(double eps = kPruneEps) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) < eps) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }

  // X^x Z^z sends basis state |c> to (-1)^{|z & c|} |c ^ x>
  Dense to_dense() const {
    if (n_ > max_dense_qubits()) {
      throw std::runtime_error(
          "to_dense: " + std::to_string(n_) +
          " qubits exceeds the dense cap (set ISING_LAB_MAX_QUBITS to raise)");
    }
    const std::uint64_t dim = std::uint64_t(1) << n_;
    Dense m = Dense::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (const auto& [k, coef] : terms_) {
      for (std::uint64_t c = 0; c < dim; ++c) {
        const double sgn = (std::popcount(k.second & c) & 1) ? -1.0 : 1.0;
        m(Eigen::Index(c ^ k.first), Eigen::Index(c)) += coef * sgn;
      }
    }
    return m;
  }

  static PauliSum from_dense(const Dense& m, int n, double eps = kPruneEps) {
    check_site_count(n);
    const std::uint64_t dim = std::uint64_t(1) << n;
    if (m.rows() != Eigen::Index(dim) || m.cols() != Eigen::Index(dim)) {
      throw std::invalid_argument("from_dense: dimension is not 2^n");
    }
    PauliSum out(n);
    for (std::uint64_t x = 0; x < dim; ++x) {
      for (std::uint64_t z = 0; z < dim; ++z) {
        cplx acc(0, 0);
        for (std::uint64_t c = 0; c < dim; ++c) {
          const double sgn = (std::popcount(z & c) & 1) ? -1.0 : 1.0;
          acc += sgn * m(Eigen::Index(c ^ x), Eigen::Index(c));
        }
        acc /= double(dim);
        if (std::abs(acc) >= eps) out.add(x, z, acc);
      }
    }
    return out;
  }

  // rendering like "(0.5+0i)*Z1 + (-0.5+0i)*X1X2"; a site with both bits set
  // is a Y and contributes a factor -i to the displayed coefficient since the
  // stored monomial is X Z
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      const int ny = std::popcount(k.first & k.second);
      const cplx disp = c * ipow(3 * ny);  // (-i)^ny
      if (!first) os << " + ";
      first = false;
      os << "(" << fmt_num(disp.real())
         << (disp.imag() < 0 ? "-" : "+") << fmt_num(std::abs(disp.imag()))
         << "i)";
      if (k.first == 0 && k.second == 0) continue;
      os << "*";
      for (int j = 0; j < n_; ++j) {
        const bool bx = (k.first >> j) & 1, bz = (k.second >> j) & 1;
        if (!bx && !bz) continue;
        os << (bx && bz ? 'Y' : bx ? 'X' : 'Z') << (j + 1);
      }
    }
    return os.str();
  }

 private:
  static PauliSum single(int j, int n, bool bx, bool bz) {
    PauliSum s(n);
    if (j < 1 || j > n) throw std::out_of_range("site index out of range");
    const std::uint64_t bit = std::uint64_t(1) << (j - 1);
    s.add(bx ? bit : 0, bz ? bit : 0, cplx(1, 0));
    return s;
  }

  static std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << (v == 0.0 ? 0.0 : v);  // normalize -0
    return os.str();
  }

  void check_dim(const PauliSum& o) const {
    if (n_ != o.n_) throw std::invalid_argument("pauli sum dimension mismatch");
  }

  void check_masks(std::uint64_t x, std::uint64_t z) const {
    if (n_ < 64 && ((x >> n_) != 0 || (z >> n_) != 0)) {
      throw std::invalid_argument("mask bits beyond site count");
    }
  }

  int n_ = 1;
  Map terms_;
};

inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return a * b - b * a;
}

inline PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return a * b + b * a;
}

// widen to n_total qubits; masks are unchanged, so sites keep their indices
// and the new qubits sit above as identity
inline PauliSum embedded(const PauliSum& s, int n_total) {
  if (n_total < s.sites()) {
    throw std::invalid_argument("embedded: cannot shrink");
  }
  PauliSum out(n_total);
  for (const auto& [k, c] : s.terms()) out.add(k.first, k.second, c);
  return out;
}

}  // namespace isinglab
