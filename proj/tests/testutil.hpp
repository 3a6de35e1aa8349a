#pragma once

// Shared helpers for the unit tests. The dense constructions here are kept
// deliberately independent of the library's own bit-mask path: single-site
// operators are placed by explicit Kronecker chains so the two routes can
// check each other.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "isinglab/isinglab.hpp"

namespace testutil {

using isinglab::cplx;
using isinglab::Dense;

inline Dense pauli2(char which) {
  Dense m(2, 2);
  switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli2");
  }
  return m;
}

// one-site operator embedded in an N-site chain, site 1 on the lowest bit
inline Dense site_op(char which, int site, int n_sites) {
  Dense m = Dense::Identity(1, 1);
  for (int j = 1; j <= n_sites; ++j) {
    const Dense factor = (j == site) ? pauli2(which) : pauli2('I');
    m = isinglab::kron(factor, m);  // higher sites land on higher bits
  }
  return m;
}

// dense operator for a Pauli word given as site -> letter, e.g. {{1,'X'},{2,'Z'}}
inline Dense word_op(const std::vector<std::pair<int, char>>& word, int n_sites) {
  Dense m = Dense::Identity(1 << n_sites, 1 << n_sites);
  for (const auto& [site, letter] : word) m = m * site_op(letter, site, n_sites);
  return m;
}

inline isinglab::PauliSum random_sum(std::mt19937_64& rng, int n_sites,
                                     int n_terms) {
  std::uniform_int_distribution<std::uint64_t> mask(
      0, (std::uint64_t(1) << n_sites) - 1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  isinglab::PauliSum s(n_sites);
  for (int k = 0; k < n_terms; ++k) {
    s.add(mask(rng), mask(rng), cplx(c(rng), c(rng)));
  }
  return s;
}

inline Dense random_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Dense m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Dense> qr(m);
  Dense q = qr.householderQ();
  Dense rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const cplx d = rmat(k, k);
    q.col(k) *= (std::abs(d) > 0) ? d / std::abs(d) : cplx(1, 0);
  }
  return q;
}

}  // namespace testutil
