#include "testutil.hpp"

using namespace isinglab;

TEST_CASE("staggered inhomogeneity pattern") {
  const auto v = Inhomogeneity::staggered(2, 0.4);
  REQUIRE(v.eta.size() == 5);
  REQUIRE(v.eta[1] == Catch::Approx(-0.2));
  REQUIRE(v.eta[2] == Catch::Approx(0.2));
  REQUIRE(v.eta[3] == Catch::Approx(-0.2));
  REQUIRE(v.eta[4] == Catch::Approx(0.2));
  const auto h = Inhomogeneity::homogeneous(3);
  for (double e : h.eta) REQUIRE(e == 0.0);
}

TEST_CASE("auxiliary representation keeps all modes anticommuting") {
  const ModeRep rep(2);
  std::vector<int> labels = {ModeRep::aux_a, ModeRep::aux_b, 1, 2, 3, 4};
  const PauliSum two = PauliSum::identity(rep.qubits()) * cplx(2, 0);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a; b < labels.size(); ++b) {
      PauliSum ac = anticommutator(rep.mode(labels[a]), rep.mode(labels[b]));
      if (a == b) ac -= two;
      REQUIRE(ac.frobenius() == 0.0);
    }
  }
}

TEST_CASE("R operator basics") {
  const ModeRep rep(1);
  // lambda = 0 is the Majorana permutation, squaring to one
  const Dense r0 = r_operator(rep, ModeRep::aux_a, 1, 0.0);
  REQUIRE(rel_dist(Dense(r0 * r0), Dense(Dense::Identity(4, 4))) <= 1e-13);
  // unitary at real spectral parameter
  const Dense r = r_operator(rep, ModeRep::aux_a, 1, 0.37);
  REQUIRE(rel_dist(Dense(r * r.adjoint()), Dense(Dense::Identity(4, 4))) <= 1e-13);
  REQUIRE_THROWS_AS(r_operator_sparse(rep, 1, 1, 0.1), std::invalid_argument);
}

TEST_CASE("Yang-Baxter residual vanishes on random points") {
  const ModeRep rep(1);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    REQUIRE(ybe_residual(rep, u(rng), u(rng)) <= 1e-13);
  }
}

TEST_CASE("monodromy equals the dense factor product") {
  const int N = 2;
  const ModeRep rep(N);
  std::mt19937_64 rng(19);
  const auto eta = Inhomogeneity::random(N, rng);
  const double lambda = 0.23;
  Dense prod = Dense::Identity(8, 8);
  for (int j = 2 * N; j >= 1; --j) {
    prod = prod * r_operator(rep, ModeRep::aux_a, j,
                             lambda - eta.eta[std::size_t(j)]);
  }
  REQUIRE(rel_dist(monodromy(rep, ModeRep::aux_a, lambda, eta), prod) <= 1e-13);
}

TEST_CASE("RTT and transfer commutativity") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int N = 2; N <= 3; ++N) {
    const ModeRep rep(N);
    const auto stag = Inhomogeneity::staggered(N, 0.3);
    const auto rnd = Inhomogeneity::random(N, rng);
    for (const auto& eta : {stag, rnd}) {
      for (int k = 0; k < 3; ++k) {
        const double l = u(rng), m = u(rng);
        REQUIRE(rtt_residual(rep, l, m, eta) <= 1e-10);
        REQUIRE(transfer_commute_residual(rep, l, m, eta) <= 1e-10);
      }
    }
  }
}

TEST_CASE("trace convention calibrates to the twisted translation") {
  for (int N = 2; N <= 5; ++N) {
    const cplx c = calibrate_trace_convention(N);
    REQUIRE(std::abs(c - calibration_constant(N)) <= 1e-12);
  }
  REQUIRE(calibration_constant(2) == cplx(-std::sqrt(2.0), 0.0));
  REQUIRE(calibration_constant(3) == cplx(std::sqrt(2.0), 0.0));
}

TEST_CASE("closed forms at the staggered special points") {
  for (int N = 2; N <= 3; ++N) {
    const ModeRep rep(N);
    for (double omega : {0.1, 0.3, 0.5}) {
      const auto eta = Inhomogeneity::staggered(N, omega);
      const cplx c = calibration_constant(N);
      for (int sign : {+1, -1}) {
        const Dense tau = transfer(rep, sign * omega / 2.0, eta) / c;
        REQUIRE(rel_dist(tau, transfer_special_closed(N, omega, sign)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("transfer ratio at the special points is the Majorana circuit") {
  for (int N = 2; N <= 3; ++N) {
    const ModeRep rep(N);
    for (double omega : {0.2, 0.5}) {
      const auto eta = Inhomogeneity::staggered(N, omega);
      const Dense tm = transfer(rep, -omega / 2.0, eta);
      const Dense tp = transfer(rep, omega / 2.0, eta);
      const Dense ratio = mat_inv(tm) * tp;
      REQUIRE(rel_dist(ratio, v_majorana(std::tanh(omega), N)) <= 1e-10);

      // on the even sector the ratio equals the plain rational circuit
      const Dense pe = projector_even(N).to_dense();
      REQUIRE(rel_dist(Dense(ratio * pe),
                       Dense(v_first_order(std::tanh(omega), 1.0, 1.0, N) * pe)) <=
              1e-10);
    }
  }
}

TEST_CASE("monodromy rejects a wrong inhomogeneity length") {
  const ModeRep rep(2);
  Inhomogeneity bad;
  bad.eta.assign(3, 0.0);
  REQUIRE_THROWS_AS(monodromy(rep, ModeRep::aux_a, 0.1, bad),
                    std::invalid_argument);
}
