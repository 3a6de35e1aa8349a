#include "testutil.hpp"

using namespace isinglab;
using testutil::word_op;

TEST_CASE("rational Z gate is the documented diagonal") {
  const double w = 0.6;
  const Dense g = gate_uz(1, w, 1).to_dense();
  Dense expect = Dense::Zero(2, 2);
  expect(0, 0) = 1.0;
  expect(1, 1) = std::exp(-2.0 * kI * std::atan(w));
  REQUIRE(rel_dist(g, expect) <= 1e-14);
  REQUIRE((gate_uz(1, 0.0, 1) - PauliSum::identity(1)).frobenius() == 0.0);
}

TEST_CASE("gates are unitary and disjoint gates commute") {
  const int N = 4;
  const double w = 0.8;
  const PauliSum id = PauliSum::identity(N);
  for (int j = 1; j <= N; ++j) {
    REQUIRE((gate_uz(j, w, N) * gate_uz(j, w, N).dagger() - id).frobenius() <=
            1e-13);
    REQUIRE((gate_uxx(j, w, N) * gate_uxx(j, w, N).dagger() - id).frobenius() <=
            1e-13);
  }
  REQUIRE(commutator(gate_uz(1, w, N), gate_uxx(2, w, N)).frobenius() <= 1e-15);
  REQUIRE(commutator(gate_uxx(1, w, N), gate_uxx(3, w, N)).frobenius() <= 1e-15);
  REQUIRE_THROWS_AS(gate_uxx(5, w, N), std::out_of_range);
}

TEST_CASE("layers and the first-order circuit") {
  const int N = 3;
  const double w = 0.45, h = 0.7, J = 1.3;
  REQUIRE(rel_dist(v_first_order(w, h, J, N),
                   Dense(va_layer(h * w, N) * vb_layer(J * w, N))) <= 1e-13);
  // adjoint reverses layer order and flips the parameter sign
  REQUIRE(rel_dist(Dense(v_first_order(w, h, J, N).adjoint()),
                   Dense((vb_layer_sparse(-J * w, N) * va_layer_sparse(-h * w, N))
                             .to_dense())) <= 1e-13);
  const Dense v = v_first_order(w, h, J, N);
  REQUIRE(rel_dist(Dense(v * v.adjoint()), Dense(Dense::Identity(8, 8))) <= 1e-13);
}

TEST_CASE("Majorana circuit differs from the spin circuit by the twisted bond") {
  const int N = 3;
  const double w = 0.35;
  const PauliSum id = PauliSum::identity(N);
  PauliSum vbt = id;
  for (int j = 1; j < N; ++j) vbt = vbt * gate_uxx(j, w, N);
  vbt = vbt * ((id + spin_parity(N) * PauliSum::x(N, N) * PauliSum::x(1, N) *
                         cplx(0, w)) /
               cplx(1.0, w));
  REQUIRE(rel_dist(v_majorana(w, N),
                   Dense((va_layer_sparse(w, N) * vbt).to_dense())) <= 1e-13);
}

TEST_CASE("Hamiltonians match an independent dense construction") {
  const int N = 3;
  Dense ha = Dense::Zero(8, 8), hb = Dense::Zero(8, 8);
  for (int j = 1; j <= N; ++j) {
    ha -= word_op({{j, 'Z'}}, N);
    hb -= word_op({{j, 'X'}, {j == N ? 1 : j + 1, 'X'}}, N);
  }
  REQUIRE(rel_dist(hamiltonian_a(N).to_dense(), ha) <= 1e-15);
  REQUIRE(rel_dist(hamiltonian_b(N).to_dense(), hb) <= 1e-15);
  REQUIRE(rel_dist(h_tfim(0.7, 1.3, N).to_dense(),
                   Dense(0.7 * ha + 1.3 * hb)) <= 1e-14);
}

TEST_CASE("evolution operators are unitary and palindromic") {
  const int N = 2;
  const double t = 0.4;
  for (const Dense& u :
       {floquet_op(t, 0.7, 1.2, N), second_order(t, 0.7, 1.2, SplitSign::minus, N),
        second_order(t, 0.7, 1.2, SplitSign::plus, N),
        reference_evolution(t, 0.7, 1.2, N)}) {
    REQUIRE(rel_dist(Dense(u * u.adjoint()), Dense(Dense::Identity(4, 4))) <=
            1e-12);
  }
  // symmetric splittings invert under t -> -t
  REQUIRE(rel_dist(Dense(second_order(t, 0.7, 1.2, SplitSign::minus, N).adjoint()),
                   second_order(-t, 0.7, 1.2, SplitSign::minus, N)) <= 1e-12);
}

TEST_CASE("Floquet step carries the global phase of the rational circuit") {
  for (int N = 2; N <= 3; ++N) {
    for (double t : {0.1, 0.3, 0.7}) {
      const cplx ph = std::exp(2.0 * kI * double(N) * t);
      REQUIRE(rel_dist(floquet_op(t, 1.0, 1.0, N),
                       Dense(ph * v_first_order(std::tan(t), 1.0, 1.0, N))) <=
              1e-12);
    }
  }
}

TEST_CASE("Trotter errors halve and quarter at the documented rates") {
  const int N = 2;
  const double t = 0.7;
  const double f1 = trotter_error(t, 8, 1.0, 0.8, TrotterKind::first_order, N);
  const double f2 = trotter_error(t, 16, 1.0, 0.8, TrotterKind::first_order, N);
  REQUIRE(f1 / f2 > 1.8);
  REQUIRE(f1 / f2 < 2.2);
  for (TrotterKind k :
       {TrotterKind::second_order_minus, TrotterKind::second_order_plus}) {
    const double s1 = trotter_error(t, 8, 1.0, 0.8, k, N);
    const double s2 = trotter_error(t, 16, 1.0, 0.8, k, N);
    REQUIRE(s1 / s2 > 3.5);
    REQUIRE(s1 / s2 < 4.5);
  }
  const double r1 = rational_trotter_error(t, 8, N);
  const double r2 = rational_trotter_error(t, 16, N);
  REQUIRE(r1 / r2 > 1.7);
  REQUIRE(r1 / r2 < 2.3);
  REQUIRE_THROWS_AS(trotter_error(t, 0, 1, 1, TrotterKind::first_order, N),
                    std::invalid_argument);
}
