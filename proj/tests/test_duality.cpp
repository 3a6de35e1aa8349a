#include "testutil.hpp"

using namespace isinglab;

namespace {
const CheckReport& find_check(const std::vector<CheckReport>& v,
                              const std::string& id) {
  for (const auto& r : v) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("missing check id " + id);
}
}  // namespace

TEST_CASE("the two construction routes agree at every N") {
  for (int N = 2; N <= 5; ++N) {
    const DualityOperator d = kw_continuous(N);
    REQUIRE(d.route_residual.has_value());
    REQUIRE(*d.route_residual <= 1e-12);
  }
}

TEST_CASE("static operator has half rank and the documented algebra") {
  for (int N = 2; N <= 4; ++N) {
    const DualityOperator d = kw_continuous(N);
    REQUIRE(numerical_rank(d.mat) == (1 << (N - 1)));
    // D^2 = (1 + P) T / 2
    REQUIRE(rel_dist(Dense(d.mat * d.mat),
                     Dense(projector_even(N).to_dense() * translation(N))) <=
            1e-10);
  }
  // w = 0 degenerates the deformed algebra to the static one
  for (int N = 3; N <= 4; ++N) {
    for (const auto& r : algebra_suite(0.0, N)) {
      INFO(r.id);
      REQUIRE(r.pass);
    }
  }
}

TEST_CASE("deformed operators reduce to the static one at w = 0") {
  const int N = 3;
  const Dense d = kw_continuous(N).mat;
  REQUIRE(rel_dist(kw_trotterized(0.0, -1, N, {}, false).mat, d) <= 1e-15);
  REQUIRE(rel_dist(kw_trotterized(0.0, +1, N, {}, false).mat, d) <= 1e-15);
}

TEST_CASE("translation operator shifts sites") {
  const int N = 3;
  const Dense t = translation(N);
  REQUIRE(rel_dist(Dense(t * t.adjoint()), Dense(Dense::Identity(8, 8))) <= 1e-13);
  REQUIRE(rel_dist(dense_pow(t, N), Dense(Dense::Identity(8, 8))) <= 1e-13);
  for (int j = 1; j < N; ++j) {
    REQUIRE(rel_dist(Dense(t * PauliSum::x(j, N).to_dense() * t.adjoint()),
                     PauliSum::x(j + 1, N).to_dense()) <= 1e-13);
  }
}

TEST_CASE("gate product route against the transfer matrix route") {
  for (int N = 2; N <= 3; ++N) {
    for (double w : {0.2, 0.5}) {
      for (int sign : {-1, +1}) {
        const DualityOperator d = kw_trotterized(w, sign, N);
        REQUIRE(d.route_residual.has_value());
        REQUIRE(*d.route_residual <= 1e-10);
      }
    }
  }
}

TEST_CASE("intertwining table at a generic parameter") {
  for (const auto& r : table_suite(0.4, 3)) {
    INFO(r.id << ": residual " << r.residual);
    REQUIRE(r.pass);
  }
}

TEST_CASE("operator algebra at a generic parameter") {
  for (int N = 3; N <= 4; ++N) {
    for (const auto& r : algebra_suite(0.3, N)) {
      INFO(r.id << ": residual " << r.residual);
      REQUIRE(r.pass);
    }
  }
}

TEST_CASE("generic-coupling intertwinings") {
  for (double coupling : {0.3, 2.0}) {
    for (int sign : {-1, +1}) {
      const CheckReport r = duality_on_generic_circuit(0.4, sign, coupling, 3);
      INFO(r.id << " coupling " << coupling);
      REQUIRE(r.pass);
    }
  }
}

TEST_CASE("Floquet suite passes inside the window") {
  for (const auto& r : floquet_duality_suite(0.2, 0.5, 2.0, 3)) {
    INFO(r.id << ": residual " << r.residual);
    REQUIRE(r.pass);
  }
}

TEST_CASE("phase link is only recorded inside the window") {
  REQUIRE(kw_floquet(0.3, -1, 3).route_residual.has_value());
  REQUIRE(*kw_floquet(0.3, +1, 3).route_residual <= 1e-10);
  REQUIRE_FALSE(kw_floquet(0.9, -1, 3).route_residual.has_value());
}

TEST_CASE("mutations surface as failing checks, not as silent passes") {
  Mutation flip_b;
  flip_b.flip_dplus_sign = true;
  const auto table = table_suite(0.4, 3, flip_b);
  // the flipped trailing layer commutes through V_B, so plus_vb cannot see
  // this mutation; plus_va and plus_circuit can
  REQUIRE(find_check(table, "table.plus_vb").pass);
  REQUIRE_FALSE(find_check(table, "table.plus_va").pass);
  REQUIRE_FALSE(find_check(table, "table.plus_circuit").pass);
  REQUIRE(find_check(table, "table.minus_va").pass);  // D- untouched
  REQUIRE(*kw_trotterized(0.4, +1, 3, flip_b).route_residual > 1e-3);

  Mutation flip_jw;
  flip_jw.flip_jw_phase = true;
  const DualityOperator d = kw_continuous(3, flip_jw);
  REQUIRE(*d.route_residual > 1e-3);

  Mutation both;
  both.flip_dplus_sign = true;
  both.flip_jw_phase = true;
  int fails = 0;
  for (const auto& r : algebra_suite(0.3, 3, both)) fails += r.pass ? 0 : 1;
  REQUIRE(fails >= 1);
}

TEST_CASE("parameter guards") {
  REQUIRE_THROWS_AS(kw_trotterized(0.3, 0, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(kw_floquet(0.3, 2, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(translation(1), std::invalid_argument);
}
