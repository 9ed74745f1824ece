#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradlie/fplinalg.hpp"

using namespace gradlie;

namespace {

FpMatrix mat(u32 p, std::vector<Vec> rows) {
  return FpMatrix::from_rows(p, rows.empty() ? 0 : rows[0].size(), rows);
}

TEST_CASE("scalar arithmetic") {
  CHECK(fp_add(3, 4, 5) == 2);
  CHECK(fp_sub(1, 3, 5) == 3);
  CHECK(fp_mul(3, 4, 7) == 5);
  CHECK(fp_inv(3, 7) == 5);
  CHECK(fp_pow(2, 10, 11) == 1);
  CHECK_THROWS(fp_inv(0, 5));
  CHECK_THROWS(check_modulus(3));
  CHECK_THROWS(check_modulus(9));
  CHECK_NOTHROW(check_modulus(5));
  CHECK_NOTHROW(check_modulus(11));
}

TEST_CASE("echelonize dependent rows") {
  // row 1 = 2*row 2 over F_5
  FpMatrix M = mat(5, {{2, 4}, {1, 2}});
  CHECK(echelonize(M) == 1);
  CHECK(M.row(0) == Vec{1, 2});
}

TEST_CASE("echelonize identity") {
  FpMatrix M = FpMatrix::identity(5, 3);
  CHECK(echelonize(M) == 3);
  CHECK(M == FpMatrix::identity(5, 3));
}

TEST_CASE("echelonize independent rows") {
  FpMatrix M = mat(5, {{1, 1}, {1, 4}});
  CHECK(echelonize(M) == 2);
  CHECK(M == FpMatrix::identity(5, 2));
}

TEST_CASE("echelonize is idempotent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    FpMatrix M(7, 4, 6);
    for (auto& x : M.a) x = rng() % 7;
    echelonize(M);
    FpMatrix R = M;
    echelonize(R);
    CHECK(R == M);
  }
}

TEST_CASE("kernel basics") {
  CHECK(kernel(FpMatrix(5, 2, 2)).dim() == 2);
  CHECK(kernel(FpMatrix::identity(5, 3)).dim() == 0);
  FpSubspace k = kernel(mat(5, {{1, 2}}));
  CHECK(k.dim() == 1);
  CHECK(k.contains(Vec{3, 1}));
}

TEST_CASE("rank-nullity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    FpMatrix M(7, r, c);
    for (auto& x : M.a) x = rng() % 7;
    FpSubspace k = kernel(M);
    FpMatrix R = M;
    std::size_t rank = echelonize(R);
    CHECK(rank + k.dim() == c);
    for (std::size_t i = 0; i < k.dim(); ++i)
      CHECK(vec_is_zero(M.apply(k.basis_row(i))));
  }
}

TEST_CASE("subspace ops on equal and complementary inputs") {
  FpSubspace A = FpSubspace::span(5, 2, {{1, 0}, {0, 1}});
  CHECK(subspace_sum(A, A) == A);
  CHECK(subspace_intersect(A, A) == A);
  CHECK(A.contains(A));

  FpSubspace L1 = FpSubspace::span(5, 2, {{1, 0}});
  FpSubspace L2 = FpSubspace::span(5, 2, {{0, 1}});
  CHECK(subspace_sum(L1, L2) == FpSubspace::full_space(5, 2));
  CHECK(subspace_intersect(L1, L2).is_zero());
}

TEST_CASE("intersection from stacked membership system") {
  FpSubspace A = FpSubspace::span(5, 3, {{1, 0, 0}, {0, 1, 0}});
  FpSubspace B = FpSubspace::span(5, 3, {{1, 1, 0}, {0, 0, 1}});
  FpSubspace I = subspace_intersect(A, B);
  CHECK(I == FpSubspace::span(5, 3, {{1, 1, 0}}));
}

TEST_CASE("modular law for dimensions") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec> ga, gb;
    for (int i = 0; i < 3; ++i) {
      Vec v(5), w(5);
      for (auto& x : v) x = rng() % 5;
      for (auto& x : w) x = rng() % 5;
      ga.push_back(v);
      gb.push_back(w);
    }
    FpSubspace A = FpSubspace::span(5, 5, ga), B = FpSubspace::span(5, 5, gb);
    CHECK(A.dim() + B.dim() == subspace_sum(A, B).dim() + subspace_intersect(A, B).dim());
  }
}

TEST_CASE("dimension mismatch is an error") {
  FpSubspace A = FpSubspace::span(5, 2, {{1, 0}});
  FpSubspace B = FpSubspace::span(5, 3, {{1, 0, 0}});
  CHECK_THROWS(subspace_sum(A, B));
  CHECK_THROWS(subspace_intersect(A, B));
}

TEST_CASE("quotient transversal completes the smaller space") {
  FpSubspace A = FpSubspace::full_space(5, 3);
  FpSubspace B = FpSubspace::span(5, 3, {{1, 2, 0}});
  auto reps = quotient_transversal(A, B);
  CHECK(reps.size() == 2);
  EchelonBuilder b(5, 3);
  for (std::size_t i = 0; i < B.dim(); ++i) b.insert(B.basis_row(i));
  for (auto& r : reps) CHECK(b.insert(r));
  CHECK(b.full());
}

TEST_CASE("coordinates and reduce") {
  FpSubspace S = FpSubspace::span(5, 3, {{1, 0, 2}, {0, 1, 3}});
  Vec v{2, 3, (2 * 2 + 3 * 3) % 5};
  auto c = S.coordinates(v);
  REQUIRE(c.has_value());
  CHECK((*c) == Vec{2, 3});
  CHECK(!S.coordinates(Vec{0, 0, 1}).has_value());
  CHECK(vec_is_zero(S.reduce(v)));
}

TEST_CASE("solve") {
  FpMatrix M = mat(5, {{1, 2}, {3, 4}});
  auto x = solve(M, Vec{1, 0});
  REQUIRE(x.has_value());
  CHECK(M.apply(*x) == Vec{1, 0});
  FpMatrix S = mat(5, {{1, 1}, {2, 2}});
  CHECK(!solve(S, Vec{0, 1}).has_value());
}

TEST_CASE("sparse apply agrees with dense") {
  std::mt19937 rng(5);
  SparseMat S(7, 6, 4);
  for (int k = 0; k < 10; ++k) S.add(rng() % 6, rng() % 4, rng() % 7);
  FpMatrix D = S.to_dense();
  for (int trial = 0; trial < 10; ++trial) {
    Vec v(4);
    for (auto& x : v) x = rng() % 7;
    CHECK(S.apply(v) == D.apply(v));
  }
}

TEST_CASE("matrix power") {
  FpMatrix M = mat(5, {{1, 1}, {0, 1}});
  CHECK(M.pow(0) == FpMatrix::identity(5, 2));
  CHECK(M.pow(5).at(0, 1) == 0);  // unipotent of order p
}

}  // namespace
