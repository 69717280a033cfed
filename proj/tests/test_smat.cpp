#include <random>

#include "doctest.h"
#include "hodgehh/snf.hpp"
#include "hodgehh/util.hpp"

using namespace hodgehh;

namespace {

SMat random_int_matrix(int nr, int nc, int bound, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  SMat M(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) M.set(i, j, dist(rng));
  return M;
}

}  // namespace

TEST_CASE("sparse matrix basics") {
  SMat M = SMat::from_entries(2, 3, {{0, 0, 1}, {0, 2, -2}, {1, 1, mpq_class(1, 2)}});
  CHECK(M.at(0, 0) == 1);
  CHECK(M.at(0, 2) == -2);
  CHECK(M.at(1, 0) == 0);
  CHECK(M.nnz() == 3);
  CHECK_FALSE(M.is_integral());

  M.add_to(0, 2, 2);  // cancels to zero and drops the entry
  CHECK(M.nnz() == 2);
  CHECK(M.at(0, 2) == 0);

  SMat T = M.transpose();
  CHECK(T.nr == 3);
  CHECK(T.nc == 2);
  CHECK(T.at(1, 1) == mpq_class(1, 2));

  CHECK(SMat::identity(3) * M.transpose() == M.transpose());
  CHECK((M - M).is_zero());
  CHECK(M.scaled(2).at(1, 1) == 1);

  CHECK_THROWS_AS(M.at(5, 0), validation_error);
  CHECK_THROWS_AS((void)(M * M), validation_error);
}

TEST_CASE("stacking and blocks") {
  SMat A = SMat::diag({1, 2});
  SMat B = SMat::diag({3, 4});
  SMat H = hstack(A, B);
  CHECK(H.nr == 2);
  CHECK(H.nc == 4);
  CHECK(H.at(1, 3) == 4);
  SMat V = vstack(A, B);
  CHECK(V.nr == 4);
  CHECK(V.at(3, 1) == 4);
  SMat D = direct_sum(A, B);
  CHECK(D.nr == 4);
  CHECK(D.nc == 4);
  CHECK(D.at(2, 2) == 3);
  CHECK(D.at(2, 0) == 0);
}

TEST_CASE("coordinate text round trip") {
  SMat M = SMat::from_entries(3, 2, {{0, 0, mpq_class(-7, 3)}, {2, 1, 5}});
  SMat back = smat_from_coord_text(smat_to_coord_text(M));
  CHECK(back == M);

  CHECK_THROWS_AS(smat_from_coord_text("2 2\n5 0 1\n"), validation_error);
  CHECK_THROWS_AS(smat_from_coord_text(""), validation_error);
  CHECK_THROWS_AS(smat_from_coord_text("2 2\n0 0 x\n"), validation_error);
}

TEST_CASE("smith form of small fixed matrices") {
  auto s = smith_normal_form(SMat::diag({2, 3}));
  REQUIRE(s.invariant_factors.size() == 2);
  CHECK(s.invariant_factors[0] == 1);
  CHECK(s.invariant_factors[1] == 6);
  CHECK(s.rank == 2);

  auto s2 = smith_normal_form(SMat::from_entries(2, 2, {{0, 0, 2}, {0, 1, 4}, {1, 0, 6}, {1, 1, 8}}));
  REQUIRE(s2.invariant_factors.size() == 2);
  CHECK(s2.invariant_factors[0] == 2);
  CHECK(s2.invariant_factors[1] == 4);

  auto sid = smith_normal_form(SMat::identity(5));
  CHECK(sid.rank == 5);
  for (auto& d : sid.invariant_factors) CHECK(d == 1);

  auto sz = smith_normal_form(SMat::zero(3, 4));
  CHECK(sz.rank == 0);
  CHECK(sz.invariant_factors.empty());

  auto se = smith_normal_form(SMat::zero(0, 4));
  CHECK(se.rank == 0);
  CHECK(se.D.nr == 0);
  CHECK(se.V.nr == 4);
}

TEST_CASE("smith form certificates on random matrices") {
  std::mt19937 rng(20260814);
  for (int rep = 0; rep < 30; ++rep) {
    int nr = 1 + static_cast<int>(rng() % 8);
    int nc = 1 + static_cast<int>(rng() % 8);
    SMat M = random_int_matrix(nr, nc, 9, rng);
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.D);
    CHECK(s.U * s.Uinv == SMat::identity(nr));
    CHECK(s.Uinv * s.U == SMat::identity(nr));
    CHECK(s.V * s.Vinv == SMat::identity(nc));
    mpz_class du = det_bareiss(s.U);
    mpz_class dv = det_bareiss(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (size_t k = 0; k + 1 < s.invariant_factors.size(); ++k)
      CHECK(s.invariant_factors[k + 1] % s.invariant_factors[k] == 0);
    CHECK(s.rank == rank_of(M, Ring::ZZ()));
  }
}

TEST_CASE("determinant by fraction-free elimination") {
  CHECK(det_bareiss(SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 4}})) == -2);
  CHECK(det_bareiss(SMat::identity(4)) == 1);
  CHECK(det_bareiss(SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 4}})) == 0);
  CHECK(det_bareiss(SMat::zero(0, 0)) == 1);
  CHECK_THROWS_AS(det_bareiss(SMat::zero(2, 3)), validation_error);

  // |det| equals the product of the invariant factors
  std::mt19937 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    SMat M = random_int_matrix(5, 5, 6, rng);
    auto s = smith_normal_form(M);
    mpz_class prod = 1;
    for (auto& d : s.invariant_factors) prod *= d;
    if (s.rank < 5) prod = 0;
    mpz_class det = det_bareiss(M);
    CHECK(abs(det) == prod);
  }
}

TEST_CASE("row reduction over Q and Fp") {
  // rank drops from 2 to 1 mod 5: the determinant is exactly 5
  SMat M = SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 11}});
  auto rq = rref(M, Ring::QQ());
  CHECK(rq.rank == 2);
  CHECK(rq.T * M == rq.R);
  CHECK(rq.T * rq.Tinv == SMat::identity(2));
  CHECK(rq.R == SMat::identity(2));

  auto r5 = rref(M, Ring::GF(5));
  CHECK(r5.rank == 1);
  CHECK(r5.pivot_cols == std::vector<int>{0});
  CHECK(r5.R.at(0, 1) == 2);

  auto rz = rref(SMat::zero(3, 2), Ring::QQ());
  CHECK(rz.rank == 0);
  CHECK(rz.T == SMat::identity(3));

  CHECK_THROWS_AS(rref(M, Ring::ZZ()), validation_error);
}

TEST_CASE("kernels over fields and saturated kernels over Z") {
  SMat M = SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 4}});
  SMat K = kernel_basis(M, Ring::QQ());
  CHECK(K.nc == 1);
  CHECK((M * K).is_zero());

  // row [2 2]: integral kernel is spanned by a primitive vector
  SMat R2 = SMat::from_entries(1, 2, {{0, 0, 2}, {0, 1, 2}});
  SMat KZ = kernel_basis(R2, Ring::ZZ());
  REQUIRE(KZ.nc == 1);
  CHECK((R2 * KZ).is_zero());
  mpz_class g = gcd(KZ.at(0, 0).get_num(), KZ.at(1, 0).get_num());
  CHECK(g == 1);

  // saturation: the kernel basis extends to a basis of the ambient lattice,
  // i.e. its Smith form is all ones
  std::mt19937 rng(99);
  for (int rep = 0; rep < 12; ++rep) {
    SMat A = random_int_matrix(3, 5, 5, rng);
    SMat K2 = kernel_basis(A, Ring::ZZ());
    CHECK((A * K2).is_zero());
    CHECK(K2.nc == 5 - rank_of(A, Ring::ZZ()));
    if (K2.nc > 0) {
      auto sk = smith_normal_form(K2);
      CHECK(sk.rank == K2.nc);
      for (auto& d : sk.invariant_factors) CHECK(d == 1);
    }
  }

  // mod-5 kernel differs from the rational one
  SMat M5 = SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 11}});
  CHECK(kernel_basis(M5, Ring::QQ()).nc == 0);
  SMat K5 = kernel_basis(M5, Ring::GF(5));
  REQUIRE(K5.nc == 1);
  Ring f5 = Ring::GF(5);
  SMat P = M5 * K5;
  for (int i = 0; i < P.nr; ++i) CHECK(f5.normalize(P.at(i, 0)) == 0);
}

TEST_CASE("linear solver over Z, Q, and Fp") {
  SMat M = SMat::diag({2, 3});
  LinSolver zs(M, Ring::ZZ());
  auto x = zs.solve({4, 9});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(zs.solve({1, 0}).has_value());   // 2x = 1 has no integer solution
  CHECK_FALSE(zs.solve({mpq_class(1, 2), 0}).has_value());

  LinSolver qs(M, Ring::QQ());
  auto xq = qs.solve({1, 0});
  REQUIRE(xq.has_value());
  CHECK((*xq)[0] == mpq_class(1, 2));

  SMat tall = SMat::from_entries(2, 1, {{0, 0, 1}, {1, 0, 1}});
  CHECK_FALSE(LinSolver(tall, Ring::ZZ()).solve({1, 2}).has_value());
  CHECK_FALSE(LinSolver(tall, Ring::QQ()).solve({1, 2}).has_value());

  SMat M5 = SMat::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 11}});
  LinSolver f5s(M5, Ring::GF(5));
  auto x5 = f5s.solve({1, 3});
  REQUIRE(x5.has_value());
  Ring f5 = Ring::GF(5);
  auto chk = M5.apply(*x5);
  CHECK(f5.normalize(chk[0]) == f5.normalize(1));
  CHECK(f5.normalize(chk[1]) == f5.normalize(3));
  CHECK_FALSE(f5s.solve({1, 4}).has_value());

  // round trip: columns of M*X are always solvable and reproduce M*X
  std::mt19937 rng(3);
  for (int rep = 0; rep < 8; ++rep) {
    SMat A = random_int_matrix(4, 3, 5, rng);
    SMat X = random_int_matrix(3, 2, 5, rng);
    SMat B = A * X;
    LinSolver s(A, Ring::ZZ());
    auto Y = s.solve_mat(B);
    REQUIRE(Y.has_value());
    CHECK(A * *Y == B);
  }
}

TEST_CASE("memory budget interrupts oversized eliminations") {
  auto& budget = Budget::instance();
  budget.reset();
  budget.set_limit_mb(1);
  CHECK_THROWS_AS(smith_normal_form(SMat::zero(2000, 2000)), budget_error);
  budget.set_limit_mb(2048);
  budget.reset();
  CHECK(smith_normal_form(SMat::zero(4, 4)).rank == 0);
}
