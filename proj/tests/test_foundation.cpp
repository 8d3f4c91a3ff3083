#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stmod/fp_matrix.hpp"
#include "stmod/int_matrix.hpp"

using namespace stmod;

static FpMatrix randomMatrix(int r, int c, int p, std::mt19937_64& rng) {
  FpMatrix m(r, c, p);
  std::uniform_int_distribution<int> d(0, p - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = uint8_t(d(rng));
  return m;
}

TEST_CASE("row reduction of the all-ones 2x2 matrix over F_2") {
  FpMatrix m = FpMatrix::fromRows({{1, 1}, {1, 1}}, 2);
  RowReduction red = rowReduce(m);
  CHECK(red.rank == 1);
  CHECK(red.kernel.rows() == 1);
  CHECK(red.kernel == FpMatrix::fromRows({{1, 1}}, 2));
}

TEST_CASE("solve over F_3 with a free variable") {
  FpMatrix a = FpMatrix::fromRows({{1, 1}}, 3);
  FpMatrix b = FpMatrix::fromRows({{2}}, 3);
  auto x = solveLinear(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
  RowReduction red = rowReduce(a);
  CHECK(red.kernel.rows() == 1);
  // kernel vector (1,2): 1 + 2 = 0 mod 3
  CHECK((a * red.kernel.transpose()).isZero());
}

TEST_CASE("inconsistent system has no solution") {
  FpMatrix a = FpMatrix::fromRows({{1, 1}, {1, 1}}, 2);
  FpMatrix b = FpMatrix::fromRows({{1}, {0}}, 2);
  CHECK(!solveLinear(a, b).has_value());
}

TEST_CASE("rank equals rank of transpose on random matrices") {
  std::mt19937_64 rng(12345);
  for (int p : {2, 3, 5, 97}) {
    for (int trial = 0; trial < 20; ++trial) {
      FpMatrix m = randomMatrix(trial % 6 + 1, (trial * 7) % 6 + 1, p, rng);
      CHECK(rank(m) == rank(m.transpose()));
    }
  }
}

TEST_CASE("solutions substitute back on random solvable systems") {
  std::mt19937_64 rng(777);
  for (int p : {2, 5, 13}) {
    for (int trial = 0; trial < 25; ++trial) {
      FpMatrix a = randomMatrix(4, 3, p, rng);
      FpMatrix x0 = randomMatrix(3, 2, p, rng);
      FpMatrix b = a * x0;
      auto x = solveLinear(a, b);
      REQUIRE(x.has_value());
      CHECK(a * *x == b);
    }
  }
}

TEST_CASE("left kernel rows annihilate the matrix") {
  std::mt19937_64 rng(31);
  FpMatrix m = randomMatrix(5, 3, 7, rng);
  FpMatrix k = leftKernel(m);
  CHECK((k * m).isZero());
  CHECK(k.rows() + rank(m) == m.rows());
}

TEST_CASE("matrix inverse") {
  FpMatrix m = FpMatrix::fromRows({{1, 1}, {0, 1}}, 5);
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == FpMatrix::identity(2, 5));
  CHECK(!inverse(FpMatrix::fromRows({{1, 1}, {1, 1}}, 5)).has_value());
}

TEST_CASE("coordinates in a row basis") {
  FpMatrix basis = FpMatrix::fromRows({{1, 0, 1}, {0, 1, 1}}, 2);
  auto c = coordinatesInRows(basis, FpMatrix::fromRows({{1, 1, 0}}, 2));
  REQUIRE(c.has_value());
  CHECK(*c * basis == FpMatrix::fromRows({{1, 1, 0}}, 2));
  CHECK(!inRowSpace(basis, FpMatrix::fromRows({{1, 0, 0}}, 2)));
}

TEST_CASE("Smith normal form of diag(2,3)") {
  IntMatrix m = IntMatrix::fromRows({{2, 0}, {0, 3}});
  SmithResult s = smithNormalForm(m);
  REQUIRE(s.invariantFactors.size() == 2);
  CHECK(s.invariantFactors[0] == 1);
  CHECK(s.invariantFactors[1] == 6);
  CHECK(s.freeRank == 0);
  CHECK(s.U * m * s.V == s.D);
}

TEST_CASE("Smith normal form of the 1x1 zero matrix") {
  IntMatrix m(1, 1);
  SmithResult s = smithNormalForm(m);
  CHECK(s.invariantFactors.empty());
  CHECK(s.freeRank == 1);
}

TEST_CASE("Smith normal form of [[2]]") {
  IntMatrix m = IntMatrix::fromRows({{2}});
  SmithResult s = smithNormalForm(m);
  REQUIRE(s.invariantFactors.size() == 1);
  CHECK(s.invariantFactors[0] == 2);
  CHECK(s.freeRank == 0);
}

TEST_CASE("Smith normal form decomposition on random integer matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    int r = trial % 4 + 1, c = (trial * 3) % 4 + 1;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
    SmithResult s = smithNormalForm(m);
    CHECK(s.U * m * s.V == s.D);
    for (size_t i = 0; i + 1 < s.invariantFactors.size(); ++i)
      CHECK(s.invariantFactors[i + 1] % s.invariantFactors[i] == 0);
  }
}

TEST_CASE("integer row-lattice membership") {
  IntMatrix m = IntMatrix::fromRows({{2, 0}, {0, 3}});
  SmithResult s = smithNormalForm(m);
  CHECK(inRowLattice(s, m, IntMatrix::fromRows({{2, 3}})));
  CHECK(inRowLattice(s, m, IntMatrix::fromRows({{4, -3}})));
  CHECK(!inRowLattice(s, m, IntMatrix::fromRows({{1, 0}})));
  CHECK(sameRowLattice(m, IntMatrix::fromRows({{2, 3}, {2, -3}, {2, 0}})));
  CHECK(!sameRowLattice(m, IntMatrix::fromRows({{2, 0}})));
}
