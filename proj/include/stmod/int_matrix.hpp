#pragma once

// Exact integer matrices with Smith normal form, used for presenting
// finitely generated abelian groups by generators and relations and for
// integer lattice membership tests.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <vector>

namespace stmod {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix fromRows(std::initializer_list<std::initializer_list<long long>> rows) {
    int nr = int(rows.size());
    int nc = nr ? int(rows.begin()->size()) : 0;
    IntMatrix m(nr, nc);
    int r = 0;
    for (auto& row : rows) {
      int c = 0;
      for (long long v : row) m.at(r, c++) = v;
      ++r;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& at(int r, int c) { return data_[size_t(r) * cols_ + c]; }
  const BigInt& at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: incompatible product");
    IntMatrix s(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
      for (int k = 0; k < cols_; ++k) {
        if (at(r, k) == 0) continue;
        for (int c = 0; c < o.cols(); ++c) s.at(r, c) += at(r, k) * o.at(k, c);
      }
    return s;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithResult {
  // U * M * V = D with U, V unimodular and D diagonal with
  // d_1 | d_2 | ... | d_rank, zeros afterwards.
  IntMatrix U, V, D;
  std::vector<BigInt> invariantFactors;  // the nonzero diagonal entries, 1s included
  int freeRank = 0;                      // cols(M) - rank(M): free rank of coker(M)
};

SmithResult smithNormalForm(const IntMatrix& m);

// Does an integer row vector x with x * M = v exist?
bool inRowLattice(const SmithResult& snf, const IntMatrix& m, const IntMatrix& v);

// Are the two integer row lattices equal as subgroups of Z^n?
bool sameRowLattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace stmod
