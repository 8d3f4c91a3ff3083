#pragma once

// Dense exact linear algebra over the prime field F_p, 2 <= p <= 97.
//
// Convention used throughout the project: vectors are ROW vectors and a
// linear map is applied on the right, v |-> v * M.  A map from an
// m-dimensional space to an n-dimensional space is therefore an m x n
// matrix, and composition "f then g" is f.matrix * g.matrix.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stmod {

inline bool isSupportedPrime(int p) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int q : primes)
    if (q == p) return true;
  return false;
}

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p), data_(size_t(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("FpMatrix: negative dimension");
    if (!isSupportedPrime(p)) throw std::invalid_argument("FpMatrix: unsupported modulus " + std::to_string(p));
  }

  static FpMatrix zero(int rows, int cols, int p) { return FpMatrix(rows, cols, p); }

  static FpMatrix identity(int n, int p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static FpMatrix fromRows(std::initializer_list<std::initializer_list<int>> rows, int p) {
    int nr = int(rows.size());
    int nc = nr ? int(rows.begin()->size()) : 0;
    FpMatrix m(nr, nc, p);
    int r = 0;
    for (auto& row : rows) {
      if (int(row.size()) != nc) throw std::invalid_argument("fromRows: ragged rows");
      int c = 0;
      for (int v : row) m.at(r, c++) = uint8_t(((v % p) + p) % p);
      ++r;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int modulus() const { return p_; }

  uint8_t& at(int r, int c) { return data_[size_t(r) * cols_ + c]; }
  uint8_t at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

  bool isZero() const {
    for (uint8_t v : data_)
      if (v) return false;
    return true;
  }

  bool operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }

  FpMatrix transpose() const {
    FpMatrix t(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  FpMatrix operator+(const FpMatrix& o) const {
    requireSameShape(o);
    FpMatrix s(rows_, cols_, p_);
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] = uint8_t((data_[i] + o.data_[i]) % p_);
    return s;
  }

  FpMatrix operator-(const FpMatrix& o) const {
    requireSameShape(o);
    FpMatrix s(rows_, cols_, p_);
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] = uint8_t((data_[i] + p_ - o.data_[i]) % p_);
    return s;
  }

  FpMatrix operator-() const {
    FpMatrix s(rows_, cols_, p_);
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] = uint8_t((p_ - data_[i]) % p_);
    return s;
  }

  FpMatrix operator*(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("FpMatrix: incompatible product");
    FpMatrix s(rows_, o.cols_, p_);
    for (int r = 0; r < rows_; ++r)
      for (int k = 0; k < cols_; ++k) {
        int a = at(r, k);
        if (!a) continue;
        for (int c = 0; c < o.cols_; ++c)
          s.at(r, c) = uint8_t((s.at(r, c) + a * o.at(k, c)) % p_);
      }
    return s;
  }

  FpMatrix scaled(int c) const {
    int cc = ((c % p_) + p_) % p_;
    FpMatrix s(rows_, cols_, p_);
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] = uint8_t((data_[i] * cc) % p_);
    return s;
  }

  FpMatrix row(int r) const {
    FpMatrix v(1, cols_, p_);
    for (int c = 0; c < cols_; ++c) v.at(0, c) = at(r, c);
    return v;
  }

  FpMatrix submatrix(int r0, int c0, int nr, int nc) const {
    FpMatrix s(nr, nc, p_);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) s.at(r, c) = at(r0 + r, c0 + c);
    return s;
  }

  void setBlock(int r0, int c0, const FpMatrix& b) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) at(r0 + r, c0 + c) = b.at(r, c);
  }

  std::string toString() const;

 private:
  void requireSameShape(const FpMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
      throw std::invalid_argument("FpMatrix: shape/modulus mismatch");
  }

  int rows_ = 0, cols_ = 0, p_ = 2;
  std::vector<uint8_t> data_;
};

int fpInverse(int a, int p);

// Stack matrices vertically (same column count) / horizontally (same row count).
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);

struct RowReduction {
  int rank = 0;
  FpMatrix rref;            // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero rref row
  FpMatrix kernel;          // rows span { x : M * x^T = 0 }
};

RowReduction rowReduce(const FpMatrix& m);

int rank(const FpMatrix& m);

// Particular solution X of A * X = B, if one exists.
std::optional<FpMatrix> solveLinear(const FpMatrix& a, const FpMatrix& b);

// Rows spanning { v : v * M = 0 }.
FpMatrix leftKernel(const FpMatrix& m);

std::optional<FpMatrix> inverse(const FpMatrix& m);

// Basis (rref nonzero rows) of the row space.
FpMatrix rowSpaceBasis(const FpMatrix& m);

bool inRowSpace(const FpMatrix& basisRows, const FpMatrix& v);

// Coordinates x with x * basisRows = v, if v lies in the row space.
std::optional<FpMatrix> coordinatesInRows(const FpMatrix& basisRows, const FpMatrix& v);

}  // namespace stmod
