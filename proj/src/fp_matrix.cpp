#include "stmod/fp_matrix.hpp"

#include <sstream>

namespace stmod {

int fpInverse(int a, int p) {
  a = ((a % p) + p) % p;
  if (a == 0) throw std::invalid_argument("fpInverse: zero element");
  // p is prime, so a^(p-2) is the inverse.
  int result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return result;
}

std::string FpMatrix::toString() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    os << (r ? " [" : "[");
    for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << int(at(r, c));
    os << "]";
  }
  os << "]";
  return os.str();
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0 && b.cols() == a.cols()) return a;
  if (a.cols() != b.cols() || a.modulus() != b.modulus())
    throw std::invalid_argument("vstack: column/modulus mismatch");
  FpMatrix s(a.rows() + b.rows(), a.cols(), a.modulus());
  s.setBlock(0, 0, a);
  s.setBlock(a.rows(), 0, b);
  return s;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0 && b.rows() == a.rows()) return a;
  if (a.rows() != b.rows() || a.modulus() != b.modulus())
    throw std::invalid_argument("hstack: row/modulus mismatch");
  FpMatrix s(a.rows(), a.cols() + b.cols(), a.modulus());
  s.setBlock(0, 0, a);
  s.setBlock(0, a.cols(), b);
  return s;
}

RowReduction rowReduce(const FpMatrix& m) {
  const int p = m.modulus();
  RowReduction out;
  out.rref = m;
  FpMatrix& a = out.rref;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int pivotRow = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c)) {
        pivotRow = i;
        break;
      }
    if (pivotRow < 0) continue;
    if (pivotRow != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(pivotRow, j));
    int inv = fpInverse(a.at(r, c), p);
    for (int j = 0; j < a.cols(); ++j) a.at(r, j) = uint8_t((a.at(r, j) * inv) % p);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || !a.at(i, c)) continue;
      int f = a.at(i, c);
      for (int j = 0; j < a.cols(); ++j)
        a.at(i, j) = uint8_t((a.at(i, j) + (p - f) * a.at(r, j)) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;

  // Kernel of x |-> M x^T: one basis row per free column.
  std::vector<bool> isPivot(a.cols(), false);
  for (int c : out.pivots) isPivot[c] = true;
  int nFree = a.cols() - out.rank;
  out.kernel = FpMatrix(nFree, a.cols(), p);
  int kRow = 0;
  for (int c = 0; c < a.cols(); ++c) {
    if (isPivot[c]) continue;
    out.kernel.at(kRow, c) = 1;
    for (int i = 0; i < out.rank; ++i)
      out.kernel.at(kRow, out.pivots[i]) = uint8_t((p - a.at(i, c)) % p);
    ++kRow;
  }
  return out;
}

int rank(const FpMatrix& m) { return rowReduce(m).rank; }

std::optional<FpMatrix> solveLinear(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows() || a.modulus() != b.modulus())
    throw std::invalid_argument("solveLinear: shape mismatch");
  RowReduction red = rowReduce(hstack(a, b));
  // Any pivot in the b-block means the system is inconsistent.
  for (int c : red.pivots)
    if (c >= a.cols()) return std::nullopt;
  FpMatrix x(a.cols(), b.cols(), a.modulus());
  for (size_t i = 0; i < red.pivots.size(); ++i)
    for (int c = 0; c < b.cols(); ++c) x.at(red.pivots[i], c) = red.rref.at(int(i), a.cols() + c);
  return x;
}

FpMatrix leftKernel(const FpMatrix& m) { return rowReduce(m.transpose()).kernel; }

std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  return solveLinear(m, FpMatrix::identity(m.rows(), m.modulus()));
}

FpMatrix rowSpaceBasis(const FpMatrix& m) {
  RowReduction red = rowReduce(m);
  return red.rref.submatrix(0, 0, red.rank, m.cols());
}

bool inRowSpace(const FpMatrix& basisRows, const FpMatrix& v) {
  return coordinatesInRows(basisRows, v).has_value();
}

std::optional<FpMatrix> coordinatesInRows(const FpMatrix& basisRows, const FpMatrix& v) {
  // x * basisRows = v  <=>  basisRows^T * x^T = v^T.
  auto xt = solveLinear(basisRows.transpose(), v.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

}  // namespace stmod
