#include "stmod/int_matrix.hpp"

namespace stmod {

namespace {

void swapRows(IntMatrix& m, int a, int b) {
  for (int c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}
void swapCols(IntMatrix& m, int a, int b) {
  for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}
// row[a] += f * row[b]
void addRow(IntMatrix& m, int a, int b, const BigInt& f) {
  for (int c = 0; c < m.cols(); ++c) m.at(a, c) += f * m.at(b, c);
}
void addCol(IntMatrix& m, int a, int b, const BigInt& f) {
  for (int r = 0; r < m.rows(); ++r) m.at(r, a) += f * m.at(r, b);
}
void negateRow(IntMatrix& m, int a) {
  for (int c = 0; c < m.cols(); ++c) m.at(a, c) = -m.at(a, c);
}

}  // namespace

SmithResult smithNormalForm(const IntMatrix& m) {
  SmithResult out;
  out.D = m;
  out.U = IntMatrix::identity(m.rows());
  out.V = IntMatrix::identity(m.cols());
  IntMatrix& d = out.D;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;

  int n = std::min(d.rows(), d.cols());
  for (int t = 0; t < n; ++t) {
    // Find a pivot of minimal absolute value in the trailing block.
    auto findPivot = [&]() -> std::pair<int, int> {
      int pr = -1, pc = -1;
      BigInt best = 0;
      for (int r = t; r < d.rows(); ++r)
        for (int c = t; c < d.cols(); ++c) {
          if (d.at(r, c) == 0) continue;
          BigInt a = abs(d.at(r, c));
          if (pr < 0 || a < best) {
            best = a;
            pr = r;
            pc = c;
          }
        }
      return {pr, pc};
    };

    for (;;) {
      auto [pr, pc] = findPivot();
      if (pr < 0) {
        // Trailing block is zero; done.
        for (int i = 0; i < t; ++i) out.invariantFactors.push_back(d.at(i, i));
        out.freeRank = d.cols() - t;
        return out;
      }
      if (pr != t) {
        swapRows(d, t, pr);
        swapRows(u, t, pr);
      }
      if (pc != t) {
        swapCols(d, t, pc);
        swapCols(v, t, pc);
      }
      bool clean = true;
      for (int r = t + 1; r < d.rows(); ++r) {
        if (d.at(r, t) == 0) continue;
        BigInt q = d.at(r, t) / d.at(t, t);
        addRow(d, r, t, -q);
        addRow(u, r, t, -q);
        if (d.at(r, t) != 0) clean = false;
      }
      for (int c = t + 1; c < d.cols(); ++c) {
        if (d.at(t, c) == 0) continue;
        BigInt q = d.at(t, c) / d.at(t, t);
        addCol(d, c, t, -q);
        addCol(v, c, t, -q);
        if (d.at(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Row and column of the pivot are clear; enforce divisibility of the
      // remaining block by mixing in any entry the pivot does not divide.
      bool divides = true;
      for (int r = t + 1; r < d.rows() && divides; ++r)
        for (int c = t + 1; c < d.cols() && divides; ++c)
          if (d.at(r, c) % d.at(t, t) != 0) {
            addRow(d, t, r, 1);
            addRow(u, t, r, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d.at(t, t) < 0) {
      negateRow(d, t);
      negateRow(u, t);
    }
  }
  for (int i = 0; i < n; ++i)
    if (d.at(i, i) != 0) out.invariantFactors.push_back(d.at(i, i));
  out.freeRank = d.cols() - int(out.invariantFactors.size());
  return out;
}

bool inRowLattice(const SmithResult& snf, const IntMatrix& m, const IntMatrix& v) {
  if (v.cols() != m.cols()) throw std::invalid_argument("inRowLattice: width mismatch");
  // x * M = v  <=>  z * D = v * V with z = x * U^{-1}; z is integral iff each
  // coordinate is divisible by the matching invariant factor and vanishes
  // past the rank.
  IntMatrix w = v * snf.V;
  int r = int(snf.invariantFactors.size());
  for (int row = 0; row < w.rows(); ++row) {
    for (int c = 0; c < r; ++c)
      if (w.at(row, c) % snf.D.at(c, c) != 0) return false;
    for (int c = r; c < w.cols(); ++c)
      if (w.at(row, c) != 0) return false;
  }
  return true;
}

bool sameRowLattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  SmithResult sa = smithNormalForm(a);
  SmithResult sb = smithNormalForm(b);
  return inRowLattice(sa, a, b) && inRowLattice(sb, b, a);
}

}  // namespace stmod
