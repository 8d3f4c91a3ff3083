#include "stmod/complex.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace stmod {

namespace {

FpMatrix vectorizeOne(const FpMatrix& m) {
  FpMatrix out(1, m.rows() * m.cols(), m.modulus());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(0, r * m.cols() + c) = m.at(r, c);
  return out;
}

std::vector<int> partOffsets(const Term& t, const IndecProjectives& ip) {
  std::vector<int> offs;
  int at = 0;
  for (int cls : t.parts) {
    offs.push_back(at);
    at += ip.projectives[cls].dim;
  }
  offs.push_back(at);
  return offs;
}

}  // namespace

Term termFromParts(const AlgebraPtr& a, const std::vector<int>& parts) {
  Term t;
  t.parts = parts;
  if (parts.empty()) {
    t.mod = zeroModule(a);
    return t;
  }
  const auto& ip = indecProjectives(a);
  std::vector<Module> pieces;
  for (int cls : parts) pieces.push_back(ip.projectives[cls]);
  t.mod = pieces.size() == 1 ? pieces[0] : directSum(pieces).total;
  return t;
}

Term zeroTerm(const AlgebraPtr& a) { return termFromParts(a, {}); }

const Term& Complex::term(int k) const {
  if (!inWindow(k)) throw WindowError("term outside the materialized window");
  return terms[k - lo];
}

const FpMatrix& Complex::diff(int k) const {
  if (k < lo || k >= hi) throw WindowError("differential outside the materialized window");
  return diffs[k - lo];
}

void Complex::check() const {
  if (lo > hi) return;
  if (int(terms.size()) != hi - lo + 1 || int(diffs.size()) != std::max(0, hi - lo))
    throw std::logic_error("Complex: window bookkeeping broken");
  for (int k = lo; k < hi; ++k) {
    const FpMatrix& d = diff(k);
    if (d.rows() != term(k).mod.dim || d.cols() != term(k + 1).mod.dim)
      throw std::logic_error("Complex: differential shape mismatch");
    ModuleMap m{term(k).mod, term(k + 1).mod, d};
    if (!m.commutesWithAction()) throw std::logic_error("Complex: differential is not a module map");
    if (k + 1 < hi && !(d * diff(k + 1)).isZero()) throw std::logic_error("Complex: d*d != 0");
  }
}

Complex zeroComplex(const AlgebraPtr& a) {
  Complex c;
  c.A = a;
  c.lo = 0;
  c.hi = 0;
  c.terms = {zeroTerm(a)};
  return c;
}

Complex boundedComplex(const AlgebraPtr& a, int lo, std::vector<Term> terms, std::vector<FpMatrix> diffs) {
  Complex c;
  c.A = a;
  c.lo = lo;
  c.hi = lo + int(terms.size()) - 1;
  c.terms = std::move(terms);
  c.diffs = std::move(diffs);
  c.check();
  return c;
}

Complex stalkComplex(const AlgebraPtr& a, int degree, const Term& t) {
  return boundedComplex(a, degree, {t}, {});
}

Complex ensureWindow(const Complex& f, int a, int b) {
  a = std::min(a, f.lo);
  b = std::max(b, f.hi);
  if (a == f.lo && b == f.hi) return f;
  bool needRegenLeft = a < f.lo && f.leftTail != LeftTail::Zero;
  bool needRegenRight = b > f.hi && f.rightTail != RightTail::Zero;
  if (needRegenLeft || needRegenRight) {
    if (!f.regen) throw WindowError("window extension requested but the complex has no generator");
    Complex g = f.regen(a, b);
    if (g.lo > a || g.hi < b) throw WindowError("generator produced a narrower window than requested");
    return g;
  }
  Complex g = f;
  g.lo = a;
  g.hi = b;
  g.terms.clear();
  g.diffs.clear();
  for (int k = a; k <= b; ++k) g.terms.push_back(f.inWindow(k) ? f.term(k) : zeroTerm(f.A));
  for (int k = a; k < b; ++k) {
    if (k >= f.lo && k < f.hi)
      g.diffs.push_back(f.diff(k));
    else
      g.diffs.push_back(FpMatrix(g.terms[k - a].mod.dim, g.terms[k + 1 - a].mod.dim, f.A->p));
  }
  return g;
}

Complex shift(const Complex& f, int n) {
  Complex g = f;
  g.lo = f.lo - n;
  g.hi = f.hi - n;
  if (n % 2 != 0)
    for (auto& d : g.diffs) d = -d;
  Complex base = f;
  g.regen = [base, n](int a, int b) { return shift(ensureWindow(base, a + n, b + n), n); };
  return g;
}

Complex truncateAbove(const Complex& f, int k) {
  if (k >= f.hi && f.rightTail == RightTail::Zero) return f;
  Complex src = ensureWindow(f, f.lo, std::max(f.lo, k));
  Complex g;
  g.A = f.A;
  g.lo = src.lo;
  g.hi = std::max(src.lo, k);
  if (k < src.lo) {
    // Everything in the window is cut away; only sensible for Zero left tails.
    if (f.leftTail != LeftTail::Zero) throw WindowError("truncation point below the materialized window");
    return zeroComplex(f.A);
  }
  g.terms.assign(src.terms.begin(), src.terms.begin() + (g.hi - g.lo + 1));
  g.diffs.assign(src.diffs.begin(), src.diffs.begin() + (g.hi - g.lo));
  g.leftTail = f.leftTail;
  g.rightTail = RightTail::Zero;
  Complex base = f;
  g.regen = [base, k](int a, int b) {
    return ensureWindow(truncateAbove(ensureWindow(base, a, std::max(a, k)), k), a, b);
  };
  return g;
}

Complex truncateBelow(const Complex& f, int k) {
  if (k <= f.lo && f.leftTail == LeftTail::Zero) return f;
  Complex src = ensureWindow(f, std::min(f.hi, k), f.hi);
  Complex g;
  g.A = f.A;
  g.hi = src.hi;
  g.lo = std::min(src.hi, k);
  if (k > src.hi) {
    if (f.rightTail != RightTail::Zero) throw WindowError("truncation point above the materialized window");
    return zeroComplex(f.A);
  }
  g.terms.assign(src.terms.begin() + (g.lo - src.lo), src.terms.end());
  g.diffs.assign(src.diffs.begin() + (g.lo - src.lo), src.diffs.end());
  g.leftTail = LeftTail::Zero;
  g.rightTail = f.rightTail;
  Complex base = f;
  g.regen = [base, k](int a, int b) {
    return ensureWindow(truncateBelow(ensureWindow(base, std::min(b, k), b), k), a, b);
  };
  return g;
}

CohomologyData cohomologyData(const Complex& f, int k) {
  const int p = f.A->p;
  auto zeroData = [&]() {
    CohomologyData d;
    d.H = zeroModule(f.A);
    d.cocycles = FpMatrix(0, 0, p);
    d.reps = FpMatrix(0, 0, p);
    d.classOfCocycle = FpMatrix(0, 0, p);
    return d;
  };
  if (k < f.lo || (k > f.hi && f.rightTail == RightTail::Zero)) return zeroData();
  if (k > f.hi || (k == f.hi && f.rightTail == RightTail::DualAcyclic) ||
      (k == f.lo && f.leftTail == LeftTail::Acyclic)) {
    return cohomologyData(ensureWindow(f, std::min(f.lo, k - 1), std::max(f.hi, k + 1)), k);
  }
  const Module& t = f.term(k).mod;
  FpMatrix ker = (k < f.hi) ? leftKernel(f.diff(k)) : FpMatrix::identity(t.dim, p);
  FpMatrix im = (k > f.lo) ? rowSpaceBasis(f.diff(k - 1)) : FpMatrix(0, t.dim, p);
  Submodule kerSub = submodule(t, ker);
  FpMatrix imInKer(im.rows(), ker.rows(), p);
  for (int r = 0; r < im.rows(); ++r) {
    auto c = coordinatesInRows(ker, im.row(r));
    if (!c) throw std::logic_error("cohomology: boundaries are not cycles");
    imInKer.setBlock(r, 0, *c);
  }
  Quotient q = quotientModule(kerSub.mod, rowSpaceBasis(imInKer));
  CohomologyData d;
  d.H = q.mod;
  d.H.name = "H^" + std::to_string(k);
  d.cocycles = ker;
  d.reps = q.reps * ker;
  d.classOfCocycle = q.projection.matrix;
  return d;
}

Module cohomology(const Complex& f, int k) { return cohomologyData(f, k).H; }

namespace {

struct StarTermData {
  StarModule s;
  ProjectivePresentation pres;  // of s.mod over the opposite algebra
  FpMatrix presInv;
};

StarTermData starTerm(const Term& t) {
  StarTermData d;
  d.s = starModule(t.mod);
  d.pres = presentProjective(d.s.mod);
  auto inv = inverse(d.pres.iso.matrix);
  if (!inv) throw std::logic_error("starTerm: presentation is not invertible");
  d.presInv = *inv;
  return d;
}

}  // namespace

Complex dualComplex(const Complex& f) {
  Complex g;
  g.A = f.A->opposite();
  g.lo = -f.hi;
  g.hi = -f.lo;
  std::vector<StarTermData> stars;
  for (int k = f.lo; k <= f.hi; ++k) stars.push_back(starTerm(f.term(k)));
  for (int m = g.lo; m <= g.hi; ++m) {
    const StarTermData& sd = stars[-m - f.lo];
    Term t;
    t.parts = sd.pres.parts;
    t.mod = sd.pres.standard;
    g.terms.push_back(t);
  }
  for (int m = g.lo; m < g.hi; ++m) {
    // d_G^m = transport of star(d_F^{-m-1}).
    const StarTermData& from = stars[-m - f.lo];      // star(F^{-m})
    const StarTermData& to = stars[-m - 1 - f.lo];    // star(F^{-m-1})
    ModuleMap d{f.term(-m - 1).mod, f.term(-m).mod, f.diff(-m - 1)};
    ModuleMap ds = starMap(d, to.s, from.s);
    g.diffs.push_back(from.pres.iso.matrix * ds.matrix * to.presInv);
  }
  g.leftTail = (f.rightTail == RightTail::Zero) ? LeftTail::Zero : LeftTail::Acyclic;
  g.rightTail = (f.leftTail == LeftTail::Zero) ? RightTail::Zero : RightTail::DualAcyclic;
  Complex base = f;
  g.regen = [base](int a, int b) { return dualComplex(ensureWindow(base, -b, -a)); };
  return g;
}

Module dualHomology(const Complex& f, int k) { return cohomology(dualComplex(f), -k); }

const FpMatrix& ChainMap::comp(int k) const {
  if (!src.inWindow(k)) throw WindowError("chain map component outside the window");
  return comps[k - src.lo];
}

void ChainMap::check() const {
  if (src.lo != tgt.lo || src.hi != tgt.hi) throw std::logic_error("ChainMap: window mismatch");
  for (int k = src.lo; k <= src.hi; ++k) {
    ModuleMap m{src.term(k).mod, tgt.term(k).mod, comp(k)};
    if (!m.commutesWithAction()) throw std::logic_error("ChainMap: component is not a module map");
    if (k < src.hi && src.diff(k) * comp(k + 1) != comp(k) * tgt.diff(k))
      throw std::logic_error("ChainMap: square does not commute");
  }
}

ChainMap identityChainMap(const Complex& f) {
  ChainMap u;
  u.src = f;
  u.tgt = f;
  for (int k = f.lo; k <= f.hi; ++k) u.comps.push_back(FpMatrix::identity(f.term(k).mod.dim, f.A->p));
  return u;
}

ChainMap composeChainMaps(const ChainMap& f, const ChainMap& g) {
  ChainMap u;
  u.src = f.src;
  u.tgt = g.tgt;
  for (int k = f.src.lo; k <= f.src.hi; ++k) u.comps.push_back(f.comp(k) * g.comp(k));
  return u;
}

ChainMap ensureWindowMap(const ChainMap& u, int a, int b) {
  a = std::min(a, u.src.lo);
  b = std::max(b, u.src.hi);
  if (a == u.src.lo && b == u.src.hi) return u;
  bool leftHard = a < u.src.lo && u.src.leftTail != LeftTail::Zero && u.tgt.leftTail != LeftTail::Zero;
  bool rightHard = b > u.src.hi && u.src.rightTail != RightTail::Zero && u.tgt.rightTail != RightTail::Zero;
  if (leftHard || rightHard) {
    if (!u.regen) throw WindowError("chain map extension requested but no generator is attached");
    ChainMap v = u.regen(a, b);
    if (v.src.lo > a || v.src.hi < b) throw WindowError("chain map generator produced a narrow window");
    return v;
  }
  ChainMap v;
  v.src = ensureWindow(u.src, a, b);
  v.tgt = ensureWindow(u.tgt, a, b);
  v.regen = u.regen;
  for (int k = a; k <= b; ++k) {
    if (u.src.inWindow(k))
      v.comps.push_back(u.comp(k));
    else
      v.comps.push_back(FpMatrix(v.src.term(k).mod.dim, v.tgt.term(k).mod.dim, u.src.A->p));
  }
  return v;
}

ChainMap literalChainMap(const Complex& src, const Complex& tgt, int lo, std::vector<FpMatrix> comps) {
  if (src.lo != tgt.lo || src.hi != tgt.hi || lo != src.lo)
    throw std::invalid_argument("literalChainMap: windows must already agree");
  ChainMap u;
  u.src = src;
  u.tgt = tgt;
  u.comps = std::move(comps);
  u.check();
  return u;
}

Complex cone(const ChainMap& u0) {
  // One-degree margin on both sides justifies the tail certificates below.
  ChainMap u = ensureWindowMap(u0, u0.src.lo - 1, u0.src.hi + 1);
  const Complex& f = u.src;
  const Complex& g = u.tgt;
  const int p = f.A->p;
  Complex c;
  c.A = f.A;
  c.lo = f.lo;
  c.hi = f.hi - 1;
  for (int k = c.lo; k <= c.hi; ++k) {
    Term t;
    t.parts = f.term(k + 1).parts;
    for (int cls : g.term(k).parts) t.parts.push_back(cls);
    t.mod = termFromParts(f.A, t.parts).mod;
    c.terms.push_back(t);
  }
  for (int k = c.lo; k < c.hi; ++k) {
    int fr = f.term(k + 1).mod.dim, gr = g.term(k).mod.dim;
    int fc = f.term(k + 2).mod.dim, gc = g.term(k + 1).mod.dim;
    FpMatrix d(fr + gr, fc + gc, p);
    d.setBlock(0, 0, -f.diff(k + 1));
    d.setBlock(0, fc, u.comp(k + 1));
    d.setBlock(fr, fc, g.diff(k));
    c.diffs.push_back(d);
  }
  c.leftTail = (f.leftTail == LeftTail::Zero && g.leftTail == LeftTail::Zero) ? LeftTail::Zero : LeftTail::Acyclic;
  c.rightTail =
      (f.rightTail == RightTail::Zero && g.rightTail == RightTail::Zero) ? RightTail::Zero : RightTail::DualAcyclic;
  ChainMap base = u0;
  c.regen = [base](int a, int b) { return cone(ensureWindowMap(base, a + 1, b)); };
  return c;
}

namespace {

std::optional<std::pair<int, int>> findCancellablePair(const Complex& f, int k, const IndecProjectives& ip) {
  const Term& s = f.term(k);
  const Term& t = f.term(k + 1);
  auto so = partOffsets(s, ip);
  auto to = partOffsets(t, ip);
  const FpMatrix& d = f.diff(k);
  for (size_t i = 0; i < s.parts.size(); ++i)
    for (size_t j = 0; j < t.parts.size(); ++j) {
      if (s.parts[i] != t.parts[j]) continue;
      int dim = ip.projectives[s.parts[i]].dim;
      FpMatrix block = d.submatrix(so[i], to[j], dim, dim);
      if (inverse(block).has_value()) return std::make_pair(int(i), int(j));
    }
  return std::nullopt;
}

FpMatrix dropRowsCols(const FpMatrix& m, int r0, int nr, int c0, int nc) {
  FpMatrix out(m.rows() - nr, m.cols() - nc, m.modulus());
  for (int r = 0, rr = 0; r < m.rows(); ++r) {
    if (r >= r0 && r < r0 + nr) continue;
    for (int c = 0, cc = 0; c < m.cols(); ++c) {
      if (c >= c0 && c < c0 + nc) continue;
      out.at(rr, cc++) = m.at(r, c);
    }
    ++rr;
  }
  return out;
}

}  // namespace

bool isMinimal(const Complex& f) {
  const auto& ip = indecProjectives(f.A);
  for (int k = f.lo; k < f.hi; ++k)
    if (findCancellablePair(f, k, ip).has_value()) return false;
  return true;
}

Minimalization minimalize(const Complex& f0) {
  if (!f0.isBounded()) throw std::invalid_argument("minimalize: only bounded complexes are supported");
  const auto& ip = indecProjectives(f0.A);
  const int p = f0.A->p;
  Minimalization out;
  out.min = f0;
  out.min.regen = nullptr;
  out.to = identityChainMap(out.min);
  out.to.src = f0;
  out.from = identityChainMap(out.min);
  out.from.tgt = f0;

  for (bool again = true; again;) {
    again = false;
    Complex& f = out.min;
    for (int k = f.lo; k < f.hi && !again; ++k) {
      auto pair = findCancellablePair(f, k, ip);
      if (!pair) continue;
      again = true;
      auto [si, tj] = *pair;
      Term& sT = f.terms[k - f.lo];
      Term& tT = f.terms[k + 1 - f.lo];
      auto so = partOffsets(sT, ip);
      auto to = partOffsets(tT, ip);
      const int dim = ip.projectives[sT.parts[si]].dim;
      int sr = so[si], tc = to[tj];
      FpMatrix D = f.diffs[k - f.lo];
      FpMatrix E = D.submatrix(sr, tc, dim, dim);
      FpMatrix Einv = *inverse(E);
      // Blocks with the cancelled row/column removed.
      FpMatrix A = dropRowsCols(D, sr, dim, tc, dim);
      FpMatrix B = dropRowsCols(D.submatrix(0, tc, D.rows(), dim), sr, dim, 0, 0);  // rows without s, col t
      FpMatrix Cc = dropRowsCols(D.submatrix(sr, 0, dim, D.cols()), 0, 0, tc, dim); // row s, cols without t

      // Homotopy equivalence witnesses for a single cancellation.
      int m = D.rows(), n = D.cols();
      FpMatrix pK(m, m - dim, p);  // old term k -> new term k
      for (int r = 0, rr = 0; r < m; ++r) {
        if (r >= sr && r < sr + dim) continue;
        pK.at(r, rr++) = 1;
      }
      FpMatrix iK(m - dim, m, p);  // new -> old: [I | -B E^{-1}] spread over columns
      {
        FpMatrix corr = B * Einv;  // (m-dim) x dim
        for (int r = 0, rr = 0; r < m; ++r) {
          if (r >= sr && r < sr + dim) continue;
          iK.at(rr, r) = 1;
          ++rr;
        }
        for (int rr = 0; rr < m - dim; ++rr)
          for (int c = 0; c < dim; ++c)
            iK.at(rr, sr + c) = uint8_t((p - corr.at(rr, c) % p) % p);
      }
      FpMatrix pK1(n, n - dim, p);  // old term k+1 -> new
      {
        FpMatrix corr = Einv * Cc;  // dim x (n-dim)
        for (int r = 0, rr = 0; r < n; ++r) {
          if (r >= tc && r < tc + dim) continue;
          pK1.at(r, rr) = 1;
          ++rr;
        }
        for (int r = 0; r < dim; ++r)
          for (int cc = 0; cc < n - dim; ++cc)
            pK1.at(tc + r, cc) = uint8_t((p - corr.at(r, cc) % p) % p);
      }
      FpMatrix iK1(n - dim, n, p);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r >= tc && r < tc + dim) continue;
        iK1.at(rr, r) = 1;
        ++rr;
      }

      // Update the complex.
      sT.parts.erase(sT.parts.begin() + si);
      tT.parts.erase(tT.parts.begin() + tj);
      sT.mod = termFromParts(f.A, sT.parts).mod;
      tT.mod = termFromParts(f.A, tT.parts).mod;
      f.diffs[k - f.lo] = A - B * Einv * Cc;
      if (k - 1 >= f.lo) f.diffs[k - 1 - f.lo] = dropRowsCols(f.diffs[k - 1 - f.lo], 0, 0, sr, dim);
      if (k + 1 < f.hi) f.diffs[k + 1 - f.lo] = dropRowsCols(f.diffs[k + 1 - f.lo], tc, dim, 0, 0);

      // Compose the witnesses.
      out.to.comps[k - f.lo] = out.to.comps[k - f.lo] * pK;
      out.to.comps[k + 1 - f.lo] = out.to.comps[k + 1 - f.lo] * pK1;
      out.from.comps[k - f.lo] = iK * out.from.comps[k - f.lo];
      out.from.comps[k + 1 - f.lo] = iK1 * out.from.comps[k + 1 - f.lo];
    }
  }
  out.to.tgt = out.min;
  out.from.src = out.min;
  return out;
}

namespace {

// Stack all component matrices of a collection of per-degree maps into one
// row vector for rank computations.
FpMatrix stackComponents(const std::vector<FpMatrix>& comps) {
  FpMatrix out(1, 0, comps.empty() ? 2 : comps[0].modulus());
  for (const auto& c : comps) out = hstack(out, vectorizeOne(c));
  return out;
}

struct AlignedPair {
  Complex f, g;
};

AlignedPair align(const Complex& f, const Complex& g) {
  if (!f.isBounded() || !g.isBounded())
    throw std::invalid_argument("chain map computations need bounded complexes");
  int lo = std::min(f.lo, g.lo), hi = std::max(f.hi, g.hi);
  return {ensureWindow(f, lo, hi), ensureWindow(g, lo, hi)};
}

}  // namespace

std::vector<std::vector<FpMatrix>> chainMapBasis(const Complex& f0, const Complex& g0) {
  auto [f, g] = align(f0, g0);
  const int p = f.A->p;
  // Unknowns: one hom-space coefficient per degree and hom basis element.
  std::vector<std::vector<FpMatrix>> homs;
  std::vector<int> offset;
  int total = 0;
  for (int k = f.lo; k <= f.hi; ++k) {
    homs.push_back(homBasis(f.term(k).mod, g.term(k).mod));
    offset.push_back(total);
    total += int(homs.back().size());
  }
  if (total == 0) return {};
  // Square constraints: d_F^k u^{k+1} - u^k d_G^k = 0.
  FpMatrix cons(0, total, p);
  for (int k = f.lo; k < f.hi; ++k) {
    int rows = f.term(k).mod.dim * g.term(k + 1).mod.dim;
    FpMatrix block(rows, total, p);
    for (size_t j = 0; j < homs[k + 1 - f.lo].size(); ++j) {
      FpMatrix m = f.diff(k) * homs[k + 1 - f.lo][j];
      FpMatrix v = vectorizeOne(m);
      for (int c = 0; c < rows; ++c) block.at(c, offset[k + 1 - f.lo] + int(j)) = v.at(0, c);
    }
    for (size_t j = 0; j < homs[k - f.lo].size(); ++j) {
      FpMatrix m = homs[k - f.lo][j] * g.diff(k);
      FpMatrix v = vectorizeOne(m);
      for (int c = 0; c < rows; ++c)
        block.at(c, offset[k - f.lo] + int(j)) =
            uint8_t((block.at(c, offset[k - f.lo] + int(j)) + p - v.at(0, c)) % p);
    }
    cons = vstack(cons, block);
  }
  FpMatrix sols = cons.rows() == 0 ? FpMatrix::identity(total, p) : rowReduce(cons).kernel;
  std::vector<std::vector<FpMatrix>> out;
  for (int r = 0; r < sols.rows(); ++r) {
    std::vector<FpMatrix> comps;
    for (int k = f.lo; k <= f.hi; ++k) {
      FpMatrix m(f.term(k).mod.dim, g.term(k).mod.dim, p);
      for (size_t j = 0; j < homs[k - f.lo].size(); ++j)
        m = m + homs[k - f.lo][j].scaled(sols.at(r, offset[k - f.lo] + int(j)));
      comps.push_back(m);
    }
    out.push_back(comps);
  }
  return out;
}

namespace {

// Matrix whose rows are the stacked boundaries d h + h d of a basis of
// homotopy parameters h.
FpMatrix boundaryRows(const Complex& f, const Complex& g) {
  const int p = f.A->p;
  FpMatrix rows(0, 0, p);
  for (int k = f.lo + 1; k <= f.hi; ++k) {
    // h: F^k -> G^{k-1} contributes to u^{k-1} (as d_F h) and u^k (as h d_G).
    for (const auto& h : homBasis(f.term(k).mod, g.term(k - 1).mod)) {
      std::vector<FpMatrix> comps;
      for (int j = f.lo; j <= f.hi; ++j) comps.push_back(FpMatrix(f.term(j).mod.dim, g.term(j).mod.dim, p));
      comps[k - 1 - f.lo] = comps[k - 1 - f.lo] + f.diff(k - 1) * h;
      if (k - 1 >= f.lo && k - 1 < g.hi) comps[k - f.lo] = comps[k - f.lo] + h * g.diff(k - 1);
      FpMatrix row = stackComponents(comps);
      if (rows.cols() == 0) rows = FpMatrix(0, row.cols(), p);
      rows = vstack(rows, row);
    }
  }
  return rows;
}

}  // namespace

int nullHomotopicDim(const Complex& f0, const Complex& g0) {
  auto [f, g] = align(f0, g0);
  return rank(boundaryRows(f, g));
}

bool allChainMapsNullHomotopic(const Complex& f0, const Complex& g0) {
  auto [f, g] = align(f0, g0);
  return int(chainMapBasis(f, g).size()) == rank(boundaryRows(f, g));
}

bool isNullHomotopic(const ChainMap& u) {
  FpMatrix rows = boundaryRows(u.src, u.tgt);
  FpMatrix target = stackComponents(u.comps);
  if (target.isZero()) return true;
  if (rows.rows() == 0) return false;
  return inRowSpace(rows, target);
}

namespace {

Complex trim(const Complex& f) {
  int a = f.lo, b = f.hi;
  while (a < b && f.term(a).mod.dim == 0) ++a;
  while (b > a && f.term(b).mod.dim == 0) --b;
  Complex g;
  g.A = f.A;
  g.lo = a;
  g.hi = b;
  g.terms.assign(f.terms.begin() + (a - f.lo), f.terms.begin() + (b - f.lo + 1));
  g.diffs.assign(f.diffs.begin() + (a - f.lo), f.diffs.begin() + (b - f.lo));
  return g;
}

}  // namespace

Verdict homotopyEquivalent(const Complex& f0, const Complex& g0, uint64_t seed, int trialBudget) {
  Complex f = trim(minimalize(f0).min);
  Complex g = trim(minimalize(g0).min);
  bool fZero = f.lo == f.hi && f.term(f.lo).mod.dim == 0;
  bool gZero = g.lo == g.hi && g.term(g.lo).mod.dim == 0;
  if (fZero || gZero) return (fZero && gZero) ? Verdict::Yes : Verdict::No;
  if (f.lo != g.lo || f.hi != g.hi) return Verdict::No;
  for (int k = f.lo; k <= f.hi; ++k) {
    auto a = f.term(k).parts;
    auto b = g.term(k).parts;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return Verdict::No;
  }
  auto basis = chainMapBasis(f, g);
  if (basis.empty()) return Verdict::No;
  const int p = f.A->p;
  double totalD = std::pow(double(p), double(basis.size()));
  bool exhaustive = totalD <= 65536.0;
  long count = exhaustive ? long(totalD) : trialBudget;
  std::mt19937_64 rng(seed ^ 0xabcdef1234567ull);
  std::uniform_int_distribution<int> dist(0, p - 1);
  for (long i = 0; i < count; ++i) {
    std::vector<int> coeffs(basis.size());
    if (exhaustive) {
      long x = i;
      for (size_t j = 0; j < basis.size(); ++j) {
        coeffs[j] = int(x % p);
        x /= p;
      }
    } else {
      for (auto& c : coeffs) c = dist(rng);
    }
    bool allInvertible = true;
    for (int k = f.lo; k <= f.hi && allInvertible; ++k) {
      FpMatrix m(f.term(k).mod.dim, g.term(k).mod.dim, p);
      for (size_t j = 0; j < basis.size(); ++j) m = m + basis[j][k - f.lo].scaled(coeffs[j]);
      if (!inverse(m).has_value()) allInvertible = false;
    }
    if (allInvertible) return Verdict::Yes;
  }
  return exhaustive ? Verdict::No : Verdict::Inconclusive;
}

}  // namespace stmod
