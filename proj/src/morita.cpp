#include "stmod/morita.hpp"

#include <map>
#include <stdexcept>

namespace stmod {

namespace {

FpMatrix kron(const FpMatrix& x, const FpMatrix& y) {
  FpMatrix out(x.rows() * y.rows(), x.cols() * y.cols(), x.modulus());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) {
      if (!x.at(r, c)) continue;
      out.setBlock(r * y.rows(), c * y.cols(), y.scaled(x.at(r, c)));
    }
  return out;
}

// Both sides of a verification must see the same enveloping-algebra object,
// so the construction is memoized per ordered pair.  The cache keeps the
// input algebras alive: otherwise a later algebra allocated at a recycled
// address could collide with a stale key.
AlgebraPtr envAlgebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  struct Entry {
    AlgebraPtr a, b, env;
  };
  static std::vector<Entry> cache;
  for (const auto& e : cache)
    if (e.a.get() == a.get() && e.b.get() == b.get()) return e.env;
  cache.push_back({a, b, envelopingAlgebra(a, b)});
  return cache.back().env;
}

struct TensorData {
  Module plain;  // X (x)_k M as a B-module
  Quotient q;    // onto X (x)_A M
};

TensorData tensorData(const Module& x, const Bimodule& m) {
  if (x.A.get() != m.A.get()) throw std::invalid_argument("tensorOverA: algebra mismatch");
  const int p = x.A->p;
  auto left = m.leftActions();
  auto right = m.rightActions();
  FpMatrix idX = FpMatrix::identity(x.dim, p);
  FpMatrix idM = FpMatrix::identity(m.dim(), p);
  Module plain;
  plain.A = m.B;
  plain.dim = x.dim * m.dim();
  plain.name = x.name + "(x)" + m.name;
  for (int j = 0; j < m.B->dim; ++j) plain.action.push_back(kron(idX, right[j]));
  FpMatrix rel(0, plain.dim, p);
  for (int i = 0; i < x.A->dim; ++i) {
    FpMatrix d = kron(x.action[i], idM) + kron(idX, left[i]).scaled(p - 1);
    rel = vstack(rel, d);
  }
  TensorData out;
  out.plain = plain;
  out.q = quotientModule(plain, spin(plain, rel));
  return out;
}

struct StandardForm {
  std::vector<int> parts;
  FpMatrix toStandard;  // invertible: module -> standard sum of projectives
};

StandardForm standardForm(const Module& x) {
  StandardForm out;
  const auto& ip = indecProjectives(x.A);
  if (x.dim == 0) {
    out.toStandard = FpMatrix(0, 0, x.A->p);
    return out;
  }
  Decomposition dec = decompose(x);
  std::vector<std::pair<int, const Summand*>> pieces;
  for (const auto& s : dec.summands) {
    int cls = -1;
    for (int c = 0; c < int(ip.projectives.size()); ++c)
      if (ip.projectives[c].dim == s.piece.dim &&
          isIsomorphic(s.piece, ip.projectives[c]).verdict == Verdict::Yes) {
        cls = c;
        break;
      }
    if (cls < 0) throw std::logic_error("standardForm: summand is not an indecomposable projective");
    pieces.push_back({cls, &s});
  }
  for (auto& [cls, s] : pieces) out.parts.push_back(cls);
  Term std = termFromParts(x.A, out.parts);
  FpMatrix s(x.dim, std.mod.dim, x.A->p);
  int off = 0;
  for (auto& [cls, sm] : pieces) {
    auto iso = isIsomorphic(sm->piece, ip.projectives[cls]);
    if (iso.verdict != Verdict::Yes || !iso.witness)
      throw std::logic_error("standardForm: missing isomorphism witness");
    FpMatrix block = sm->projection.matrix * iso.witness->matrix;  // x -> P_cls
    s.setBlock(0, off, block);
    off += ip.projectives[cls].dim;
  }
  out.toStandard = s;
  if (!inverse(s)) throw std::logic_error("standardForm: assembled map is not invertible");
  return out;
}

}  // namespace

std::vector<FpMatrix> Bimodule::leftActions() const {
  std::vector<FpMatrix> out;
  for (int i = 0; i < A->dim; ++i) {
    FpMatrix v(1, A->dim * B->dim, A->p);
    for (int j = 0; j < B->dim; ++j)
      if (B->unit.at(0, j)) v.at(0, i * B->dim + j) = B->unit.at(0, j);
    out.push_back(env.actionOf(v));
  }
  return out;
}

std::vector<FpMatrix> Bimodule::rightActions() const {
  std::vector<FpMatrix> out;
  for (int j = 0; j < B->dim; ++j) {
    FpMatrix v(1, A->dim * B->dim, A->p);
    for (int i = 0; i < A->dim; ++i)
      if (A->unit.at(0, i)) v.at(0, i * B->dim + j) = A->unit.at(0, i);
    out.push_back(env.actionOf(v));
  }
  return out;
}

Module Bimodule::restrictToRight() const {
  Module out;
  out.A = B;
  out.dim = env.dim;
  out.name = name + "|right";
  out.action = rightActions();
  return out;
}

Module Bimodule::restrictToLeft() const {
  Module out;
  out.A = A->opposite();
  out.dim = env.dim;
  out.name = name + "|left";
  out.action = leftActions();
  return out;
}

Bimodule bimoduleFromActions(const AlgebraPtr& a, const AlgebraPtr& b, int dim,
                             const std::vector<FpMatrix>& left, const std::vector<FpMatrix>& right,
                             const std::string& name) {
  Bimodule out;
  out.A = a;
  out.B = b;
  out.name = name;
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j)
      if (left[i] * right[j] != right[j] * left[i])
        throw std::invalid_argument("bimoduleFromActions: one-sided actions do not commute");
  Module env;
  env.A = envAlgebra(a, b);
  env.dim = dim;
  env.name = name;
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j) env.action.push_back(left[i] * right[j]);
  env.validate();
  out.env = env;
  return out;
}

Bimodule regularBimodule(const AlgebraPtr& a) {
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < a->dim; ++i) {
    FpMatrix l(a->dim, a->dim, a->p), r(a->dim, a->dim, a->p);
    for (int s = 0; s < a->dim; ++s) {
      FpMatrix lr = a->multiply(a->basisVector(i), a->basisVector(s));
      FpMatrix rr = a->multiply(a->basisVector(s), a->basisVector(i));
      for (int c = 0; c < a->dim; ++c) {
        l.at(s, c) = lr.at(0, c);
        r.at(s, c) = rr.at(0, c);
      }
    }
    left.push_back(l);
    right.push_back(r);
  }
  return bimoduleFromActions(a, a, a->dim, left, right, a->name + " as bimodule");
}

namespace {

// The row and column bimodules of a Morita pair must refer to the same
// matrix-algebra object, so the construction is memoized.
AlgebraPtr matrixAlgebraCached(const AlgebraPtr& a, int n) {
  struct Entry {
    AlgebraPtr a;
    int n;
    AlgebraPtr mat;
  };
  static std::vector<Entry> cache;
  for (const auto& e : cache)
    if (e.a.get() == a.get() && e.n == n) return e.mat;
  cache.push_back({a, n, matrixAlgebra(a, n)});
  return cache.back().mat;
}

}  // namespace

Bimodule rowBimodule(const AlgebraPtr& a, int n) {
  AlgebraPtr b = matrixAlgebraCached(a, n);
  const int da = a->dim, dim = n * da, p = a->p;
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < da; ++i) {
    FpMatrix l(dim, dim, p);
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < da; ++s) {
        FpMatrix prod = a->multiply(a->basisVector(i), a->basisVector(s));
        for (int u = 0; u < da; ++u) l.at(c * da + s, c * da + u) = prod.at(0, u);
      }
    left.push_back(l);
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int j = 0; j < da; ++j) {
        FpMatrix r(dim, dim, p);
        for (int i = 0; i < da; ++i) {
          FpMatrix prod = a->multiply(a->basisVector(i), a->basisVector(j));
          for (int u = 0; u < da; ++u) r.at(s * da + i, t * da + u) = prod.at(0, u);
        }
        right.push_back(r);
      }
  return bimoduleFromActions(a, b, dim, left, right, "rows(" + a->name + "," + std::to_string(n) + ")");
}

Bimodule colBimodule(const AlgebraPtr& a, int n) {
  AlgebraPtr b = matrixAlgebraCached(a, n);
  const int da = a->dim, dim = n * da, p = a->p;
  std::vector<FpMatrix> left, right;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int j = 0; j < da; ++j) {
        FpMatrix l(dim, dim, p);
        for (int i = 0; i < da; ++i) {
          FpMatrix prod = a->multiply(a->basisVector(j), a->basisVector(i));
          for (int u = 0; u < da; ++u) l.at(t * da + i, s * da + u) = prod.at(0, u);
        }
        left.push_back(l);
      }
  for (int j = 0; j < da; ++j) {
    FpMatrix r(dim, dim, p);
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < da; ++s) {
        FpMatrix prod = a->multiply(a->basisVector(s), a->basisVector(j));
        for (int u = 0; u < da; ++u) r.at(c * da + s, c * da + u) = prod.at(0, u);
      }
    right.push_back(r);
  }
  return bimoduleFromActions(b, a, dim, left, right, "cols(" + a->name + "," + std::to_string(n) + ")");
}

Module tensorOverA(const Module& x, const Bimodule& m) { return tensorData(x, m).q.mod; }

ModuleMap tensorMapOverA(const ModuleMap& f, const Bimodule& m) {
  TensorData tx = tensorData(f.src, m);
  TensorData ty = tensorData(f.tgt, m);
  FpMatrix idM = FpMatrix::identity(m.dim(), m.A->p);
  FpMatrix mat = tx.q.reps * kron(f.matrix, idM) * ty.q.projection.matrix;
  ModuleMap out{tx.q.mod, ty.q.mod, mat};
  if (!out.commutesWithAction()) throw std::logic_error("tensorMapOverA: induced map is not a module map");
  return out;
}

Bimodule tensorBimodules(const Bimodule& m, const Bimodule& n) {
  if (m.B.get() != n.A.get()) throw std::invalid_argument("tensorBimodules: middle algebras differ");
  const int p = m.A->p;
  auto mL = m.leftActions();
  auto mR = m.rightActions();
  auto nL = n.leftActions();
  auto nR = n.rightActions();
  FpMatrix idM = FpMatrix::identity(m.dim(), p);
  FpMatrix idN = FpMatrix::identity(n.dim(), p);
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < m.A->dim; ++i) left.push_back(kron(mL[i], idN));
  for (int k = 0; k < n.B->dim; ++k) right.push_back(kron(idM, nR[k]));
  Bimodule plain = bimoduleFromActions(m.A, n.B, m.dim() * n.dim(), left, right,
                                       m.name + "(x)" + n.name);
  FpMatrix rel(0, plain.dim(), p);
  for (int j = 0; j < m.B->dim; ++j) {
    FpMatrix d = kron(mR[j], idN) + kron(idM, nL[j]).scaled(p - 1);
    rel = vstack(rel, d);
  }
  Quotient q = quotientModule(plain.env, spin(plain.env, rel));
  Bimodule out;
  out.A = m.A;
  out.B = n.B;
  out.name = plain.name;
  out.env = q.mod;
  out.env.name = plain.name;
  return out;
}

bool isProjectiveBimodule(const Bimodule& p) { return isProjectiveModule(p.env); }

namespace {

// mn = regular (+) (projective bimodule)?
bool splitsOffRegular(const Bimodule& mn, const Bimodule& regular, bool& leftoverProjective,
                      std::vector<std::string>& notes) {
  if (mn.env.dim < regular.env.dim) return false;
  Decomposition dmn = decompose(mn.env);
  Decomposition dreg = decompose(regular.env);
  std::vector<char> used(dmn.summands.size(), 0);
  for (const auto& r : dreg.summands) {
    bool matched = false;
    for (size_t i = 0; i < dmn.summands.size(); ++i) {
      if (used[i] || dmn.summands[i].piece.dim != r.piece.dim) continue;
      if (isIsomorphic(dmn.summands[i].piece, r.piece).verdict == Verdict::Yes) {
        used[i] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) {
      notes.push_back("no summand of " + mn.name + " matches a piece of " + regular.name);
      return false;
    }
  }
  leftoverProjective = true;
  for (size_t i = 0; i < dmn.summands.size(); ++i)
    if (!used[i] && !isProjectiveModule(dmn.summands[i].piece)) leftoverProjective = false;
  if (!leftoverProjective)
    notes.push_back("leftover summand of " + mn.name + " is not a projective bimodule");
  return leftoverProjective;
}

bool hasProjectiveSummand(const Bimodule& m) {
  if (m.env.dim == 0) return false;
  for (const auto& s : decompose(m.env).summands)
    if (isProjectiveModule(s.piece)) return true;
  return false;
}

}  // namespace

MoritaReport verifyStableMoritaType(const Bimodule& m, const Bimodule& n) {
  if (m.B.get() != n.A.get() || m.A.get() != n.B.get())
    throw std::invalid_argument("verifyStableMoritaType: algebra shapes do not match");
  MoritaReport rep;
  rep.mProjectiveRight = isProjectiveModule(m.restrictToRight());
  rep.mProjectiveLeft = isProjectiveModule(m.restrictToLeft());
  rep.nProjectiveRight = isProjectiveModule(n.restrictToRight());
  rep.nProjectiveLeft = isProjectiveModule(n.restrictToLeft());
  if (!rep.mProjectiveRight) rep.notes.push_back(m.name + " is not projective on the right");
  if (!rep.mProjectiveLeft) rep.notes.push_back(m.name + " is not projective on the left");
  if (!rep.nProjectiveRight) rep.notes.push_back(n.name + " is not projective on the right");
  if (!rep.nProjectiveLeft) rep.notes.push_back(n.name + " is not projective on the left");

  Bimodule mn = tensorBimodules(m, n);
  Bimodule nm = tensorBimodules(n, m);
  bool dummy = false;
  rep.mnSplitsRegular = splitsOffRegular(mn, regularBimodule(m.A), dummy, rep.notes);
  rep.nmSplitsRegular = splitsOffRegular(nm, regularBimodule(m.B), dummy, rep.notes);

  rep.mHasProjectiveSummand = hasProjectiveSummand(m);
  rep.nHasProjectiveSummand = hasProjectiveSummand(n);
  if (rep.mHasProjectiveSummand) rep.notes.push_back(m.name + " has a projective bimodule summand");
  if (rep.nHasProjectiveSummand) rep.notes.push_back(n.name + " has a projective bimodule summand");

  rep.verified = rep.mProjectiveRight && rep.mProjectiveLeft && rep.nProjectiveRight &&
                 rep.nProjectiveLeft && rep.mnSplitsRegular && rep.nmSplitsRegular;
  return rep;
}

Complex transportComplex(const Complex& f, const Bimodule& m, const MoritaReport& report) {
  if (!report.verified) throw std::invalid_argument("transportComplex: bimodule pair is not verified");
  if (f.A.get() != m.A.get()) throw std::invalid_argument("transportComplex: algebra mismatch");
  Complex out;
  out.A = m.B;
  out.lo = f.lo;
  out.hi = f.hi;
  std::vector<TensorData> td;
  std::vector<StandardForm> sf;
  for (int k = f.lo; k <= f.hi; ++k) {
    td.push_back(tensorData(f.term(k).mod, m));
    sf.push_back(standardForm(td.back().q.mod));
    out.terms.push_back(termFromParts(m.B, sf.back().parts));
  }
  for (int k = f.lo; k < f.hi; ++k) {
    ModuleMap d = tensorMapOverA(ModuleMap{f.term(k).mod, f.term(k + 1).mod, f.diff(k)}, m);
    auto inv = inverse(sf[k - f.lo].toStandard);
    if (!inv) throw std::logic_error("transportComplex: standard form not invertible");
    out.diffs.push_back(*inv * d.matrix * sf[k + 1 - f.lo].toStandard);
  }
  out.leftTail = f.leftTail;
  out.rightTail = f.rightTail;
  if (f.regen) {
    Complex base = f;
    Bimodule mb = m;
    MoritaReport rb = report;
    out.regen = [base, mb, rb](int a2, int b2) {
      return transportComplex(ensureWindow(base, a2, b2), mb, rb);
    };
  }
  out.check();
  return out;
}

}  // namespace stmod
