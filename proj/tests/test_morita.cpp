#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stmod/morita.hpp"

using namespace stmod;

namespace {

const Module& bigProjective(const AlgebraPtr& a) {
  const auto& ip = indecProjectives(a);
  return ip.projectives[0].dim == 2 ? ip.projectives[0] : ip.projectives[1];
}
Module sourceSimple(const AlgebraPtr& a) { return topQuotient(bigProjective(a)).mod; }

}  // namespace

TEST_CASE("tensoring with the regular bimodule is the identity up to isomorphism") {
  auto a = pathAlgebraA2(2);
  Bimodule reg = regularBimodule(a);
  Module s1 = sourceSimple(a);
  Module t = tensorOverA(s1, reg);
  CHECK(isIsomorphic(t, s1).verdict == Verdict::Yes);
  CHECK(tensorOverA(zeroModule(a), reg).dim == 0);
  Module p1 = bigProjective(a);
  CHECK(isIsomorphic(tensorOverA(p1, reg), p1).verdict == Verdict::Yes);
}

TEST_CASE("tensor is right exact and additive on maps") {
  auto a = pathAlgebraA2(2);
  Bimodule reg = regularBimodule(a);
  Module p1 = bigProjective(a);
  ModuleMap pi = topQuotient(p1).projection;
  ModuleMap t = tensorMapOverA(pi, reg);
  CHECK(t.src.dim == 2);
  CHECK(t.tgt.dim == 1);
  CHECK(rank(t.matrix) == 1);  // surjectivity preserved
  ModuleMap id = tensorMapOverA(identityMap(p1), reg);
  CHECK(rank(id.matrix) == 2);
}

TEST_CASE("projectivity of bimodules") {
  // neither test algebra is separable, so neither is projective over its
  // enveloping algebra
  auto a = pathAlgebraA2(2);
  CHECK(!isProjectiveBimodule(regularBimodule(a)));
  auto k2 = dualNumbers(2);
  CHECK(!isProjectiveBimodule(regularBimodule(k2)));
  // the free bimodule A (x) A is projective
  const int d = k2->dim, p = k2->p;
  Bimodule reg = regularBimodule(k2);
  auto lreg = reg.leftActions();
  auto rreg = reg.rightActions();
  FpMatrix id = FpMatrix::identity(d, p);
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < d; ++i) {
    FpMatrix l(d * d, d * d, p), r(d * d, d * d, p);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t)
        for (int u = 0; u < d; ++u) {
          l.at(s * d + t, u * d + t) = lreg[i].at(s, u);
          r.at(s * d + t, s * d + u) = rreg[i].at(t, u);
        }
    left.push_back(l);
    right.push_back(r);
  }
  Bimodule free = bimoduleFromActions(k2, k2, d * d, left, right, "free bimodule");
  CHECK(isProjectiveBimodule(free));
}

TEST_CASE("the identity bimodule pair verifies with zero projective remainders") {
  auto k2 = dualNumbers(2);
  Bimodule reg = regularBimodule(k2);
  MoritaReport rep = verifyStableMoritaType(reg, reg);
  CHECK(rep.mProjectiveLeft);
  CHECK(rep.mProjectiveRight);
  CHECK(rep.nProjectiveLeft);
  CHECK(rep.nProjectiveRight);
  CHECK(rep.mnSplitsRegular);
  CHECK(rep.nmSplitsRegular);
  CHECK(rep.verified);
  CHECK(!rep.mHasProjectiveSummand);  // A itself is not projective over A^e here
}

TEST_CASE("the row/column Morita pair between A and its 2x2 matrix algebra verifies") {
  auto a = pathAlgebraA2(2);
  Bimodule m = rowBimodule(a, 2);
  Bimodule n = colBimodule(a, 2);
  CHECK(m.dim() == 6);
  CHECK(n.dim() == 6);
  MoritaReport rep = verifyStableMoritaType(m, n);
  CHECK(rep.mProjectiveLeft);
  CHECK(rep.mProjectiveRight);
  CHECK(rep.nProjectiveLeft);
  CHECK(rep.nProjectiveRight);
  CHECK(rep.mnSplitsRegular);
  CHECK(rep.nmSplitsRegular);
  CHECK(rep.verified);
}

TEST_CASE("transport along a Morita pair preserves complexes and hull verdicts") {
  auto a = pathAlgebraA2(2);
  Bimodule m = rowBimodule(a, 2);
  Bimodule n = colBimodule(a, 2);
  MoritaReport rep = verifyStableMoritaType(m, n);
  REQUIRE(rep.verified);

  Module s1 = sourceSimple(a);
  Complex f = katoComplex(s1, -3, 3);
  Complex g = transportComplex(f, m, rep);
  g.check();
  // dimensions scale with the tensor, cohomology transports degreewise
  for (int k = -3; k <= 3; ++k)
    CHECK(cohomology(g, k).dim == tensorOverA(cohomology(f, k), m).dim);
  CHECK(inLWindowConditions(g));
  HullCertificate cert = hullMembership(g);
  CHECK(cert.verdict == HullVerdict::InL);

  // the stable square commutes: the stable inverse of the transported
  // complete resolution is the tensor of the module
  Module si = stableInverse(g);
  Module sm = tensorOverA(s1, m);
  CHECK(isIsomorphic(si, sm).verdict == Verdict::Yes);

  // regeneration transports too
  Complex wide = g.regen(-5, 5);
  for (int k = -3; k < 3; ++k) CHECK(wide.diff(k) == g.diff(k));

  // round trip: tensoring back recovers the original complex degreewise
  MoritaReport repBack = verifyStableMoritaType(n, m);
  REQUIRE(repBack.verified);
  Complex back = transportComplex(g, n, repBack);
  for (int k = -3; k <= 3; ++k) CHECK(back.term(k).mod.dim == f.term(k).mod.dim);
  CHECK(isIsomorphic(stableInverse(back), s1).verdict == Verdict::Yes);

  // the zero complex transports to zero
  Complex z = transportComplex(ensureWindow(zeroComplex(a), -2, 2), m, rep);
  for (int k = -2; k <= 2; ++k) CHECK(z.term(k).mod.dim == 0);
}

TEST_CASE("transport refuses unverified pairs") {
  auto a = pathAlgebraA2(2);
  Bimodule reg = regularBimodule(a);
  MoritaReport bad;
  bad.verified = false;
  CHECK_THROWS_AS(transportComplex(ensureWindow(zeroComplex(a), -1, 1), reg, bad),
                  std::invalid_argument);
}

TEST_CASE("one-sided perpendicularity transports along a verified pair") {
  auto a = pathAlgebraA2(2);
  Bimodule m = rowBimodule(a, 2);
  Bimodule n = colBimodule(a, 2);
  MoritaReport rep = verifyStableMoritaType(m, n);
  REQUIRE(rep.verified);
  auto b = m.B;

  // S1 lies in the perpendicular of the projective-injectives of A; its
  // image under - (x) M lies in the perpendicular over the matrix algebra
  Module s1 = sourceSimple(a);
  const auto& ipa = indecProjectives(a);
  const auto& ipb = indecProjectives(b);
  std::vector<Module> perpA, perpB;
  for (int c : projInjectiveClasses(a)) perpA.push_back(ipa.projectives[c]);
  for (int c : projInjectiveClasses(b)) perpB.push_back(ipb.projectives[c]);
  REQUIRE(inPerp(s1, perpA).ok);
  Module s1m = tensorOverA(s1, m);
  CHECK(inPerp(s1m, perpB).ok);

  // and the round trip is the identity on such modules
  Module round = tensorOverA(s1m, n);
  CHECK(isIsomorphic(round, s1).verdict == Verdict::Yes);
}
