#include "stmod/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stmod {

namespace {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void checkKeys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(where + ": unknown key \"" + it.key() + "\"");
}

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

FpMatrix matrixFromJson(const json& j, int rows, int cols, int p, const std::string& where) {
  if (!j.is_array() || int(j.size()) != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  FpMatrix m(rows, cols, p);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || int(j[r].size()) != cols)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      long long v = j[r][c].get<long long>();
      m.at(r, c) = uint8_t(((v % p) + p) % p);
    }
  }
  return m;
}

// --- algebra files ---------------------------------------------------------

// Side information kept for algebras built from quiver files so that module
// files written in arrow form can be interpreted.
struct QuiverSide {
  QuiverSpec spec;
};

std::map<const Algebra*, QuiverSide>& quiverSides() {
  static std::map<const Algebra*, QuiverSide> m;
  return m;
}

QuiverSpec::Relation parseRelation(const std::string& text, int p) {
  QuiverSpec::Relation rel;
  size_t i = 0;
  int sign = 1;
  auto skipSpace = [&] {
    while (i < text.size() && std::isspace(uint8_t(text[i]))) ++i;
  };
  skipSpace();
  while (i < text.size()) {
    if (text[i] == '+') {
      sign = 1;
      ++i;
      skipSpace();
    } else if (text[i] == '-') {
      sign = -1;
      ++i;
      skipSpace();
    }
    std::vector<std::string> factors;
    std::string cur;
    while (i < text.size() && text[i] != '+' && text[i] != '-') {
      char ch = text[i++];
      if (std::isspace(uint8_t(ch))) continue;
      if (ch == '*') {
        if (cur.empty()) throw ParseError("relation \"" + text + "\": empty factor");
        factors.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) factors.push_back(cur);
    if (factors.empty()) throw ParseError("relation \"" + text + "\": empty term");
    QuiverSpec::RelationTerm term;
    term.coefficient = sign;
    size_t f0 = 0;
    if (std::all_of(factors[0].begin(), factors[0].end(), [](char c) { return std::isdigit(uint8_t(c)); })) {
      term.coefficient = sign * std::stoi(factors[0]);
      f0 = 1;
    }
    term.coefficient = ((term.coefficient % p) + p) % p;
    if (f0 == factors.size()) throw ParseError("relation \"" + text + "\": term has no arrows");
    for (size_t f = f0; f < factors.size(); ++f) term.path.push_back(factors[f]);
    rel.push_back(term);
    sign = 1;
  }
  if (rel.empty()) throw ParseError("relation \"" + text + "\": empty relation");
  return rel;
}

AlgebraPtr algebraFromJson(const json& j, const std::string& where) {
  checkKeys(j, {"field", "name", "quiver", "relations", "nilpotency_cap", "structure_constants"}, where);
  int p = j.value("field", 2);
  if (p < 2 || p > 97) throw ParseError(where + ": field must be a prime in [2, 97]");
  if (j.contains("quiver") == j.contains("structure_constants"))
    throw ParseError(where + ": exactly one of quiver / structure_constants is required");

  if (j.contains("structure_constants")) {
    const json& sc = j["structure_constants"];
    checkKeys(sc, {"dimension", "table", "unit"}, where + ".structure_constants");
    int dim = sc.at("dimension").get<int>();
    std::vector<FpMatrix> table;
    const json& jt = sc.at("table");
    if (!jt.is_array() || int(jt.size()) != dim) throw ParseError(where + ": table must have one block per basis element");
    for (int i = 0; i < dim; ++i) table.push_back(matrixFromJson(jt[i], dim, dim, p, where + ".table"));
    FpMatrix unit(1, dim, p);
    const json& ju = sc.at("unit");
    if (!ju.is_array() || int(ju.size()) != dim) throw ParseError(where + ": unit must have dim entries");
    for (int c = 0; c < dim; ++c) unit.at(0, c) = uint8_t(((ju[c].get<long long>() % p) + p) % p);
    return buildStructureConstantAlgebra(p, table, unit, {}, std::nullopt, j.value("name", "A"));
  }

  QuiverSpec spec;
  spec.p = p;
  const json& q = j["quiver"];
  checkKeys(q, {"vertices", "arrows"}, where + ".quiver");
  for (const auto& v : q.at("vertices")) spec.vertices.push_back(v.get<std::string>());
  for (const auto& a : q.at("arrows")) {
    checkKeys(a, {"name", "from", "to"}, where + ".quiver.arrows");
    spec.arrows.push_back({a.at("name").get<std::string>(), a.at("from").get<std::string>(), a.at("to").get<std::string>()});
  }
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) spec.relations.push_back(parseRelation(r.get<std::string>(), p));
  spec.nilpotencyCap = j.value("nilpotency_cap", 10);
  AlgebraPtr alg = buildBoundQuiverAlgebra(spec);
  quiverSides()[alg.get()] = {spec};
  return alg;
}

}  // namespace

AlgebraPtr loadAlgebra(const std::string& ref) {
  // Memoized so that two files referring to the same algebra share one object.
  static std::map<std::string, AlgebraPtr> cache;
  auto it = cache.find(ref);
  if (it != cache.end()) return it->second;

  AlgebraPtr out;
  std::string base = ref, suffix;
  auto colon = ref.rfind(':');
  int p = 2;
  if (colon != std::string::npos && colon > 1) {
    suffix = ref.substr(colon + 1);
    if (!suffix.empty() && std::all_of(suffix.begin(), suffix.end(), [](char c) { return std::isdigit(uint8_t(c)); })) {
      base = ref.substr(0, colon);
      p = std::stoi(suffix);
    }
  }
  if (base == "a2")
    out = pathAlgebraA2(p);
  else if (base == "dual-numbers")
    out = dualNumbers(p);
  else if (base == "cyclic-nakayama")
    out = cyclicNakayamaRadSquare(p);
  else
    out = algebraFromJson(loadJsonFile(ref), ref);
  cache.emplace(ref, out);
  return out;
}

namespace {

// Split a basis label into the arrow sequence it concatenates, by greedy
// longest match over the arrow names.
std::vector<int> tokenizeLabel(const std::string& label, const QuiverSpec& spec) {
  std::vector<int> out;
  size_t i = 0;
  while (i < label.size()) {
    int best = -1;
    size_t bestLen = 0;
    for (int a = 0; a < int(spec.arrows.size()); ++a) {
      const std::string& nm = spec.arrows[a].name;
      if (nm.size() > bestLen && label.compare(i, nm.size(), nm) == 0) {
        best = a;
        bestLen = nm.size();
      }
    }
    if (best < 0) throw ParseError("cannot split basis label \"" + label + "\" into arrow names");
    out.push_back(best);
    i += bestLen;
  }
  return out;
}

Module moduleFromQuiverJson(const AlgebraPtr& alg, const QuiverSpec& spec, const json& j, const std::string& where) {
  checkKeys(j, {"vertex_dimensions", "arrows", "name"}, where);
  const int p = alg->p;
  std::map<std::string, int> vdim;
  for (auto it = j.at("vertex_dimensions").begin(); it != j.at("vertex_dimensions").end(); ++it) {
    if (std::find(spec.vertices.begin(), spec.vertices.end(), it.key()) == spec.vertices.end())
      throw ParseError(where + ": unknown vertex \"" + it.key() + "\"");
    vdim[it.key()] = it.value().get<int>();
  }
  std::map<std::string, int> offset;
  int total = 0;
  for (const auto& v : spec.vertices) {
    offset[v] = total;
    total += vdim.count(v) ? vdim[v] : 0;
  }
  auto dimOf = [&](const std::string& v) { return vdim.count(v) ? vdim[v] : 0; };

  // Extended action matrix of each arrow on the total space.
  std::vector<FpMatrix> arrowAction;
  for (const auto& a : spec.arrows) {
    FpMatrix m(total, total, p);
    if (j.contains("arrows") && j["arrows"].contains(a.name)) {
      FpMatrix block = matrixFromJson(j["arrows"][a.name], dimOf(a.source), dimOf(a.target), p, where + ".arrows." + a.name);
      m.setBlock(offset[a.source], offset[a.target], block);
    }
    arrowAction.push_back(m);
  }
  if (j.contains("arrows"))
    for (auto it = j["arrows"].begin(); it != j["arrows"].end(); ++it) {
      bool known = false;
      for (const auto& a : spec.arrows) known = known || a.name == it.key();
      if (!known) throw ParseError(where + ": unknown arrow \"" + it.key() + "\"");
    }

  Module out;
  out.A = alg;
  out.dim = total;
  out.name = j.value("name", "M");
  for (int i = 0; i < alg->dim; ++i) {
    const std::string& label = alg->basisLabels[i];
    FpMatrix act(total, total, p);
    if (label.rfind("e_", 0) == 0) {
      std::string v = label.substr(2);
      for (int r = 0; r < dimOf(v); ++r) act.at(offset[v] + r, offset[v] + r) = 1;
    } else {
      act = FpMatrix::identity(total, p);
      for (int a : tokenizeLabel(label, spec)) act = act * arrowAction[a];
    }
    out.action.push_back(act);
  }
  out.validate();
  return out;
}

std::vector<FpMatrix> actionsFromJson(const json& j, int count, int dim, int p, const std::string& where) {
  if (!j.is_array() || int(j.size()) != count)
    throw ParseError(where + ": expected " + std::to_string(count) + " matrices");
  std::vector<FpMatrix> out;
  for (int i = 0; i < count; ++i) out.push_back(matrixFromJson(j[i], dim, dim, p, where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Module loadModule(const AlgebraPtr& a, const std::string& path) {
  json j = loadJsonFile(path);
  auto side = quiverSides().find(a.get());
  if (j.contains("vertex_dimensions")) {
    if (side == quiverSides().end())
      throw ParseError(path + ": arrow-form module file requires a quiver-built algebra");
    return moduleFromQuiverJson(a, side->second.spec, j, path);
  }
  checkKeys(j, {"dimension", "action", "name"}, path);
  Module out;
  out.A = a;
  out.dim = j.at("dimension").get<int>();
  out.name = j.value("name", "M");
  out.action = actionsFromJson(j.at("action"), a->dim, out.dim, a->p, path + ".action");
  out.validate();
  return out;
}

Bimodule loadBimodule(const std::string& path) {
  json j = loadJsonFile(path);
  checkKeys(j, {"left", "right", "dimension", "left_action", "right_action", "name"}, path);
  AlgebraPtr a = loadAlgebra(j.at("left").get<std::string>());
  AlgebraPtr b = loadAlgebra(j.at("right").get<std::string>());
  int dim = j.at("dimension").get<int>();
  auto left = actionsFromJson(j.at("left_action"), a->dim, dim, a->p, path + ".left_action");
  auto right = actionsFromJson(j.at("right_action"), b->dim, dim, b->p, path + ".right_action");
  return bimoduleFromActions(a, b, dim, left, right, j.value("name", "M"));
}

// --- report rendering ------------------------------------------------------

namespace {

std::string projLabel(const AlgebraPtr& a, int cls) {
  const auto& ip = indecProjectives(a);
  if (!ip.projectives[cls].name.empty()) return ip.projectives[cls].name;
  return "P" + std::to_string(cls);
}

json complexToJson(const Complex& f) {
  json out;
  out["lo"] = f.lo;
  out["hi"] = f.hi;
  out["leftTail"] = f.leftTail == LeftTail::Zero ? "zero" : "acyclic";
  out["rightTail"] = f.rightTail == RightTail::Zero ? "zero" : "dual-acyclic";
  json degrees = json::array();
  for (int k = f.lo; k <= f.hi; ++k) {
    json d;
    d["degree"] = k;
    d["dim"] = f.term(k).mod.dim;
    json parts = json::array();
    for (int c : f.term(k).parts) parts.push_back(projLabel(f.A, c));
    d["parts"] = parts;
    if (k < f.hi) d["diffRank"] = rank(f.diff(k));
    degrees.push_back(d);
  }
  out["degrees"] = degrees;
  return out;
}

std::string verdictName(HullVerdict v) {
  switch (v) {
    case HullVerdict::InL: return "InL";
    case HullVerdict::InHP: return "InHP";
    case HullVerdict::InHstp: return "InHstp";
    default: return "InHp";
  }
}

json presentationToJson(const GroupPresentation& g) {
  json out;
  out["generators"] = g.generators;
  out["relationCount"] = g.relations.rows();
  json fac = json::array();
  for (const auto& d : g.invariantFactors) fac.push_back(d.str());
  out["invariantFactors"] = fac;
  out["freeRank"] = g.freeRank;
  out["exactnessStamp"] = g.exactnessStamp;
  return out;
}

void renderText(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        renderText(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        renderText(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

json hullToJson(const AlgebraPtr& a, const HullCertificate& cert) {
  json out;
  out["l"] = cert.l;
  out["r"] = cert.r;
  out["inL"] = cert.inL;
  out["inHP"] = cert.inHP;
  out["inHstp"] = cert.inHstp;
  out["inHp"] = cert.inHp;
  out["verdict"] = verdictName(cert.verdict);
  auto failures = [&](const std::vector<DegreeFailure>& fs) {
    json arr = json::array();
    for (const auto& f : fs) {
      json e;
      e["degree"] = f.degree;
      e["target"] = projLabel(a, f.targetClass);
      arr.push_back(e);
    }
    return arr;
  };
  out["projPerpFailures"] = failures(cert.projPerpFailures);
  out["stpPerpFailures"] = failures(cert.stpPerpFailures);
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  std::ostringstream os;
  try {
    if (cfg.windowLo > 0 || cfg.windowHi < 0) throw ParseError("window must contain 0");
    if (cfg.dimCap < 1) throw ParseError("dim-cap must be at least 1");
    if (cfg.format != "text" && cfg.format != "json") throw ParseError("format must be text or json");
    if (cfg.command.empty()) throw ParseError("no command given");

    json rep;
    rep["schema"] = "stmod-report-v1";
    rep["command"] = cfg.command;
    rep["seed"] = cfg.seed;

    AlgebraPtr a = loadAlgebra(cfg.algebra.empty() ? "a2" : cfg.algebra);
    rep["algebra"] = a->name;
    {
      json warnings = json::array();
      const auto& ip = indecProjectives(a);
      for (int c = 0; c < int(ip.projectives.size()); ++c)
        if (ip.projectives[c].dim == ip.simples[c].dim && isProjInjectiveModule(ip.projectives[c]))
          warnings.push_back("simple projective-injective summand " + projLabel(a, c) +
                             ": results assuming no semisimple summands may not apply");
      rep["warnings"] = warnings;
    }

    auto needModule = [&]() -> Module {
      if (cfg.module.empty()) throw ParseError("this command needs --module");
      return loadModule(a, cfg.module);
    };

    if (cfg.command == "resolve") {
      Module x = needModule();
      rep["module"] = x.name;
      rep["complex"] = complexToJson(ensureWindow(minResolutionComplex(x, cfg.windowLo), cfg.windowLo, 0));
    } else if (cfg.command == "kato") {
      Module x = needModule();
      rep["module"] = x.name;
      rep["complex"] = complexToJson(katoComplex(x, cfg.windowLo, cfg.windowHi));
    } else if (cfg.command == "hull-test") {
      Module x = needModule();
      rep["module"] = x.name;
      Complex f;
      if (cfg.complexKind == "kato")
        f = katoComplex(x, cfg.windowLo, cfg.windowHi);
      else if (cfg.complexKind == "resolution")
        f = ensureWindow(minResolutionComplex(x, cfg.windowLo), cfg.windowLo, cfg.windowHi);
      else if (cfg.complexKind == "stalk") {
        if (!isProjectiveModule(x)) throw ParseError("stalk complexes need a projective module");
        auto idp = presentProjective(x);
        f = ensureWindow(stalkComplex(a, 0, termFromParts(a, idp.parts)), cfg.windowLo, cfg.windowHi);
      } else {
        throw ParseError("unknown complex kind: " + cfg.complexKind);
      }
      rep["complexKind"] = cfg.complexKind;
      rep["hull"] = hullToJson(a, hullMembership(f));
    } else if (cfg.command == "stp") {
      json pa = json::array(), st = json::array();
      for (int c : projInjectiveClasses(a)) pa.push_back(projLabel(a, c));
      for (int c : stronglyProjInjectiveClasses(a)) st.push_back(projLabel(a, c));
      rep["projInjective"] = pa;
      rep["stronglyProjInjective"] = st;
    } else if (cfg.command == "nu-domdim") {
      int cap = 8;
      int v = nuDominantDimensionOfAlgebra(a, cap);
      rep["value"] = v;
      rep["atLeastCap"] = v >= cap;
    } else if (cfg.command == "self-injective") {
      SelfInjectiveReport r = selfInjectiveSuite(a, cfg.windowLo, cfg.windowHi);
      rep["selfInjective"] = r.selfInjective;
      rep["reflexivityProbe"] = r.reflexivityProbe;
      rep["coneClosureProbe"] = r.coneClosureProbe;
      rep["shiftClosureProbe"] = r.shiftClosureProbe;
      rep["triangulatedProbe"] = r.triangulatedProbe;
      rep["lEqualsHPProbe"] = r.lEqualsHPProbe;
      rep["totalAcyclicityProbe"] = r.totalAcyclicityProbe;
      rep["projAllProbe"] = r.projAllProbe;
      rep["vacuous"] = r.vacuous;
      rep["consistent"] = r.consistent;
      rep["notes"] = r.notes;
    } else if (cfg.command == "g0p" || cfg.command == "g0st") {
      RelationMode mode = cfg.command == "g0p" ? RelationMode::Perfect : RelationMode::Stable;
      rep["group"] = presentationToJson(g0(a, mode, cfg.dimCap, cfg.seed));
    } else if (cfg.command == "sigma-check") {
      ModulePool pool = buildPool(a, cfg.dimCap, cfg.seed);
      GroupPresentation pres = presentGroup(pool, harvestRelations(pool, RelationMode::Perfect, cfg.seed));
      json checks = json::array();
      bool all = true;
      for (const auto& e : pool.entries) {
        Complex fx = katoComplex(e.mod, cfg.windowLo, cfg.windowHi);
        PoolClass back = sigmaTilde(pool, fx, 0, 0);
        PoolClass wide = sigmaTilde(pool, fx, 0, 1);
        bool ok = back == sigma(pool, e.mod) && sameClassInPresentation(pres, back, wide);
        all = all && ok;
        json c;
        c["generator"] = e.label;
        c["ok"] = ok;
        checks.push_back(c);
      }
      rep["roundTrips"] = checks;
      rep["allOk"] = all;
    } else if (cfg.command == "morita-check") {
      Bimodule m, n;
      if (!cfg.pair.empty()) {
        if (cfg.pair == "identity") {
          m = regularBimodule(a);
          n = regularBimodule(a);
        } else if (cfg.pair == "matrix2") {
          m = rowBimodule(a, 2);
          n = colBimodule(a, 2);
        } else {
          throw ParseError("unknown builtin pair: " + cfg.pair);
        }
      } else {
        if (cfg.bimoduleM.empty() || cfg.bimoduleN.empty()) throw ParseError("morita-check needs --m and --n (or --pair)");
        m = loadBimodule(cfg.bimoduleM);
        n = loadBimodule(cfg.bimoduleN);
      }
      MoritaReport r = verifyStableMoritaType(m, n);
      rep["mProjectiveLeft"] = r.mProjectiveLeft;
      rep["mProjectiveRight"] = r.mProjectiveRight;
      rep["nProjectiveLeft"] = r.nProjectiveLeft;
      rep["nProjectiveRight"] = r.nProjectiveRight;
      rep["mnSplitsRegular"] = r.mnSplitsRegular;
      rep["nmSplitsRegular"] = r.nmSplitsRegular;
      rep["mHasProjectiveSummand"] = r.mHasProjectiveSummand;
      rep["nHasProjectiveSummand"] = r.nHasProjectiveSummand;
      rep["verified"] = r.verified;
      rep["notes"] = r.notes;
    } else {
      throw ParseError("unknown command: " + cfg.command);
    }

    if (cfg.format == "json")
      os << rep.dump(2) << "\n";
    else
      renderText(rep, os);
    res.exitCode = 0;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    os << "error: " << msg << "\n";
    res.exitCode = msg.find("inconclusive") != std::string::npos ? 2 : 1;
  }
  res.report = os.str();
  return res;
}

}  // namespace stmod
