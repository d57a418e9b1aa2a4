#include "altlab/deciders.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "altlab/errors.hpp"

namespace altlab {

namespace {

enum class Cmp { Leq, Geq, Eq };

const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Leq: return "leq";
    case Cmp::Geq: return "geq";
    case Cmp::Eq: return "eq";
  }
  return "";
}

bool cmp_holds(const OrderRelation& ord, Cmp c, Element lhs, Element rhs) {
  switch (c) {
    case Cmp::Leq: return ord.leq(lhs, rhs);
    case Cmp::Geq: return ord.leq(rhs, lhs);
    case Cmp::Eq: return lhs == rhs;
  }
  return false;
}

const OrderRelation& require_order(const RecognizedLanguage& l) {
  if (!l.order)
    throw InputError("membership deciders need the syntactic order; build the "
                     "language with syntactic_morphism");
  return *l.order;
}

// The equation s^w ~ s^w t s^w over all pairs (t, s); first violation in
// the given order is reported.
Verdict check_power_equation(const RecognizedLanguage& l, const std::vector<Chain>& pairs,
                             Cmp cmp, const std::string& equation) {
  const auto& m = *l.morphism.target;
  const auto& ord = require_order(l);
  for (const auto& pair : pairs) {
    Element t = pair[0], s = pair[1];
    Element sw = omega_power(m, s);
    Element lhs = sw;
    Element rhs = m.mult3(sw, t, sw);
    if (!cmp_holds(ord, cmp, lhs, rhs)) {
      Violation v;
      v.equation = equation;
      v.chain = {t, s};
      v.lhs = lhs;
      v.rhs = rhs;
      v.relation = cmp_name(cmp);
      v.detail = m.name_of(lhs) + " !" + cmp_name(cmp) + " " + m.name_of(rhs) +
                 " for (t,s)=(" + m.name_of(t) + "," + m.name_of(s) + ")";
      return Verdict{false, v, ""};
    }
  }
  return Verdict{true, std::nullopt, "equation holds for all parametrizing chains"};
}

std::vector<Chain> all_pairs(const FiniteMonoid& m) {
  std::vector<Chain> out;
  out.reserve(static_cast<std::size_t>(m.size) * m.size);
  for (Element t = 0; t < m.size; ++t)
    for (Element s = 0; s < m.size; ++s) out.push_back(Chain{t, s});
  return out;
}

// Level-(i-1) length-2 chains parametrizing the membership equations.
std::vector<Chain> parameter_chains(const RecognizedLanguage& l, int i,
                                    const SaturationLimits& limits) {
  const auto& m = *l.morphism.target;
  switch (i) {
    case 1:
      return all_pairs(m);
    case 2: {
      ContentMorphism beta(l.morphism);
      return level1_chains(beta);
    }
    case 3: {
      ContentMorphism beta(l.morphism);
      auto family = saturate(beta, 2, limits);
      return family->union_chains();
    }
    default:
      throw InputError("membership is decidable here for levels 1..3 only");
  }
}

}  // namespace

Verdict decide_sigma(const RecognizedLanguage& l, int i, const SaturationLimits& limits) {
  return check_power_equation(l, parameter_chains(l, i, limits), Cmp::Leq,
                              "sigma" + std::to_string(i));
}

Verdict decide_pi(const RecognizedLanguage& l, int i, const SaturationLimits& limits) {
  return check_power_equation(l, parameter_chains(l, i, limits), Cmp::Geq,
                              "pi" + std::to_string(i));
}

Verdict decide_delta(const RecognizedLanguage& l, int i, const SaturationLimits& limits) {
  return check_power_equation(l, parameter_chains(l, i, limits), Cmp::Eq,
                              "delta" + std::to_string(i));
}

Verdict decide_fo(const RecognizedLanguage& l) {
  const auto& m = *l.morphism.target;
  for (Element s = 0; s < m.size; ++s) {
    Element sw = omega_power(m, s);
    Element sws = m.mult(sw, s);
    if (sw != sws) {
      Violation v;
      v.equation = "aperiodicity";
      v.chain = {s};
      v.lhs = sw;
      v.rhs = sws;
      v.relation = "eq";
      v.detail = "s^w != s^w*s for s=" + m.name_of(s);
      return Verdict{false, v, ""};
    }
  }
  return Verdict{true, std::nullopt, "monoid is aperiodic"};
}

Verdict decide_separation(const RecognizedLanguage& l1, const RecognizedLanguage& l2,
                          SeparationLogic logic, const SaturationLimits& limits) {
  ProductRecognition prod = product_morphism(l1, l2);
  ContentMorphism beta(prod.morphism);
  auto family = saturate(beta, 2, limits);

  for (Element s1 : prod.accepting1)
    for (Element s2 : prod.accepting2) {
      Chain candidate = logic == SeparationLogic::Sigma2 ? Chain{s1, s2} : Chain{s2, s1};
      const ChainSetEntry* entry = family->find_entry(candidate);
      if (entry != nullptr) {
        const auto& m = *prod.morphism.target;
        Violation v;
        v.equation = logic == SeparationLogic::Sigma2 ? "separation-sigma2" : "separation-pi2";
        v.chain = candidate;
        v.lhs = s1;
        v.rhs = s2;
        v.relation = "chain";
        v.detail = "accepting pair (" + m.name_of(s1) + "," + m.name_of(s2) +
                   ") is linked by the chain (" + m.name_of(candidate[0]) + "," +
                   m.name_of(candidate[1]) + "); derivation: " +
                   derivation_to_string(*entry->derivation, prod.morphism.alphabet);
        return Verdict{false, v, ""};
      }
    }
  return Verdict{true, std::nullopt, "no accepting pair is linked by a chain"};
}

std::vector<BSchema> compute_b_schemas(const ChainFamily& family2, AlphaSet b) {
  if (family2.length != 2)
    throw InputError("schemas are computed from the length-2 family");
  const auto& entries = family2.entries(b);
  if (entries.empty()) return {};
  const FiniteMonoid& m = *entries.front().derivation->monoid;

  ChainSet cs_b = make_chain_set(family2.union_chains(b));
  std::set<std::array<Element, 3>> seen;
  std::vector<BSchema> out;
  for (const auto& entry : entries) {
    SetPower p = set_idempotent_power(m, entry.set);
    ChainSet left = chain_set_product(m, cs_b, p.power);
    ChainSet right = chain_set_product(m, p.power, cs_b);
    for (const auto& lc : left.chains)
      for (const auto& rc : right.chains) {
        std::array<Element, 3> triple{m.mult(lc[0], rc[0]), lc[1], rc[1]};
        if (!seen.insert(triple).second) continue;
        BSchema schema;
        schema.triple = triple;
        schema.subalphabet = b;
        schema.witness_set = entry.set;
        schema.r1 = lc[0];
        schema.r1p = rc[0];
        out.push_back(std::move(schema));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Verdict check_bsigma2(const RecognizedLanguage& l,
                      const std::shared_ptr<const ChainFamily>& family3) {
  const auto& m = *l.morphism.target;
  const ChainFamily& family2 = *family3->lower;

  // Two-sided equation over length-3 chains.
  for (const Chain& c : family3->union_chains()) {
    Element s1 = c[0], s2 = c[1], s3 = c[2];
    Element w1 = omega_power(m, s1), w3 = omega_power(m, s3);
    Element lhs1 = m.mult(w1, w3), rhs1 = m.mult3(w1, s2, w3);
    Element lhs2 = m.mult(w3, w1), rhs2 = m.mult3(w3, s2, w1);
    if (lhs1 != rhs1 || lhs2 != rhs2) {
      Violation v;
      v.equation = "bsigma2-eq4";
      v.chain = c;
      v.lhs = lhs1 != rhs1 ? lhs1 : lhs2;
      v.rhs = lhs1 != rhs1 ? rhs1 : rhs2;
      v.relation = "eq";
      v.detail = "chain (" + m.name_of(s1) + "," + m.name_of(s2) + "," + m.name_of(s3) +
                 ") violates the two-sided equation";
      return Verdict{false, v, ""};
    }
  }

  // Schema equation over pairs of B-schemas with the same B.
  const int na = static_cast<int>(l.morphism.alphabet.size());
  for (AlphaSet b : subsets_ascending(na)) {
    auto schemas = compute_b_schemas(family2, b);
    for (const auto& sch : schemas)
      for (const auto& tch : schemas) {
        auto [s1, s2, s2p] = sch.triple;
        auto [t1, t2, t2p] = tch.triple;
        Element x = omega_power(m, m.mult(s2, t2));
        Element y = omega_power(m, m.mult(t2p, s2p));
        Element lhs = m.mult3(x, s1, y);
        Element rhs = m.mult(m.mult3(x, s2, t1), m.mult(s2p, y));
        if (lhs != rhs) {
          Violation v;
          v.equation = "bsigma2-eq5";
          v.chain = {s1, s2, s2p, t1, t2, t2p};
          v.lhs = lhs;
          v.rhs = rhs;
          v.relation = "eq";
          v.schema1 = sch.triple;
          v.schema2 = tch.triple;
          v.subalphabet = b;
          v.detail = "schema pair for B={" + alpha_set_to_string(b, l.morphism.alphabet) +
                     "} violates the schema equation";
          return Verdict{false, v, ""};
        }
      }
  }
  return Verdict{true, std::nullopt, "both equations hold"};
}

}  // namespace

Verdict decide_bsigma2(const RecognizedLanguage& l, const SaturationLimits& limits) {
  require_order(l);
  ContentMorphism beta(l.morphism);
  auto family3 = saturate(beta, 3, limits);
  return check_bsigma2(l, family3);
}

const Verdict& ClassificationReport::verdict(const std::string& name) const {
  for (const auto& cv : classes)
    if (cv.name == name) return cv.verdict;
  throw InputError("unknown class name: " + name);
}

void check_report_consistency(const ClassificationReport& report) {
  auto yes = [&](const std::string& name) { return report.verdict(name).yes; };
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) throw InternalInconsistencyError("hierarchy violation: " + what);
  };

  for (int i = 1; i <= 3; ++i) {
    std::string si = "Sigma" + std::to_string(i);
    std::string pi = "Pi" + std::to_string(i);
    std::string di = "Delta" + std::to_string(i);
    require(yes(di) == (yes(si) && yes(pi)), di + " must equal " + si + " and " + pi);
  }
  require(!yes("Sigma1") || yes("Delta2"), "Sigma1 implies Delta2");
  require(!yes("Pi1") || yes("Delta2"), "Pi1 implies Delta2");
  require(!yes("Sigma2") || yes("BSigma2"), "Sigma2 implies BSigma2");
  require(!yes("Pi2") || yes("BSigma2"), "Pi2 implies BSigma2");
  require(!yes("BSigma2") || yes("Delta3"), "BSigma2 implies Delta3");
  require(!yes("Sigma1") || yes("Sigma2"), "Sigma1 implies Sigma2");
  require(!yes("Sigma2") || yes("Sigma3"), "Sigma2 implies Sigma3");
  require(!yes("Pi1") || yes("Pi2"), "Pi1 implies Pi2");
  require(!yes("Pi2") || yes("Pi3"), "Pi2 implies Pi3");
  for (const auto& cv : report.classes)
    require(!cv.verdict.yes || yes("FO"), cv.name + " implies FO");
}

ClassificationReport classify(const RecognizedLanguage& l, const SaturationLimits& limits) {
  require_order(l);
  ContentMorphism beta(l.morphism);

  // Shared artifacts: the length-3 family contains the length-2 one, and
  // the level-1 chain relation backs the i=2 equations.
  auto family3 = saturate(beta, 3, limits);
  const ChainFamily& family2 = *family3->lower;
  std::vector<Chain> c0 = all_pairs(*l.morphism.target);
  std::vector<Chain> c1 = level1_chains(beta);
  std::vector<Chain> c2 = family2.union_chains();

  auto sigma_like = [&](const std::vector<Chain>& pairs, Cmp cmp, const std::string& eq) {
    return check_power_equation(l, pairs, cmp, eq);
  };

  ClassificationReport report;
  report.classes.push_back({"Sigma1", sigma_like(c0, Cmp::Leq, "sigma1")});
  report.classes.push_back({"Pi1", sigma_like(c0, Cmp::Geq, "pi1")});
  report.classes.push_back({"Delta1", sigma_like(c0, Cmp::Eq, "delta1")});
  report.classes.push_back({"Sigma2", sigma_like(c1, Cmp::Leq, "sigma2")});
  report.classes.push_back({"Pi2", sigma_like(c1, Cmp::Geq, "pi2")});
  report.classes.push_back({"Delta2", sigma_like(c1, Cmp::Eq, "delta2")});
  report.classes.push_back({"Sigma3", sigma_like(c2, Cmp::Leq, "sigma3")});
  report.classes.push_back({"Pi3", sigma_like(c2, Cmp::Geq, "pi3")});
  report.classes.push_back({"Delta3", sigma_like(c2, Cmp::Eq, "delta3")});
  report.classes.push_back({"BSigma2", check_bsigma2(l, family3)});
  report.classes.push_back({"FO", decide_fo(l)});

  check_report_consistency(report);
  return report;
}

bool violation_reevaluates(const Violation& v, const RecognizedLanguage& l) {
  const auto& m = *l.morphism.target;
  auto power = [&](Element s) { return omega_power(m, s); };

  if (v.equation == "aperiodicity") {
    Element s = v.chain.at(0);
    return power(s) != m.mult(power(s), s);
  }
  if (v.equation.rfind("sigma", 0) == 0 || v.equation.rfind("pi", 0) == 0 ||
      v.equation.rfind("delta", 0) == 0) {
    Element t = v.chain.at(0), s = v.chain.at(1);
    Element lhs = power(s);
    Element rhs = m.mult3(power(s), t, power(s));
    if (lhs != v.lhs || rhs != v.rhs) return false;
    if (!l.order) return false;
    if (v.relation == "leq") return !l.order->leq(lhs, rhs);
    if (v.relation == "geq") return !l.order->leq(rhs, lhs);
    return lhs != rhs;
  }
  if (v.equation == "bsigma2-eq4") {
    Element s1 = v.chain.at(0), s2 = v.chain.at(1), s3 = v.chain.at(2);
    Element w1 = power(s1), w3 = power(s3);
    return m.mult(w1, w3) != m.mult3(w1, s2, w3) || m.mult(w3, w1) != m.mult3(w3, s2, w1);
  }
  if (v.equation == "bsigma2-eq5") {
    auto [s1, s2, s2p] = *v.schema1;
    auto [t1, t2, t2p] = *v.schema2;
    Element x = power(m.mult(s2, t2));
    Element y = power(m.mult(t2p, s2p));
    return m.mult3(x, s1, y) != m.mult(m.mult3(x, s2, t1), m.mult(s2p, y));
  }
  return false;
}

nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["decision"] = v.yes;
  if (v.yes) {
    if (!v.justification.empty()) j["justification"] = v.justification;
  } else if (v.violation) {
    nlohmann::json vj;
    vj["equation"] = v.violation->equation;
    vj["chain"] = v.violation->chain;
    vj["lhs"] = v.violation->lhs;
    vj["rhs"] = v.violation->rhs;
    vj["relation"] = v.violation->relation;
    if (v.violation->schema1) vj["schema1"] = *v.violation->schema1;
    if (v.violation->schema2) vj["schema2"] = *v.violation->schema2;
    vj["detail"] = v.violation->detail;
    j["violation"] = vj;
  }
  return j;
}

nlohmann::json report_json(const ClassificationReport& report) {
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& cv : report.classes) classes[cv.name] = verdict_json(cv.verdict);
  nlohmann::json j;
  j["classes"] = classes;
  return j;
}

}  // namespace altlab
