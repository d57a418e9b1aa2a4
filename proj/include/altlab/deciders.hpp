#ifndef ALTLAB_DECIDERS_HPP
#define ALTLAB_DECIDERS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "altlab/chains.hpp"
#include "altlab/monoid.hpp"

namespace altlab {

enum class SeparationLogic { Sigma2, Pi2 };

// Concrete equation violation backing a "no" verdict. Enough data is kept
// to re-evaluate the instance from the raw multiplication table.
struct Violation {
  std::string equation;           // e.g. "sigma2", "bsigma2-eq4", "separation-sigma2"
  std::vector<Element> chain;     // parametrizing chain / offending pair
  Element lhs = 0, rhs = 0;       // evaluated sides
  std::string relation;           // "leq", "geq", "eq" (the one that failed)
  std::optional<std::array<Element, 3>> schema1, schema2;  // eq5 only
  std::optional<AlphaSet> subalphabet;                     // eq5 only
  std::string detail;
};

struct Verdict {
  bool yes = false;
  std::optional<Violation> violation;
  std::string justification;  // for "yes" verdicts
};

// A triple (s1,s2,s2') witnessed by a compatible set T and a factorization
// s1 = r1*r1' with (r1,s2) in Cs*T^e and (r1',s2') in T^e*Cs.
struct BSchema {
  std::array<Element, 3> triple;
  AlphaSet subalphabet = 0;
  ChainSet witness_set;  // T
  Element r1 = 0, r1p = 0;

  bool operator<(const BSchema& o) const { return triple < o.triple; }
};

struct ClassVerdict {
  std::string name;
  Verdict verdict;
};

struct ClassificationReport {
  std::vector<ClassVerdict> classes;  // fixed order: Sigma1..FO
  const Verdict& verdict(const std::string& name) const;
};

// Separation of l1 from l2 by the requested logic, via the product
// morphism and length-2 saturation. A "no" verdict carries the offending
// pair and its derivation.
Verdict decide_separation(const RecognizedLanguage& l1, const RecognizedLanguage& l2,
                          SeparationLogic logic, const SaturationLimits& limits = {});

// Membership in Sigma_i / Pi_i / Delta_i for i in {1,2,3}, by the equation
// on the syntactic order parametrized by level-(i-1) chains of length 2.
// The language must carry its syntactic order.
Verdict decide_sigma(const RecognizedLanguage& l, int i, const SaturationLimits& limits = {});
Verdict decide_pi(const RecognizedLanguage& l, int i, const SaturationLimits& limits = {});
Verdict decide_delta(const RecognizedLanguage& l, int i, const SaturationLimits& limits = {});

// All B-schemas for one subalphabet, from the saturated length-2 family.
std::vector<BSchema> compute_b_schemas(const ChainFamily& family2, AlphaSet b);

// Membership in BSigma2: the two-sided equation over length-3 chains plus
// the schema equation over pairs of B-schemas with the same B.
Verdict decide_bsigma2(const RecognizedLanguage& l, const SaturationLimits& limits = {});

// Aperiodicity: s^w = s^w * s for every s.
Verdict decide_fo(const RecognizedLanguage& l);

// All class verdicts (Sigma/Pi/Delta 1..3, BSigma2, FO). Aborts with
// InternalInconsistencyError if the report violates the hierarchy
// inclusions; that state signals an implementation bug.
ClassificationReport classify(const RecognizedLanguage& l, const SaturationLimits& limits = {});

// Checks the hierarchy inclusions of a report; throws on violation.
void check_report_consistency(const ClassificationReport& report);

// Re-evaluates a violation against the raw multiplication table; returns
// true when the recorded instance is indeed violated.
bool violation_reevaluates(const Violation& v, const RecognizedLanguage& l);

nlohmann::json verdict_json(const Verdict& v);
nlohmann::json report_json(const ClassificationReport& report);

}  // namespace altlab

#endif
