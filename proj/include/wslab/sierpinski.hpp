#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wslab/cayley.hpp"
#include "wslab/engine.hpp"

namespace wslab {

/// One g-labeled and one h-labeled edge whose removal separates the subset
/// from its complement.
struct CutPair {
  LabeledEdge gcut;
  LabeledEdge hcut;
  friend bool operator==(const CutPair&, const CutPair&) = default;
};

/// The cuts (g^-1, 1) and (g^-1 s^(ell-1), s^ell).
CutPair canonical_cuts(GroupParam p, std::int64_t ell);

/// Union of the components (after removing the cuts) that contain a base.
struct CutRep {
  CutPair cuts;
  std::vector<NormalForm> bases;
};

/// Elements whose last syllable is a positive g-power. With `literal` set,
/// any nonzero final g-power qualifies; that variant is not a wS-subset.
struct RuleRep {
  bool literal = false;
};

/// A subset of G_k given by a decidable membership rule, then right
/// translated: x is a member iff x * translate^-1 satisfies the rule.
class WSubset {
 public:
  WSubset(GroupParam p, std::variant<CutRep, RuleRep> rep, NormalForm translate);

  const GroupParam& param() const { return param_; }
  const std::variant<CutRep, RuleRep>& rep() const { return rep_; }
  const NormalForm& translate() const { return translate_; }
  bool is_cut() const { return std::holds_alternative<CutRep>(rep_); }

  /// The ell of canonical cuts, if the cut pair has that form.
  std::optional<std::int64_t> ell() const;

  /// Cut edges and bases after applying the translation.
  std::optional<CutPair> effective_cuts() const;
  std::vector<NormalForm> effective_bases() const;

 private:
  GroupParam param_;
  std::variant<CutRep, RuleRep> rep_;
  NormalForm translate_;
};

struct RemovablePair {
  NormalForm a;  // g E = E \ {a}
  NormalForm b;  // h E = E \ {b}
};

/// E_ell for 1 <= ell <= k. Throws BadIndex out of range and InvalidParam
/// when k is infinite.
WSubset canonical_subset(GroupParam p, std::int64_t ell);

/// Exact membership. Cut subsets are decided by walking the chain of relator
/// polygons from each base to x and checking whether the cuts separate the
/// entry and exit points of any polygon on the way.
bool membership(const WSubset& e, const NormalForm& x);

/// Throws NotCanonicalizable when the cut edges do not point into the subset
/// or the subset has no removable points.
RemovablePair removable_points(const WSubset& e);

bool is_ws(const WSubset& e);

/// Points x of a ball where the identity gamma E = E \ {claimed} fails.
struct VerificationReport {
  bool pass = true;
  std::vector<NormalForm> witnesses;  // ball order
};

/// Checks (gamma^-1 x in E) <=> (x in E and x != claimed) for every x in B_R.
VerificationReport verify_translation_identity(const WSubset& e, EdgeLabel gamma, const NormalForm& claimed, int radius,
                                               const BallOptions& options = {});

/// Same check over an already built ball.
VerificationReport verify_translation_identity(const WSubset& e, EdgeLabel gamma, const NormalForm& claimed,
                                               const Ball& ball);

/// Pairs the cut (g^-1, 1) with each h-edge of its relator polygon, in
/// polygon order (ell = 1..k).
std::vector<WSubset> enumerate_cut_candidates(GroupParam p);

WSubset right_translate(const WSubset& e, const NormalForm& u);

struct Normalized {
  std::int64_t ell = 0;
  NormalForm translate;
};

/// The unique (ell, u) with E = E_ell * u. Throws NotWS.
Normalized normalize(const WSubset& e);

/// Elements whose reduced {g, s} spelling ends with a positive g-power.
WSubset example1_subset(GroupParam p, bool literal = false);

/// The same subset as a cut subset: cuts (1, g) and (1, h), bases {g, h}.
WSubset example1_cut_subset(GroupParam p);

/// BFS connectivity oracle: builds B_R around 1, deletes the cut edges
/// (in the canonical frame) and labels components. Used to check the
/// polygon-walk membership.
class ComponentOracle {
 public:
  ComponentOracle(const WSubset& e, int radius, const BallOptions& options = {});

  int radius() const { return ball_.radius(); }
  /// nullopt when x * translate^-1 lies outside the ball.
  std::optional<bool> member(const NormalForm& x) const;

 private:
  WSubset subset_;
  Ball ball_;
  std::vector<std::uint32_t> component_;
  std::vector<char> component_has_base_;
};

/// gh_length_bound(x * translate^-1) + 2k + 1 (no margin when k is infinite).
int certified_radius(const WSubset& e, const NormalForm& x);

/// Membership decided by BFS inside the ball of the given radius (default:
/// certified_radius). Cost grows like 3^radius. Throws ResourceLimit.
bool membership_bfs(const WSubset& e, const NormalForm& x, std::optional<int> radius = std::nullopt,
                    const BallOptions& options = {});

/// {"param", "kind", "ell", "translate"} plus "bases" (cut) or "literal" (rule).
std::string descriptor_json(const WSubset& e);
WSubset parse_descriptor(const std::string& json_text);

/// {"status": "pass"|"fail", "witnesses": [...]}
std::string report_json(const VerificationReport& r);

}  // namespace wslab
