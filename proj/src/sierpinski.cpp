#include "wslab/sierpinski.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "wslab/errors.hpp"

namespace wslab {

CutPair canonical_cuts(GroupParam p, std::int64_t ell) {
  const NormalForm one = NormalForm::identity(p);
  const NormalForm g_inv = invert(gen_g(p));
  return {edge_into(one, EdgeLabel::G), edge_from(multiply(g_inv, NormalForm::s_power(p, ell - 1)), EdgeLabel::H)};
}

WSubset::WSubset(GroupParam p, std::variant<CutRep, RuleRep> rep, NormalForm translate)
    : param_(p), rep_(std::move(rep)), translate_(std::move(translate)) {
  if (translate_.param() != p) throw ParamMismatch("translate has the wrong parameter");
  if (const auto* cut = std::get_if<CutRep>(&rep_)) {
    if (cut->bases.empty()) throw InvalidParam("a cut subset needs at least one base");
    if (cut->cuts.gcut.label != EdgeLabel::G || cut->cuts.hcut.label != EdgeLabel::H || !is_edge(cut->cuts.gcut) ||
        !is_edge(cut->cuts.hcut) || cut->cuts.gcut.tail.param() != p || cut->cuts.hcut.tail.param() != p) {
      throw InvalidParam("cut pair must be one g-edge and one h-edge of the Cayley graph");
    }
    for (const auto& b : cut->bases) {
      if (b.param() != p) throw ParamMismatch("base has the wrong parameter");
    }
  }
}

std::optional<std::int64_t> WSubset::ell() const {
  const auto* cut = std::get_if<CutRep>(&rep_);
  if (!cut) return std::nullopt;
  const auto& head = cut->cuts.hcut.head;
  std::int64_t m = 0;
  if (head.is_identity() && param_.is_finite()) {
    m = param_.k();
  } else if (head.size() == 1 && head.syllables()[0].factor == Factor::S && head.syllables()[0].exponent >= 1) {
    m = head.syllables()[0].exponent;
  } else {
    return std::nullopt;
  }
  if (cut->cuts == canonical_cuts(param_, m)) return m;
  return std::nullopt;
}

std::optional<CutPair> WSubset::effective_cuts() const {
  const auto* cut = std::get_if<CutRep>(&rep_);
  if (!cut) return std::nullopt;
  return CutPair{wslab::right_translate(cut->cuts.gcut, translate_), wslab::right_translate(cut->cuts.hcut, translate_)};
}

std::vector<NormalForm> WSubset::effective_bases() const {
  std::vector<NormalForm> out;
  if (const auto* cut = std::get_if<CutRep>(&rep_)) {
    for (const auto& b : cut->bases) out.push_back(multiply(b, translate_));
  }
  return out;
}

WSubset canonical_subset(GroupParam p, std::int64_t ell) {
  if (!p.is_finite()) throw InvalidParam("canonical subsets E_ell exist for finite k only");
  if (ell < 1 || ell > p.k()) {
    throw BadIndex("ell must lie in 1.." + std::to_string(p.k()) + ", got " + std::to_string(ell));
  }
  return WSubset(p, CutRep{canonical_cuts(p, ell), {NormalForm::identity(p)}}, NormalForm::identity(p));
}

// ---------------------------------------------------------------------------
// Membership by polygon walk

namespace {

struct CutSite {
  NormalForm polygon;
  std::int64_t edge_index;
};

// The cuts separate positions `from` and `to` of one polygon iff both arcs
// between them contain a cut (only the direct segment on an infinite line).
bool arc_connected(const GroupParam& p, std::int64_t from, std::int64_t to, const std::vector<std::int64_t>& cuts) {
  if (from == to || cuts.empty()) return true;
  if (!p.is_finite()) {
    const auto lo = std::min(from, to);
    const auto hi = std::max(from, to);
    return std::none_of(cuts.begin(), cuts.end(), [&](std::int64_t c) { return lo <= c && c < hi; });
  }
  const std::int64_t period = 2 * p.k();
  auto arc_free = [&](std::int64_t a, std::int64_t b) {
    const std::int64_t len = ((b - a) % period + period) % period;
    return std::none_of(cuts.begin(), cuts.end(), [&](std::int64_t c) { return ((c - a) % period + period) % period < len; });
  };
  return arc_free(from, to) || arc_free(to, from);
}

// Whether 1 and z stay connected once the given edges are removed. The path
// spelled by the reduced {g, h} word of z visits a chain of relator polygons;
// consecutive steps in the same polygon are merged into one entry/exit pair.
bool connected_from_identity(const NormalForm& z, const std::vector<CutSite>& cuts) {
  const GroupParam& p = z.param();
  const Word w = to_word(z, Alphabet::GH);
  NormalForm at = NormalForm::identity(p);

  std::vector<NormalForm> visited;
  std::optional<NormalForm> current;
  std::int64_t entry = 0;
  std::int64_t exit = 0;

  auto close_polygon = [&]() {
    if (!current) return true;
    std::vector<std::int64_t> here;
    for (const auto& c : cuts) {
      if (c.polygon == *current) here.push_back(c.edge_index);
    }
    return arc_connected(p, entry, exit, here);
  };

  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    const EdgeLabel label = it->symbol == Symbol::G ? EdgeLabel::G : EdgeLabel::H;
    const bool forward = it->sign > 0;
    const LabeledEdge e = forward ? edge_from(at, label) : edge_into(at, label);
    PolygonSite site = polygon_site(e);
    const auto from = forward ? site.tail_pos : site.head_pos;
    const auto to = forward ? site.head_pos : site.tail_pos;
    if (!current || site.polygon != *current) {
      if (!close_polygon()) return false;
      if (std::find(visited.begin(), visited.end(), site.polygon) != visited.end()) {
        throw std::logic_error("polygon walk revisited a polygon for " + to_string(z));
      }
      visited.push_back(site.polygon);
      current = std::move(site.polygon);
      entry = from;
    }
    exit = to;
    at = forward ? e.head : e.tail;
  }
  return close_polygon();
}

bool rule_member(const RuleRep& rule, const NormalForm& y) {
  if (y.is_identity()) return false;
  const auto& last = y.syllables().back();
  return last.factor == Factor::G && (rule.literal || last.exponent > 0);
}

bool cut_member(const CutRep& cut, const NormalForm& y) {
  for (const auto& base : cut.bases) {
    const NormalForm back = invert(base);
    std::vector<CutSite> sites;
    for (const auto* edge : {&cut.cuts.gcut, &cut.cuts.hcut}) {
      auto site = polygon_site(right_translate(*edge, back));
      sites.push_back({std::move(site.polygon), site.edge_index});
    }
    if (connected_from_identity(multiply(y, back), sites)) return true;
  }
  return false;
}

}  // namespace

bool membership(const WSubset& e, const NormalForm& x) {
  if (x.param() != e.param()) throw ParamMismatch("element and subset have different parameters");
  const NormalForm y = multiply(x, invert(e.translate()));
  if (const auto* rule = std::get_if<RuleRep>(&e.rep())) return rule_member(*rule, y);
  return cut_member(std::get<CutRep>(e.rep()), y);
}

RemovablePair removable_points(const WSubset& e) {
  if (const auto* rule = std::get_if<RuleRep>(&e.rep())) {
    if (rule->literal) throw NotCanonicalizable("the literal rule subset has no removable point for g");
    const GroupParam& p = e.param();
    return {multiply(gen_g(p), e.translate()), multiply(gen_h(p), e.translate())};
  }
  const CutPair cuts = *e.effective_cuts();
  for (const auto* edge : {&cuts.gcut, &cuts.hcut}) {
    if (!membership(e, edge->head) || membership(e, edge->tail)) {
      throw NotCanonicalizable("cut edge " + to_string(*edge) + " does not point into the subset");
    }
  }
  return {cuts.gcut.head, cuts.hcut.head};
}

bool is_ws(const WSubset& e) {
  const auto rp = removable_points(e);
  return rp.a != rp.b;
}

VerificationReport verify_translation_identity(const WSubset& e, EdgeLabel gamma, const NormalForm& claimed,
                                               const Ball& ball) {
  const NormalForm back = invert(generator(e.param(), gamma));
  VerificationReport report;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const NormalForm& x = ball.vertex(i);
    const bool lhs = membership(e, multiply(back, x));
    const bool rhs = membership(e, x) && x != claimed;
    if (lhs != rhs) report.witnesses.push_back(x);
  }
  report.pass = report.witnesses.empty();
  return report;
}

VerificationReport verify_translation_identity(const WSubset& e, EdgeLabel gamma, const NormalForm& claimed, int radius,
                                               const BallOptions& options) {
  if (radius < 1) throw InvalidParam("verification radius must be at least 1");
  return verify_translation_identity(e, gamma, claimed, build_ball(e.param(), radius, options));
}

std::vector<WSubset> enumerate_cut_candidates(GroupParam p) {
  if (!p.is_finite()) throw InvalidParam("cut candidates are enumerated for finite k only");
  const NormalForm one = NormalForm::identity(p);
  const LabeledEdge gcut = edge_into(one, EdgeLabel::G);
  const auto polygon = polygon_of_edge(p, gcut);
  std::vector<WSubset> out;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& x = polygon[i];
    const auto& y = polygon[(i + 1) % polygon.size()];
    std::optional<LabeledEdge> hedge;
    if (const auto fwd = edge_from(x, EdgeLabel::H); fwd.head == y) hedge = fwd;
    if (const auto bwd = edge_from(y, EdgeLabel::H); bwd.head == x) hedge = bwd;
    if (hedge) out.emplace_back(p, CutRep{{gcut, *hedge}, {one}}, one);
  }
  return out;
}

WSubset right_translate(const WSubset& e, const NormalForm& u) {
  return WSubset(e.param(), e.rep(), multiply(e.translate(), u));
}

Normalized normalize(const WSubset& e) {
  RemovablePair rp{NormalForm(e.param()), NormalForm(e.param())};
  try {
    rp = removable_points(e);
  } catch (const NotCanonicalizable& err) {
    throw NotWS(err.what());
  }
  if (rp.a == rp.b) throw NotWS("removable points coincide at " + to_string(rp.a));
  const NormalForm d = multiply(rp.b, invert(rp.a));
  if (d.size() != 1 || d.syllables()[0].factor != Factor::S || d.syllables()[0].exponent < 1) {
    throw NotWS("b a^-1 = " + to_string(d) + " is not a positive power of s");
  }
  return {d.syllables()[0].exponent, rp.a};
}

WSubset example1_subset(GroupParam p, bool literal) {
  return WSubset(p, RuleRep{literal}, NormalForm::identity(p));
}

WSubset example1_cut_subset(GroupParam p) {
  return WSubset(p, CutRep{canonical_cuts(p, 1), {NormalForm::identity(p), gen_s(p)}}, gen_g(p));
}

// ---------------------------------------------------------------------------
// BFS oracle

ComponentOracle::ComponentOracle(const WSubset& e, int radius, const BallOptions& options)
    : subset_(e), ball_(build_ball(e.param(), radius, options)) {
  const auto* cut = std::get_if<CutRep>(&e.rep());
  if (!cut) throw InvalidParam("the component oracle needs a cut subset");
  auto is_cut = [&](const Ball::Edge& edge) {
    const LabeledEdge le = ball_.labeled_edge(edge);
    return le == cut->cuts.gcut || le == cut->cuts.hcut;
  };

  std::vector<std::uint32_t> parent(ball_.size());
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& edge : ball_.edges()) {
    if (is_cut(edge)) continue;
    const auto a = find(edge.tail);
    const auto b = find(edge.head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  component_.resize(ball_.size());
  for (std::uint32_t v = 0; v < ball_.size(); ++v) component_[v] = find(v);
  component_has_base_.assign(ball_.size(), 0);
  for (const auto& base : cut->bases) {
    if (const auto i = ball_.find(base)) component_has_base_[component_[*i]] = 1;
  }
}

std::optional<bool> ComponentOracle::member(const NormalForm& x) const {
  const auto i = ball_.find(multiply(x, invert(subset_.translate())));
  if (!i) return std::nullopt;
  return component_has_base_[component_[*i]] != 0;
}

int certified_radius(const WSubset& e, const NormalForm& x) {
  const auto bound = gh_length_bound(multiply(x, invert(e.translate())));
  const auto margin = e.param().is_finite() ? 2 * e.param().k() + 1 : 0;
  return static_cast<int>(bound + margin);
}

bool membership_bfs(const WSubset& e, const NormalForm& x, std::optional<int> radius, const BallOptions& options) {
  if (!e.is_cut()) return membership(e, x);
  const ComponentOracle oracle(e, radius.value_or(certified_radius(e, x)), options);
  const auto m = oracle.member(x);
  if (!m) throw NotInBall(to_string(x) + " lies outside the BFS radius");
  return *m;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::ordered_json param_json(const GroupParam& p) {
  if (p.is_finite()) return p.k();
  return "inf";
}

}  // namespace

std::string descriptor_json(const WSubset& e) {
  nlohmann::ordered_json j;
  j["param"] = param_json(e.param());
  j["kind"] = e.is_cut() ? "cut" : "rule";
  if (const auto ell = e.ell()) {
    j["ell"] = *ell;
  } else {
    j["ell"] = nullptr;
  }
  j["translate"] = to_string(e.translate());
  if (const auto* cut = std::get_if<CutRep>(&e.rep())) {
    auto& bases = j["bases"] = nlohmann::ordered_json::array();
    for (const auto& b : cut->bases) bases.push_back(to_string(b));
  } else {
    j["literal"] = std::get<RuleRep>(e.rep()).literal;
  }
  return j.dump();
}

WSubset parse_descriptor(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& err) {
    throw SyntaxError(std::string("bad subset descriptor: ") + err.what());
  }
  try {
    const auto& param = j.at("param");
    const GroupParam p = param.is_string() ? GroupParam::parse(param.get<std::string>())
                                           : GroupParam::finite(param.get<std::int64_t>());
    const NormalForm translate = parse_element(j.value("translate", std::string("1")), p);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "rule") return right_translate(example1_subset(p, j.value("literal", false)), translate);
    if (kind != "cut") throw SyntaxError("descriptor kind must be 'cut' or 'rule'");
    const auto ell = j.at("ell").get<std::int64_t>();
    if (!j.contains("bases")) return right_translate(canonical_subset(p, ell), translate);
    std::vector<NormalForm> bases;
    for (const auto& b : j.at("bases")) bases.push_back(parse_element(b.get<std::string>(), p));
    if (p.is_finite() && (ell < 1 || ell > p.k())) throw BadIndex("ell out of range");
    return WSubset(p, CutRep{canonical_cuts(p, ell), std::move(bases)}, translate);
  } catch (const nlohmann::json::exception& err) {
    throw SyntaxError(std::string("bad subset descriptor: ") + err.what());
  }
}

std::string report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["status"] = r.pass ? "pass" : "fail";
  auto& w = j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& x : r.witnesses) w.push_back(to_string(x));
  return j.dump();
}

}  // namespace wslab
