#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <json.hpp>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "wslab/cayley.hpp"
#include "wslab/errors.hpp"
#include "wslab/sierpinski.hpp"

using namespace wslab;

namespace {
const GroupParam K2 = GroupParam::finite(2);
const GroupParam K3 = GroupParam::finite(3);
const GroupParam KINF = GroupParam::infinite();

NormalForm el(const char* text, GroupParam p) { return parse_element(text, p); }

std::size_t tree_count(int r) {
  std::size_t p = 1;
  for (int i = 0; i < r; ++i) p *= 3;
  return 1 + 2 * (p - 1);
}

// Distances by plain BFS over words: the set of elements reachable in <= d
// letters, grown letter by letter.
std::map<std::string, int> word_bfs(GroupParam p, int radius) {
  std::map<std::string, int> dist{{"1", 0}};
  std::vector<NormalForm> frontier{NormalForm::identity(p)};
  const NormalForm gens[] = {gen_g(p), invert(gen_g(p)), gen_h(p), invert(gen_h(p))};
  for (int d = 1; d <= radius; ++d) {
    std::vector<NormalForm> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        auto y = multiply(s, x);
        if (dist.emplace(to_string(y), d).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

bool adjacent(const NormalForm& x, const NormalForm& y) {
  const auto p = x.param();
  for (const auto& s : {gen_g(p), invert(gen_g(p)), gen_h(p), invert(gen_h(p))}) {
    if (multiply(s, x) == y) return true;
  }
  return false;
}

// All simple cycles of length n through the edge (a, b) in the ball, as vertex sets.
std::set<std::set<std::size_t>> cycles_through(const Ball& ball, std::size_t a, std::size_t b, std::size_t n) {
  std::set<std::set<std::size_t>> out;
  std::vector<std::size_t> path{a, b};
  std::function<void()> rec = [&] {
    const std::size_t cur = path.back();
    for (const auto& inc : ball.incident(cur)) {
      if (path.size() == n) {
        if (inc.neighbor == a) out.insert(std::set<std::size_t>(path.begin(), path.end()));
        continue;
      }
      if (std::find(path.begin(), path.end(), inc.neighbor) != path.end()) continue;
      path.push_back(inc.neighbor);
      rec();
      path.pop_back();
    }
  };
  rec();
  return out;
}
}  // namespace

TEST_CASE("build_ball: small radii") {
  const Ball b0 = build_ball(K3, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0.key(0) == "1");
  for (auto p : {K2, K3, GroupParam::finite(7), KINF}) {
    const Ball b1 = build_ball(p, 1);
    REQUIRE(b1.size() == 5);
    std::set<std::string> keys;
    for (std::size_t i = 0; i < b1.size(); ++i) keys.insert(b1.key(i));
    const std::set<std::string> expected{"1", to_string(gen_g(p)), to_string(invert(gen_g(p))), to_string(gen_h(p)),
                                         to_string(invert(gen_h(p)))};
    CHECK(keys == expected);
  }
  for (int r = 0; r <= 7; ++r) CHECK(build_ball(KINF, r).size() == tree_count(r));
  CHECK_THROWS_AS(build_ball(K3, -1), InvalidParam);
  CHECK_THROWS_AS(build_ball(K3, 8, BallOptions{100}), ResourceLimit);
}

TEST_CASE("build_ball agrees with an independent BFS") {
  for (auto p : {K2, K3, GroupParam::finite(4), KINF}) {
    const Ball b = build_ball(p, 6);
    const auto expected = word_bfs(p, 6);
    REQUIRE(b.size() == expected.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      REQUIRE(expected.at(b.key(i)) == b.distance_of(i));
      if (i > 0) {
        const bool ordered = b.distance_of(i - 1) < b.distance_of(i) ||
                             (b.distance_of(i - 1) == b.distance_of(i) && b.key(i - 1) < b.key(i));
        REQUIRE(ordered);
      }
    }
  }
}

TEST_CASE("distance") {
  const Ball b = build_ball(K3, 4);
  CHECK(distance(b, NormalForm::identity(K3)) == 0);
  CHECK(distance(b, gen_s(K3)) == 2);
  CHECK(distance(b, el("g^2", K3)) == 2);
  CHECK_THROWS_AS(distance(b, el("g^5", K3)), NotInBall);
  // No word of length <= 1 spells s.
  const oracle::Dehn dehn(3);
  const Word s_word = parse_word("h g^-1", Alphabet::GH);
  oracle::for_each_word_up_to(1, false, [&](const Word& w) { CHECK_FALSE(dehn.equal(w, s_word)); });
}

TEST_CASE("polygon_of_edge") {
  const auto poly = polygon_of_edge(K3, edge_into(NormalForm::identity(K3), EdgeLabel::G));
  std::vector<std::string> keys;
  for (const auto& x : poly) keys.push_back(to_string(x));
  CHECK(keys == std::vector<std::string>{"1", "g^-1", "s^1", "g^-1*s^1", "s^2", "g^-1*s^2"});
  CHECK_THROWS_AS(polygon_of_edge(KINF, edge_from(NormalForm::identity(KINF), EdgeLabel::G)), NoPolygon);

  // k = 2, edge (1, g): the polygon equals the unique 4-cycle through it in B_4.
  const Ball b = build_ball(K2, 4);
  const auto sq = polygon_of_edge(K2, edge_from(NormalForm::identity(K2), EdgeLabel::G));
  REQUIRE(sq.size() == 4);
  const auto cycles = cycles_through(b, *b.find(NormalForm::identity(K2)), *b.find(gen_g(K2)), 4);
  REQUIRE(cycles.size() == 1);
  std::set<std::size_t> got;
  for (const auto& x : sq) got.insert(*b.find(x));
  CHECK(got == *cycles.begin());
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(adjacent(sq[i], sq[(i + 1) % sq.size()]));
}

TEST_CASE("minimal_loops") {
  const auto r3 = minimal_loops(build_ball(K3, 8));
  REQUIRE(r3.girth.has_value());
  CHECK(*r3.girth == 6);
  CHECK(r3.exponent == 3);
  CHECK(r3.relator_labels);
  CHECK(r3.translate_unique);
  CHECK(r3.representatives.size() == 1);

  const auto r2 = minimal_loops(build_ball(K2, 6));
  REQUIRE(r2.girth.has_value());
  CHECK(*r2.girth == 4);
  CHECK(r2.exponent == 2);
  CHECK(r2.relator_labels);
  CHECK(r2.translate_unique);

  const auto rinf = minimal_loops(build_ball(KINF, 8));
  CHECK_FALSE(rinf.girth.has_value());
  CHECK(rinf.cycle_count == 0);

  CHECK_THROWS_AS(minimal_loops(build_ball(K3, 5)), Inconclusive);
}

TEST_CASE("minimal_loops: cycle count matches a direct cycle search") {
  // Every shortest cycle lies on one relator polygon; count polygons with all
  // 2k vertices in the ball by brute force.
  for (auto p : {K2, K3}) {
    const Ball b = build_ball(p, 2 * static_cast<int>(p.k()));
    const auto report = minimal_loops(b);
    std::set<std::set<std::size_t>> all;
    for (const auto& e : b.edges()) {
      for (auto& c : cycles_through(b, e.tail, e.head, static_cast<std::size_t>(2 * p.k()))) all.insert(c);
    }
    CHECK(report.cycle_count == all.size());
  }
}

TEST_CASE("boundary_edges") {
  const Ball b = build_ball(K3, 6);
  for (std::int64_t ell = 1; ell <= 3; ++ell) {
    const WSubset e = canonical_subset(K3, ell);
    const auto edges = boundary_edges(b, [&](const NormalForm& x) { return membership(e, x); });
    REQUIRE(edges.size() == 2);
    const auto cuts = canonical_cuts(K3, ell);
    CHECK(std::count(edges.begin(), edges.end(), cuts.gcut) == 1);
    CHECK(std::count(edges.begin(), edges.end(), cuts.hcut) == 1);
    CHECK(to_string(cuts.gcut.tail) == "g^-1");
    CHECK(cuts.gcut.head.is_identity());
    CHECK(cuts.hcut.head == NormalForm::s_power(K3, ell));
  }
  CHECK(boundary_edges(b, [](const NormalForm&) { return true; }).empty());
  const auto star = boundary_edges(b, [](const NormalForm& x) { return x.is_identity(); });
  CHECK(star.size() == 4);
  for (const auto& e : star) CHECK((e.tail.is_identity() || e.head.is_identity()));
}

TEST_CASE("export_dot") {
  const std::string dot = export_dot(build_ball(K3, 2));
  CHECK(dot.rfind("digraph cayley {", 0) == 0);
  std::size_t nodes = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("[dist=") != std::string::npos) ++nodes;
  }
  CHECK(nodes == 17);
  CHECK(nodes == word_bfs(K3, 2).size());
  CHECK(export_dot(build_ball(K3, 2)) == dot);

  const std::string single = export_dot(build_ball(K3, 0));
  CHECK(single.find("\"1\"") != std::string::npos);
  CHECK(single.find("->") == std::string::npos);

  const WSubset e1 = canonical_subset(K3, 1);
  const Ball b4 = build_ball(K3, 4);
  const std::string lit = export_dot(b4, [&](const NormalForm& x) { return membership(e1, x); });
  std::size_t styled = 0;
  std::size_t members = 0;
  for (std::size_t i = 0; i < b4.size(); ++i) members += membership(e1, b4.vertex(i)) ? 1 : 0;
  std::istringstream in4(lit);
  for (std::string line; std::getline(in4, line);) {
    if (line.find("fillcolor") != std::string::npos) ++styled;
  }
  CHECK(styled == members);
  CHECK(members > 0);
  CHECK(members < b4.size());
}

TEST_CASE("export_json") {
  const Ball b = build_ball(K2, 3);
  const auto j = nlohmann::json::parse(export_json(b));
  CHECK(j["param"] == 2);
  CHECK(j["radius"] == 3);
  CHECK(j["vertices"].size() == b.size());
  CHECK(j["edges"].size() == b.edges().size());
  CHECK(j["vertices"][0]["id"] == "1");
  const auto ji = nlohmann::json::parse(export_json(build_ball(KINF, 1)));
  CHECK(ji["param"] == "inf");
}

TEST_CASE("edges and polygon sites") {
  oracle::Gen gen(31);
  for (auto p : {K2, K3, GroupParam::finite(5), KINF}) {
    for (int i = 0; i < 200; ++i) {
      const auto x = evaluate(gen.word(gen.below(10)), p);
      for (auto l : {EdgeLabel::G, EdgeLabel::H}) {
        const auto e = edge_from(x, l);
        REQUIRE(is_edge(e));
        REQUIRE(edge_into(e.head, l) == e);
        const auto u = evaluate(gen.word(gen.below(6)), p);
        const auto t = right_translate(e, u);
        REQUIRE(is_edge(t));
        const auto site = polygon_site(e);
        REQUIRE((site.edge_index == site.tail_pos || site.edge_index == site.head_pos));
        if (p.is_finite()) {
          const auto poly = polygon_of_edge(p, e);
          REQUIRE(std::find(poly.begin(), poly.end(), e.tail) != poly.end());
          REQUIRE(std::find(poly.begin(), poly.end(), e.head) != poly.end());
        }
      }
    }
  }
}

TEST_CASE("property: monotonicity, regularity, polygon incidence, tree") {
  for (auto p : {K2, K3, GroupParam::finite(4), KINF}) {
    const Ball small = build_ball(p, 5);
    const Ball big = build_ball(p, 6);
    for (std::size_t i = 0; i < small.size(); ++i) {
      const auto j = big.find(small.vertex(i));
      REQUIRE(j.has_value());
      REQUIRE(big.distance_of(*j) == small.distance_of(i));
    }
    for (std::size_t i = 0; i < big.size(); ++i) {
      REQUIRE(big.incident(i).size() <= 4);
      if (big.is_interior(i)) {
        REQUIRE(big.incident(i).size() == 4);
        std::set<std::uint32_t> nbrs;
        for (const auto& inc : big.incident(i)) nbrs.insert(inc.neighbor);
        REQUIRE(nbrs.size() == 4);
        REQUIRE(nbrs.count(static_cast<std::uint32_t>(i)) == 0);
      }
      REQUIRE(gh_length_bound(big.vertex(i)) >= big.distance_of(i));
    }
    if (!p.is_finite()) {
      REQUIRE(big.edges().size() + 1 == big.size());
      continue;
    }
    const auto k = static_cast<std::size_t>(p.k());
    for (std::size_t i = 0; i < big.size(); ++i) {
      if (!big.is_interior(i)) continue;
      std::set<std::set<std::string>> polys;
      for (const auto& inc : big.incident(i)) {
        const auto poly = polygon_of_edge(p, big.labeled_edge(big.edges()[inc.edge]));
        REQUIRE(poly.size() == 2 * k);
        std::set<std::string> keys;
        for (const auto& v : poly) keys.insert(to_string(v));
        REQUIRE(keys.size() == 2 * k);
        polys.insert(keys);
      }
      REQUIRE(polys.size() == 2);
    }
    // Every interior edge on exactly one 2k-cycle: the brute-force count of
    // 2k-cycles through an interior edge whose polygon fits in the ball is 1.
    const Ball b = build_ball(p, static_cast<int>(2 * k));
    std::size_t checked = 0;
    for (const auto& e : b.edges()) {
      if (b.distance_of(e.tail) > 1 || b.distance_of(e.head) > 1) continue;
      REQUIRE(cycles_through(b, e.tail, e.head, 2 * k).size() == 1);
      ++checked;
    }
    CHECK(checked > 0);
  }
}
