#include "wslab/cayley.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "wslab/errors.hpp"

namespace wslab {

char label_char(EdgeLabel l) { return l == EdgeLabel::G ? 'g' : 'h'; }

NormalForm generator(GroupParam p, EdgeLabel l) { return l == EdgeLabel::G ? gen_g(p) : gen_h(p); }

LabeledEdge edge_from(const NormalForm& tail, EdgeLabel l) {
  return {tail, multiply(generator(tail.param(), l), tail), l};
}

LabeledEdge edge_into(const NormalForm& head, EdgeLabel l) {
  return {multiply(invert(generator(head.param(), l)), head), head, l};
}

bool is_edge(const LabeledEdge& e) {
  return e.tail.param() == e.head.param() && multiply(generator(e.tail.param(), e.label), e.tail) == e.head;
}

LabeledEdge right_translate(const LabeledEdge& e, const NormalForm& u) {
  return {multiply(e.tail, u), multiply(e.head, u), e.label};
}

std::string to_string(const LabeledEdge& e) {
  return "(" + to_string(e.tail) + " -" + label_char(e.label) + "-> " + to_string(e.head) + ")";
}

namespace {

// u = s^a r with r free of a leading s-syllable.
std::pair<std::int64_t, NormalForm> split_leading_s(const NormalForm& u) {
  const auto syl = u.syllables();
  if (syl.empty() || syl.front().factor != Factor::S) return {0, u};
  return {syl.front().exponent, NormalForm::from_syllables(u.param(), syl.subspan(1))};
}

std::int64_t wrap(const GroupParam& p, std::int64_t pos) {
  if (!p.is_finite()) return pos;
  const std::int64_t period = 2 * p.k();
  const std::int64_t r = pos % period;
  return r < 0 ? r + period : r;
}

}  // namespace

PolygonSite polygon_site(const LabeledEdge& e) {
  const GroupParam& p = e.tail.param();
  if (e.label == EdgeLabel::G) {
    // (g^-1 s^a r, s^a r)
    auto [a, rep] = split_leading_s(e.head);
    return {std::move(rep), wrap(p, 2 * a + 1), wrap(p, 2 * a), wrap(p, 2 * a)};
  }
  // (g^-1 s^a r, s^(a+1) r) with g * tail = s^a r
  auto [a, rep] = split_leading_s(multiply(gen_g(p), e.tail));
  return {std::move(rep), wrap(p, 2 * a + 1), wrap(p, 2 * a + 2), wrap(p, 2 * a + 1)};
}

// ---------------------------------------------------------------------------
// Balls

std::optional<std::size_t> Ball::find(const NormalForm& x) const {
  const auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Ball build_ball(GroupParam p, int radius, const BallOptions& options) {
  if (radius < 0) throw InvalidParam("radius must be non-negative");
  Ball b(p, radius);
  const NormalForm steps[] = {gen_g(p), invert(gen_g(p)), gen_h(p), invert(gen_h(p))};

  auto add_layer = [&](std::vector<NormalForm> layer, int dist) {
    std::vector<std::pair<std::string, NormalForm>> keyed;
    keyed.reserve(layer.size());
    for (auto& x : layer) keyed.emplace_back(to_string(x), std::move(x));
    std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (auto& [key, x] : keyed) {
      if (b.vertices_.size() >= options.vertex_cap) {
        throw ResourceLimit("ball of radius " + std::to_string(radius) + " exceeds the vertex cap of " +
                            std::to_string(options.vertex_cap));
      }
      b.index_.emplace(x, static_cast<std::uint32_t>(b.vertices_.size()));
      b.vertices_.push_back(std::move(x));
      b.keys_.push_back(std::move(key));
      b.dist_.push_back(dist);
    }
  };

  add_layer({NormalForm::identity(p)}, 0);
  std::size_t layer_begin = 0;
  for (int d = 1; d <= radius; ++d) {
    const std::size_t layer_end = b.vertices_.size();
    std::unordered_set<NormalForm, NormalFormHash> fresh;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& step : steps) {
        NormalForm y = multiply(step, b.vertices_[i]);
        if (!b.index_.contains(y)) fresh.insert(std::move(y));
      }
    }
    add_layer({fresh.begin(), fresh.end()}, d);
    layer_begin = layer_end;
  }

  b.adjacency_.resize(b.vertices_.size());
  const NormalForm labels[] = {gen_g(p), gen_h(p)};
  for (std::size_t i = 0; i < b.vertices_.size(); ++i) {
    for (int l = 0; l < 2; ++l) {
      const auto it = b.index_.find(multiply(labels[l], b.vertices_[i]));
      if (it == b.index_.end()) continue;
      const auto edge_id = static_cast<std::uint32_t>(b.edges_.size());
      b.edges_.push_back({static_cast<std::uint32_t>(i), it->second, l == 0 ? EdgeLabel::G : EdgeLabel::H});
      b.adjacency_[i].push_back({it->second, edge_id});
      b.adjacency_[it->second].push_back({static_cast<std::uint32_t>(i), edge_id});
    }
  }
  return b;
}

int distance(const Ball& b, const NormalForm& x) {
  const auto i = b.find(x);
  if (!i) throw NotInBall(to_string(x) + " is not in the ball of radius " + std::to_string(b.radius()));
  return b.distance_of(*i);
}

std::vector<NormalForm> polygon_of_edge(GroupParam p, const LabeledEdge& e) {
  if (!p.is_finite()) throw NoPolygon("the Cayley graph of the free group is a tree");
  if (!is_edge(e) || e.tail.param() != p) throw InvalidParam("not an edge of the Cayley graph: " + to_string(e));
  const NormalForm u = e.label == EdgeLabel::G ? e.head : multiply(gen_g(p), e.tail);
  const NormalForm g_inv = invert(gen_g(p));
  std::vector<NormalForm> cycle;
  cycle.reserve(static_cast<std::size_t>(2 * p.k()));
  NormalForm v = u;
  for (std::int64_t j = 0; j < p.k(); ++j) {
    cycle.push_back(v);
    cycle.push_back(multiply(g_inv, v));
    v = multiply(gen_s(p), v);
  }
  return cycle;
}

// ---------------------------------------------------------------------------
// Shortest cycles

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

std::optional<std::int64_t> ball_girth(const Ball& b) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::uint32_t> dist(b.size(), kUnseen);
  std::vector<std::uint32_t> parent_edge(b.size(), kUnseen);
  std::vector<std::uint32_t> queue;
  for (std::size_t root = 0; root < b.size(); ++root) {
    queue.assign(1, static_cast<std::uint32_t>(root));
    dist[root] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto x = queue[qi];
      if (2 * static_cast<std::int64_t>(dist[x]) >= best) break;
      for (const auto& inc : b.incident(x)) {
        if (inc.edge == parent_edge[x]) continue;
        if (dist[inc.neighbor] == kUnseen) {
          dist[inc.neighbor] = dist[x] + 1;
          parent_edge[inc.neighbor] = inc.edge;
          queue.push_back(inc.neighbor);
        } else {
          best = std::min<std::int64_t>(best, dist[x] + dist[inc.neighbor] + 1);
        }
      }
    }
    for (auto v : queue) {
      dist[v] = kUnseen;
      parent_edge[v] = kUnseen;
    }
  }
  if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return best;
}

// Simple cycles of exactly `len` edges, each reported once: the start is the
// smallest vertex index and the second vertex is smaller than the last.
std::vector<std::vector<std::uint32_t>> cycles_of_length(const Ball& b, std::size_t len) {
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> path;
  std::vector<std::uint32_t> edges;
  std::vector<bool> on_path(b.size(), false);

  auto dfs = [&](auto&& self, std::uint32_t start) -> void {
    const auto x = path.back();
    for (const auto& inc : b.incident(x)) {
      if (path.size() == len) {
        if (inc.neighbor == start && inc.edge != edges.back() && path[1] < path.back()) {
          std::vector<std::uint32_t> cycle_edges = edges;
          cycle_edges.push_back(inc.edge);
          found.push_back(std::move(cycle_edges));
        }
        continue;
      }
      if (inc.neighbor <= start || on_path[inc.neighbor]) continue;
      on_path[inc.neighbor] = true;
      path.push_back(inc.neighbor);
      edges.push_back(inc.edge);
      self(self, start);
      path.pop_back();
      edges.pop_back();
      on_path[inc.neighbor] = false;
    }
  };

  for (std::uint32_t start = 0; start < b.size(); ++start) {
    path.assign(1, start);
    edges.clear();
    on_path[start] = true;
    dfs(dfs, start);
    on_path[start] = false;
  }
  return found;
}

struct CycleWalk {
  std::vector<std::uint32_t> vertices;
  std::vector<LabeledEdge> edges;
  Word word{Alphabet::GH};
};

// Walks the cycle from its start vertex; the word is the product that maps
// the start vertex back to itself, so it is trivial in the group.
CycleWalk walk_cycle(const Ball& b, const std::vector<std::uint32_t>& edge_ids, std::uint32_t start) {
  CycleWalk walk;
  std::vector<Letter> steps;
  std::uint32_t at = start;
  for (auto id : edge_ids) {
    const auto& e = b.edges()[id];
    const bool forward = e.tail == at;
    walk.vertices.push_back(at);
    walk.edges.push_back(b.labeled_edge(e));
    steps.push_back({e.label == EdgeLabel::G ? Symbol::G : Symbol::H, forward ? 1 : -1});
    at = forward ? e.head : e.tail;
  }
  std::reverse(steps.begin(), steps.end());
  walk.word = Word(Alphabet::GH, std::move(steps));
  return walk;
}

std::set<std::string> shape_from(const std::vector<NormalForm>& cycle, const NormalForm& anchor) {
  const NormalForm back = invert(anchor);
  std::set<std::string> shape;
  for (const auto& v : cycle) shape.insert(to_string(multiply(v, back)));
  return shape;
}

bool is_right_translate(const std::vector<NormalForm>& cycle, const std::set<std::string>& rep_shape) {
  return std::any_of(cycle.begin(), cycle.end(),
                     [&](const NormalForm& anchor) { return shape_from(cycle, anchor) == rep_shape; });
}

}  // namespace

CriticalLoopReport minimal_loops(const Ball& b) {
  const GroupParam& p = b.param();
  if (p.is_finite() && b.radius() < 2 * p.k()) {
    throw Inconclusive("minimal loop report needs radius >= 2k = " + std::to_string(2 * p.k()));
  }
  CriticalLoopReport report;
  report.girth = ball_girth(b);
  if (!report.girth) {
    report.translate_unique = true;
    return report;
  }
  report.exponent = *report.girth / 2;
  const Word relator =
      power(Word(Alphabet::GH, {{Symbol::H, -1}, {Symbol::G, 1}}), static_cast<std::size_t>(report.exponent));

  const auto cycles = cycles_of_length(b, static_cast<std::size_t>(*report.girth));
  report.cycle_count = cycles.size();

  std::vector<std::set<std::string>> class_shapes;
  for (const auto& edge_ids : cycles) {
    const auto& first = b.edges()[edge_ids.front()];
    const auto start = std::min(first.tail, first.head);
    const CycleWalk walk = walk_cycle(b, edge_ids, start);
    if (*report.girth % 2 != 0 || !is_rotation_or_inversion_of(walk.word, relator)) report.relator_labels = false;

    std::vector<NormalForm> verts;
    for (auto v : walk.vertices) verts.push_back(b.vertex(v));
    const bool known = std::any_of(class_shapes.begin(), class_shapes.end(),
                                   [&](const auto& shape) { return is_right_translate(verts, shape); });
    if (!known) {
      class_shapes.push_back(shape_from(verts, verts.front()));
      report.representatives.push_back(walk.edges);
    }
  }
  report.translate_unique = class_shapes.size() == 1;
  return report;
}

std::vector<LabeledEdge> boundary_edges(const Ball& b, const Predicate& member) {
  std::vector<char> inside(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) inside[i] = member(b.vertex(i)) ? 1 : 0;
  std::vector<LabeledEdge> out;
  for (const auto& e : b.edges()) {
    if (inside[e.tail] != inside[e.head]) out.push_back(b.labeled_edge(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string export_dot(const Ball& b, const Predicate& highlight) {
  std::string out = "digraph cayley {\n";
  out += "  // G_" + to_string(b.param()) + ", radius " + std::to_string(b.radius()) + "\n";
  out += "  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    out += "  " + quoted(b.key(i)) + " [dist=" + std::to_string(b.distance_of(i));
    if (highlight && highlight(b.vertex(i))) out += ", style=filled, fillcolor=\"lightblue\"";
    out += "];\n";
  }
  for (const auto& e : b.edges()) {
    out += "  " + quoted(b.key(e.tail)) + " -> " + quoted(b.key(e.head)) + " [label=\"" + label_char(e.label) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string export_json(const Ball& b) {
  nlohmann::ordered_json j;
  if (b.param().is_finite()) {
    j["param"] = b.param().k();
  } else {
    j["param"] = "inf";
  }
  j["radius"] = b.radius();
  auto& vertices = j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < b.size(); ++i) vertices.push_back({{"id", b.key(i)}, {"dist", b.distance_of(i)}});
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : b.edges()) {
    edges.push_back({{"tail", b.key(e.tail)}, {"head", b.key(e.head)}, {"label", std::string(1, label_char(e.label))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace wslab
