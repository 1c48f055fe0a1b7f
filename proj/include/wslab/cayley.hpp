#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wslab/engine.hpp"

namespace wslab {

enum class EdgeLabel : std::uint8_t { G, H };

char label_char(EdgeLabel l);
NormalForm generator(GroupParam p, EdgeLabel l);

/// Edge of the left Cayley graph: head = label * tail.
struct LabeledEdge {
  NormalForm tail;
  NormalForm head;
  EdgeLabel label = EdgeLabel::G;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

LabeledEdge edge_from(const NormalForm& tail, EdgeLabel l);
LabeledEdge edge_into(const NormalForm& head, EdgeLabel l);
bool is_edge(const LabeledEdge& e);
/// Right translation by u is a label-preserving graph automorphism.
LabeledEdge right_translate(const LabeledEdge& e, const NormalForm& u);
std::string to_string(const LabeledEdge& e);

/// Location of an edge on the relator polygon containing it.
///
/// The polygon through u is {s^j u, g^-1 s^j u}; it is named by the
/// representative of the coset <s>u that has no leading s-syllable. Vertex
/// s^j r sits at position 2j and g^-1 s^j r at 2j+1; edge i joins positions
/// i and i+1. Positions are reduced mod 2k, and live on a bi-infinite line
/// when k is infinite.
struct PolygonSite {
  NormalForm polygon;
  std::int64_t tail_pos = 0;
  std::int64_t head_pos = 0;
  std::int64_t edge_index = 0;
};

PolygonSite polygon_site(const LabeledEdge& e);

inline constexpr std::size_t kDefaultVertexCap = 500'000;

struct BallOptions {
  std::size_t vertex_cap = kDefaultVertexCap;
};

/// The elements at distance <= R from 1 with every edge whose endpoints both
/// lie inside. Vertex indices follow (distance, canonical string).
class Ball {
 public:
  struct Edge {
    std::uint32_t tail;
    std::uint32_t head;
    EdgeLabel label;
  };
  struct Incidence {
    std::uint32_t neighbor;
    std::uint32_t edge;
  };

  const GroupParam& param() const { return param_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }

  const NormalForm& vertex(std::size_t i) const { return vertices_[i]; }
  const std::string& key(std::size_t i) const { return keys_[i]; }
  int distance_of(std::size_t i) const { return dist_[i]; }
  bool is_interior(std::size_t i) const { return dist_[i] < radius_; }

  std::optional<std::size_t> find(const NormalForm& x) const;
  bool contains(const NormalForm& x) const { return find(x).has_value(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(std::size_t i) const { return adjacency_[i]; }
  LabeledEdge labeled_edge(const Edge& e) const { return {vertices_[e.tail], vertices_[e.head], e.label}; }

 private:
  friend Ball build_ball(GroupParam p, int radius, const BallOptions& options);

  Ball(GroupParam p, int radius) : param_(p), radius_(radius) {}

  GroupParam param_;
  int radius_;
  std::vector<NormalForm> vertices_;
  std::vector<std::string> keys_;
  std::vector<int> dist_;
  std::unordered_map<NormalForm, std::uint32_t, NormalFormHash> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Throws InvalidParam for R < 0 and ResourceLimit past the vertex cap.
Ball build_ball(GroupParam p, int radius, const BallOptions& options = {});

/// Graph distance from 1; throws NotInBall.
int distance(const Ball& b, const NormalForm& x);

/// The 2k vertices of the relator polygon through e, starting at the
/// polygon's s^0 vertex. Throws NoPolygon when k is infinite.
std::vector<NormalForm> polygon_of_edge(GroupParam p, const LabeledEdge& e);

struct CriticalLoopReport {
  /// Shortest cycle length; nullopt when the ball is acyclic.
  std::optional<std::int64_t> girth;
  std::int64_t exponent = 0;
  std::size_t cycle_count = 0;
  /// Every shortest cycle spells a rotation or inversion of (h^-1 g)^exponent.
  bool relator_labels = true;
  /// Every shortest cycle is a right translate of the first one.
  bool translate_unique = false;
  /// One edge cycle per right-translation class, in discovery order.
  std::vector<std::vector<LabeledEdge>> representatives;
};

/// Exhaustive enumeration of the shortest cycles of the ball. For finite k
/// throws Inconclusive unless R >= 2k.
CriticalLoopReport minimal_loops(const Ball& b);

using Predicate = std::function<bool(const NormalForm&)>;

/// Ball edges with exactly one endpoint satisfying `member`, in edge order.
std::vector<LabeledEdge> boundary_edges(const Ball& b, const Predicate& member);

/// DOT digraph with canonical-string node ids. Byte-stable.
std::string export_dot(const Ball& b, const Predicate& highlight = nullptr);

/// {"param", "radius", "vertices": [{"id","dist"}], "edges": [{"tail","head","label"}]}
std::string export_json(const Ball& b);

}  // namespace wslab
