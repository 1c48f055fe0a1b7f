#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wslab/words.hpp"

namespace wslab {

/// The parameter k of G_k = <g, s | s^k> = <g> * <s>. The infinite case is
/// Z * Z, i.e. the free group on (g, h).
class GroupParam {
 public:
  /// Throws InvalidParam for k < 2.
  static GroupParam finite(std::int64_t k);
  static GroupParam infinite() { return GroupParam(0); }
  /// Accepts a decimal integer >= 2 or "inf".
  static GroupParam parse(std::string_view text);

  bool is_finite() const { return k_ != 0; }
  /// Order of s; only meaningful when finite.
  std::int64_t k() const { return k_; }

  friend bool operator==(const GroupParam&, const GroupParam&) = default;

 private:
  explicit GroupParam(std::int64_t k) : k_(k) {}
  std::int64_t k_;  // 0 encodes infinity
};

std::string to_string(const GroupParam& p);

enum class Factor : std::uint8_t { G, S };

struct Syllable {
  Factor factor = Factor::G;
  std::int64_t exponent = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Canonical alternating syllable sequence of an element. S-exponents are
/// kept in 1..k-1 when k is finite, so equality of values is equality of
/// group elements.
class NormalForm {
 public:
  explicit NormalForm(GroupParam param) : param_(param) {}

  static NormalForm identity(GroupParam p) { return NormalForm(p); }
  static NormalForm g_power(GroupParam p, std::int64_t e);
  static NormalForm s_power(GroupParam p, std::int64_t m);
  /// Builds the product of the given syllables, normalizing as it goes.
  static NormalForm from_syllables(GroupParam p, std::span<const Syllable> syllables);

  const GroupParam& param() const { return param_; }
  std::span<const Syllable> syllables() const { return syllables_; }
  std::size_t size() const { return syllables_.size(); }
  bool is_identity() const { return syllables_.empty(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

  /// Right-multiplies by a single syllable, cancelling at the junction.
  void push_back(Syllable syl);

 private:
  GroupParam param_;
  std::vector<Syllable> syllables_;
};

/// `g^2*s^1*g^-3`; the identity is `1`.
std::string to_string(const NormalForm& x);

/// Parses a word over {g,h} or {g,s} (see parse_word) and evaluates it.
NormalForm parse_element(std::string_view text, GroupParam p);

NormalForm evaluate(const Word& w, GroupParam p);

/// Throws ParamMismatch when the parameters differ.
NormalForm multiply(const NormalForm& a, const NormalForm& b);
NormalForm invert(const NormalForm& a);
NormalForm power(const NormalForm& a, std::int64_t n);

inline NormalForm operator*(const NormalForm& a, const NormalForm& b) { return multiply(a, b); }

/// Generators as elements: g, h = s g, s.
NormalForm gen_g(GroupParam p);
NormalForm gen_h(GroupParam p);
NormalForm gen_s(GroupParam p);

/// Least n >= 1 with a^n = 1; std::nullopt when a has infinite order.
std::optional<std::int64_t> order(const NormalForm& a);

/// Conjugate of a whose first and last syllables lie in different factors
/// (or which has at most one syllable).
NormalForm cyclic_reduction(const NormalForm& a);

/// Upper bound on the word length of a over {g, h}.
std::int64_t gh_length_bound(const NormalForm& a);

/// The element as a word over the requested alphabet. Over GS this is the
/// syllable spelling; over GH it is that spelling converted and reduced.
Word to_word(const NormalForm& a, Alphabet alphabet);

struct NormalFormHash {
  std::size_t operator()(const NormalForm& x) const noexcept;
};

/// Lexicographic order on canonical strings.
struct CanonicalLess {
  bool operator()(const NormalForm& a, const NormalForm& b) const { return to_string(a) < to_string(b); }
};

/// Permutation of {0, ..., n-1}; p[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

Permutation compose(const Permutation& a, const Permutation& b);  // a after b
Permutation inverse(const Permutation& p);
Permutation identity_permutation(std::size_t n);

/// A homomorphism G_k -> Sym(n) given by g -> any permutation and s -> a
/// permutation whose order divides k. Differing images certify that two
/// elements are different.
class FiniteImage {
 public:
  FiniteImage(GroupParam p, Permutation g_image, Permutation s_image);

  const GroupParam& param() const { return param_; }
  std::size_t degree() const { return g_.size(); }
  const Permutation& g_image() const { return g_; }
  const Permutation& s_image() const { return s_; }

  Permutation image(const NormalForm& x) const;
  Permutation image(const Word& w) const;
  bool separates(const NormalForm& x, const NormalForm& y) const { return image(x) != image(y); }

 private:
  GroupParam param_;
  Permutation g_, g_inv_, s_, s_inv_, h_, h_inv_;
};

/// Deterministic in (seed, degree): the same arguments give the same map on
/// every platform. Throws InvalidParam for degree < 2.
FiniteImage random_finite_image(GroupParam p, std::size_t degree, std::uint64_t seed);

}  // namespace wslab
