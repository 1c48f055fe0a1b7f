#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wslab/cayley.hpp"
#include "wslab/engine.hpp"
#include "wslab/sierpinski.hpp"
#include "wslab/words.hpp"

namespace wslab {

enum class WordFamily : std::uint8_t { PowerG, PowerH, PowerGH, PowerHinvG, Bad };

/// Class of a cyclically reduced {g,h}-word up to rotation and inversion:
/// g^n, h^n, (gh)^n, (h^-1 g)^n, or Bad.
struct WordClass {
  WordFamily family = WordFamily::Bad;
  std::size_t n = 0;  // 0 for Bad
  friend bool operator==(const WordClass&, const WordClass&) = default;
};

std::string to_string(const WordClass& c);

/// Throws NotCyclicallyReduced for empty or non-cyclically-reduced input and
/// SyntaxError for words over {g, s}.
WordClass classify_word(const Word& w);

/// Two occurrences of the same edge label whose preceding steps differ.
///
/// The word is read as a closed path. An occurrence is oriented along its
/// edge, so for a forward letter the preceding step is the previous letter,
/// and for an inverse letter it is the inverse of the next letter.
struct ForkWitness {
  EdgeLabel label = EdgeLabel::G;
  std::size_t first = 0;
  std::size_t second = 0;
  Letter first_prev;
  Letter second_prev;
};

std::string to_string(const ForkWitness& f);

/// The step preceding position i when its edge is traversed forward.
Letter preceding_step(const Word& w, std::size_t i);

std::optional<ForkWitness> find_fork(const Word& w);

struct ForkLemmaReport {
  bool pass = true;
  std::size_t words_checked = 0;
  std::size_t bad_words = 0;
  /// Bad words with no fork (the lemma's failures).
  std::vector<Word> counterexamples;
  /// Family members that do admit a fork; reported, not asserted.
  std::size_t converse_violations = 0;
  std::vector<Word> converse_examples;
};

/// Exhaustive over all cyclically reduced {g,h}-words of length 1..max_length.
ForkLemmaReport verify_fork_lemma(std::size_t max_length);

/// x -> g, y -> h^-1 g h. The word's g letters stand for x and h letters for y.
NormalForm free_pair_image(const Word& xy_word, GroupParam p);
std::string render_xy(const Word& xy_word);

struct FreePairReport {
  bool pass = true;
  std::size_t words_checked = 0;
  std::vector<Word> counterexamples;  // xy-words mapping to 1
};

/// Every nonempty reduced xy-word of length <= max_length maps to a
/// nontrivial element.
FreePairReport free_pair_check(GroupParam p, std::size_t max_length);

struct ChargeReport {
  std::string subset;  // descriptor JSON
  NormalForm gamma;
  std::vector<NormalForm> outflow_set;  // E \ gamma E, canonical-string order
  std::vector<NormalForm> inflow_set;   // gamma E \ E
  std::int64_t outflow = 0;
  std::int64_t inflow = 0;
  std::int64_t f = 0;
};

/// f(gamma) = |E \ gamma E| - |gamma E \ E|.
///
/// Both sets lie in the union over the letters w_i of gamma = w_1...w_m of
/// w_1...w_(i-1) (E xor w_i E), and E xor g^{+-1} E, E xor h^{+-1} E are the
/// single points a, g^-1 a, b, h^-1 b. Every candidate is then tested
/// exactly, so the enumeration is complete.
ChargeReport charge(const WSubset& e, const NormalForm& gamma);

std::string to_json(const WordClass& c, const Word& w);
std::string to_json(const ForkLemmaReport& r);
std::string to_json(const FreePairReport& r, const GroupParam& p);
std::string to_json(const ChargeReport& r);

}  // namespace wslab
