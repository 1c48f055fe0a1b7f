#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wslab {

enum class Symbol : std::uint8_t { G, H, S };

/// The two generating pairs in use: (g, h) and (g, s) with s = h g^-1.
enum class Alphabet : std::uint8_t { GH, GS };

char symbol_char(Symbol s);
std::string_view alphabet_name(Alphabet a);
bool contains(Alphabet a, Symbol s);

/// A generator or its inverse. The inverse is a sign, not a separate symbol.
struct Letter {
  Symbol symbol = Symbol::G;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {symbol, -sign}; }
  bool is_inverse_of(const Letter& o) const { return symbol == o.symbol && sign == -o.sign; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

std::string to_string(const Letter& l);

/// Finite sequence of letters over a declared alphabet. Empty is the identity.
class Word {
 public:
  explicit Word(Alphabet alphabet = Alphabet::GH) : alphabet_(alphabet) {}
  /// Throws SyntaxError if a letter's symbol is not in `alphabet`.
  Word(Alphabet alphabet, std::vector<Letter> letters);

  Alphabet alphabet() const { return alphabet_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// Parses `g h^-1 g`, `g^3*s^-2`, `G*H` (uppercase = inverse) or `1`.
Word parse_word(std::string_view text, Alphabet alphabet);

/// Picks GS if the text mentions s, GH otherwise.
Alphabet detect_alphabet(std::string_view text);

/// Canonical wire form: runs of equal letters aggregated, joined by '*';
/// the identity renders as `1`.
std::string to_string(const Word& w);

std::size_t length(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, std::size_t n);

/// h -> s g (GH to GS) or s -> h g^-1 (GS to GH), then freely reduced.
Word convert(const Word& w, Alphabet target);

bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

/// Rotation of w starting at position `start`.
Word rotate(const Word& w, std::size_t start);

/// True when a is a cyclic rotation of b.
bool is_rotation_of(const Word& a, const Word& b);
/// True when a is a rotation of b or of inverse(b).
bool is_rotation_or_inversion_of(const Word& a, const Word& b);

}  // namespace wslab
