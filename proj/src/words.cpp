#include "wslab/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "wslab/errors.hpp"

namespace wslab {

char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::G:
      return 'g';
    case Symbol::H:
      return 'h';
    case Symbol::S:
      return 's';
  }
  return '?';
}

std::string_view alphabet_name(Alphabet a) { return a == Alphabet::GH ? "GH" : "GS"; }

bool contains(Alphabet a, Symbol s) {
  if (s == Symbol::G) return true;
  return a == Alphabet::GH ? s == Symbol::H : s == Symbol::S;
}

std::string to_string(const Letter& l) {
  std::string out(1, symbol_char(l.symbol));
  if (l.sign < 0) out += "^-1";
  return out;
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (!contains(alphabet_, l.symbol)) {
      throw SyntaxError(std::string("symbol '") + symbol_char(l.symbol) + "' not in alphabet " +
                        std::string(alphabet_name(alphabet_)));
    }
    if (l.sign != 1 && l.sign != -1) throw SyntaxError("letter sign must be +1 or -1");
  }
}

namespace {

bool is_separator(char c) { return c == '*' || std::isspace(static_cast<unsigned char>(c)); }

void append_token(std::string_view tok, std::vector<Letter>& out) {
  if (tok == "1") return;
  Letter base;
  switch (tok.front()) {
    case 'g': base = {Symbol::G, 1}; break;
    case 'h': base = {Symbol::H, 1}; break;
    case 's': base = {Symbol::S, 1}; break;
    case 'G': base = {Symbol::G, -1}; break;
    case 'H': base = {Symbol::H, -1}; break;
    case 'S': base = {Symbol::S, -1}; break;
    default:
      throw SyntaxError("unknown symbol in token '" + std::string(tok) + "'");
  }
  long long exponent = 1;
  if (tok.size() > 1) {
    if (tok[1] != '^' || tok.size() == 2) {
      throw SyntaxError("malformed exponent in token '" + std::string(tok) + "'");
    }
    auto digits = tok.substr(2);
    if (digits.front() == '+') digits.remove_prefix(1);
    const auto* first = digits.data();
    const auto* last = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last || digits.empty()) {
      throw SyntaxError("malformed exponent in token '" + std::string(tok) + "'");
    }
  }
  if (std::llabs(exponent) > 1'000'000) throw SyntaxError("exponent too large in '" + std::string(tok) + "'");
  const Letter l = exponent < 0 ? base.inverse() : base;
  out.insert(out.end(), static_cast<std::size_t>(std::llabs(exponent)), l);
}

}  // namespace

Word parse_word(std::string_view text, Alphabet alphabet) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_separator(text[j])) ++j;
    if (j > i) append_token(text.substr(i, j - i), letters);
    i = j;
  }
  return Word(alphabet, std::move(letters));
}

Alphabet detect_alphabet(std::string_view text) {
  return text.find_first_of("sS") == std::string_view::npos ? Alphabet::GH : Alphabet::GS;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const long run = static_cast<long>(j - i) * letters[i].sign;
    if (!out.empty()) out += '*';
    out += symbol_char(letters[i].symbol);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

std::size_t length(const Word& w) { return w.size(); }

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().is_inverse_of(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(w.alphabet(), std::move(stack));
}

Word cyclic_reduce(const Word& w) {
  const Word r = free_reduce(w);
  const auto letters = r.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].is_inverse_of(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.alphabet(), {letters.begin() + static_cast<std::ptrdiff_t>(lo),
                             letters.begin() + static_cast<std::ptrdiff_t>(hi)});
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(w.alphabet(), std::move(out));
}

Word concat(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) throw SyntaxError("cannot concatenate words over different alphabets");
  std::vector<Letter> out(a.letters().begin(), a.letters().end());
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(a.alphabet(), std::move(out));
}

Word power(const Word& w, std::size_t n) {
  std::vector<Letter> out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.letters().begin(), w.letters().end());
  return Word(w.alphabet(), std::move(out));
}

Word convert(const Word& w, Alphabet target) {
  if (w.alphabet() == target) return free_reduce(w);
  std::vector<Letter> out;
  out.reserve(2 * w.size());
  const Symbol from = target == Alphabet::GS ? Symbol::H : Symbol::S;
  const Symbol to = target == Alphabet::GS ? Symbol::S : Symbol::H;
  // GH -> GS: h = s g.   GS -> GH: s = h g^-1.
  const int g_sign = target == Alphabet::GS ? 1 : -1;
  for (const auto& l : w.letters()) {
    if (l.symbol != from) {
      out.push_back(l);
      continue;
    }
    if (l.sign > 0) {
      out.push_back({to, 1});
      out.push_back({Symbol::G, g_sign});
    } else {
      out.push_back({Symbol::G, -g_sign});
      out.push_back({to, -1});
    }
  }
  return free_reduce(Word(target, std::move(out)));
}

bool is_freely_reduced(const Word& w) {
  const auto letters = w.letters();
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i].is_inverse_of(letters[i - 1])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || !w[0].is_inverse_of(w[w.size() - 1]);
}

Word rotate(const Word& w, std::size_t start) {
  if (w.empty()) return w;
  start %= w.size();
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
  return Word(w.alphabet(), std::move(out));
}

bool is_rotation_of(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i] == b[(i + r) % b.size()];
    if (same) return true;
  }
  return false;
}

bool is_rotation_or_inversion_of(const Word& a, const Word& b) {
  return is_rotation_of(a, b) || is_rotation_of(a, inverse(b));
}

}  // namespace wslab
