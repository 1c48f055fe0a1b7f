#include "wslab/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>

#include "wslab/errors.hpp"

namespace wslab {

GroupParam GroupParam::finite(std::int64_t k) {
  if (k < 2) throw InvalidParam("k must be at least 2, got " + std::to_string(k));
  return GroupParam(k);
}

GroupParam GroupParam::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "infinity") return infinite();
  std::int64_t k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidParam("expected an integer k >= 2 or 'inf', got '" + std::string(text) + "'");
  }
  return finite(k);
}

std::string to_string(const GroupParam& p) { return p.is_finite() ? std::to_string(p.k()) : "inf"; }

namespace {

std::int64_t mod_k(std::int64_t m, std::int64_t k) {
  const std::int64_t r = m % k;
  return r < 0 ? r + k : r;
}

}  // namespace

void NormalForm::push_back(Syllable syl) {
  if (syl.factor == Factor::S && param_.is_finite()) syl.exponent = mod_k(syl.exponent, param_.k());
  if (syl.exponent == 0) return;
  if (syllables_.empty() || syllables_.back().factor != syl.factor) {
    syllables_.push_back(syl);
    return;
  }
  auto& last = syllables_.back();
  last.exponent += syl.exponent;
  if (last.factor == Factor::S && param_.is_finite()) last.exponent = mod_k(last.exponent, param_.k());
  if (last.exponent == 0) syllables_.pop_back();
}

NormalForm NormalForm::g_power(GroupParam p, std::int64_t e) {
  NormalForm x(p);
  x.push_back({Factor::G, e});
  return x;
}

NormalForm NormalForm::s_power(GroupParam p, std::int64_t m) {
  NormalForm x(p);
  x.push_back({Factor::S, m});
  return x;
}

NormalForm NormalForm::from_syllables(GroupParam p, std::span<const Syllable> syllables) {
  NormalForm x(p);
  for (const auto& s : syllables) x.push_back(s);
  return x;
}

std::string to_string(const NormalForm& x) {
  if (x.is_identity()) return "1";
  std::string out;
  for (const auto& syl : x.syllables()) {
    if (!out.empty()) out += '*';
    out += syl.factor == Factor::G ? 'g' : 's';
    out += '^';
    out += std::to_string(syl.exponent);
  }
  return out;
}

NormalForm evaluate(const Word& w, GroupParam p) {
  NormalForm x(p);
  for (const auto& l : w.letters()) {
    switch (l.symbol) {
      case Symbol::G:
        x.push_back({Factor::G, l.sign});
        break;
      case Symbol::S:
        x.push_back({Factor::S, l.sign});
        break;
      case Symbol::H:  // h = s g
        if (l.sign > 0) {
          x.push_back({Factor::S, 1});
          x.push_back({Factor::G, 1});
        } else {
          x.push_back({Factor::G, -1});
          x.push_back({Factor::S, -1});
        }
        break;
    }
  }
  return x;
}

NormalForm parse_element(std::string_view text, GroupParam p) {
  return evaluate(parse_word(text, detect_alphabet(text)), p);
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
  if (a.param() != b.param()) {
    throw ParamMismatch("cannot multiply elements of G_" + to_string(a.param()) + " and G_" + to_string(b.param()));
  }
  NormalForm out = a;
  for (const auto& syl : b.syllables()) out.push_back(syl);
  return out;
}

NormalForm invert(const NormalForm& a) {
  NormalForm out(a.param());
  const auto syl = a.syllables();
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) out.push_back({it->factor, -it->exponent});
  return out;
}

NormalForm power(const NormalForm& a, std::int64_t n) {
  NormalForm base = n < 0 ? invert(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  NormalForm acc(a.param());
  while (e != 0) {
    if (e & 1U) acc = multiply(acc, base);
    e >>= 1U;
    if (e != 0) base = multiply(base, base);
  }
  return acc;
}

NormalForm gen_g(GroupParam p) { return NormalForm::g_power(p, 1); }
NormalForm gen_s(GroupParam p) { return NormalForm::s_power(p, 1); }
NormalForm gen_h(GroupParam p) { return multiply(gen_s(p), gen_g(p)); }

NormalForm cyclic_reduction(const NormalForm& a) {
  NormalForm x = a;
  while (x.size() >= 2 && x.syllables().front().factor == x.syllables().back().factor) {
    const Syllable first = x.syllables().front();
    const NormalForm f = NormalForm::from_syllables(x.param(), std::span(&first, 1));
    x = multiply(multiply(invert(f), x), f);
  }
  return x;
}

std::optional<std::int64_t> order(const NormalForm& a) {
  const NormalForm c = cyclic_reduction(a);
  if (c.is_identity()) return 1;
  if (c.size() == 1 && c.syllables()[0].factor == Factor::S && c.param().is_finite()) {
    const std::int64_t k = c.param().k();
    return k / std::gcd(k, c.syllables()[0].exponent);
  }
  return std::nullopt;
}

namespace {

// Shortest signed representative of s^m.
std::int64_t balanced_s_exponent(const GroupParam& p, std::int64_t m) {
  if (!p.is_finite()) return m;
  return (p.k() - m < m) ? m - p.k() : m;
}

}  // namespace

std::int64_t gh_length_bound(const NormalForm& a) {
  std::int64_t total = 0;
  for (const auto& syl : a.syllables()) {
    if (syl.factor == Factor::G) {
      total += std::abs(syl.exponent);
    } else {
      total += 2 * std::abs(balanced_s_exponent(a.param(), syl.exponent));
    }
  }
  return total;
}

Word to_word(const NormalForm& a, Alphabet alphabet) {
  std::vector<Letter> letters;
  for (const auto& syl : a.syllables()) {
    const std::int64_t e = syl.factor == Factor::G ? syl.exponent : balanced_s_exponent(a.param(), syl.exponent);
    const Letter l{syl.factor == Factor::G ? Symbol::G : Symbol::S, e < 0 ? -1 : 1};
    letters.insert(letters.end(), static_cast<std::size_t>(std::abs(e)), l);
  }
  Word w(Alphabet::GS, std::move(letters));
  return alphabet == Alphabet::GS ? w : convert(w, Alphabet::GH);
}

std::size_t NormalFormHash::operator()(const NormalForm& x) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& syl : x.syllables()) {
    const auto v = static_cast<std::uint64_t>(syl.exponent) * 2 + (syl.factor == Factor::S ? 1 : 0);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Finite images

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint32_t>(i);
  return out;
}

namespace {

Permutation perm_power(const Permutation& p, const Permutation& p_inv, std::int64_t e) {
  Permutation base = e < 0 ? p_inv : p;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation acc = identity_permutation(p.size());
  while (n != 0) {
    if (n & 1U) acc = compose(acc, base);
    n >>= 1U;
    if (n != 0) base = compose(base, base);
  }
  return acc;
}

// Unbiased draw in [0, bound) from the raw engine output, so results do not
// depend on the standard library's distribution implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

void shuffle(std::mt19937_64& rng, std::vector<std::uint32_t>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = draw_below(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

FiniteImage::FiniteImage(GroupParam p, Permutation g_image, Permutation s_image)
    : param_(p), g_(std::move(g_image)), s_(std::move(s_image)) {
  if (g_.size() != s_.size() || g_.size() < 2) throw InvalidParam("finite image needs two permutations of equal degree >= 2");
  g_inv_ = inverse(g_);
  s_inv_ = inverse(s_);
  if (p.is_finite() && perm_power(s_, s_inv_, p.k()) != identity_permutation(s_.size())) {
    throw InvalidParam("image of s must have order dividing k");
  }
  h_ = compose(s_, g_);
  h_inv_ = inverse(h_);
}

Permutation FiniteImage::image(const NormalForm& x) const {
  if (x.param() != param_) throw ParamMismatch("element and finite image have different parameters");
  Permutation acc = identity_permutation(degree());
  for (const auto& syl : x.syllables()) {
    acc = syl.factor == Factor::G ? compose(acc, perm_power(g_, g_inv_, syl.exponent))
                                  : compose(acc, perm_power(s_, s_inv_, syl.exponent));
  }
  return acc;
}

Permutation FiniteImage::image(const Word& w) const {
  Permutation acc = identity_permutation(degree());
  for (const auto& l : w.letters()) {
    const Permutation* p = nullptr;
    switch (l.symbol) {
      case Symbol::G: p = l.sign > 0 ? &g_ : &g_inv_; break;
      case Symbol::H: p = l.sign > 0 ? &h_ : &h_inv_; break;
      case Symbol::S: p = l.sign > 0 ? &s_ : &s_inv_; break;
    }
    acc = compose(acc, *p);
  }
  return acc;
}

FiniteImage random_finite_image(GroupParam p, std::size_t degree, std::uint64_t seed) {
  if (degree < 2) throw InvalidParam("degree must be at least 2");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + degree);

  Permutation g = identity_permutation(degree);
  shuffle(rng, g);

  Permutation s = identity_permutation(degree);
  if (!p.is_finite()) {
    shuffle(rng, s);
  } else {
    // Disjoint cycles whose lengths divide k.
    std::vector<std::uint32_t> points = identity_permutation(degree);
    shuffle(rng, points);
    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= p.k(); ++d) {
      if (p.k() % d == 0) divisors.push_back(d);
    }
    std::size_t at = 0;
    while (at < degree) {
      const auto remaining = static_cast<std::int64_t>(degree - at);
      std::vector<std::int64_t> fits;
      for (auto d : divisors) {
        if (d <= remaining) fits.push_back(d);
      }
      const auto len = static_cast<std::size_t>(fits[draw_below(rng, fits.size())]);
      for (std::size_t i = 0; i < len; ++i) s[points[at + i]] = points[at + (i + 1) % len];
      at += len;
    }
  }
  return FiniteImage(p, std::move(g), std::move(s));
}

}  // namespace wslab
