#include "wslab/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "wslab/errors.hpp"

namespace wslab {

std::string to_string(const WordClass& c) {
  const std::string n = "(" + std::to_string(c.n) + ")";
  switch (c.family) {
    case WordFamily::PowerG: return "PowerG" + n;
    case WordFamily::PowerH: return "PowerH" + n;
    case WordFamily::PowerGH: return "PowerGH" + n;
    case WordFamily::PowerHinvG: return "PowerHinvG" + n;
    case WordFamily::Bad: break;
  }
  return "Bad";
}

namespace {

void require_cyclic_gh(const Word& w) {
  if (w.alphabet() != Alphabet::GH) throw SyntaxError("expected a word over {g, h}");
  if (w.empty() || !is_cyclically_reduced(w)) {
    throw NotCyclicallyReduced("'" + to_string(w) + "' is not a nonempty cyclically reduced word");
  }
}

}  // namespace

WordClass classify_word(const Word& w) {
  require_cyclic_gh(w);
  const auto letters = w.letters();
  const std::size_t n = letters.size();
  const bool constant = std::all_of(letters.begin(), letters.end(), [&](const Letter& l) { return l == letters[0]; });
  if (constant) return {letters[0].symbol == Symbol::G ? WordFamily::PowerG : WordFamily::PowerH, n};

  if (n % 2 != 0) return {};
  for (std::size_t i = 1; i < n; ++i) {
    if (letters[i].symbol == letters[i - 1].symbol) return {};
  }
  // Alternating g/h: the sign pattern decides the family.
  int g_sign = 0;
  int h_sign = 0;
  for (const auto& l : letters) {
    int& seen = l.symbol == Symbol::G ? g_sign : h_sign;
    if (seen == 0) seen = l.sign;
    if (seen != l.sign) return {};
  }
  if (g_sign == h_sign) return {WordFamily::PowerGH, n / 2};
  return {WordFamily::PowerHinvG, n / 2};
}

Letter preceding_step(const Word& w, std::size_t i) {
  const std::size_t n = w.size();
  if (w[i].sign > 0) return w[(i + n - 1) % n];
  return w[(i + 1) % n].inverse();
}

std::string to_string(const ForkWitness& f) {
  return std::string("label ") + label_char(f.label) + " at positions " + std::to_string(f.first) + " (after " +
         to_string(f.first_prev) + ") and " + std::to_string(f.second) + " (after " + to_string(f.second_prev) + ")";
}

std::optional<ForkWitness> find_fork(const Word& w) {
  require_cyclic_gh(w);
  std::optional<std::size_t> first_of[2];
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int slot = w[i].symbol == Symbol::G ? 0 : 1;
    const Letter prev = preceding_step(w, i);
    if (!first_of[slot]) {
      first_of[slot] = i;
      continue;
    }
    const Letter first_prev = preceding_step(w, *first_of[slot]);
    if (first_prev != prev) {
      return ForkWitness{slot == 0 ? EdgeLabel::G : EdgeLabel::H, *first_of[slot], i, first_prev, prev};
    }
  }
  return std::nullopt;
}

namespace {

constexpr Letter kGhLetters[] = {{Symbol::G, 1}, {Symbol::G, -1}, {Symbol::H, 1}, {Symbol::H, -1}};

// Calls visit(word) for every freely reduced GH word of length 1..max_length.
template <typename Visit>
void for_each_reduced_word(std::size_t max_length, Visit&& visit) {
  std::vector<Letter> letters;
  auto rec = [&](auto&& self) -> void {
    if (!letters.empty()) visit(letters);
    if (letters.size() == max_length) return;
    for (const auto& l : kGhLetters) {
      if (!letters.empty() && letters.back().is_inverse_of(l)) continue;
      letters.push_back(l);
      self(self);
      letters.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

ForkLemmaReport verify_fork_lemma(std::size_t max_length) {
  ForkLemmaReport report;
  for_each_reduced_word(max_length, [&](const std::vector<Letter>& letters) {
    if (letters.size() >= 2 && letters.front().is_inverse_of(letters.back())) return;
    const Word w(Alphabet::GH, letters);
    ++report.words_checked;
    const bool bad = classify_word(w).family == WordFamily::Bad;
    const bool fork = find_fork(w).has_value();
    if (bad) {
      ++report.bad_words;
      if (!fork) report.counterexamples.push_back(w);
    } else if (fork) {
      ++report.converse_violations;
      if (report.converse_examples.size() < 10) report.converse_examples.push_back(w);
    }
  });
  report.pass = report.counterexamples.empty();
  return report;
}

NormalForm free_pair_image(const Word& xy_word, GroupParam p) {
  const NormalForm x = gen_g(p);
  const NormalForm y = multiply(multiply(invert(gen_h(p)), gen_g(p)), gen_h(p));
  const NormalForm images[] = {x, invert(x), y, invert(y)};
  NormalForm out = NormalForm::identity(p);
  for (const auto& l : xy_word.letters()) {
    const int idx = (l.symbol == Symbol::G ? 0 : 2) + (l.sign > 0 ? 0 : 1);
    out = multiply(out, images[idx]);
  }
  return out;
}

std::string render_xy(const Word& xy_word) {
  std::string s = to_string(xy_word);
  std::replace(s.begin(), s.end(), 'g', 'x');
  std::replace(s.begin(), s.end(), 'h', 'y');
  return s;
}

FreePairReport free_pair_check(GroupParam p, std::size_t max_length) {
  FreePairReport report;
  const NormalForm x = gen_g(p);
  const NormalForm y = multiply(multiply(invert(gen_h(p)), gen_g(p)), gen_h(p));
  const NormalForm images[] = {x, invert(x), y, invert(y)};

  std::vector<Letter> letters;
  std::vector<NormalForm> prefix{NormalForm::identity(p)};
  auto rec = [&](auto&& self) -> void {
    if (!letters.empty()) {
      ++report.words_checked;
      if (prefix.back().is_identity()) report.counterexamples.emplace_back(Alphabet::GH, letters);
    }
    if (letters.size() == max_length) return;
    for (int idx = 0; idx < 4; ++idx) {
      const Letter& l = kGhLetters[idx];
      if (!letters.empty() && letters.back().is_inverse_of(l)) continue;
      letters.push_back(l);
      prefix.push_back(multiply(prefix.back(), images[idx]));
      self(self);
      prefix.pop_back();
      letters.pop_back();
    }
  };
  rec(rec);
  report.pass = report.counterexamples.empty();
  return report;
}

ChargeReport charge(const WSubset& e, const NormalForm& gamma) {
  const GroupParam& p = e.param();
  if (gamma.param() != p) throw ParamMismatch("gamma and subset have different parameters");
  const RemovablePair rp = removable_points(e);

  const NormalForm g = gen_g(p);
  const NormalForm h = gen_h(p);
  const Word w = to_word(gamma, Alphabet::GH);

  std::map<std::string, NormalForm> candidates;
  NormalForm prefix = NormalForm::identity(p);
  for (const auto& l : w.letters()) {
    const bool is_g = l.symbol == Symbol::G;
    const NormalForm& removable = is_g ? rp.a : rp.b;
    const NormalForm& gen = is_g ? g : h;
    const NormalForm point = l.sign > 0 ? removable : multiply(invert(gen), removable);
    NormalForm c = multiply(prefix, point);
    candidates.emplace(to_string(c), std::move(c));
    prefix = multiply(prefix, l.sign > 0 ? gen : invert(gen));
  }

  ChargeReport report{descriptor_json(e), gamma, {}, {}, 0, 0, 0};
  const NormalForm back = invert(gamma);
  for (const auto& [key, x] : candidates) {
    const bool in_e = membership(e, x);
    const bool in_shift = membership(e, multiply(back, x));
    if (in_e && !in_shift) report.outflow_set.push_back(x);
    if (!in_e && in_shift) report.inflow_set.push_back(x);
  }
  report.outflow = static_cast<std::int64_t>(report.outflow_set.size());
  report.inflow = static_cast<std::int64_t>(report.inflow_set.size());
  report.f = report.outflow - report.inflow;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const WordClass& c, const Word& w) {
  nlohmann::ordered_json j;
  j["op"] = "classify";
  j["status"] = "ok";
  j["word"] = to_string(w);
  j["class"] = to_string(c);
  j["bad"] = c.family == WordFamily::Bad;
  const auto fork = find_fork(w);
  j["fork"] = fork ? nlohmann::ordered_json(to_string(*fork)) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string to_json(const ForkLemmaReport& r) {
  nlohmann::ordered_json j;
  j["op"] = "fork-lemma";
  j["status"] = r.pass ? "pass" : "fail";
  auto& w = j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples) w.push_back(to_string(c));
  j["words_checked"] = r.words_checked;
  j["bad_words"] = r.bad_words;
  j["converse_violations"] = r.converse_violations;
  return j.dump();
}

std::string to_json(const FreePairReport& r, const GroupParam& p) {
  nlohmann::ordered_json j;
  j["op"] = "free-check";
  j["param"] = p.is_finite() ? nlohmann::ordered_json(p.k()) : nlohmann::ordered_json("inf");
  j["status"] = r.pass ? "pass" : "fail";
  auto& w = j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples) w.push_back(render_xy(c));
  j["words_checked"] = r.words_checked;
  return j.dump();
}

std::string to_json(const ChargeReport& r) {
  nlohmann::ordered_json j;
  j["op"] = "charge";
  j["status"] = "ok";
  j["subset"] = nlohmann::ordered_json::parse(r.subset);
  j["gamma"] = to_string(r.gamma);
  std::vector<std::string> all;
  auto& out = j["outflow_set"] = nlohmann::ordered_json::array();
  for (const auto& x : r.outflow_set) {
    out.push_back(to_string(x));
    all.push_back(to_string(x));
  }
  auto& in = j["inflow_set"] = nlohmann::ordered_json::array();
  for (const auto& x : r.inflow_set) {
    in.push_back(to_string(x));
    all.push_back(to_string(x));
  }
  std::sort(all.begin(), all.end());
  j["witnesses"] = all;
  j["outflow"] = r.outflow;
  j["inflow"] = r.inflow;
  j["f"] = r.f;
  return j.dump();
}

}  // namespace wslab
