#include <doctest.h>

#include <json.hpp>
#include <set>

#include "oracles.hpp"
#include "wslab/analysis.hpp"
#include "wslab/errors.hpp"

using namespace wslab;
using oracle::kG;
using oracle::kGi;
using oracle::kH;
using oracle::kHi;

namespace {
const GroupParam K2 = GroupParam::finite(2);
const GroupParam K3 = GroupParam::finite(3);

Word w(const char* text) { return parse_word(text, Alphabet::GH); }
NormalForm el(const char* text, GroupParam p) { return parse_element(text, p); }

std::set<std::string> keyset(const std::vector<NormalForm>& xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(to_string(x));
  return out;
}

// E \ gamma E and gamma E \ E by scanning a ball.
std::pair<std::set<std::string>, std::set<std::string>> scan_charge(const WSubset& e, const NormalForm& gamma,
                                                                    const Ball& b) {
  std::set<std::string> out, in;
  const NormalForm back = invert(gamma);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const bool m = membership(e, b.vertex(i));
    const bool s = membership(e, multiply(back, b.vertex(i)));
    if (m && !s) out.insert(b.key(i));
    if (!m && s) in.insert(b.key(i));
  }
  return {out, in};
}
}  // namespace

TEST_CASE("classify_word") {
  CHECK(classify_word(w("g h g h g h")) == WordClass{WordFamily::PowerGH, 3});
  CHECK(to_string(classify_word(w("g h g h g h"))) == "PowerGH(3)");
  CHECK(classify_word(w("h^-1 g h^-1 g")) == WordClass{WordFamily::PowerHinvG, 2});
  CHECK(classify_word(w("g g h")).family == WordFamily::Bad);
  CHECK(oracle::brute_classify(w("g g h")).family == WordFamily::Bad);
  CHECK(to_string(classify_word(w("g g h"))) == "Bad");
  CHECK(classify_word(w("G^4")) == WordClass{WordFamily::PowerG, 4});
  CHECK(classify_word(w("H G H G")) == WordClass{WordFamily::PowerGH, 2});
  CHECK(classify_word(w("g^-1 h")) == WordClass{WordFamily::PowerHinvG, 1});
  CHECK_THROWS_AS(classify_word(w("g h g^-1")), NotCyclicallyReduced);
  CHECK_THROWS_AS(classify_word(w("")), NotCyclicallyReduced);
  CHECK_THROWS_AS(classify_word(parse_word("g s", Alphabet::GS)), SyntaxError);
}

TEST_CASE("find_fork") {
  const auto f = find_fork(w("g g h"));
  REQUIRE(f.has_value());
  CHECK(f->label == EdgeLabel::G);
  CHECK(f->first != f->second);
  CHECK(((f->first_prev == kG && f->second_prev == kH) || (f->first_prev == kH && f->second_prev == kG)));
  CHECK_FALSE(find_fork(w("g h g h g h g h")).has_value());
  CHECK_FALSE(find_fork(w("g^5")).has_value());
  CHECK_FALSE(find_fork(w("h^-1 g h^-1 g h^-1 g")).has_value());
  CHECK_THROWS_AS(find_fork(w("g g^-1")), NotCyclicallyReduced);
  // Inverse letters traverse their edge backward.
  CHECK(preceding_step(w("g H"), 1) == kGi);
  CHECK(preceding_step(w("g H"), 0) == kHi);
}

TEST_CASE("verify_fork_lemma") {
  const auto r1 = verify_fork_lemma(1);
  CHECK(r1.pass);
  CHECK(r1.bad_words == 0);
  CHECK(r1.words_checked == 4);
  const auto r8 = verify_fork_lemma(8);
  CHECK(r8.pass);
  CHECK(r8.counterexamples.empty());
  const auto r10 = verify_fork_lemma(10);
  CHECK(r10.pass);
  CHECK(r10.converse_violations == 0);
  const auto j = nlohmann::json::parse(to_json(r10));
  CHECK(j["status"] == "pass");
  CHECK(j["witnesses"].empty());
}

TEST_CASE("property: classifier agrees with brute force up to length 8") {
  std::size_t seen = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    oracle::for_each_word(n, true, [&](const Word& x) {
      if (!is_cyclically_reduced(x)) return;
      REQUIRE(classify_word(x) == oracle::brute_classify(x));
      ++seen;
    });
  }
  CHECK(seen == verify_fork_lemma(8).words_checked);
}

TEST_CASE("property: fork witnesses are genuine") {
  for (std::size_t n = 1; n <= 7; ++n) {
    oracle::for_each_word(n, true, [&](const Word& x) {
      if (!is_cyclically_reduced(x)) return;
      const auto f = find_fork(x);
      if (!f) return;
      REQUIRE(f->first != f->second);
      REQUIRE(x[f->first].symbol == x[f->second].symbol);
      REQUIRE(f->first_prev == preceding_step(x, f->first));
      REQUIRE(f->second_prev == preceding_step(x, f->second));
      REQUIRE(f->first_prev != f->second_prev);
    });
  }
}

TEST_CASE("free_pair_check") {
  const auto r = free_pair_check(K2, 6);
  CHECK(r.pass);
  CHECK(r.words_checked == 4 * (1 + 3 + 9 + 27 + 81 + 243));
  CHECK(free_pair_image(w("g"), K3) == gen_g(K3));
  CHECK_FALSE(free_pair_image(w("g"), K3).is_identity());
  const auto comm = free_pair_image(w("g h g^-1 h^-1"), K3);
  CHECK_FALSE(comm.is_identity());
  // Independent: Dehn's algorithm on the substituted {g,h}-word.
  CHECK_FALSE(oracle::Dehn(3).trivial(w("g  h^-1 g h  g^-1  h^-1 g^-1 h")));
  CHECK(render_xy(w("g h^-1")) == "x*y^-1");
  CHECK(free_pair_check(K3, 6).pass);
  const auto j = nlohmann::json::parse(to_json(r, K2));
  CHECK(j["status"] == "pass");
}

TEST_CASE("property: free pair images agree with Dehn's algorithm") {
  for (auto k : {2, 3}) {
    const oracle::Dehn dehn(k);
    const auto p = GroupParam::finite(k);
    for (std::size_t n = 1; n <= 4; ++n) {
      oracle::for_each_word(n, true, [&](const Word& xy) {
        std::vector<Letter> sub;
        for (const auto& l : xy.letters()) {
          if (l.symbol == Symbol::G) {
            sub.push_back(l);
          } else {
            sub.push_back(kHi);
            sub.push_back(Letter{Symbol::G, l.sign});
            sub.push_back(kH);
          }
        }
        REQUIRE_FALSE(dehn.trivial(oracle::gh(sub)));
        REQUIRE(evaluate(oracle::gh(sub), p) == free_pair_image(xy, p));
      });
    }
  }
}

TEST_CASE("charge: generators") {
  for (auto p : {K2, K3, GroupParam::finite(4)}) {
    for (std::int64_t ell = 1; ell <= p.k(); ++ell) {
      const WSubset e = canonical_subset(p, ell);
      const auto cg = charge(e, gen_g(p));
      CHECK(cg.outflow == 1);
      CHECK(cg.inflow == 0);
      CHECK(cg.f == 1);
      CHECK(keyset(cg.outflow_set) == std::set<std::string>{"1"});
      const auto ch = charge(e, gen_h(p));
      CHECK(ch.f == 1);
      CHECK(keyset(ch.outflow_set) == std::set<std::string>{to_string(NormalForm::s_power(p, ell))});
      CHECK(charge(e, invert(gen_g(p))).f == -1);
      CHECK(charge(e, NormalForm::identity(p)).f == 0);
    }
  }
  const auto j = nlohmann::json::parse(to_json(charge(canonical_subset(K3, 1), gen_g(K3))));
  CHECK(j["op"] == "charge");
  CHECK(j["f"] == 1);
  CHECK(j["witnesses"] == nlohmann::json::array({"1"}));
}

TEST_CASE("property: charge sets match a ball scan") {
  oracle::Gen gen(51);
  for (auto p : {K2, K3}) {
    const Ball b = build_ball(p, 7);
    for (std::int64_t ell : {std::int64_t{1}, p.k() - 1}) {
      const WSubset e = canonical_subset(p, ell);
      for (int i = 0; i < 15; ++i) {
        const NormalForm gamma = gen.element(p, 3);
        const auto r = charge(e, gamma);
        const auto [out, in] = scan_charge(e, gamma, b);
        REQUIRE(keyset(r.outflow_set) == out);
        REQUIRE(keyset(r.inflow_set) == in);
      }
    }
  }
  // A translated subset and E+ in the free group.
  const WSubset et = right_translate(canonical_subset(K3, 2), el("g h", K3));
  const WSubset ep = example1_subset(GroupParam::infinite());
  const Ball b3 = build_ball(K3, 8);
  const Ball bi = build_ball(GroupParam::infinite(), 7);
  for (int i = 0; i < 10; ++i) {
    const NormalForm g3 = gen.element(K3, 3);
    const auto r3 = charge(et, g3);
    const auto s3 = scan_charge(et, g3, b3);
    REQUIRE(keyset(r3.outflow_set) == s3.first);
    REQUIRE(keyset(r3.inflow_set) == s3.second);
    const NormalForm gi = gen.element(GroupParam::infinite(), 4);
    const auto ri = charge(ep, gi);
    const auto si = scan_charge(ep, gi, bi);
    REQUIRE(keyset(ri.outflow_set) == si.first);
    REQUIRE(keyset(ri.inflow_set) == si.second);
  }
}

TEST_CASE("property: charge is a homomorphism") {
  oracle::Gen gen(52);
  for (auto p : {K2, K3}) {
    for (std::int64_t ell : {std::int64_t{1}, p.k() - 1}) {
      const WSubset e = canonical_subset(p, ell);
      for (int i = 0; i < 200; ++i) {
        const NormalForm a = gen.element(p, 6);
        const NormalForm c = gen.element(p, 6);
        const auto fa = charge(e, a).f;
        REQUIRE(charge(e, multiply(a, c)).f == fa + charge(e, c).f);
        REQUIRE(charge(e, invert(a)).f == -fa);
      }
    }
  }
}
