#include <gtest/gtest.h>

#include <random>
#include <set>

#include "loxo/words.hpp"

using namespace loxo;

namespace {

Word W(const char* s) { return parse_word(s); }

// Independent oracle: repeated adjacent-pair deletion until nothing changes.
Word naive_reduce(std::vector<Letter> v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == -v[i + 1]) {
        v.erase(v.begin() + i, v.begin() + i + 2);
        changed = true;
        break;
      }
  }
  return v;
}

Word random_word(std::mt19937_64& rng, int n, int len) {
  std::vector<Letter> letters = alphabet(n);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) raw.push_back(letters[pick(rng)]);
  return reduce(raw);
}

}  // namespace

TEST(Words, ReduceExamples) {
  EXPECT_TRUE(reduce({}).empty());
  EXPECT_TRUE(reduce({1, -1}).empty());
  std::vector<Letter> chain = W("x1 x2 x1'");
  const Word tail = W("x1 x2' x1'");
  chain.insert(chain.end(), tail.begin(), tail.end());
  EXPECT_TRUE(reduce(chain).empty());
}

TEST(Words, ReduceIdempotentExhaustive) {
  const std::vector<Letter> letters = alphabet(2);
  for (int len = 0; len <= 8; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<Letter> s;
      for (auto i : idx) s.push_back(letters[i]);
      const Word r = reduce(s);
      ASSERT_EQ(reduce(r), r);
      ASSERT_EQ(r, naive_reduce(s));
      ASSERT_TRUE(is_reduced(r));
      int k = 0;
      while (k < len && ++idx[k] == letters.size()) idx[k++] = 0;
      if (k == len) break;
    }
  }
}

TEST(Words, MultiplyExamples) {
  EXPECT_EQ(multiply(W("x1 x2"), W("x2' x1")), W("x1 x1"));
  EXPECT_EQ(multiply(Word{}, W("x1 x2")), W("x1 x2"));
  EXPECT_EQ(multiply(W("x1 x2 x1'"), W("x1 x2' x2'")), W("x1 x2'"));
}

TEST(Words, MultiplyInverseRandom) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Word w = random_word(rng, 3, 12);
    EXPECT_TRUE(multiply(w, invert(w)).empty());
    EXPECT_EQ(invert(invert(w)), w);
  }
}

TEST(Words, MultiplyAssociative) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const Word a = random_word(rng, 2, 6), b = random_word(rng, 2, 6), c = random_word(rng, 2, 6);
    EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
  }
}

TEST(Words, InvertExamples) {
  EXPECT_EQ(invert(W("x1 x2 x1'")), W("x1 x2' x1'"));
  EXPECT_TRUE(invert(Word{}).empty());
  EXPECT_EQ(invert(W("x2' x1 x1")), W("x1' x1' x2"));
}

TEST(Words, IsPrefix) {
  EXPECT_TRUE(is_prefix(W("x1 x2"), W("x1 x2 x1")));
  EXPECT_FALSE(is_prefix(W("x1 x2"), W("x1")));
  EXPECT_FALSE(is_prefix(W("x1 x2' x1'"), W("x1 x2' x1")));
}

TEST(Words, Cancellation) {
  EXPECT_EQ(cancellation(W("x1 x2 x1'"), W("x1 x2' x1'")), 3);
  EXPECT_EQ(cancellation(W("x1"), W("x2 x2")), 0);
  EXPECT_EQ(cancellation(W("x1'"), W("x1 x2' x2'")), 1);
}

TEST(Words, TokenGrammarRoundTrip) {
  EXPECT_EQ(to_string(Word{}), "1");
  EXPECT_TRUE(parse_word("1").empty());
  EXPECT_EQ(parse_word("x3' x12"), (Word{-3, 12}));
  EXPECT_EQ(to_string(Word{1, -2, 3}), "x1 x2' x3");
  EXPECT_THROW(parse_word("y1"), std::invalid_argument);
  EXPECT_THROW(parse_word("x0"), std::invalid_argument);
}

TEST(Psi, ListingOrderN2) {
  const PsiTable t = enumerate_psi(2);
  const char* listing[28] = {"x1 x2' x1'", "x1 x2' x1",  "x1 x2' x2'", "x1 x2 x2",   "x1 x2 x1'",  "x1 x2 x1",
                             "x1 x1",      "x2' x1' x2'", "x2' x1' x2", "x2' x1' x1'", "x2' x1 x1",  "x2' x1 x2'",
                             "x2' x1 x2",  "x2' x2'",    "x2 x1' x2'", "x2 x1' x2",  "x2 x1' x1'", "x2 x1 x1",
                             "x2 x1 x2'",  "x2 x1 x2",   "x2 x2",      "x1' x2' x1'", "x1' x2' x1", "x1' x2' x2'",
                             "x1' x2 x2",  "x1' x2 x1'", "x1' x2 x1",  "x1' x1'"};
  ASSERT_EQ(t.size(), 28);
  for (int i = 0; i < 28; ++i) EXPECT_EQ(t.at(i + 1), W(listing[i])) << i + 1;
  EXPECT_EQ(t.index(W("x2 x1 x2'")), 19);
  EXPECT_EQ(t.index(W("x1' x2 x1")), 27);
  EXPECT_EQ(t.index(W("x1 x2")), 0);
}

TEST(Psi, SizeFormula) {
  for (int n = 2; n <= 5; ++n) {
    const PsiTable t = enumerate_psi(n);
    EXPECT_EQ(t.size(), (2 * n - 1) * (2 * n - 1) * (2 * n - 1) + 1);
  }
  EXPECT_THROW(enumerate_psi(1), std::invalid_argument);
}

TEST(Psi, MatchesBruteForceN3) {
  std::set<Word> brute;
  for (const Word& w : reduced_words(3, 3)) {
    if (w.size() == 2 && w[0] == w[1]) brute.insert(w);
    if (w.size() == 3 && generator(w[1]) != generator(w[0])) brute.insert(w);
  }
  const PsiTable t = enumerate_psi(3);
  EXPECT_EQ(std::set<Word>(t.entries.begin(), t.entries.end()), brute);
  for (int i = 1; i <= t.size(); ++i) EXPECT_EQ(t.index(t.at(i)), i);
}

TEST(Psi, PrefixSetsPartitionLongWords) {
  const PsiTable t = enumerate_psi(2);
  for (const Word& w : reduced_words(2, 5)) {
    int hits = 0;
    for (const Word& p : t.entries) hits += is_prefix(p, w);
    if (w.size() >= 3) EXPECT_EQ(hits, 1) << to_string(w);
    EXPECT_EQ(psi_prefix(t, w) != 0, hits == 1);
  }
}

TEST(Psi, InversesOutsideTable) {
  const PsiTable t = enumerate_psi(2);
  std::set<Word> missing;
  for (const Word& w : t.entries)
    if (t.index(invert(w)) == 0) missing.insert(w);
  const std::set<Word> expected = {W("x1 x2' x2'"), W("x1 x2 x2"),    W("x2' x1' x1'"), W("x2' x1 x1"),
                                   W("x2 x1' x1'"), W("x2 x1 x1"),    W("x1' x2' x2'"), W("x1' x2 x2")};
  EXPECT_EQ(missing, expected);
}

TEST(GammaNought, N2) {
  const GammaNought g = enumerate_gamma_nought(2);
  ASSERT_EQ(g.entries.size(), 12u);
  const std::set<Word> got(g.entries.begin(), g.entries.end());
  const std::set<Word> expected = {W("x1"),        W("x2"),        W("x2'"),       W("x1'"),
                                   W("x1 x2 x1'"), W("x1' x2 x1"), W("x2 x1 x2'"), W("x2' x1 x2"),
                                   W("x1 x2' x1'"), W("x1' x2' x1"), W("x2 x1' x2'"), W("x2' x1' x2")};
  EXPECT_EQ(got, expected);
}

TEST(GammaNought, Sizes) {
  for (int n = 2; n <= 4; ++n) {
    const GammaNought g = enumerate_gamma_nought(n);
    EXPECT_EQ(static_cast<int>(g.entries.size()), 2 * n * (2 * n - 1));
    std::set<Word> brute;
    for (Letter a : alphabet(n)) {
      brute.insert(Word{a});
      for (Letter b : alphabet(n))
        if (generator(b) != generator(a)) brute.insert(Word{a, b, -a});
    }
    EXPECT_EQ(std::set<Word>(g.entries.begin(), g.entries.end()), brute);
  }
  EXPECT_THROW(enumerate_gamma_nought(1), std::invalid_argument);
}
