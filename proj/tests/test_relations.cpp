#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>

#include "loxo/io.hpp"
#include "loxo/relations.hpp"

using namespace loxo;

namespace {

Word W(const char* s) { return parse_word(s); }

std::vector<int> all_but(std::set<int> removed, int m = 28) {
  std::vector<int> out;
  for (int i = 1; i <= m; ++i)
    if (!removed.count(i)) out.push_back(i);
  return out;
}

std::vector<int> range(int a, int b) {
  std::vector<int> out;
  for (int i = a; i <= b; ++i) out.push_back(i);
  return out;
}

// Oracle: w lies in gamma * J_psi iff gamma^-1 w = psi u for a reduced u with no cancellation against psi.
bool membership_oracle(const Word& gamma, const Word& psi, const Word& w) {
  for (const Word& u : reduced_words(2, 6)) {
    std::vector<Letter> cat = psi;
    cat.insert(cat.end(), u.begin(), u.end());
    if (!is_reduced(cat)) continue;
    if (reduce([&] {
          std::vector<Letter> v = gamma;
          v.insert(v.end(), cat.begin(), cat.end());
          return v;
        }()) == w)
      return true;
  }
  return false;
}

Json load_fixture(const char* name) {
  std::ifstream f(std::string(LOXO_TEST_DATA) + "/" + name);
  return Json::parse(f);
}

}  // namespace

TEST(Membership, Examples) {
  EXPECT_TRUE(membership(W("x1 x2 x1'"), W("x1 x2' x1'"), W("x2")));
  EXPECT_FALSE(membership(W("x1 x2 x1'"), W("x1 x2' x1'"), W("x1")));
  EXPECT_TRUE(membership(Word{}, W("x1 x1"), W("x1 x1 x2")));
}

TEST(Membership, AgreesWithSearchOracle) {
  const Word gamma = W("x2 x1 x2'");
  const Word psi = W("x2 x1' x2");
  for (const Word& w : reduced_words(2, 4)) EXPECT_EQ(membership(gamma, psi, w), membership_oracle(gamma, psi, w)) << to_string(w);
}

TEST(ClassifyPrefix, Examples) {
  const Word g = W("x1 x2 x1'"), p = W("x1 x2' x1'");
  EXPECT_EQ(classify_prefix(g, p, W("x2 x2"), 2), PrefixClass::AllIn);
  EXPECT_EQ(classify_prefix(g, p, W("x1 x1"), 2), PrefixClass::AllOut);
  EXPECT_EQ(classify_prefix(W("x1"), p, W("x1 x1"), 2), PrefixClass::Mixed);
  // x1 x2 * J(x2' x1' x2) is exactly J(x2), so nothing is mixed.
  for (const Word& phi : enumerate_psi(2).entries)
    EXPECT_NE(classify_prefix(W("x1 x2"), W("x2' x1' x2"), phi, 2), PrefixClass::Mixed) << to_string(phi);
}

TEST(ClassifyPrefix, AgreesWithDepthSixEnumeration) {
  const PsiTable t = enumerate_psi(2);
  for (const auto& [gamma, psi] : {std::pair{W("x1 x2"), W("x2' x1' x2")}, std::pair{W("x1"), W("x1 x2' x1'")},
                                    std::pair{W("x1 x2 x1'"), W("x1 x2 x2")}})
  for (const Word& phi : t.entries) {
    int in = 0, out = 0;
    for (const Word& w : extensions(phi, 2, 6)) (membership(gamma, psi, w) ? in : out)++;
    const PrefixClass expected = out == 0 ? PrefixClass::AllIn : in == 0 ? PrefixClass::AllOut : PrefixClass::Mixed;
    EXPECT_EQ(classify_prefix(gamma, psi, phi, 2), expected) << to_string(phi);
  }
}

TEST(DeriveRelation, Examples) {
  const PsiTable t = enumerate_psi(2);
  auto r1 = derive_relation(W("x1 x2 x1'"), W("x1 x2' x1'"), t);
  ASSERT_TRUE(r1);
  EXPECT_EQ(r1->S, range(1, 7));
  EXPECT_EQ(r1->cancellation, 3);

  auto r2 = derive_relation(W("x1'"), W("x1 x2' x2'"), t);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->S, all_but({14}));
  EXPECT_EQ(r2->cancellation, 1);

  auto r3 = derive_relation(W("x2 x1 x2'"), W("x2 x2"), t);
  ASSERT_TRUE(r3);
  EXPECT_EQ(r3->S, all_but({20}));

  EXPECT_FALSE(derive_relation(W("x1"), W("x1 x2' x1'"), t));
}

TEST(DeriveRelation, ResidueOfWorkedExample) {
  const PsiTable t = enumerate_psi(2);
  auto r = derive_relation(W("x1 x2 x1'"), W("x1 x2' x1'"), t);
  ASSERT_TRUE(r);
  const std::set<Word> residue(r->residue.begin(), r->residue.end());
  EXPECT_TRUE(residue.count(W("x1")));
  EXPECT_FALSE(residue.count(W("x2")));
}

TEST(EnumerateRelations, CountsAndHistogram) {
  const auto rels = enumerate_relations(2);
  ASSERT_EQ(rels.size(), 60u);
  std::map<int, int> hist;
  for (const auto& r : rels) ++hist[r.cancellation];
  EXPECT_EQ(hist[3], 8);
  EXPECT_EQ(hist[2], 16);
  EXPECT_EQ(hist[1], 36);
  int inv = 0;
  for (const auto& r : rels) inv += r.gamma == W("x1'");
  EXPECT_EQ(inv, 7);
  for (int n = 2; n <= 3; ++n)
    EXPECT_EQ(static_cast<int>(enumerate_relations(n).size()), 2 * n * (8 * n * n - 10 * n + 3));
}

TEST(EnumerateRelations, NothingForTheOtherPairs) {
  const PsiTable t = enumerate_psi(2);
  int none = 0;
  for (const Word& g : enumerate_gamma_nought(2).entries)
    for (const Word& p : t.entries) none += !derive_relation(g, p, t).has_value();
  EXPECT_EQ(none, 336 - 60);
}

TEST(EnumerateRelations, MatchesCorrectedFixture) {
  const auto rels = enumerate_relations(2);
  std::map<std::pair<Word, Word>, Relation> by_pair;
  for (const auto& r : rels) by_pair[{r.gamma, r.s}] = r;
  const Json fixture = load_fixture("relations_fixture.json");
  ASSERT_EQ(fixture.size(), 60u);
  int differing = 0;
  for (const auto& row : fixture) {
    const auto it = by_pair.find({parse_word(row["gamma"].get<std::string>()), parse_word(row["s"].get<std::string>())});
    ASSERT_NE(it, by_pair.end()) << row.dump();
    const auto listed = row["S"].get<std::vector<int>>();
    const auto expected = row.contains("corrected_S") ? row["corrected_S"].get<std::vector<int>>() : listed;
    EXPECT_EQ(it->second.S, expected) << row.dump();
    EXPECT_EQ(it->second.cancellation, row["cancellation"].get<int>());
    differing += it->second.S != listed;
  }
  EXPECT_EQ(differing, 3);
}

TEST(ValidateRelation, Examples) {
  const PsiTable t = enumerate_psi(2);
  auto r = derive_relation(W("x1 x2 x1'"), W("x1 x2' x1'"), t);
  ASSERT_TRUE(r);
  EXPECT_TRUE(validate_relation(*r, t, 7));
  Relation broken = *r;
  broken.S.pop_back();
  EXPECT_FALSE(validate_relation(broken, t, 7));

  auto r6 = derive_relation(W("x2 x1 x2'"), W("x2 x1' x2"), t);
  ASSERT_TRUE(r6);
  EXPECT_EQ(r6->S, all_but({21}));
  EXPECT_TRUE(validate_relation(*r6, t, 7));
}

TEST(ValidateRelation, EveryDerivedRelation) {
  const PsiTable t2 = enumerate_psi(2);
  for (const auto& r : enumerate_relations(2))
    EXPECT_TRUE(validate_relation(r, t2, static_cast<int>(r.gamma.size() + r.s.size()) + 2)) << to_string(r.gamma);
  const PsiTable t3 = enumerate_psi(3);
  for (const auto& r : enumerate_relations(3))
    EXPECT_TRUE(validate_relation(r, t3, static_cast<int>(r.gamma.size() + 3))) << to_string(r.gamma);
}

TEST(EnumerateRelations, AllGammaModeContainsGammaNought) {
  const auto all = enumerate_relations_all_gamma(2, 3);
  std::set<std::pair<Word, Word>> pairs;
  for (const auto& r : all) pairs.insert({r.gamma, r.s});
  for (const auto& r : enumerate_relations(2)) EXPECT_TRUE(pairs.count({r.gamma, r.s}));
  EXPECT_GE(all.size(), 60u);
}
