#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.h"
#include "reseg/alignment.h"
#include "reseg/error.h"

using namespace reseg;

TEST(LexicalAlign, IdenticalToken) {
  EXPECT_EQ(lexical_align(TokenList{"hola"}, TokenList{"hola"}, 0.8), (AlignmentLinkSet{{0, 0}}));
}

TEST(LexicalAlign, DissimilarTokens) {
  EXPECT_TRUE(lexical_align(TokenList{"abc"}, TokenList{"xyz"}, 0.8).empty());
}

TEST(LexicalAlign, Cognates) {
  EXPECT_DOUBLE_EQ(char_similarity("presidente", "president"), 0.9);
  EXPECT_NEAR(char_similarity("europa", "europe"), 5.0 / 6.0, 1e-15);
  EXPECT_EQ(lexical_align(TokenList{"presidente", "europa"}, TokenList{"president", "europe"}, 0.7),
            (AlignmentLinkSet{{0, 0}, {1, 1}}));
}

TEST(LexicalAlign, CaseInsensitive) {
  EXPECT_DOUBLE_EQ(char_similarity("Europa", "EUROPA"), 1.0);
  EXPECT_DOUBLE_EQ(char_similarity("é", "É"), 1.0);
}

TEST(LexicalAlign, RepeatedTokenPrefersDiagonal) {
  // Both "the" tokens match both targets equally; the diagonal wins.
  const auto links = lexical_align(TokenList{"the", "x", "the"}, TokenList{"the", "y", "the"});
  EXPECT_EQ(links, (AlignmentLinkSet{{0, 0}, {2, 2}}));
}

TEST(LexicalAlign, ThresholdBounds) {
  EXPECT_THROW(lexical_align(TokenList{"a"}, TokenList{"a"}, 0.0), DataError);
  EXPECT_THROW(lexical_align(TokenList{"a"}, TokenList{"a"}, 1.5), DataError);
  EXPECT_THROW(LexicalAligner(-1), DataError);
  EXPECT_TRUE(lexical_align(TokenList{}, TokenList{"a"}).empty());
}

TEST(LexicalAlignProperty, OneToOneAndInBounds) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> vocab{"cat", "cats", "dog", "dogs", "bat", "a", "an", "the", "thee"};
  for (int n = 0; n < 2000; ++n) {
    const auto s = reseg::testing::random_tokens(rng, 10, vocab);
    const auto t = reseg::testing::random_tokens(rng, 10, vocab);
    const auto links = lexical_align(s, t);
    EXPECT_NO_THROW(links.validate(s.size(), t.size()));
    std::set<std::size_t> src_seen, tgt_seen;
    for (const Link& l : links) {
      EXPECT_TRUE(src_seen.insert(l.src).second);
      EXPECT_TRUE(tgt_seen.insert(l.tgt).second);
      EXPECT_GE(char_similarity(s[l.src], t[l.tgt]), kDefaultSimThreshold);
    }
    EXPECT_EQ(lexical_align(s, t), links);
  }
}

TEST(LexicalAlignProperty, IdenticalSequencesAlignDiagonally) {
  std::mt19937_64 rng(32);
  for (int n = 0; n < 500; ++n) {
    const auto s = reseg::testing::random_tokens(rng, 15, reseg::testing::abc());
    const auto links = lexical_align(s, s);
    ASSERT_EQ(links.size(), s.size());
    for (const Link& l : links) EXPECT_EQ(l.src, l.tgt);
  }
}

TEST(AlignmentLinkSet, SortedUniqueAndBounds) {
  AlignmentLinkSet set{{2, 1}, {0, 0}, {2, 1}};
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.links().front(), (Link{0, 0}));
  set.insert({1, 1});
  set.insert({1, 1});
  EXPECT_EQ(set.size(), 3u);
  EXPECT_TRUE(set.contains({1, 1}));
  EXPECT_NO_THROW(set.validate(3, 2));
  EXPECT_THROW(set.validate(2, 2), LinkBoundsError);
}
