#include <gtest/gtest.h>

#include "lmo/error.hpp"
#include "lmo/labels.hpp"

namespace lmo {
namespace {

TEST(LabelSet, SortsAndDeduplicates) {
  const LabelSet s{"c", "a", "b", "a"};
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], Label("a"));
  EXPECT_EQ(s[2], Label("c"));
  EXPECT_EQ(s.to_string(), "{a,b,c}");
}

TEST(LabelSet, OrderIsLexicographicById) {
  const LabelSet s{"10", "2", "1"};
  EXPECT_EQ(s.to_string(), "{1,10,2}");
}

TEST(LabelSet, FromUniqueRejectsRepeats) {
  try {
    LabelSet::from_unique({"a", "b", "a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDuplicateLabel);
  }
  EXPECT_EQ(LabelSet::from_unique({"b", "a"}), (LabelSet{"a", "b"}));
}

TEST(LabelSet, SetAlgebra) {
  const LabelSet a{"1", "2", "3"};
  const LabelSet b{"2", "4"};
  EXPECT_EQ(a.union_with(b), (LabelSet{"1", "2", "3", "4"}));
  EXPECT_EQ(a.intersect(b), (LabelSet{"2"}));
  EXPECT_EQ(a.minus(b), (LabelSet{"1", "3"}));
  EXPECT_TRUE((LabelSet{"1", "3"}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_TRUE(LabelSet{}.is_subset_of(b));
  EXPECT_EQ(a.index_of("3"), 2u);
  EXPECT_EQ(a.index_of("9"), a.size());
}

TEST(AllSubsets, EnumeratesByBitmask) {
  const auto subsets = all_subsets(LabelSet{"x", "y"});
  ASSERT_EQ(subsets.size(), 4u);
  EXPECT_TRUE(subsets[0].empty());
  EXPECT_EQ(subsets[1], (LabelSet{"x"}));
  EXPECT_EQ(subsets[2], (LabelSet{"y"}));
  EXPECT_EQ(subsets[3], (LabelSet{"x", "y"}));
  EXPECT_EQ(all_subsets(LabelSet{"a", "b", "c", "d", "e"}).size(), 32u);
}

}  // namespace
}  // namespace lmo
