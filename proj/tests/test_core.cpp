#include "sortsum/core.hpp"
#include "sortsum/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sortsum;

TEST(ExtendedNumber, SentinelBelowEveryFinite)
{
    const auto inf = ExtendedNumber::negative_infinity();
    EXPECT_TRUE(inf.is_negative_infinity());
    EXPECT_TRUE(inf < -1e308);
    EXPECT_TRUE(inf < ExtendedNumber::finite(0.0));
    EXPECT_FALSE(inf >= 0.0);
    EXPECT_EQ(inf, ExtendedNumber::negative_infinity());
    EXPECT_TRUE(std::isinf(inf.value()));
    EXPECT_TRUE(ExtendedNumber::finite(2.0) == 2.0);
    EXPECT_TRUE(ExtendedNumber::finite(2.0) < ExtendedNumber::finite(3.0));
}

TEST(Region, Size)
{
    EXPECT_EQ(region_size(Region{3, 7}), 5u);
    EXPECT_EQ(region_size(Region{5, 5}), 1u);
    EXPECT_EQ(region_size(Region::empty()), 0u);
    EXPECT_TRUE(Region(4, 2).is_empty());
    EXPECT_EQ(Region(4, 2), Region::empty());
}

TEST(Region, Containment)
{
    const Region r{3, 9};
    EXPECT_TRUE(r.contains(3));
    EXPECT_FALSE(r.contains(10));
    EXPECT_TRUE(r.contains(Region{4, 9}));
    EXPECT_TRUE(r.contains(Region::empty()));
    EXPECT_FALSE(r.contains(Region{2, 9}));
    EXPECT_FALSE(Region::empty().contains(Region{1, 1}));
}

TEST(SortedView, SentinelReadsAreFree)
{
    auto view = SortedView::from_values({1, 2, 3});
    EXPECT_TRUE(view.get(0).is_negative_infinity());
    EXPECT_TRUE(view.get(-5).is_negative_infinity());
    EXPECT_EQ(view.ledger().count(), 0u);
    EXPECT_EQ(view.get(2), 2.0);
    EXPECT_EQ(view.ledger().count(), 1u);
}

TEST(SortedView, ReadAboveLengthIsContractViolation)
{
    auto view = SortedView::from_values({1, 2, 3});
    EXPECT_THROW(view.get(4), ContractViolation);
    EXPECT_THROW((void)view.peek(0), ContractViolation);
}

TEST(SortedView, GeneratorAtBenchmarkScale)
{
    auto view = SortedView::from_generator(10'000'000, [](Position i) { return static_cast<double>(i); });
    EXPECT_EQ(view.get(10'000'000), 1e7);
    EXPECT_EQ(view.ledger().count(), 1u);
}

TEST(SortedView, EagerValidationNamesFirstInversion)
{
    try
    {
        (void)SortedView::from_values({1, 2, 5, 4, 3});
        FAIL() << "expected InputError";
    }
    catch (const InputError& e)
    {
        EXPECT_EQ(e.position(), 4);
    }
    EXPECT_THROW((void)SortedView::from_values({1, NAN}), InputError);
    EXPECT_THROW((void)SortedView::from_values({}), InputError);
    EXPECT_NO_THROW((void)SortedView::from_values({3, 2, 1}, Validation::skip));
}

TEST(SortedView, TranscriptMatchesCount)
{
    auto view = SortedView::from_values({1, 2, 3, 4});
    view.ledger().enable_transcript();
    view.get(3);
    view.get(0);
    view.get(3);
    view.get(1);
    ASSERT_EQ(view.ledger().transcript().size(), view.ledger().count());
    EXPECT_EQ(view.ledger().count(), 3u);  // repeats count each time
    EXPECT_EQ(view.ledger().distinct_positions(), (std::vector<Position>{1, 3}));
    view.ledger().reset();
    EXPECT_EQ(view.ledger().count(), 0u);
    EXPECT_TRUE(view.ledger().transcript().empty());
}

TEST(SortedView, QueryLimit)
{
    auto view = SortedView::from_values({1, 2, 3});
    view.set_query_limit(2);
    view.get(1);
    view.get(0);  // sentinel does not consume budget
    view.get(2);
    try
    {
        view.get(3);
        FAIL() << "expected BudgetExceeded";
    }
    catch (const BudgetExceeded& e)
    {
        EXPECT_EQ(e.budget(), 2u);
    }
    EXPECT_EQ(view.ledger().count(), 2u);
}

TEST(SortedView, CopiesShareSourceNotLedger)
{
    auto a = SortedView::from_values({1, 2, 3});
    a.get(1);
    SortedView b = a;
    b.ledger().reset();
    b.get(2);
    b.get(3);
    EXPECT_EQ(a.ledger().count(), 1u);
    EXPECT_EQ(b.ledger().count(), 2u);
    EXPECT_EQ(b.peek(3), 3.0);
}

TEST(SortedView, SpotCheckFindsPlantedInversion)
{
    auto good = SortedView::from_generator(1 << 20, [](Position i) { return static_cast<double>(i); });
    EXPECT_FALSE(good.spot_check(64, 1).has_value());
    // Every odd position dips: any sampled pair has a good chance to see it.
    auto bad = SortedView::from_generator(1 << 20, [](Position i) { return static_cast<double>(i - 2 * (i % 2)); });
    EXPECT_TRUE(bad.spot_check(64, 1).has_value());
    EXPECT_EQ(good.ledger().count(), 0u);
}

TEST(PositionFromEnd, FloorsAtSentinel)
{
    EXPECT_EQ(position_from_end(10, 1), 10);
    EXPECT_EQ(position_from_end(10, 10), 1);
    EXPECT_EQ(position_from_end(10, 11), 0);
    EXPECT_EQ(position_from_end(10, static_cast<unsigned __int128>(1) << 100), 0);
}
