#include <gtest/gtest.h>

#include <cstdlib>

#include "ruij/errors.hpp"
#include "ruij/inequalities.hpp"
#include "ruij/numeric.hpp"

using namespace ruij;

TEST(Inequalities, SmallCases)
{
    EXPECT_EQ(eval_S({{0.5}}), 0.0);
    EXPECT_DOUBLE_EQ(eval_S({{0.5}, {1.0, -2.0}}), 3.0);
    EXPECT_DOUBLE_EQ(l1_norm({1.0, -2.5}), 3.5);
    // One point against two: the triangle inequality.
    EXPECT_DOUBLE_EQ(eval_L({0.0}, {1.0, 2.0}), 1.0 - 1.0 - 2.0);
    const std::vector<double> x{0.3, -1.0, 4.0};
    EXPECT_EQ(eval_R(x, x), 0.0);
}

TEST(Inequalities, ShapesAndRanges)
{
    EXPECT_THROW(eval_S({{0.5}, {1.0}}), Error);
    EXPECT_THROW(eval_L({0.0}, {1.0}), Error);
    EXPECT_THROW(eval_R({0.0}, {1.0, 2.0}), Error);
    EXPECT_THROW(S_bound({{0.5}, {1.0, 2.0}}, 2.5), Error);
    EXPECT_NO_THROW(S_bound({{0.5}, {1.0, 2.0}}, 2.0));
    InequalityRun run;
    EXPECT_THROW(check_R_bound(run, 1.5), Error);
}

// The bounds themselves, on fresh samples from a different seed than the suite.
TEST(Inequalities, PropertiesHold)
{
    for (int n : {2, 3, 4}) {
        InequalityRun run;
        run.n = n;
        run.samples = 20000;
        run.seed = 99 + n;
        EXPECT_EQ(check_S_bound(run, 2.0 * (n - 1)).residual, 0.0) << n;
        EXPECT_EQ(check_S_bound(run, 0.0).residual, 0.0) << n;
        EXPECT_EQ(check_L_nonpositive(run).residual, 0.0) << n;
        EXPECT_EQ(check_R_bound(run, 1.0).residual, 0.0) << n;
        EXPECT_EQ(check_L_R_symmetries(run).residual, 0.0) << n;
    }
}

TEST(Inequalities, IndependentOfWorkerCount)
{
    InequalityRun run;
    run.n = 3;
    run.samples = 30000;
    setenv("RUIJ_THREADS", "1", 1);
    const auto a = check_S_bound(run, 1.0);
    setenv("RUIJ_THREADS", "4", 1);
    const auto b = check_S_bound(run, 1.0);
    unsetenv("RUIJ_THREADS");
    ASSERT_EQ(a.values.size(), b.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(a.values[i].second, b.values[i].second) << a.values[i].first;
}
