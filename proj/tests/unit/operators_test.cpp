#include <gtest/gtest.h>

#include "ruij/errors.hpp"
#include "ruij/integrals.hpp"
#include "ruij/operators.hpp"
#include "test_support.hpp"

using namespace ruij;

TEST(Operators, MacdonaldOnAPlaneWave)
{
    const KernelContext ctx(real_asymm());
    const double l = 0.27;
    const TupleFunction wave = [l](const Tuple& x) { return std::exp(two_pi * I * l * x[0]); };
    const cplx x = 0.4;
    const cplx expected = std::exp(two_pi * l * ctx.params().omega1) * wave({x});
    EXPECT_LT(test::rel_err(macdonald_apply(1, wave, {x}, ctx), expected), 1e-13);
    EXPECT_LT(test::rel_err(macdonald_generating(0.7, wave, {x}, ctx), (0.7 - std::exp(two_pi * l * 0.3)) * wave({x})),
              1e-13);
}

TEST(Operators, MacdonaldEigenRelation)
{
    const KernelContext ctx(real_asymm());
    const QuadratureSpec q;
    const auto r1 = macdonald_eigen_check(real_tuple({0.2}), real_tuple({0.4}), cplx(0.7, 0.1), ctx, q);
    EXPECT_LT(r1.residual, 1e-12);
    const auto r2 = macdonald_eigen_check(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), cplx(0.7, 0.1), ctx, q);
    EXPECT_LT(r2.residual, 1e-5);
    EXPECT_TRUE(r2.pass);
}

TEST(Operators, ShiftsBeyondTheStripAreRejected)
{
    const KernelContext symm(real_symm());
    ShiftPlan plan{{0}, cplx(0.0, -1.0), 0.0};
    try {
        plan.check(real_tuple({0.0, 0.5}), symm.kernel_strip());
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ContourViolation);
    }
}

TEST(Operators, BaxterOnAPlaneWave)
{
    const KernelContext ctx(real_symm());
    const auto r = baxter_eigen_check(real_tuple({0.2}), real_tuple({0.4}), 0.15, ctx, QuadratureSpec{});
    EXPECT_LT(r.residual, 1e-8);
}

TEST(Operators, BaxterCommutes)
{
    const KernelContext ctx(real_asymm());
    const TestFunction g = TestFunction::gaussian(0.0, 1.0);
    const TupleFunction f = [g](const Tuple& x) { return g(x); };
    QuadratureSpec q;
    q.tolerance = 1e-8;
    const auto r = baxter_commutativity_check(0.15, -0.25, f, 0.3, ctx, q, FunctionBounds{1e9, 0.0, 8.0});
    EXPECT_TRUE(r.pass) << r.residual;
}

TEST(Operators, GaugeConjugation)
{
    const TestFunction g = TestFunction::gaussian(0.0, 1.0);
    const TupleFunction f = [g](const Tuple& x) { return g(x); };
    for (const Params& p : {real_symm(), real_asymm(), complex_set()})
        for (int r = 1; r <= 2; ++r) {
            const auto rep = gauge_conjugation_check(r, f, real_tuple({0.3, -0.2}), KernelContext(p));
            EXPECT_LT(rep.residual, 1e-8) << describe(p) << " r=" << r;
        }
}
