#include <gtest/gtest.h>

#include <map>

#include "ruij/errors.hpp"
#include "ruij/kernels.hpp"
#include "test_support.hpp"

using namespace ruij;

TEST(Kernels, MatchReferenceValues)
{
    int checked = 0;
    for (const auto& r : test::read_table("kernel_reference.txt")) {
        const std::string& kind = r[0];
        if (kind == "psi2") continue;
        const KernelContext ctx(*named_params(r[1]));
        const cplx expected(std::stod(r[r.size() - 2]), std::stod(r[r.size() - 1]));
        cplx got;
        if (kind == "K") got = kernel_K(std::stod(r[2]), ctx);
        else if (kind == "mu") got = measure_mu(std::stod(r[2]), ctx);
        else if (kind == "Khat") got = hat_K(std::stod(r[2]), ctx);
        else if (kind == "d1") got = norm_d(1, ctx);
        else FAIL() << "unknown kind " << kind;
        EXPECT_LT(test::rel_err(got, expected), 1e-11) << kind << " " << r[1] << " " << r[2];
        ++checked;
    }
    EXPECT_EQ(checked, 33);
}

TEST(Kernels, DualKernelIsKernelOfDualParameters)
{
    for (const Params& p : {real_symm(), real_asymm(), complex_set()}) {
        const KernelContext ctx(p);
        const KernelContext dual = ctx.dual_context();
        for (double l : {0.0, 0.25, -1.3}) {
            EXPECT_LT(test::rel_err(hat_K(l, ctx), kernel_K(l, dual)), 1e-13);
            if (l != 0.0) EXPECT_LT(test::rel_err(hat_mu(l, ctx), measure_mu(l, dual)), 1e-13);
        }
        EXPECT_EQ(hat_mu(0.0, ctx), cplx(0.0));
        EXPECT_EQ(measure_mu(0.0, dual), cplx(0.0));
    }
}

TEST(Kernels, KernelIsEvenAndBoundedByItsStrip)
{
    const KernelContext ctx(real_asymm());
    for (double x : {0.1, 0.9, 2.7}) EXPECT_LT(test::rel_err(kernel_K(-x, ctx), kernel_K(x, ctx)), 1e-13);
    EXPECT_NEAR(ctx.kernel_strip(), 0.45, 1e-15);
    EXPECT_NO_THROW(kernel_K(cplx(0.2, 0.4), ctx));
    try {
        kernel_K(cplx(0.2, 0.46), ctx);
        FAIL() << "no error outside the strip";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StripViolation);
    }
}

TEST(Kernels, ProductsFactorise)
{
    const KernelContext ctx(complex_set());
    const Tuple x = real_tuple({0.3, -0.4}), y = real_tuple({0.1});
    EXPECT_LT(test::rel_err(product_K(x, y, ctx), kernel_K(0.2, ctx) * kernel_K(-0.5, ctx)), 1e-14);
    EXPECT_LT(test::rel_err(product_mu(x, ctx), 0.5 * measure_pair(0.7, ctx)), 1e-13);
    EXPECT_LT(test::rel_err(measure_pair(0.7, ctx), measure_mu(0.7, ctx) * measure_mu(-0.7, ctx)), 1e-13);
    EXPECT_LT(test::rel_err(norm_d(3, ctx), std::pow(norm_d(1, ctx), 3)), 1e-13);
}

TEST(Kernels, ProductMeasureIsSymmetricAndRejectsCoincidences)
{
    const KernelContext ctx(real_symm());
    const Tuple x = real_tuple({0.3, -0.4, 1.1}), xp = real_tuple({1.1, 0.3, -0.4});
    EXPECT_LT(test::rel_err(product_mu(xp, ctx), product_mu(x, ctx)), 1e-13);
    EXPECT_GT(product_mu(x, ctx).real(), 0.0);
    try {
        product_mu(real_tuple({0.3, 0.3}), ctx);
        FAIL() << "no error on repeated points";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CoincidentPoints);
    }
}
