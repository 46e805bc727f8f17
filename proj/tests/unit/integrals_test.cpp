#include <gtest/gtest.h>

#include "ruij/errors.hpp"
#include "ruij/integrals.hpp"
#include "test_support.hpp"

using namespace ruij;

TEST(Integrals, KernelFourierTransform)
{
    const KernelContext ctx(complex_set());
    const QuadratureSpec q;
    for (const cplx l : {cplx(0.0), cplx(0.3), cplx(0.3, 0.1 * ctx.params().nu_g)}) {
        const auto r = kernel_fourier_check(l, ctx, q);
        EXPECT_LT(r.residual, 1e-8) << l;
    }
}

TEST(Integrals, ClosedFormsReduceToTheKernelTransform)
{
    const KernelContext ctx(real_asymm());
    const Tuple g = real_tuple({0.1}), l = real_tuple({-0.2});
    const double x = 0.3;
    const cplx expected = hat_K(-0.3, ctx) / norm_d(1, ctx) * std::exp(two_pi * I * -0.3 * x);
    EXPECT_LT(test::rel_err(closed_form_J(g, l, x, ctx), expected), 1e-14);
}

TEST(Integrals, OneParticleIntegrals)
{
    const KernelContext ctx(real_asymm());
    const QuadratureSpec q;
    const double shift = 0.2 * ctx.params().nu_g;
    const Tuple g = real_tuple({0.1});
    const Tuple l1{cplx(-0.2, shift)}, l2{cplx(-0.2, shift), cplx(0.35, shift)};
    EXPECT_LT(integral_J_check(g, l1, 0.3, ctx, q).residual, 1e-8);
    EXPECT_LT(integral_I_check(g, l2, 0.3, ctx, q).residual, 1e-8);
}

TEST(Integrals, AdmissibilityConditions)
{
    const Params p = real_symm();
    EXPECT_NO_THROW(check_integral_conditions(real_tuple({0.1}), {cplx(0.2, 0.1)}, p));
    EXPECT_THROW(check_integral_conditions(real_tuple({0.1}), {cplx(0.2, 0.3)}, p), Error);
    EXPECT_THROW(check_integral_conditions(real_tuple({0.1, 0.2}), {cplx(0.2, 0.1), cplx(0.2, 0.0)}, p), Error);
}

TEST(Integrals, RegularizedPairingMatchesClosedForm)
{
    const KernelContext ctx(real_symm());
    const auto r = regularized_pairing(real_tuple({0.15}), real_tuple({-0.05}), 2.0, 0.05, ctx, QuadratureSpec{});
    EXPECT_LT(test::rel_err(r.value, closed_form_pairing(real_tuple({0.15}), real_tuple({-0.05}), 2.0, 0.05, ctx)),
              1e-8);
}

TEST(Integrals, ScheduleValidation)
{
    const Params p = real_symm();
    RegularizationSchedule s;
    EXPECT_NO_THROW(s.check(p));
    s.x_values = {10.0, 20.0};
    s.eps_values = {1e-2, 1e-3};
    try {
        s.check(p);
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ScheduleTooShort);
    }
    s = {};
    s.eps_values = {1e-2, 1e-1, 1e-4};
    EXPECT_THROW(s.check(p), Error);
}

TEST(Integrals, TestFunctionCatalog)
{
    const auto cat = TestFunction::catalog();
    EXPECT_EQ(cat.size(), 3u);
    for (const auto& phi : cat) {
        EXPECT_LE(std::abs(phi(phi.center + phi.support_radius())), 1e-16 * (1.0 + 1e-9)) << phi.name();
        EXPECT_LT(test::rel_err(phi(real_tuple({0.1, -0.2})), phi(0.1) * phi(-0.2)), 1e-15);
    }
}

TEST(Integrals, OneParticlePlancherelAndInversion)
{
    const KernelContext ctx(real_asymm());
    const QuadratureSpec q;
    const auto phi = TestFunction::gaussian(0.2, 0.3);
    const auto r = plancherel_check(phi, 1, ctx, q);
    EXPECT_LT(r.residual, 1e-6);
    const auto inv = inversion_check(phi, {-0.3, 0.0, 0.25}, ctx, q);
    EXPECT_LT(inv.residual, 1e-6);
}

TEST(Integrals, DeltaSequenceOffSupport)
{
    const KernelContext ctx(real_asymm());
    const auto r = delta_sequence_test(TestFunction::gaussian(0.2, 0.3), real_tuple({3.0}), RegularizationSchedule{},
                                       ctx, QuadratureSpec{});
    EXPECT_TRUE(r.pass) << r.residual;
    EXPECT_LT(r.residual, 1e-6);
}
