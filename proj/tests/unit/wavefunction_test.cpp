#include <gtest/gtest.h>

#include "ruij/errors.hpp"
#include "ruij/wavefunction.hpp"
#include "test_support.hpp"

using namespace ruij;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ConfigError;
}

} // namespace

TEST(Wavefunction, OneParticleIsAPlaneWave)
{
    const KernelContext ctx(complex_set());
    const cplx v = psi(real_tuple({0.35}), real_tuple({-1.2}), ctx, default_psi_spec(1));
    EXPECT_LT(test::rel_err(v, std::exp(two_pi * I * 0.35 * -1.2)), 1e-14);
}

TEST(Wavefunction, TwoParticlesMatchReference)
{
    int checked = 0;
    for (const auto& r : test::read_table("kernel_reference.txt")) {
        if (r[0] != "psi2") continue;
        const KernelContext ctx(*named_params(r[1]));
        const Tuple l = real_tuple({std::stod(r[2]), std::stod(r[3])});
        const Tuple x = real_tuple({std::stod(r[4]), std::stod(r[5])});
        const cplx expected(std::stod(r[6]), std::stod(r[7]));
        const PsiResult got = psi_eval(l, x, ctx, default_psi_spec(2));
        EXPECT_LT(test::rel_err(got.value, expected), 1e-8) << r[1];
        EXPECT_LT(got.error_estimate, 1e-8 * std::abs(expected));
        ++checked;
    }
    EXPECT_EQ(checked, 2);
}

TEST(Wavefunction, SymmetricInCoordinatesAndSpectrum)
{
    const KernelContext ctx(real_asymm());
    const auto q = default_psi_spec(2);
    const cplx base = psi(real_tuple({0.2, -0.15}), real_tuple({0.5, -0.3}), ctx, q);
    EXPECT_LT(test::rel_err(psi(real_tuple({0.2, -0.15}), real_tuple({-0.3, 0.5}), ctx, q), base), 1e-8);
    EXPECT_LT(test::rel_err(psi(real_tuple({-0.15, 0.2}), real_tuple({0.5, -0.3}), ctx, q), base), 1e-8);
}

// Psi_l(x + c) = e^{2 pi i c sum l} Psi_l(x)
TEST(Wavefunction, TranslationCovariance)
{
    for (const Params& p : {real_symm(), complex_set()}) {
        const KernelContext ctx(p);
        const auto q = default_psi_spec(2);
        const Tuple l = real_tuple({0.25, -0.05});
        const double c = 0.8;
        const cplx base = psi(l, real_tuple({0.1, -0.4}), ctx, q);
        const cplx moved = psi(l, real_tuple({0.1 + c, -0.4 + c}), ctx, q);
        EXPECT_LT(test::rel_err(moved, std::exp(two_pi * I * c * 0.2) * base), 1e-8) << describe(p);
    }
}

TEST(Wavefunction, ThreeParticlesAreSymmetric)
{
    const KernelContext ctx(real_asymm());
    const auto q = default_psi_spec(3);
    const Tuple l = real_tuple({0.2, -0.1, 0.05});
    const cplx a = psi(l, real_tuple({0.4, 0.0, -0.3}), ctx, q);
    const cplx b = psi(l, real_tuple({-0.3, 0.4, 0.0}), ctx, q);
    EXPECT_LT(test::rel_err(b, a), 1e-6);
}

TEST(Wavefunction, RejectsBadShapesAndSpectra)
{
    const KernelContext ctx(real_symm());
    const auto q = default_psi_spec(2);
    EXPECT_EQ(kind_of([&] { psi(real_tuple({0.1}), real_tuple({0.1, 0.2}), ctx, q); }), ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([&] { psi(real_tuple({0, 0, 0, 0, 0}), real_tuple({0, 1, 2, 3, 4}), ctx, q); }),
              ErrorKind::DimensionTooLarge);
    SpectralVector bad{{cplx(0.1, 0.0), cplx(0.2, 0.1)}, 0.0};
    EXPECT_EQ(kind_of([&] { bad.check(ctx.params()); }), ErrorKind::ConditionViolation);
    SpectralVector shifted{real_tuple({0.1, 0.2}), 0.3};
    EXPECT_EQ(kind_of([&] { shifted.check(ctx.params()); }), ErrorKind::ConditionViolation);
    SpectralVector ok{real_tuple({0.1, 0.2}), 0.1};
    EXPECT_NO_THROW(ok.check(ctx.params()));
    EXPECT_EQ(ok.effective()[1], cplx(0.2, 0.1));
}

TEST(Wavefunction, DefaultTolerances)
{
    EXPECT_EQ(default_psi_spec(2).tolerance, 1e-9);
    EXPECT_EQ(default_psi_spec(3).tolerance, 1e-7);
    EXPECT_EQ(default_psi_spec(4).tolerance, 1e-2);
    EXPECT_EQ(default_psi_spec(4).scheme, Scheme::MonteCarlo);
}
