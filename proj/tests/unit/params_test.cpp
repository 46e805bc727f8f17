#include <gtest/gtest.h>

#include "ruij/errors.hpp"
#include "ruij/params.hpp"

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

TEST(Params, DerivedConstants)
{
    const Params p = real_asymm();
    EXPECT_NEAR(p.gstar.real(), 0.9, 1e-15);
    EXPECT_NEAR(p.ghat.real(), 0.4 / 0.3, 1e-15);
    EXPECT_NEAR(p.ghatstar.real(), 3.0, 1e-14);
    EXPECT_NEAR(p.nu_g, 0.4 / 0.3, 1e-15);
    EXPECT_NEAR(p.nu_gstar, 3.0, 1e-14);
    EXPECT_NEAR(p.hat_periods.w1.real(), 1.0, 1e-15);
    EXPECT_NEAR(p.hat_periods.w2.real(), 1.0 / 0.3, 1e-14);
}

TEST(Params, RejectsInvalidTriples)
{
    EXPECT_EQ(kind_of([] { validate(-1.0, 1.0, 0.5); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { validate(1.0, 0.0, 0.5); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { validate(1.0, 1.0, 0.0); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { validate(1.0, 1.0, 2.0); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { validate(1.0, 1.0, 2.5); }), ErrorKind::InvalidParams);
}

TEST(Params, DualizeIsAnInvolution)
{
    for (const Params& p : {real_symm(), real_asymm(), complex_set()}) {
        const Params d = dualize(p);
        EXPECT_TRUE(approx_equal(dualize(d), p, 1e-13)) << describe(p);
        // Couplings trade places: the dual g* is g / (w1 w2).
        EXPECT_TRUE(approx_equal(d.gstar, p.ghat, 1e-13));
    }
}

TEST(Params, NamedSetsRoundTrip)
{
    for (const char* name : {"REAL-SYMM", "REAL-ASYMM", "COMPLEX"}) {
        const auto p = named_params(name);
        ASSERT_TRUE(p.has_value());
        EXPECT_EQ(describe(*p), name);
    }
    EXPECT_FALSE(named_params("nope").has_value());
    EXPECT_EQ(describe(validate(2.0, 1.0, 0.5)), "w1=2;w2=1;g=0.5");
}

TEST(Params, ResonanceWarning)
{
    EXPECT_TRUE(validate(0.5, 1.0, 0.4).resonance_warning.has_value());
    EXPECT_FALSE(validate(std::sqrt(2.0), 1.0, 0.4).resonance_warning.has_value());
}
