#include "ruij/params.hpp"

#include <cmath>
#include <sstream>

#include "ruij/errors.hpp"

namespace ruij {

namespace {

std::optional<std::string> check_resonance(cplx w1, cplx w2)
{
    const cplx ratio = w1 / w2;
    for (int q = 1; q <= 8; ++q) {
        const double p = std::round(ratio.real() * q);
        if (std::abs(ratio - cplx(p / q, 0.0)) < 1e-6) {
            std::ostringstream os;
            os << "omega1/omega2 is within 1e-6 of " << p << "/" << q
               << "; pole/zero residue formulas degenerate there";
            return os.str();
        }
    }
    return std::nullopt;
}

} // namespace

Params validate(cplx omega1, cplx omega2, cplx g)
{
    if (!(omega1.real() > 0.0))
        throw Error(ErrorKind::InvalidParams, "Re ω1 > 0 violated");
    if (!(omega2.real() > 0.0))
        throw Error(ErrorKind::InvalidParams, "Re ω2 > 0 violated");
    if (!(g.real() > 0.0))
        throw Error(ErrorKind::InvalidParams, "Re g > 0 violated");
    if (!(g.real() < omega1.real() + omega2.real()))
        throw Error(ErrorKind::InvalidParams, "Re g < Re ω1 + Re ω2 violated");

    Params p;
    p.omega1 = omega1;
    p.omega2 = omega2;
    p.g = g;
    const cplx prod = omega1 * omega2;
    p.gstar = omega1 + omega2 - g;
    p.ghat = g / prod;
    p.ghatstar = p.gstar / prod;
    p.nu_g = p.ghat.real();
    p.nu_gstar = p.ghatstar.real();
    p.hat_periods = {1.0 / omega2, 1.0 / omega1};

    if (!(p.nu_g > 0.0))
        throw Error(ErrorKind::InvalidParams, "ν_g = Re(g/(ω1ω2)) > 0 violated");
    if (!(p.nu_gstar > 0.0))
        throw Error(ErrorKind::InvalidParams, "ν_g* = Re(g*/(ω1ω2)) > 0 violated");

    p.resonance_warning = check_resonance(omega1, omega2);
    return p;
}

Params dualize(const Params& p)
{
    return validate(p.hat_periods.w1, p.hat_periods.w2, p.ghatstar);
}

bool approx_equal(cplx a, cplx b, double rel_tol)
{
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel_tol * scale;
}

bool approx_equal(const Params& a, const Params& b, double rel_tol)
{
    return approx_equal(a.omega1, b.omega1, rel_tol) && approx_equal(a.omega2, b.omega2, rel_tol)
        && approx_equal(a.g, b.g, rel_tol) && approx_equal(a.gstar, b.gstar, rel_tol)
        && approx_equal(a.ghat, b.ghat, rel_tol) && approx_equal(a.ghatstar, b.ghatstar, rel_tol);
}

Params real_symm() { return validate(1.0, 1.0, 0.5); }

Params real_asymm() { return validate(0.3, 1.0, 0.4); }

Params complex_set() { return validate({1.0, 0.2}, 1.0, {0.5, 0.1}); }

std::optional<Params> named_params(const std::string& name)
{
    if (name == "REAL-SYMM") return real_symm();
    if (name == "REAL-ASYMM") return real_asymm();
    if (name == "COMPLEX") return complex_set();
    return std::nullopt;
}

std::string describe(const Params& p)
{
    auto c = [](cplx v) {
        std::ostringstream os;
        os.precision(6);
        os << v.real();
        if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
        return os.str();
    };
    for (const char* name : {"REAL-SYMM", "REAL-ASYMM", "COMPLEX"}) {
        if (approx_equal(p, *named_params(name), 1e-14)) return name;
    }
    return "w1=" + c(p.omega1) + ";w2=" + c(p.omega2) + ";g=" + c(p.g);
}

} // namespace ruij
