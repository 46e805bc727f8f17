#include "ruij/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "ruij/errors.hpp"
#include "ruij/numeric.hpp"

namespace ruij {

double lattice_step(double strip, double frequency, double tol)
{
    if (!(strip > 0.0)) throw Error(ErrorKind::StripViolation, "lattice integrand has no analyticity strip");
    const double d = 0.85 * strip;
    return 1.0 / (std::abs(frequency) + std::log(10.0 / tol) / (two_pi * d));
}

Lattice::Lattice(const KernelContext& ctx, double h, int half, int pad)
    : ctx_(ctx), h_(h), half_(half), pad_(pad)
{
    if (!(h > 0.0) || half < 1 || pad < 0 || pad >= half)
        throw Error(ErrorKind::ConfigError, "invalid lattice dimensions");
    const int m = 2 * half;
    ktab_.assign(size_t(m) + 1, 0.0);
    wtab_.assign(size_t(m) + 1, 0.0);
    parallel_for(m + 1, [&](int k) {
        ktab_[size_t(k)] = kernel_K(k * h_, ctx_);
        wtab_[size_t(k)] = k == 0 ? cplx(0.0) : measure_pair(k * h_, ctx_);
    });
}

std::vector<cplx> Lattice::kernel_column(cplx x) const
{
    std::vector<cplx> col(size_t(2 * half_ + 1));
    const double r = x.real() / h_;
    if (x.imag() == 0.0 && std::abs(r - std::round(r)) < 1e-12 && std::abs(std::round(r)) <= half_) {
        const int i = int(std::round(r));
        for (int k = -half_; k <= half_; ++k) col[size_t(k + half_)] = K(i - k);
        return col;
    }
    parallel_for(2 * half_ + 1, [&](int idx) { col[size_t(idx)] = kernel_K(x - node(idx - half_), ctx_); });
    return col;
}

LatticeGrid Lattice::psi2_grid(cplx l1, cplx l2) const
{
    LatticeGrid g;
    g.half = half_ - pad_;
    const int w = g.width();
    g.fine.assign(size_t(w) * w, 0.0);
    g.coarse.assign(size_t(w) * w, 0.0);

    const cplx d1 = norm_d(1, ctx_);
    std::vector<cplx> osc(size_t(2 * half_ + 1));
    for (int k = -half_; k <= half_; ++k) osc[size_t(k + half_)] = std::exp(two_pi * I * (l1 - l2) * node(k));
    std::vector<cplx> outer(static_cast<size_t>(w));
    for (int i = -g.half; i <= g.half; ++i) outer[size_t(i + g.half)] = std::exp(two_pi * I * l2 * node(i));

    parallel_for(w, [&](int ii) {
        const int i = ii - g.half;
        for (int j = i; j <= g.half; ++j) {
            const int lo = std::max(-half_, std::min(i, j) - pad_);
            const int hi = std::min(half_, std::max(i, j) + pad_);
            CompensatedSum fine, coarse;
            for (int k = lo; k <= hi; ++k) {
                const cplx t = K(i - k) * K(j - k) * osc[size_t(k + half_)];
                fine.add(t);
                if ((k & 1) == 0) coarse.add(t);
            }
            const cplx pre = d1 * outer[size_t(ii)] * outer[size_t(j + g.half)];
            const cplx vf = pre * h_ * fine.value();
            const cplx vc = pre * 2.0 * h_ * coarse.value();
            g.fine[g.index(i, j)] = g.fine[g.index(j, i)] = vf;
            g.coarse[g.index(i, j)] = g.coarse[g.index(j, i)] = vc;
        }
    });
    return g;
}

LatticeSum Lattice::pair_sum(const LatticeGrid& g, const std::vector<cplx>& v) const
{
    double vmax = 0.0;
    for (int k = -g.half; k <= g.half; ++k) vmax = std::max(vmax, std::abs(v[size_t(k + half_)]));
    std::vector<int> active;
    for (int k = -g.half; k <= g.half; ++k)
        if (std::abs(v[size_t(k + half_)]) > 1e-20 * vmax) active.push_back(k);

    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (size_t a = 0; a < active.size(); ++a) {
        const int k = active[a];
        const cplx vk = v[size_t(k + half_)];
        cplx row = 0.0, row_c = 0.0;
        double row_abs = 0.0;
        for (size_t b = a + 1; b < active.size(); ++b) {
            const int l = active[b];
            const cplx wv = pair(k - l) * v[size_t(l + half_)];
            const cplx t = wv * g.at(k, l);
            row += t;
            row_abs += std::abs(t);
            if (((k | l) & 1) == 0) row_c += wv * g.coarse_at(k, l);
        }
        fine.add(vk * row);
        coarse.add(vk * row_c);
        abs_sum += std::abs(vk) * row_abs;
    }
    return {fine.value() * h_ * h_, coarse.value() * 4.0 * h_ * h_, abs_sum * h_ * h_};
}

} // namespace ruij
