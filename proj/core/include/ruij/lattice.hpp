#pragma once

#include <vector>

#include "ruij/kernels.hpp"
#include "ruij/types.hpp"

namespace ruij {

// Values on the square index range [-half, half]^2. The coarse layer holds the
// same quantity computed on the sub-lattice of step 2h and is meaningful only
// at even (i, j); comparing the two gives the discretisation error.
struct LatticeGrid {
    int half = 0;
    std::vector<cplx> fine;
    std::vector<cplx> coarse;

    int width() const { return 2 * half + 1; }
    size_t index(int i, int j) const { return size_t(i + half) * width() + size_t(j + half); }
    cplx at(int i, int j) const { return fine[index(i, j)]; }
    cplx coarse_at(int i, int j) const { return coarse[index(i, j)]; }
};

struct LatticeSum {
    cplx fine;
    cplx coarse;
    double abs_sum = 0.0; // sum of |terms| times the cell volume
};

// Uniform lattice y_k = k h, k in [-half, half], with tables of K and of the
// pair weight mu(y)mu(-y) at every difference of lattice nodes. All nested
// integrals of the wave-function representation become sums on this lattice;
// the trapezoid rule converges geometrically because every integrand is
// analytic in a strip around the real axis.
class Lattice {
public:
    Lattice(const KernelContext& ctx, double h, int half, int pad);

    const KernelContext& context() const { return ctx_; }
    double h() const { return h_; }
    int half() const { return half_; }
    int pad() const { return pad_; }
    double node(int k) const { return k * h_; }

    // K(m h) and mu(m h) mu(-m h) for |m| <= 2 half.
    cplx K(int m) const { return ktab_[size_t(m < 0 ? -m : m)]; }
    cplx pair(int m) const { return wtab_[size_t(m < 0 ? -m : m)]; }

    // K(x - y_k) for k in [-half, half], stored at k + half.
    std::vector<cplx> kernel_column(cplx x) const;

    // Psi_{l1,l2}(y_i, y_j) for |i|, |j| <= half - pad; the inner sum runs
    // over the full lattice.
    LatticeGrid psi2_grid(cplx l1, cplx l2) const;

    // Two-dimensional sum  h^2 sum_{k<l} pair(k-l) G(k,l) v(k) v(l)  over the
    // grid range, which is the kernel-weighted integral of the three-particle
    // recursion step with v(k) carrying every factor that depends on y_k alone.
    LatticeSum pair_sum(const LatticeGrid& g, const std::vector<cplx>& v) const;

private:
    KernelContext ctx_;
    double h_;
    int half_;
    int pad_;
    std::vector<cplx> ktab_;
    std::vector<cplx> wtab_;
};

// Step for a lattice integral whose integrand is analytic in |Im y| < strip
// and oscillates with the given frequency.
double lattice_step(double strip, double frequency, double tol);

} // namespace ruij
