// Timing comparison of the dyadic extension kernels: the straightforward
// reference route, the optimized serial kernel, and the OpenMP kernel.
// All three must produce bit-identical states; this is asserted here too.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "roughforge/rp_construct.hpp"

using namespace roughforge;

namespace {

SampledPath wiggle_path(int depth, int d, const Rational& gamma) {
    SampledPath p;
    p.depth = depth;
    p.alphabet = Alphabet::integers(d, gamma);
    p.values.assign(d, std::vector<double>(p.points()));
    for (int l = 0; l < d; ++l)
        for (int t = 0; t < p.points(); ++t) {
            double u = static_cast<double>(t) / (p.points() - 1);
            double acc = 0.0;
            for (int m = 0; m <= depth; ++m)
                acc += std::pow(2.0, -gamma.to_double() * m) *
                       std::sin(std::pow(2.0, m) * 3.14159 * u + 0.7 * (l + 1) * (m + 1));
            p.values[l][t] = acc;
        }
    return p;
}

double run(const SampledPath& p, const Rational& gamma, int N, const BuildConfig& cfg,
           DyadicGroupPath& out) {
    double best = 1e30;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        out = build_isotropic(p, gamma, N, TruncatedBasis::Kind::forests, cfg);
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

bool identical(const DyadicGroupPath& a, const DyadicGroupPath& b) {
    for (std::size_t t = 0; t < a.states.size(); ++t)
        if (std::memcmp(a.states[t].coeffs.data(), b.states[t].coeffs.data(),
                        a.states[t].coeffs.size() * sizeof(double)) != 0)
            return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int depth = argc > 1 ? std::atoi(argv[1]) : 10;
    int d = argc > 2 ? std::atoi(argv[2]) : 2;
    Rational gamma(3, 10);
    int N = 3;

    SampledPath p = wiggle_path(depth, d, gamma);
    printf("lift benchmark: depth M=%d, d=%d, gamma=%s, N=%d\n", depth, d, gamma.str().c_str(),
           N);

    BuildConfig ref;
    ref.reference = true;
    ref.policy = ExecPolicy::serial;
    BuildConfig ser;
    ser.policy = ExecPolicy::serial;
    BuildConfig par;
    par.policy = ExecPolicy::parallel;

    DyadicGroupPath x_ref, x_ser, x_par;
    double t_ser = run(p, gamma, N, ser, x_ser);
    double t_par = run(p, gamma, N, par, x_par);
    double t_ref = run(p, gamma, N, ref, x_ref);

    printf("%-22s %10.3f ms\n", "reference (serial)", t_ref * 1e3);
    printf("%-22s %10.3f ms  (%.2fx vs reference)\n", "kernel (serial)", t_ser * 1e3,
           t_ref / t_ser);
    printf("%-22s %10.3f ms  (%.2fx vs serial kernel)\n", "kernel (openmp)", t_par * 1e3,
           t_ser / t_par);

    if (!identical(x_ref, x_ser) || !identical(x_ser, x_par)) {
        printf("FAIL: kernels disagree bitwise\n");
        return 1;
    }
    printf("all kernels bit-identical\n");
    return 0;
}
