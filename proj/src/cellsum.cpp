#include "calclab/cellsum.hpp"

namespace calclab::cellsum {

double pv_sum_scalar(const PvSumArgs& a) {
    double acc = 0.0;
    const double base = a.x - a.y0;
    for (std::ptrdiff_t c = a.c_lo; c < a.c_hi; ++c) {
        if (c == a.skip) continue;
        const double dx = base - (static_cast<double>(c) + 0.5) * a.h;
        double num = a.f[c];
        for (int j = 0; j < a.m; ++j) num *= a.ax[j] - a.a_tab[j][c];
        if (a.taylor_tab) num *= a.taylor_x - a.taylor_tab[c] - a.taylor_slope[c] * dx;
        double den = dx;
        for (int p = 1; p < a.pw; ++p) den *= dx;
        acc += num / den;
    }
    return acc;
}

namespace {

using Fn = double (*)(const PvSumArgs&);

Fn pick_default() {
#if defined(CALCLAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &pv_sum_avx2;
#endif
    return &pv_sum_scalar;
}

Fn g_fn = pick_default();
Backend g_backend =
#if defined(CALCLAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) ? Backend::Avx2
                                                                      : Backend::Scalar;
#else
    Backend::Scalar;
#endif

}  // namespace

double pv_sum(const PvSumArgs& args) { return g_fn(args); }

Backend active_backend() { return g_backend; }

std::string backend_name() { return g_backend == Backend::Avx2 ? "avx2" : "scalar"; }

Backend force_backend(Backend b) {
#if defined(CALCLAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    if (b == Backend::Avx2 && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        g_fn = &pv_sum_avx2;
        g_backend = Backend::Avx2;
        return g_backend;
    }
#endif
    g_fn = &pv_sum_scalar;
    g_backend = Backend::Scalar;
    return g_backend;
}

}  // namespace calclab::cellsum
