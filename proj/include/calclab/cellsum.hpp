#pragma once

#include <cstddef>
#include <string>

namespace calclab::cellsum {

/// One principal-value cell sum, the inner loop shared by the commutator
/// operators:
///
///   sum over c in [c_lo, c_hi), c != skip, of
///       f[c] * prod_{j<m} (ax[j] - a_tab[j][c]) * r(c) / (x - y_c)^pw
///
/// with y_c = y0 + (c + 0.5) h and, when taylor_tab is set,
/// r(c) = taylor_x - taylor_tab[c] - taylor_slope[c] * (x - y_c); otherwise
/// r(c) = 1. The caller scales by h afterwards.
struct PvSumArgs {
    const double* f = nullptr;
    const double* const* a_tab = nullptr;  // m tables of A_j at cell centers
    const double* ax = nullptr;            // A_j at the (clamped) evaluation point
    int m = 0;
    const double* taylor_tab = nullptr;    // A at cell centers (optional)
    const double* taylor_slope = nullptr;  // A' cell values (with taylor_tab)
    double taylor_x = 0.0;                 // A at the evaluation point
    double x = 0.0;
    double y0 = 0.0;  // left domain edge; centers are y0 + (c+0.5) h
    double h = 0.0;
    int pw = 1;  // denominator power, >= 1
    std::ptrdiff_t c_lo = 0;
    std::ptrdiff_t c_hi = 0;
    std::ptrdiff_t skip = -1;  // excluded singular cell, -1 for none
};

double pv_sum(const PvSumArgs& args);

enum class Backend { Scalar, Avx2 };

Backend active_backend();
std::string backend_name();

/// Selects a backend explicitly (tests, benchmarking). Falls back to the
/// scalar path when the requested one is unavailable; returns the backend
/// actually installed.
Backend force_backend(Backend b);

// reference implementation, always available
double pv_sum_scalar(const PvSumArgs& args);

#if defined(CALCLAB_HAVE_AVX2_TU)
double pv_sum_avx2(const PvSumArgs& args);
#endif

}  // namespace calclab::cellsum
