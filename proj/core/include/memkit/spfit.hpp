#pragma once

#include "memkit/fit_result.hpp"
#include "memkit/mem.hpp"
#include "memkit/series.hpp"
#include "memkit/smoother.hpp"
#include "memkit/vmem.hpp"

#include <iosfwd>

namespace memkit {

struct SpFitOptions {
    SmootherConfig smoother{};
    int max_outer_iter = 50;
    double outer_tol = 1e-5;
    std::ostream* trace = nullptr;  // per-iteration log when non-null
    MemFitOptions inner{};
    VmemFitOptions vinner{};
};

// Base MEM on one series: mu is the sample mean, tau is held at one, the
// short-run parameters come from the efficient GMM fit on x / mu.
FitResult fit_mem_series(const ObservationSeries& series, const MemFitOptions& options = {});

// Base vMEM on a panel: per-series sample means, joint GMM on x_i / mu_i.
FitResult fit_vmem_panel(const AlignedPanel& panel, const VmemFitOptions& options = {});

// Alternating two-step estimation: smooth tau on x/(mu xi), fit the
// short-run parameters on x/(mu tau), iterate to joint convergence on the
// relative tau and theta changes. mu is estimated once as the sample mean;
// each inner fit warm-starts from the previous iterate and is retried once
// from the default start on failure. Non-convergence of the outer loop is
// reported through converged = false, not an exception.
FitResult fit_spmem(const ObservationSeries& series, const SpFitOptions& options = {});
FitResult fit_spvmem(const AlignedPanel& panel, const SpFitOptions& options = {});

}  // namespace memkit
