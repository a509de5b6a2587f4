#pragma once

#include <cstdint>

#include "roofline/cachesim.hpp"

namespace roofline::cachesim {

/// Loop extents of the GPP tensor-contraction kernel: band (outer), igp,
/// ig, iw (inner). Arrays hold 16-byte complex-double elements laid out
/// row-major with ig fastest; base addresses are padded to line boundaries.
struct GppShape {
    std::uint64_t nbands = 1;
    std::uint64_t ngpown = 1;
    std::uint64_t ncouls = 1;
    std::uint64_t nw = 1;

    std::uint64_t inner_iterations() const { return nbands * ngpown * ncouls * nw; }
};

/// Events the generators may emit before hitting the desk-scale cap.
inline constexpr std::uint64_t kTraceEventCap = 10'000'000;

/// Trace of the GPP loop nest: per innermost iteration, loads of
/// wtilde(ig,igp), aqsntemp(ig,band) and eps(ig,igp), then read+write
/// reductions on achtemp(iw) and asxtemp(iw) — 7 events per iteration in
/// nesting order band -> igp -> ig -> iw. Throws ConfigError when the
/// event count would exceed the cap.
AccessTrace gen_gpp_trace(const GppShape& shape);

/// FLOPs for a GPP run: inner iterations x flops_per_iteration. The
/// reference kernel's complex arithmetic works out to ~71 double-precision
/// operations per innermost iteration (see README); the constant stays
/// configurable because it is an estimate, not a counter.
inline constexpr double kGppFlopsPerIteration = 71.0;
double flops_for_gpp(const GppShape& shape, double flops_per_iteration = kGppFlopsPerIteration);

/// STREAM-triad trace (a[i] = b[i] + s*c[i]): per element, read b[i], read
/// c[i], write a[i], 8 bytes each, over three disjoint line-aligned arrays.
AccessTrace gen_stream_triad(std::uint64_t n_elements);

/// Triad FLOPs: one multiply and one add per element.
inline double flops_for_triad(std::uint64_t n_elements) { return 2.0 * n_elements; }

}  // namespace roofline::cachesim
