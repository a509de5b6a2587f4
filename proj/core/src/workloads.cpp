#include "roofline/workloads.hpp"

#include "roofline/errors.hpp"

namespace roofline::cachesim {

namespace {

constexpr std::uint64_t kElem = 16;       // complex double
constexpr std::uint64_t kLineAlign = 64;  // array bases padded to line boundaries

std::uint64_t align_up(std::uint64_t v) { return (v + kLineAlign - 1) / kLineAlign * kLineAlign; }

// Overflow-safe product check against the event cap.
void check_cap(std::uint64_t a, std::uint64_t b, std::uint64_t per_step) {
    unsigned __int128 total = static_cast<unsigned __int128>(a) * b * per_step;
    if (total > kTraceEventCap)
        throw ConfigError("workload would emit " + std::to_string(static_cast<double>(total)) +
                          " events, above the desk-scale cap of " +
                          std::to_string(kTraceEventCap));
}

}  // namespace

AccessTrace gen_gpp_trace(const GppShape& shape) {
    if (shape.nbands == 0 || shape.ngpown == 0 || shape.ncouls == 0 || shape.nw == 0)
        throw ConfigError("gpp workload: all loop extents must be >= 1");
    check_cap(shape.nbands * shape.ngpown, shape.ncouls * shape.nw, 7);

    // Arrays in declaration order, each base line-aligned.
    const std::uint64_t wtilde_base = 0;
    const std::uint64_t aqsn_base = align_up(wtilde_base + shape.ngpown * shape.ncouls * kElem);
    const std::uint64_t eps_base = align_up(aqsn_base + shape.nbands * shape.ncouls * kElem);
    const std::uint64_t ach_base = align_up(eps_base + shape.ngpown * shape.ncouls * kElem);
    const std::uint64_t asx_base = align_up(ach_base + shape.nw * kElem);

    AccessTrace trace;
    trace.reserve(shape.inner_iterations() * 7);

    auto read = [&](std::uint64_t addr) {
        trace.push_back({addr, static_cast<std::uint32_t>(kElem), AccessKind::Read});
    };
    auto write = [&](std::uint64_t addr) {
        trace.push_back({addr, static_cast<std::uint32_t>(kElem), AccessKind::Write});
    };

    for (std::uint64_t band = 0; band < shape.nbands; ++band) {
        for (std::uint64_t igp = 0; igp < shape.ngpown; ++igp) {
            for (std::uint64_t ig = 0; ig < shape.ncouls; ++ig) {
                for (std::uint64_t iw = 0; iw < shape.nw; ++iw) {
                    read(wtilde_base + (igp * shape.ncouls + ig) * kElem);
                    read(aqsn_base + (band * shape.ncouls + ig) * kElem);
                    read(eps_base + (igp * shape.ncouls + ig) * kElem);
                    read(ach_base + iw * kElem);
                    write(ach_base + iw * kElem);
                    read(asx_base + iw * kElem);
                    write(asx_base + iw * kElem);
                }
            }
        }
    }
    return trace;
}

double flops_for_gpp(const GppShape& shape, double flops_per_iteration) {
    if (shape.nbands == 0 || shape.ngpown == 0 || shape.ncouls == 0 || shape.nw == 0)
        throw ConfigError("gpp workload: all loop extents must be >= 1");
    if (!(flops_per_iteration > 0.0))
        throw ConfigError("gpp workload: flops_per_iteration must be positive");
    return static_cast<double>(shape.inner_iterations()) * flops_per_iteration;
}

AccessTrace gen_stream_triad(std::uint64_t n_elements) {
    if (n_elements == 0) throw ConfigError("triad workload: n_elements must be >= 1");
    check_cap(n_elements, 1, 3);

    constexpr std::uint64_t kWord = 8;
    const std::uint64_t a_base = 0;
    const std::uint64_t b_base = align_up(a_base + n_elements * kWord);
    const std::uint64_t c_base = align_up(b_base + n_elements * kWord);

    AccessTrace trace;
    trace.reserve(n_elements * 3);
    for (std::uint64_t i = 0; i < n_elements; ++i) {
        trace.push_back({b_base + i * kWord, kWord, AccessKind::Read});
        trace.push_back({c_base + i * kWord, kWord, AccessKind::Read});
        trace.push_back({a_base + i * kWord, kWord, AccessKind::Write});
    }
    return trace;
}

}  // namespace roofline::cachesim
