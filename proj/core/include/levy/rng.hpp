#pragma once

#include <cstdint>
#include <random>

namespace levy {

/// Reproducible random stream addressed by (master_seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of the two identifiers. Both the engine and seed_seq are
/// fully specified by the C++ standard, and every variate below is derived
/// from raw engine output by code in this library (no std::*_distribution),
/// so draws are bit-identical across platforms and standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Deterministic child stream. Children live under a derived master seed,
    /// so child(k) of one replication never aliases another replication.
    RngStream child(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1), 52-bit resolution.
    double uniform();
    double exponential();
    double normal();

    /// Gamma(shape, scale = 1).
    ///
    /// Marsaglia-Tsang squeeze/rejection for shape >= 1; for shape < 1 the
    /// boost G(shape + 1) * U^(1/shape) is evaluated in log space. Values
    /// that underflow double precision (shape of order 1e-2 and below) are
    /// returned as the smallest positive subnormal so the draw stays > 0.
    double gamma(double shape);

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace levy
