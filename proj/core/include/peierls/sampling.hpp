#pragma once

#include <cstdint>
#include <vector>

namespace peierls {

/// Halton low-discrepancy sequence in [0,1)^dim. The seed offsets the start
/// index so that independently seeded runs draw distinct point sets while a
/// fixed seed reproduces the same one.
class HaltonSampler {
public:
    explicit HaltonSampler(int dim, std::uint64_t seed = 0);

    /// Fills out[0..dim) with the next point.
    void next(double* out);

    int dim() const { return static_cast<int>(bases_.size()); }

private:
    std::vector<std::uint64_t> bases_;
    std::uint64_t index_;
};

inline HaltonSampler::HaltonSampler(int dim, std::uint64_t seed) {
    static constexpr std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (dim < 1) dim = 1;
    if (dim > 20) dim = 20;
    bases_.assign(primes, primes + dim);
    index_ = 1 + (seed % 1000003) * 4096;
}

inline void HaltonSampler::next(double* out) {
    for (std::size_t d = 0; d < bases_.size(); ++d) {
        const std::uint64_t b = bases_[d];
        double f = 1.0, x = 0.0;
        for (std::uint64_t i = index_; i > 0; i /= b) {
            f /= static_cast<double>(b);
            x += f * static_cast<double>(i % b);
        }
        out[d] = x;
    }
    ++index_;
}

} // namespace peierls
