#pragma once

// Seeded random streams. Draws are built directly from mt19937_64 output so
// that results do not depend on the standard library's distribution code.

#include "homoclinic/matkit.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace homoclinic {

class SeededStream {
public:
    /// Independent stream `stream` of the generator family `seed`.
    SeededStream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::size_t index(std::size_t lo, std::size_t hi);

    /// Symmetric matrix with independent upper-triangle entries in [-1, 1].
    Mat symmetric(std::size_t dim);
    /// Orthogonal matrix from Gram-Schmidt on uniform entries.
    Mat orthogonal(std::size_t dim);

private:
    std::mt19937_64 engine_;
};

} // namespace homoclinic
