#include "homoclinic/random.hpp"

#include <cmath>

namespace homoclinic {

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double SeededStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t SeededStream::index(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::size_t>(engine_() % span);
}

Mat SeededStream::symmetric(std::size_t dim) {
    Mat s(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            s(i, j) = uniform(-1.0, 1.0);
            s(j, i) = s(i, j);
        }
    return s;
}

Mat SeededStream::orthogonal(std::size_t dim) {
    Mat q(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (;;) {
            Vec v(dim);
            for (double& x : v) x = uniform(-1.0, 1.0);
            // two Gram-Schmidt passes
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    const Vec qk = q.column(k);
                    const double c = dot(qk, v);
                    for (std::size_t i = 0; i < dim; ++i) v[i] -= c * qk[i];
                }
            const double norm = std::sqrt(dot(v, v));
            if (norm < 1e-3) continue;
            for (double& x : v) x /= norm;
            q.set_column(j, v);
            break;
        }
    }
    return q;
}

} // namespace homoclinic
