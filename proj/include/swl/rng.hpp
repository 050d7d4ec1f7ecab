#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace swl {

/// Seeded generator with portable helper distributions. std::uniform_*
/// distributions are implementation-defined, so draws are derived from the
/// raw engine output to keep runs bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in [0, n). Modulo bias is negligible for desk-scale n.
    std::uint64_t uniform_int(std::uint64_t n) { return eng_() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_int(i)]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace swl
