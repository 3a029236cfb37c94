#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace taildep {

// Seed of the named sub-stream `name` under `master`. Distinct names give
// statistically independent streams; the mapping is fixed across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::string_view name);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t master, std::string_view name) {
        return Rng(derive_seed(master, name));
    }

    // Uniform on the open interval (0, 1), built from the top 53 bits so the
    // result does not depend on the standard library's distribution code.
    double uniform() {
        for (;;) {
            const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    // Standard normal by Box-Muller; consumes exactly two uniforms.
    double normal();

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace taildep
