#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ncpb/linalg.hpp"

namespace ncpb {

// Deterministic sampling built only on the standardized mt19937_64 output
// stream: identical seeds give identical doubles on every platform, which the
// byte-identical-output guarantee of the CLI relies on.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller, spare cached
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx cnormal() { return {normal(), normal()}; }

    // Uniform on the disk |z| <= radius.
    cplx disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double a = 2.0 * M_PI * uniform();
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ncpb
