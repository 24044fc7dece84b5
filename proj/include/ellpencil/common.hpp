#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellpencil {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cd kImag{0.0, 1.0};

/// Thrown when an input violates a documented precondition.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical certificate fails (rank, conditioning, root count, ...).
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw numeric_failure(msg);
}

inline bool is_finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Period lattice spanned by 1 and tau (Im tau > 0), with the fundamental
/// parallelogram anchored slightly off the origin so lattice points and the
/// common special points z = 0, 1/2, tau/2 stay interior or clearly exterior.
struct Lattice {
    cd tau;
    cd anchor{0.013, 0.017};

    explicit Lattice(cd tau_) : tau(tau_) {
        require(tau.imag() > 1e-12, "Lattice: Im(tau) must be positive");
    }

    /// Coordinates (x, y) with z = x + y*tau.
    std::pair<double, double> coords(cd z) const {
        double y = z.imag() / tau.imag();
        double x = z.real() - y * tau.real();
        return {x, y};
    }

    cd from_coords(double x, double y) const { return cd(x, 0.0) + cd(y, 0.0) * tau; }

    /// Representative of z inside the anchored fundamental parallelogram.
    cd reduce(cd z) const {
        auto [x, y] = coords(z - anchor);
        x -= std::floor(x);
        y -= std::floor(y);
        return anchor + from_coords(x, y);
    }

    /// Distance from z to the nearest lattice point.
    double dist_to_lattice(cd z) const {
        auto [x, y] = coords(z);
        x -= std::round(x);
        y -= std::round(y);
        return std::abs(from_coords(x, y));
    }

    /// Distance between z and w modulo the lattice.
    double dist_mod(cd z, cd w) const { return dist_to_lattice(z - w); }

    /// Nearest lattice point p + q*tau to z (integers p, q).
    std::pair<long, long> nearest_point(cd z) const {
        auto [x, y] = coords(z);
        return {static_cast<long>(std::llround(x)), static_cast<long>(std::llround(y))};
    }
};

/// Deterministic pseudo-random stream. A thin xorshift-based layer so that
/// identical seeds give identical bytes on every platform and toolchain.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1) x [-1, 1) as a complex number.
    cd next_complex() { return cd(2.0 * next_double() - 1.0, 2.0 * next_double() - 1.0); }

  private:
    std::uint64_t state_;
};

/// Low-discrepancy Halton sequence in [0,1)^2 (bases 2 and 3), used for
/// collocation and validation grids.
inline std::pair<double, double> halton2(std::uint64_t index) {
    auto radical = [](std::uint64_t i, std::uint64_t base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= static_cast<double>(base);
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };
    return {radical(index, 2), radical(index, 3)};
}

}  // namespace ellpencil
