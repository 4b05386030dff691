// core.hpp — shared value types, error types and the seeded random stream.
//
// Everything in latgrid works on plain value types; no header here owns
// any mutable global state.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace latgrid {

struct Vec2 {
    double x = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dist2d(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.z - b.z);
}

inline double dist3d(const Vec3& a, const Vec3& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
}

enum class Axis { x, z };

enum class GameKind { football, hockey, basketball };

// Thrown when the predictor sees both horizontal ball axes change at once.
struct single_axis_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a player id is absent from one of the two history states.
struct missing_entity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when prediction is requested before two states are committed.
struct not_enough_history : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario/config file problems, with a line number when one is known.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line_no(line) {}
    int line_no = 0;
};

// SeededStream — deterministic 64-bit stream (splitmix64).
//
// Used instead of <random> distributions: the engine states of <random>
// are portable but the distributions are implementation-defined, and the
// simulator needs byte-identical traces for equal seeds on any platform.
// The cursor counts draws, so a stream position can be stored in a state
// snapshot and resumed.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed = 0) : state_(seed), seed_(seed) {}

    std::uint64_t next_u64() {
        ++cursor_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

    std::uint64_t cursor() const { return cursor_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t cursor_ = 0;
};

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

inline void require_positive(int v, const char* name) {
    if (v <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace latgrid
