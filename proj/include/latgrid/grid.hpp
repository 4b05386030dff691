// grid.hpp — adaptive background partitioning.
//
// The playing field is a square lattice of legal positions spaced I screen
// units apart on both horizontal axes. I is derived from the partitioning
// parameter rho = theta * G / L, so a slow network (large L) tightens the
// lattice and slows every entity down, while a higher game level widens it.
//
// All position updates elsewhere in the library are done in lattice *index*
// arithmetic (k -> k±1, position = k * I) so that equal logical positions
// are always bit-identical doubles.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "latgrid/core.hpp"

namespace latgrid {

// Partitioning state shared by the whole engine.
// x_max and z_max equal screen_width: the lattice extreme is the field edge.
struct GridSpec {
    double theta = 100.0;      // partitioning constant, ms * screen units
    int game_level = 1;        // G
    double latency_ms = 100.0; // L, smoothed round-trip estimate
    double rho = 1.0;          // theta * G / L
    double screen_width = 10.0; // w_s
    int min_points = 10;       // R, minimum lattice points per axis
    double interval = 1.0;     // I, lattice spacing in screen units
    double x_max = 10.0;
    double z_max = 10.0;
    double y_max = 10.0;
};

// rho = theta * G / L. Larger latency -> smaller rho -> finer, slower grid.
inline double compute_rho(double theta, int game_level, double latency_ms) {
    require_positive(theta, "theta");
    require_positive(game_level, "game_level");
    require_positive(latency_ms, "latency_ms");
    return theta * static_cast<double>(game_level) / latency_ms;
}

// Three-branch interval rule; guarantees at least min_points lattice points
// per axis. Ties take the first matching branch.
inline double compute_interval(double rho, double screen_width, int min_points) {
    require_positive(rho, "rho");
    require_positive(screen_width, "screen_width");
    require_positive(min_points, "min_points");
    const double cap = screen_width / static_cast<double>(min_points);
    if (rho <= cap) return rho;
    if (rho <= 2.0 * cap) return rho / 2.0;
    return cap;
}

// Index of the last lattice point k with k * interval <= bound. The small
// epsilon absorbs one rounding step in bound / interval (e.g. 1.0 / 0.02).
inline long lattice_max_index(double interval, double bound) {
    return static_cast<long>(std::floor(bound / interval + 1e-9));
}

inline double lattice_point(long index, double interval) {
    return static_cast<double>(index) * interval;
}

// Nearest lattice index for a coordinate, ties toward 0, clamped into
// [0, max index]. Idempotent on lattice members.
inline long snap_index(double coord, double interval, double bound) {
    const long hi = lattice_max_index(interval, bound);
    const long k = static_cast<long>(std::ceil(coord / interval - 0.5));
    return std::clamp(k, 0l, hi);
}

inline double snap_to_lattice(double coord, double interval, double bound) {
    return lattice_point(snap_index(coord, interval, bound), interval);
}

struct Lattice {
    std::vector<double> points_x;
    std::vector<double> points_z;
    double interval = 0.0;
};

// Points 0, I, 2I, ... up to the largest multiple <= screen_width,
// identical on both axes.
inline Lattice build_lattice(double interval, double screen_width) {
    require_positive(interval, "interval");
    require_positive(screen_width, "screen_width");
    if (interval > screen_width)
        throw std::invalid_argument("interval exceeds screen_width");
    Lattice lat;
    lat.interval = interval;
    const long hi = lattice_max_index(interval, screen_width);
    lat.points_x.reserve(static_cast<std::size_t>(hi) + 1);
    for (long k = 0; k <= hi; ++k) lat.points_x.push_back(lattice_point(k, interval));
    lat.points_z = lat.points_x;
    return lat;
}

inline GridSpec make_grid_spec(double theta, int game_level, double latency_ms,
                               double screen_width, int min_points, double y_max) {
    require_positive(screen_width, "screen_width");
    require_positive(y_max, "y_max");
    GridSpec spec;
    spec.theta = theta;
    spec.game_level = game_level;
    spec.latency_ms = latency_ms;
    spec.rho = compute_rho(theta, game_level, latency_ms);
    spec.screen_width = screen_width;
    spec.min_points = min_points;
    spec.interval = compute_interval(spec.rho, screen_width, min_points);
    spec.x_max = screen_width;
    spec.z_max = screen_width;
    spec.y_max = y_max;
    return spec;
}

// Same spec re-derived for a new latency estimate.
inline GridSpec with_latency(const GridSpec& spec, double latency_ms) {
    GridSpec out = spec;
    out.latency_ms = latency_ms;
    out.rho = compute_rho(spec.theta, spec.game_level, latency_ms);
    out.interval = compute_interval(out.rho, spec.screen_width, spec.min_points);
    return out;
}

// Spec with interval recomputed from an externally supplied rho.
inline GridSpec with_rho(const GridSpec& spec, double rho) {
    GridSpec out = spec;
    out.rho = rho;
    out.interval = compute_interval(rho, spec.screen_width, spec.min_points);
    return out;
}

}  // namespace latgrid
