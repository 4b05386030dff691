// region.hpp — More Detailed Region / Less Detailed Region management.
//
// The square of half-width mu * I around the ball is the MDR; entities
// inside it are simulated in full. Everything outside (the LDR) is frozen:
// positions held, inputs ignored. Freezing models the memory/processing
// saving — coordinates are kept, detail is not dropped, so the saving is
// observable as the unfrozen-entity count.

#pragma once

#include <array>

#include "latgrid/core.hpp"

namespace latgrid {

enum class Detail { mdr, ldr };

struct Region {
    Vec2 anchor;                   // ball position (alpha, beta)
    int mu = 1;                    // game region constant
    std::array<Vec2, 4> corners{}; // (lo,lo), (lo,hi), (hi,lo), (hi,hi) after clamping
    Vec2 bounds;                   // (x_max, z_max)

    double x_lo() const { return corners[0].x; }
    double x_hi() const { return corners[3].x; }
    double z_lo() const { return corners[0].z; }
    double z_hi() const { return corners[3].z; }
};

// Corners are the four combinations of (alpha ± mu*I, beta ± mu*I); any
// coordinate past a field edge is clamped to that edge, negatives to 0.
inline Region compute_mdr(Vec2 ball, int mu, double interval, Vec2 bounds) {
    require_positive(mu, "mu");
    require_positive(interval, "interval");
    if (ball.x < 0.0 || ball.x > bounds.x || ball.z < 0.0 || ball.z > bounds.z)
        throw std::invalid_argument("ball outside field bounds");

    const double half = static_cast<double>(mu) * interval;
    const double x_lo = std::max(0.0, ball.x - half);
    const double x_hi = std::min(bounds.x, ball.x + half);
    const double z_lo = std::max(0.0, ball.z - half);
    const double z_hi = std::min(bounds.z, ball.z + half);

    Region r;
    r.anchor = ball;
    r.mu = mu;
    r.bounds = bounds;
    r.corners = {Vec2{x_lo, z_lo}, Vec2{x_lo, z_hi}, Vec2{x_hi, z_lo}, Vec2{x_hi, z_hi}};
    return r;
}

// Closed-rectangle membership: the boundary counts as MDR.
inline Detail classify(Vec2 pos, const Region& region) {
    const bool inside = pos.x >= region.x_lo() && pos.x <= region.x_hi() &&
                        pos.z >= region.z_lo() && pos.z <= region.z_hi();
    return inside ? Detail::mdr : Detail::ldr;
}

// Set frozen flags over any player range: LDR players freeze, MDR players
// thaw. The ball holder is never frozen.
template <typename PlayerRange>
void apply_freeze(PlayerRange& players, const Region& region, int holder_id = -1) {
    for (auto& p : players) {
        const bool ldr = classify(Vec2{p.pos.x, p.pos.z}, region) == Detail::ldr;
        p.frozen = ldr && p.id != holder_id;
    }
}

template <typename PlayerRange>
int unfrozen_count(const PlayerRange& players) {
    int n = 0;
    for (const auto& p : players)
        if (!p.frozen) ++n;
    return n;
}

}  // namespace latgrid
