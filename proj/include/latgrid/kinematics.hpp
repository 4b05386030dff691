// kinematics.hpp — legal moves for players and the ball on the lattice.
//
// Horizontal motion is cardinal: one axis per step, one interval at a time
// (phi intervals for a specially-talented player carrying the ball). The
// y axis is a short ladder over I_y = (Y_max - Height_player) / 3. All
// players share one height.

#pragma once

#include <algorithm>
#include <vector>

#include "latgrid/core.hpp"
#include "latgrid/grid.hpp"

namespace latgrid {

enum class Talent { ordinary, special, world_class };

// Interval multiplier when this talent carries the ball.
inline int talent_phi(Talent t) {
    switch (t) {
        case Talent::ordinary: return 1;
        case Talent::special: return 2;
        case Talent::world_class: return 3;
    }
    return 1;
}

struct PlayerState {
    int id = 0;
    Vec3 pos;
    Talent talent = Talent::ordinary;
    bool has_ball = false;
    bool frozen = false;
    double height = 4.0;

    friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct BallState {
    Vec3 pos;
    int tau = 0;      // kick strength, 0..2; y sits at height + tau * I_y
    int holder = -1;  // player id, or -1 when loose

    friend bool operator==(const BallState&, const BallState&) = default;
};

// I_y, the y-axis step.
inline double compute_y_interval(double y_max, double player_height) {
    require_positive(y_max, "y_max");
    require_positive(player_height, "player_height");
    if (y_max <= player_height)
        throw std::invalid_argument("y_max must exceed player height");
    return (y_max - player_height) / 3.0;
}

// Stay plus the four cardinal neighbours, out-of-field candidates removed.
// A special talent carrying the ball steps phi intervals per move; without
// the ball everyone steps one. Emitted in the order stay, z-, z+, x-, x+.
inline std::vector<Vec2> player_move_candidates(const PlayerState& player,
                                                const GridSpec& spec) {
    const int step = player.has_ball ? talent_phi(player.talent) : 1;
    const double I = spec.interval;
    const long xi = snap_index(player.pos.x, I, spec.x_max);
    const long zi = snap_index(player.pos.z, I, spec.z_max);
    const long x_hi = lattice_max_index(I, spec.x_max);
    const long z_hi = lattice_max_index(I, spec.z_max);

    std::vector<Vec2> out;
    out.reserve(5);
    const auto push = [&](long kx, long kz) {
        if (kx < 0 || kx > x_hi || kz < 0 || kz > z_hi) return;
        out.push_back(Vec2{lattice_point(kx, I), lattice_point(kz, I)});
    };
    push(xi, zi);
    push(xi, zi - step);
    push(xi, zi + step);
    push(xi - step, zi);
    push(xi + step, zi);
    return out;
}

// Reachable y values for the next step. From ground level the player may
// stay or jump (basketball allows the double-height jump); once airborne
// the only move is one I_y step back down.
inline std::vector<double> jump_targets(const PlayerState& player, double i_y,
                                        GameKind kind) {
    const double h = player.height;
    if (player.pos.y <= h) {
        std::vector<double> out{h, h + i_y};
        if (kind == GameKind::basketball) out.push_back(h + 2.0 * i_y);
        return out;
    }
    return {std::max(h, player.pos.y - i_y)};
}

// One ball step: the chosen horizontal axis moves direction * step_units
// intervals, tau absorbs tau_delta (clamped to 0..2), and y follows the
// kick strength ladder. A step that would leave the field is rejected and
// the ball returned unchanged.
inline BallState ball_move(const BallState& ball, Axis axis, int direction,
                           int tau_delta, const GridSpec& spec, double i_y,
                           double height, int step_units = 1) {
    const double I = spec.interval;
    BallState out = ball;

    const double bound = axis == Axis::x ? spec.x_max : spec.z_max;
    const double coord = axis == Axis::x ? ball.pos.x : ball.pos.z;
    const long hi = lattice_max_index(I, bound);
    const long k = snap_index(coord, I, bound) +
                   static_cast<long>(direction) * static_cast<long>(step_units);
    if (k < 0 || k > hi) return ball;  // rejected, ball stays

    (axis == Axis::x ? out.pos.x : out.pos.z) = lattice_point(k, I);
    out.tau = std::clamp(ball.tau + tau_delta, 0, 2);
    out.pos.y = std::clamp(height + static_cast<double>(out.tau) * i_y, 0.0, spec.y_max);
    return out;
}

}  // namespace latgrid
