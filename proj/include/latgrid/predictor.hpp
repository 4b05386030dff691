// predictor.hpp — reconstruction of a lost game state from the two states
// before it.
//
// No velocity or acceleration is stored anywhere: each entity is classified
// from the displacement between S_{n-2} and S_{n-1} alone — motionless, one
// lattice step along x, one along z, or descending from a jump — and the
// matching rule emits its next coordinate. The reconstructed state inherits
// the partitioning interval of S_{n-1}.
//
// Guard comparisons against I and I_y use a 1e-9 relative margin so that a
// genuine one-step lattice displacement, whose floating-point delta may sit
// a few ulps off I, lands in the intended branch.

#pragma once

#include <cmath>

#include "latgrid/game.hpp"
#include "latgrid/grid.hpp"

namespace latgrid {

// The ball's x/z rule as printed uses a strict |delta| < I guard, which a
// displacement of exactly I fails; the inclusive mode widens it to <= I so
// lattice-step motion extrapolates. Strict mode keeps the verbatim guard.
enum class BallGuard { strict, inclusive };

struct StatePair {
    GameState prev2;  // S_{n-2}
    GameState prev1;  // S_{n-1}
};

inline StatePair make_state_pair(const GameState& prev2, const GameState& prev1) {
    if (!(prev1.time_s > prev2.time_s) || prev2.time_s < 0.0)
        throw std::invalid_argument("state pair times must be increasing");
    if (prev1.interval != prev2.interval)
        throw std::invalid_argument("state pair intervals differ");
    return {prev2, prev1};
}

// Pair of the two newest committed states; prediction needs two round trips.
template <typename StateSeq>
StatePair latest_pair(const StateSeq& timeline) {
    if (timeline.size() < 2)
        throw not_enough_history("prediction needs two committed states");
    return make_state_pair(timeline[timeline.size() - 2], timeline[timeline.size() - 1]);
}

inline int update_tau(int tau, int delta) {
    if (tau < 0 || tau > 2) throw std::invalid_argument("tau out of range");
    return std::clamp(tau + delta, 0, 2);
}

namespace detail {

inline constexpr double kGuardMargin = 1e-9;

// |delta| >= threshold with the relative margin folded in.
inline bool reaches(double delta, double threshold) {
    return std::abs(delta) >= threshold * (1.0 - kGuardMargin);
}

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

// One signed lattice step from coord, done in index arithmetic so the
// result is bit-identical to the same position produced by kinematics.
inline double lattice_step(double coord, int dir, double interval, double bound) {
    const long k = snap_index(coord, interval, bound) + dir;
    return lattice_point(k, interval);
}

}  // namespace detail

// Next position of player k. Branches, in listing order: motionless, x
// extrapolation (clamped to [0, X_max - I]), z extrapolation (clamped to
// [0, Z_max - I]), jump descent (y reverts two states back), then retain.
inline Vec3 predict_player(int id, const StatePair& pair, const GridSpec& spec,
                           double i_y) {
    const PlayerState* p2 = find_player(pair.prev2, id);
    const PlayerState* p1 = find_player(pair.prev1, id);
    if (!p2 || !p1)
        throw missing_entity("player " + std::to_string(id) + " absent from history");

    const double I = pair.prev1.interval;
    const double dx = p1->pos.x - p2->pos.x;
    const double dy = p1->pos.y - p2->pos.y;
    const double dz = p1->pos.z - p2->pos.z;
    const bool big_x = detail::reaches(dx, I);
    const bool big_y = detail::reaches(dy, i_y);
    const bool big_z = detail::reaches(dz, I);

    if (!big_x && !big_y && !big_z) return p1->pos;

    if (big_x && !big_y && !big_z) {
        Vec3 out = p1->pos;
        out.x = detail::lattice_step(p1->pos.x, detail::sign_of(dx), I, spec.x_max);
        out.x = std::clamp(out.x, 0.0, spec.x_max - I);
        return out;
    }
    if (!big_x && !big_y && big_z) {
        Vec3 out = p1->pos;
        out.z = detail::lattice_step(p1->pos.z, detail::sign_of(dz), I, spec.z_max);
        out.z = std::clamp(out.z, 0.0, spec.z_max - I);
        return out;
    }
    if (!big_x && !big_z && dy >= i_y * (1.0 - detail::kGuardMargin)) {
        // Jumped between the two known states: it has to come down.
        Vec3 out = p1->pos;
        out.y = p2->pos.y;
        return out;
    }
    // Came down from a jump, or an unclassifiable displacement: retain.
    return p1->pos;
}

// Next ball position. Exact coordinate equality means motionless; otherwise
// exactly one horizontal axis may differ (two is an input error), and when
// the guard admits the displacement the ball takes one signed step on that
// axis while y follows the kick strength: Y_{b-1} + tau * I_y.
inline Vec3 predict_ball(const StatePair& pair, const GridSpec& spec, double i_y,
                         int tau, BallGuard guard = BallGuard::inclusive) {
    const BallState& b2 = pair.prev2.ball;
    const BallState& b1 = pair.prev1.ball;
    if (b1.pos == b2.pos) return b1.pos;

    const double I = pair.prev1.interval;
    const bool x_differs = b1.pos.x != b2.pos.x;
    const bool z_differs = b1.pos.z != b2.pos.z;
    if (x_differs && z_differs)
        throw single_axis_violation("ball moved on both horizontal axes");

    const auto guard_admits = [&](double delta) {
        if (guard == BallGuard::strict) return std::abs(delta) < I;
        return std::abs(delta) <= I * (1.0 + detail::kGuardMargin);
    };
    const auto stepped_y = [&] {
        return std::clamp(b1.pos.y + static_cast<double>(tau) * i_y, 0.0, spec.y_max);
    };

    if (x_differs && !z_differs && guard_admits(b1.pos.x - b2.pos.x)) {
        Vec3 out = b1.pos;
        out.x = detail::lattice_step(b1.pos.x, detail::sign_of(b1.pos.x - b2.pos.x), I,
                                     spec.x_max);
        out.x = std::clamp(out.x, 0.0, spec.x_max);
        out.y = stepped_y();
        return out;
    }
    if (z_differs && !x_differs && guard_admits(b1.pos.z - b2.pos.z)) {
        Vec3 out = b1.pos;
        out.z = detail::lattice_step(b1.pos.z, detail::sign_of(b1.pos.z - b2.pos.z), I,
                                     spec.z_max);
        out.z = std::clamp(out.z, 0.0, spec.z_max);
        out.y = stepped_y();
        return out;
    }
    // Guard rejected the displacement (strict mode at a full step, or a
    // multi-step delta): hold.
    return b1.pos;
}

struct PredictParams {
    double i_y = 2.0;
    double tick_period_s = 0.1;
    int tau = 0;  // carried from the last received input; 0 when none
    BallGuard guard = BallGuard::inclusive;
};

// Full reconstructed S_n: unfrozen players through predict_player, frozen
// players copied verbatim, ball through predict_ball, region and freeze
// flags recomputed, index and time advanced by one tick.
inline GameState predict_state(const StatePair& pair, const GridSpec& spec,
                               const PredictParams& params) {
    GameState out = pair.prev1;
    out.index = pair.prev1.index + 1;
    out.time_s = pair.prev1.time_s + params.tick_period_s;
    out.interval = pair.prev1.interval;

    for (auto& p : out.players) {
        if (p.frozen) continue;  // LDR: never extrapolated
        p.pos = predict_player(p.id, pair, spec, params.i_y);
    }
    out.ball.pos = predict_ball(pair, spec, params.i_y, params.tau, params.guard);

    out.mdr = compute_mdr(Vec2{out.ball.pos.x, out.ball.pos.z}, pair.prev1.mdr.mu,
                          out.interval, Vec2{spec.x_max, spec.z_max});
    apply_freeze(out.players, out.mdr, out.ball.holder);
    return out;
}

// Classic dead-reckoning comparison baseline: linear extrapolation from the
// last two positions, clamped to the field but not snapped to the lattice.
inline GameState dead_reckoning_baseline(const StatePair& pair, double dt_s,
                                         const GridSpec& spec) {
    const double span = pair.prev1.time_s - pair.prev2.time_s;
    GameState out = pair.prev1;
    out.index = pair.prev1.index + 1;
    out.time_s = pair.prev1.time_s + dt_s;

    const auto extrapolate = [&](const Vec3& older, const Vec3& newer) {
        Vec3 v{(newer.x - older.x) / span, (newer.y - older.y) / span,
               (newer.z - older.z) / span};
        return Vec3{std::clamp(newer.x + v.x * dt_s, 0.0, spec.x_max),
                    std::clamp(newer.y + v.y * dt_s, 0.0, spec.y_max),
                    std::clamp(newer.z + v.z * dt_s, 0.0, spec.z_max)};
    };

    for (auto& p : out.players) {
        if (p.frozen) continue;
        const PlayerState* older = find_player(pair.prev2, p.id);
        if (!older)
            throw missing_entity("player " + std::to_string(p.id) +
                                 " absent from history");
        p.pos = extrapolate(older->pos, p.pos);
    }
    out.ball.pos = extrapolate(pair.prev2.ball.pos, pair.prev1.ball.pos);
    return out;
}

}  // namespace latgrid
