// game.hpp — the deterministic simultaneous-movement game core.
//
// A game state is an immutable snapshot; step() is a pure function of
// (state, inputs, spec), so replaying an input log from the same initial
// state reproduces every state bit-identically. Entity positions only ever
// come out of lattice index arithmetic, which keeps equality checks exact.
//
// Step order within a tick is fixed: players in ascending id, then the
// ball, then possession transfer, then MDR + freeze flags.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latgrid/core.hpp"
#include "latgrid/grid.hpp"
#include "latgrid/kinematics.hpp"
#include "latgrid/region.hpp"

namespace latgrid {

struct GameConfig {
    int players_per_side = 4;  // q
    double theta = 100.0;
    int game_level = 1;
    double initial_latency_ms = 100.0;
    int min_points = 10;  // R
    double screen_width = 10.0;
    double y_max = 10.0;
    double player_height = 4.0;
    int mu = 1;
    GameKind kind = GameKind::football;
    double tick_period_ms = 100.0;
    // Per-player talents in id order (1..2q); missing entries are ordinary.
    std::vector<Talent> talents;
    // Spawn player 1 on the ball so possession exists from the first step.
    bool holder_start = false;
};

struct MoveCmd {
    Axis axis = Axis::x;
    int direction = 1;  // +1 or -1
    friend bool operator==(const MoveCmd&, const MoveCmd&) = default;
};
struct JumpCmd {
    int levels = 1;  // I_y steps; 2 is legal only in basketball
    friend bool operator==(const JumpCmd&, const JumpCmd&) = default;
};
struct KickCmd {
    Axis axis = Axis::x;
    int direction = 1;
    int tau_delta = 0;  // -1, 0, +1
    friend bool operator==(const KickCmd&, const KickCmd&) = default;
};
struct IdleCmd {
    friend bool operator==(const IdleCmd&, const IdleCmd&) = default;
};

using Command = std::variant<IdleCmd, MoveCmd, JumpCmd, KickCmd>;

struct InputEvent {
    int player_id = 0;
    Command command = IdleCmd{};
    double issued_at_ms = 0.0;
};

struct GameState {
    int index = 0;       // n
    double time_s = 0.0; // T
    double interval = 0.0;
    std::vector<PlayerState> players;  // ascending id
    BallState ball;
    Region mdr;
    std::uint64_t rng_cursor = 0;
};

struct Violation {
    std::string code;
    std::string detail;
};

inline double compute_y_interval(const GameConfig& cfg) {
    return compute_y_interval(cfg.y_max, cfg.player_height);
}

inline GridSpec make_grid_spec(const GameConfig& cfg) {
    return make_grid_spec(cfg.theta, cfg.game_level, cfg.initial_latency_ms,
                          cfg.screen_width, cfg.min_points, cfg.y_max);
}

inline const PlayerState* find_player(const GameState& state, int id) {
    for (const auto& p : state.players)
        if (p.id == id) return &p;
    return nullptr;
}

inline void validate_config(const GameConfig& cfg) {
    if (cfg.players_per_side < 1)
        throw config_error("players_per_side must be at least 1");
    if (cfg.min_points < 2) throw config_error("min_points must be at least 2");
    if (cfg.screen_width <= 0.0) throw config_error("screen_width must be positive");
    if (cfg.y_max <= cfg.player_height)
        throw config_error("y_max must exceed player_height");
    if (cfg.mu < 1) throw config_error("mu must be at least 1");
    if (cfg.tick_period_ms <= 0.0) throw config_error("tick_period_ms must be positive");
    if (cfg.game_level < 1) throw config_error("game_level must be at least 1");
    if (cfg.theta <= 0.0) throw config_error("theta must be positive");
    if (cfg.initial_latency_ms <= 0.0)
        throw config_error("initial_latency_ms must be positive");
}

// Kickoff state: two mirrored columns of q players, ball at the snapped
// field centre, MDR around the ball.
inline GameState default_state(const GameConfig& cfg) {
    validate_config(cfg);
    const GridSpec spec = make_grid_spec(cfg);
    const double I = spec.interval;

    GameState s;
    s.index = 0;
    s.time_s = 0.0;
    s.interval = I;

    const int q = cfg.players_per_side;
    const auto talent_of = [&](int id) {
        const std::size_t i = static_cast<std::size_t>(id - 1);
        return i < cfg.talents.size() ? cfg.talents[i] : Talent::ordinary;
    };
    for (int side = 0; side < 2; ++side) {
        const double col = side == 0 ? cfg.screen_width * 0.25 : cfg.screen_width * 0.75;
        for (int k = 1; k <= q; ++k) {
            PlayerState p;
            p.id = side * q + k;
            p.talent = talent_of(p.id);
            p.height = cfg.player_height;
            const double row =
                spec.z_max * static_cast<double>(k) / static_cast<double>(q + 1);
            p.pos.x = snap_to_lattice(col, I, spec.x_max);
            p.pos.z = snap_to_lattice(row, I, spec.z_max);
            p.pos.y = cfg.player_height;
            s.players.push_back(p);
        }
    }

    s.ball.pos.x = snap_to_lattice(cfg.screen_width * 0.5, I, spec.x_max);
    s.ball.pos.z = snap_to_lattice(spec.z_max * 0.5, I, spec.z_max);
    s.ball.pos.y = cfg.player_height;
    s.ball.tau = 0;
    s.ball.holder = -1;

    if (cfg.holder_start && !s.players.empty()) {
        s.players[0].pos.x = s.ball.pos.x;
        s.players[0].pos.z = s.ball.pos.z;
        s.players[0].has_ball = true;
        s.ball.holder = s.players[0].id;
    }

    s.mdr = compute_mdr(Vec2{s.ball.pos.x, s.ball.pos.z}, cfg.mu, I,
                        Vec2{spec.x_max, spec.z_max});
    apply_freeze(s.players, s.mdr, s.ball.holder);
    return s;
}

namespace detail {

inline void apply_player_command(PlayerState& p, const Command& cmd,
                                 const GridSpec& spec, double i_y, GameKind kind) {
    // Airborne players must come down; their command is ignored this tick.
    if (p.pos.y > p.height) {
        p.pos.y = std::max(p.height, p.pos.y - i_y);
        return;
    }
    if (const auto* mv = std::get_if<MoveCmd>(&cmd)) {
        const int step = p.has_ball ? talent_phi(p.talent) : 1;
        const double bound = mv->axis == Axis::x ? spec.x_max : spec.z_max;
        double& coord = mv->axis == Axis::x ? p.pos.x : p.pos.z;
        const long hi = lattice_max_index(spec.interval, bound);
        const long k = snap_index(coord, spec.interval, bound) +
                       static_cast<long>(mv->direction) * static_cast<long>(step);
        if (k >= 0 && k <= hi) coord = lattice_point(k, spec.interval);
    } else if (const auto* jp = std::get_if<JumpCmd>(&cmd)) {
        const int max_levels = kind == GameKind::basketball ? 2 : 1;
        if (jp->levels >= 1 && jp->levels <= max_levels)
            p.pos.y = p.height + static_cast<double>(jp->levels) * i_y;
    }
    // Kick is handled in the ball phase; idle does nothing.
}

}  // namespace detail

// One committed tick. Events for unknown player ids are dropped (optionally
// logged); at most one event per player is honoured (the first).
inline GameState step(const GameState& state, const std::vector<InputEvent>& inputs,
                      const GridSpec& spec, const GameConfig& cfg,
                      std::vector<std::string>* reject_log = nullptr) {
    const double i_y = compute_y_interval(cfg);
    GameState next = state;
    next.interval = spec.interval;

    std::vector<const Command*> command_of(next.players.size(), nullptr);
    const auto slot_of = [&](int id) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < next.players.size(); ++i)
            if (next.players[i].id == id) return i;
        return std::nullopt;
    };
    for (const auto& ev : inputs) {
        const auto slot = slot_of(ev.player_id);
        if (!slot) {
            if (reject_log)
                reject_log->push_back("unknown player id " +
                                      std::to_string(ev.player_id));
            continue;
        }
        if (!command_of[*slot]) command_of[*slot] = &ev.command;
    }

    // Phase 1: players, ascending id (construction order).
    for (std::size_t i = 0; i < next.players.size(); ++i) {
        auto& p = next.players[i];
        if (p.frozen || !command_of[i]) continue;
        detail::apply_player_command(p, *command_of[i], spec, i_y, cfg.kind);
    }

    // Phase 2: the ball — kicked by its holder, carried otherwise.
    std::optional<std::size_t> slot;
    if (next.ball.holder >= 0) slot = slot_of(next.ball.holder);
    if (slot) {
        const auto& holder = next.players[*slot];
        const Command* cmd = command_of[*slot];
        const auto* kick = cmd ? std::get_if<KickCmd>(cmd) : nullptr;
        if (kick && !holder.frozen) {
            next.ball = ball_move(next.ball, kick->axis, kick->direction,
                                  kick->tau_delta, spec, i_y, cfg.player_height,
                                  talent_phi(holder.talent));
        } else {
            next.ball.pos.x = holder.pos.x;
            next.ball.pos.z = holder.pos.z;
            next.ball.pos.y = std::clamp(
                cfg.player_height + static_cast<double>(next.ball.tau) * i_y, 0.0,
                spec.y_max);
        }
    }

    // Phase 3: possession — lowest co-located id wins, nobody keeps a ball
    // they are no longer standing on.
    int new_holder = -1;
    for (const auto& p : next.players) {
        if (p.pos.x == next.ball.pos.x && p.pos.z == next.ball.pos.z) {
            new_holder = p.id;
            break;
        }
    }
    next.ball.holder = new_holder;
    for (auto& p : next.players) p.has_ball = (p.id == new_holder);

    // Phase 4: region + freeze.
    next.mdr = compute_mdr(Vec2{next.ball.pos.x, next.ball.pos.z}, cfg.mu,
                           spec.interval, Vec2{spec.x_max, spec.z_max});
    apply_freeze(next.players, next.mdr, next.ball.holder);

    next.index = state.index + 1;
    next.time_s = state.time_s + cfg.tick_period_ms / 1000.0;
    return next;
}

// Re-snap a state onto the lattice derived from new_rho. A rho change that
// leaves the interval unchanged returns the state as-is.
struct RepartitionResult {
    GameState state;
    GridSpec spec;
    bool changed = false;
};

inline RepartitionResult repartition(const GameState& state, double new_rho,
                                     const GridSpec& spec) {
    GridSpec next_spec = with_rho(spec, new_rho);
    if (next_spec.interval == spec.interval) return {state, next_spec, false};

    const double I = next_spec.interval;
    GameState next = state;
    next.interval = I;
    for (auto& p : next.players) {
        p.pos.x = snap_to_lattice(p.pos.x, I, next_spec.x_max);
        p.pos.z = snap_to_lattice(p.pos.z, I, next_spec.z_max);
    }
    next.ball.pos.x = snap_to_lattice(next.ball.pos.x, I, next_spec.x_max);
    next.ball.pos.z = snap_to_lattice(next.ball.pos.z, I, next_spec.z_max);
    next.mdr = compute_mdr(Vec2{next.ball.pos.x, next.ball.pos.z}, state.mdr.mu, I,
                           Vec2{next_spec.x_max, next_spec.z_max});
    apply_freeze(next.players, next.mdr, next.ball.holder);
    return {next, next_spec, true};
}

// Invariant audit. Returns every violation found; an empty list means ok.
inline std::vector<Violation> validate(const GameState& state, const GridSpec& spec,
                                       const GameConfig& cfg) {
    std::vector<Violation> out;
    const auto add = [&](const std::string& code, const std::string& detail) {
        out.push_back({code, detail});
    };
    const double I = spec.interval;
    const double i_y = compute_y_interval(cfg);
    const double tol = 1e-9;

    const auto on_lattice = [&](double v, double bound) {
        return std::abs(v - snap_to_lattice(v, I, bound)) <= tol;
    };

    if (state.index < 0) add("index negative", std::to_string(state.index));
    if (state.time_s < 0.0) add("time negative", std::to_string(state.time_s));

    int holders = 0;
    for (const auto& p : state.players) {
        const std::string who = "player " + std::to_string(p.id);
        if (p.pos.x < -tol || p.pos.x > spec.x_max + tol) add("x out of bounds", who);
        if (p.pos.z < -tol || p.pos.z > spec.z_max + tol) add("z out of bounds", who);
        if (!on_lattice(p.pos.x, spec.x_max)) add("x off lattice", who);
        if (!on_lattice(p.pos.z, spec.z_max)) add("z off lattice", who);
        if (p.height != cfg.player_height) add("height mismatch", who);

        const int rungs = cfg.kind == GameKind::basketball ? 2 : 1;
        bool on_ladder = false;
        for (int r = 0; r <= rungs; ++r)
            if (std::abs(p.pos.y - (p.height + r * i_y)) <= tol) on_ladder = true;
        if (!on_ladder) add("y off ladder", who);

        if (p.has_ball) ++holders;
        if (p.has_ball && p.id != state.ball.holder) add("holder flag mismatch", who);
        if (p.has_ball && p.frozen) add("holder frozen", who);
    }
    if (holders > 1) add("multiple holders", std::to_string(holders) + " holders");
    if (state.ball.holder >= 0) {
        const auto* h = find_player(state, state.ball.holder);
        if (!h) {
            add("holder unknown", std::to_string(state.ball.holder));
        } else if (classify(Vec2{h->pos.x, h->pos.z}, state.mdr) == Detail::ldr) {
            add("holder outside mdr", std::to_string(state.ball.holder));
        }
    }

    const auto& b = state.ball.pos;
    if (b.x < -tol || b.x > spec.x_max + tol) add("x out of bounds", "ball");
    if (b.z < -tol || b.z > spec.z_max + tol) add("z out of bounds", "ball");
    if (!on_lattice(b.x, spec.x_max)) add("x off lattice", "ball");
    if (!on_lattice(b.z, spec.z_max)) add("z off lattice", "ball");
    if (state.ball.tau < 0 || state.ball.tau > 2)
        add("tau out of range", std::to_string(state.ball.tau));
    if (b.y > cfg.player_height + 2.0 * i_y + tol) add("ball above ceiling", "");
    if (b.y < -tol || b.y > spec.y_max + tol) add("y out of bounds", "ball");

    if (std::abs(state.mdr.anchor.x - b.x) > tol ||
        std::abs(state.mdr.anchor.z - b.z) > tol)
        add("mdr anchor mismatch", "");
    for (const auto& c : state.mdr.corners) {
        if (c.x < -tol || c.x > spec.x_max + tol || c.z < -tol || c.z > spec.z_max + tol)
            add("mdr corner out of bounds", "");
    }
    return out;
}

}  // namespace latgrid
