// scenario.hpp — experiment definitions.
//
// Scenario files are flat key = value text grouped into [section] blocks
// (grammar documented in the README). Everything a run needs — game
// constants, topology, link conditions, bot scripts, drop schedule, seed —
// lives in one file so a fixture diff shows the whole experiment.

#pragma once

#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "latgrid/game.hpp"
#include "latgrid/net.hpp"
#include "latgrid/predictor.hpp"

namespace latgrid {

enum class PredictorMode { grid, dr_baseline, none };

struct LateRule {
    int tick = 0;
    int client = 0;
    double extra_ms = 0.0;
};

struct DropSchedule {
    std::vector<int> ticks;       // all client inputs for these ticks are lost
    std::vector<LateRule> late;   // one-off extra delay on a specific input
};

struct ScenarioConfig {
    std::string name = "scenario";
    GameConfig game;
    bool adaptive = true;  // EWMA-driven repartitioning on/off
    TopologyKind topology = TopologyKind::client_server;
    int clients = 2;
    NetConditions access;
    NetConditions backbone{5.0, 0.0, 0.0, "backbone"};
    int ticks = 60;
    std::uint64_t seed = 1;
    PredictorMode predictor = PredictorMode::grid;
    BallGuard guard = BallGuard::inclusive;
    bool reconcile = false;
    std::vector<std::string> bot_specs;  // index = player id - 1
};

inline std::map<std::string, NetConditions> default_presets() {
    // Plumbing presets for sweeps; the numbers are placeholders, not
    // measurements of the physical technologies.
    return {
        {"bluetooth-like", NetConditions{40.0, 15.0, 0.02, "bluetooth-like"}},
        {"wifi-like", NetConditions{5.0, 3.0, 0.005, "wifi-like"}},
        {"lossless", NetConditions{5.0, 0.0, 0.0, "lossless"}},
    };
}

// ---------------------------------------------------------------------------
// Flat key-value parser.
// ---------------------------------------------------------------------------

struct IniEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline double parse_double(const std::string& v, int line) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("expected a number, got '" + v + "'", line);
    return out;
}

inline long parse_long(const std::string& v, int line) {
    long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("expected an integer, got '" + v + "'", line);
    return out;
}

inline std::uint64_t parse_u64(const std::string& v, int line) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("expected an unsigned integer, got '" + v + "'", line);
    return out;
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw config_error("expected on/off, got '" + v + "'", line);
}

}  // namespace detail

inline std::vector<IniEntry> parse_ini(std::string_view text) {
    std::vector<IniEntry> entries;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                           : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = detail::trim(line);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("unterminated section header", line_no);
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw config_error("empty section name", line_no);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("expected key = value", line_no);
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string value{detail::trim(line.substr(eq + 1))};
        if (key.empty()) throw config_error("empty key", line_no);
        entries.push_back({section, key, value, line_no});
    }
    return entries;
}

inline GameKind parse_game_kind(const std::string& v, int line) {
    if (v == "football") return GameKind::football;
    if (v == "hockey") return GameKind::hockey;
    if (v == "basketball") return GameKind::basketball;
    throw config_error("unknown game kind '" + v + "'", line);
}

inline Talent parse_talent(const std::string& v, int line) {
    if (v == "ordinary") return Talent::ordinary;
    if (v == "special") return Talent::special;
    if (v == "world_class") return Talent::world_class;
    throw config_error("unknown talent '" + v + "'", line);
}

// Named link presets from an already-parsed file: [preset.<name>] sections.
inline void apply_preset_sections(const std::vector<IniEntry>& entries,
                                  std::map<std::string, NetConditions>& presets) {
    for (const auto& e : entries) {
        if (!e.section.starts_with("preset.")) continue;
        const std::string name = e.section.substr(7);
        auto& p = presets[name];
        p.profile = name;
        if (e.key == "base_ms") p.base_latency_ms = detail::parse_double(e.value, e.line);
        else if (e.key == "jitter_ms") p.jitter_ms = detail::parse_double(e.value, e.line);
        else if (e.key == "loss_prob") p.loss_prob = detail::parse_double(e.value, e.line);
        else throw config_error("unknown preset key '" + e.key + "'", e.line);
    }
}

struct ParsedScenario {
    ScenarioConfig config;
    DropSchedule drops;
};

inline ParsedScenario parse_scenario(std::string_view text,
                                     std::map<std::string, NetConditions> presets =
                                         default_presets()) {
    const auto entries = parse_ini(text);
    apply_preset_sections(entries, presets);

    ParsedScenario out;
    ScenarioConfig& cfg = out.config;
    const auto preset_named = [&](const std::string& name, int line) {
        const auto it = presets.find(name);
        if (it == presets.end())
            throw config_error("unknown preset '" + name + "'", line);
        return it->second;
    };

    for (const auto& e : entries) {
        using detail::parse_bool;
        using detail::parse_double;
        using detail::parse_long;
        using detail::parse_u64;
        if (e.section.starts_with("preset.")) continue;

        if (e.section == "game") {
            if (e.key == "players_per_side")
                cfg.game.players_per_side = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "screen_width")
                cfg.game.screen_width = parse_double(e.value, e.line);
            else if (e.key == "y_max") cfg.game.y_max = parse_double(e.value, e.line);
            else if (e.key == "player_height")
                cfg.game.player_height = parse_double(e.value, e.line);
            else if (e.key == "mu") cfg.game.mu = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "kind") cfg.game.kind = parse_game_kind(e.value, e.line);
            else if (e.key == "holder_start")
                cfg.game.holder_start = parse_bool(e.value, e.line);
            else if (e.key == "talents") {
                cfg.game.talents.clear();
                for (const auto& t : detail::split(e.value, ','))
                    cfg.game.talents.push_back(parse_talent(t, e.line));
            } else
                throw config_error("unknown [game] key '" + e.key + "'", e.line);
        } else if (e.section == "partition") {
            if (e.key == "theta") cfg.game.theta = parse_double(e.value, e.line);
            else if (e.key == "game_level")
                cfg.game.game_level = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "min_points")
                cfg.game.min_points = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "latency_ms")
                cfg.game.initial_latency_ms = parse_double(e.value, e.line);
            else if (e.key == "adaptive") cfg.adaptive = parse_bool(e.value, e.line);
            else
                throw config_error("unknown [partition] key '" + e.key + "'", e.line);
        } else if (e.section == "net") {
            if (e.key == "topology") {
                if (e.value == "p2p") cfg.topology = TopologyKind::p2p;
                else if (e.value == "client_server")
                    cfg.topology = TopologyKind::client_server;
                else if (e.value == "network_server")
                    cfg.topology = TopologyKind::network_server;
                else
                    throw config_error("unknown topology '" + e.value + "'", e.line);
            } else if (e.key == "clients")
                cfg.clients = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "preset") cfg.access = preset_named(e.value, e.line);
            else if (e.key == "base_ms")
                cfg.access.base_latency_ms = parse_double(e.value, e.line);
            else if (e.key == "jitter_ms")
                cfg.access.jitter_ms = parse_double(e.value, e.line);
            else if (e.key == "loss_prob")
                cfg.access.loss_prob = parse_double(e.value, e.line);
            else if (e.key == "backbone_preset")
                cfg.backbone = preset_named(e.value, e.line);
            else if (e.key == "backbone_base_ms")
                cfg.backbone.base_latency_ms = parse_double(e.value, e.line);
            else if (e.key == "backbone_jitter_ms")
                cfg.backbone.jitter_ms = parse_double(e.value, e.line);
            else if (e.key == "backbone_loss_prob")
                cfg.backbone.loss_prob = parse_double(e.value, e.line);
            else
                throw config_error("unknown [net] key '" + e.key + "'", e.line);
        } else if (e.section == "run") {
            if (e.key == "ticks") cfg.ticks = static_cast<int>(parse_long(e.value, e.line));
            else if (e.key == "tick_period_ms")
                cfg.game.tick_period_ms = parse_double(e.value, e.line);
            else if (e.key == "seed") cfg.seed = parse_u64(e.value, e.line);
            else if (e.key == "name") cfg.name = e.value;
            else if (e.key == "predictor") {
                if (e.value == "grid") cfg.predictor = PredictorMode::grid;
                else if (e.value == "dr_baseline")
                    cfg.predictor = PredictorMode::dr_baseline;
                else if (e.value == "none") cfg.predictor = PredictorMode::none;
                else
                    throw config_error("unknown predictor '" + e.value + "'", e.line);
            } else if (e.key == "ball_guard") {
                if (e.value == "strict") cfg.guard = BallGuard::strict;
                else if (e.value == "inclusive") cfg.guard = BallGuard::inclusive;
                else
                    throw config_error("unknown ball_guard '" + e.value + "'", e.line);
            } else if (e.key == "reconcile")
                cfg.reconcile = parse_bool(e.value, e.line);
            else
                throw config_error("unknown [run] key '" + e.key + "'", e.line);
        } else if (e.section == "bots") {
            if (!e.key.starts_with("player"))
                throw config_error("bot keys look like playerN", e.line);
            const long id = detail::parse_long(e.key.substr(6), e.line);
            if (id < 1) throw config_error("player ids start at 1", e.line);
            if (cfg.bot_specs.size() < static_cast<std::size_t>(id))
                cfg.bot_specs.resize(static_cast<std::size_t>(id));
            cfg.bot_specs[static_cast<std::size_t>(id - 1)] = e.value;
        } else if (e.section == "drops") {
            if (e.key == "ticks") {
                for (const auto& t : detail::split(e.value, ','))
                    if (!t.empty())
                        out.drops.ticks.push_back(
                            static_cast<int>(parse_long(t, e.line)));
            } else if (e.key == "late") {
                const auto parts = detail::split(e.value, ':');
                if (parts.size() != 3)
                    throw config_error("late rule is tick:client:extra_ms", e.line);
                out.drops.late.push_back(
                    {static_cast<int>(parse_long(parts[0], e.line)),
                     static_cast<int>(parse_long(parts[1], e.line)),
                     parse_double(parts[2], e.line)});
            } else
                throw config_error("unknown [drops] key '" + e.key + "'", e.line);
        } else {
            throw config_error("unknown section '" + e.section + "'", e.line);
        }
    }

    validate_config(cfg.game);
    if (cfg.clients < 1) throw config_error("clients must be at least 1");
    if (cfg.ticks < 2) throw config_error("duration must be at least 2 ticks");
    return out;
}

// ---------------------------------------------------------------------------
// Bot scripts: deterministic command per (player, tick), independent of any
// network state so a lossless shadow run regenerates the same inputs.
//
//   hold                 stay put
//   const:+x             one step in that direction every tick
//   reverse:+x:10        as const, direction flipping every 10 ticks
//   walk                 seeded random cardinal step each tick
//   jump:5               jump every 5th tick
//   kick:+x:1:3          holder: kick (tau_delta 1) every 3rd tick, else carry
// ---------------------------------------------------------------------------

struct BotScript {
    enum class Kind { hold, constant, reverse, walk, jump, kick } kind = Kind::hold;
    Axis axis = Axis::x;
    int direction = 1;
    int period = 1;
    int tau_delta = 0;
};

namespace detail {

inline std::pair<Axis, int> parse_axis_dir(const std::string& v, int line) {
    if (v.size() != 2 || (v[0] != '+' && v[0] != '-') || (v[1] != 'x' && v[1] != 'z'))
        throw config_error("expected +x, -x, +z or -z, got '" + v + "'", line);
    return {v[1] == 'x' ? Axis::x : Axis::z, v[0] == '+' ? 1 : -1};
}

}  // namespace detail

inline BotScript parse_bot_script(const std::string& spec, int line = 0) {
    const auto parts = detail::split(spec, ':');
    BotScript s;
    const std::string& head = parts[0];
    if (head == "hold" || head.empty()) {
        s.kind = BotScript::Kind::hold;
    } else if (head == "const") {
        if (parts.size() != 2) throw config_error("const wants const:+x", line);
        s.kind = BotScript::Kind::constant;
        std::tie(s.axis, s.direction) = detail::parse_axis_dir(parts[1], line);
    } else if (head == "reverse") {
        if (parts.size() != 3) throw config_error("reverse wants reverse:+x:N", line);
        s.kind = BotScript::Kind::reverse;
        std::tie(s.axis, s.direction) = detail::parse_axis_dir(parts[1], line);
        s.period = static_cast<int>(detail::parse_long(parts[2], line));
        if (s.period < 1) throw config_error("reverse period must be positive", line);
    } else if (head == "walk") {
        s.kind = BotScript::Kind::walk;
    } else if (head == "jump") {
        if (parts.size() != 2) throw config_error("jump wants jump:N", line);
        s.kind = BotScript::Kind::jump;
        s.period = static_cast<int>(detail::parse_long(parts[1], line));
        if (s.period < 1) throw config_error("jump period must be positive", line);
    } else if (head == "kick") {
        if (parts.size() != 4) throw config_error("kick wants kick:+x:taud:N", line);
        s.kind = BotScript::Kind::kick;
        std::tie(s.axis, s.direction) = detail::parse_axis_dir(parts[1], line);
        s.tau_delta = static_cast<int>(detail::parse_long(parts[2], line));
        s.period = static_cast<int>(detail::parse_long(parts[3], line));
        if (s.period < 1) throw config_error("kick period must be positive", line);
    } else {
        throw config_error("unknown bot script '" + spec + "'", line);
    }
    return s;
}

// Stateless per-(seed, player, tick) draw so scripts replay identically in
// shadow runs regardless of how often anything else consumed randomness.
inline std::uint64_t bot_draw(std::uint64_t seed, int player_id, int tick) {
    std::uint64_t z = seed ^ (0x632BE59BD9B4E019ull * static_cast<std::uint64_t>(player_id + 1)) ^
                      (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(tick + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline Command bot_command(const BotScript& s, std::uint64_t seed, int player_id,
                           int tick) {
    switch (s.kind) {
        case BotScript::Kind::hold: return IdleCmd{};
        case BotScript::Kind::constant: return MoveCmd{s.axis, s.direction};
        case BotScript::Kind::reverse: {
            const int phase = (tick / s.period) % 2;
            return MoveCmd{s.axis, phase == 0 ? s.direction : -s.direction};
        }
        case BotScript::Kind::walk: {
            switch (bot_draw(seed, player_id, tick) % 5) {
                case 0: return IdleCmd{};
                case 1: return MoveCmd{Axis::x, 1};
                case 2: return MoveCmd{Axis::x, -1};
                case 3: return MoveCmd{Axis::z, 1};
                default: return MoveCmd{Axis::z, -1};
            }
        }
        case BotScript::Kind::jump:
            return tick % s.period == 0 ? Command{JumpCmd{1}} : Command{IdleCmd{}};
        case BotScript::Kind::kick:
            if (tick % s.period == 0) return KickCmd{s.axis, s.direction, s.tau_delta};
            return MoveCmd{s.axis, s.direction};
    }
    return IdleCmd{};
}

// All bot inputs for one tick, every player, ascending id.
inline std::vector<InputEvent> bot_inputs(const ScenarioConfig& cfg, int tick,
                                          double now_ms) {
    std::vector<InputEvent> out;
    const int total = cfg.game.players_per_side * 2;
    for (int id = 1; id <= total; ++id) {
        BotScript script;  // hold by default
        const std::size_t i = static_cast<std::size_t>(id - 1);
        if (i < cfg.bot_specs.size() && !cfg.bot_specs[i].empty())
            script = parse_bot_script(cfg.bot_specs[i]);
        out.push_back({id, bot_command(script, cfg.seed, id, tick), now_ms});
    }
    return out;
}

}  // namespace latgrid
