// snapshot.hpp — canonical binary state snapshots.
//
// Fixed field order, little-endian, IEEE-754 doubles as raw 64-bit words.
// Two states that compare equal serialize to identical bytes on any
// platform, so replay tests can compare FNV-1a hashes instead of fields.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

#include "latgrid/game.hpp"

namespace latgrid {

inline constexpr std::uint16_t kSnapshotVersion = 1;

namespace detail {

struct ByteWriter {
    std::vector<std::uint8_t> bytes;

    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
};

struct ByteReader {
    const std::uint8_t* p;
    const std::uint8_t* end;

    bool fail = false;

    std::uint8_t u8() { return take(1) ? *(p - 1) : 0; }
    std::uint16_t u16() { return static_cast<std::uint16_t>(gather(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(gather(4)); }
    std::uint64_t u64() { return gather(8); }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

private:
    bool take(std::size_t n) {
        if (static_cast<std::size_t>(end - p) < n) {
            fail = true;
            return false;
        }
        p += n;
        return true;
    }
    std::uint64_t gather(std::size_t n) {
        if (!take(n)) return 0;
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i)
            v |= static_cast<std::uint64_t>(*(p - n + i)) << (8 * i);
        return v;
    }
};

}  // namespace detail

inline std::vector<std::uint8_t> serialize_state(const GameState& s) {
    detail::ByteWriter w;
    w.u8('L');
    w.u8('G');
    w.u8('S');
    w.u8('S');
    w.u16(kSnapshotVersion);
    w.i32(s.index);
    w.f64(s.time_s);
    w.f64(s.interval);
    w.u64(s.rng_cursor);

    w.u32(static_cast<std::uint32_t>(s.players.size()));
    for (const auto& p : s.players) {
        w.i32(p.id);
        w.f64(p.pos.x);
        w.f64(p.pos.y);
        w.f64(p.pos.z);
        w.u8(static_cast<std::uint8_t>(p.talent));
        w.u8(p.has_ball ? 1 : 0);
        w.u8(p.frozen ? 1 : 0);
        w.f64(p.height);
    }

    w.f64(s.ball.pos.x);
    w.f64(s.ball.pos.y);
    w.f64(s.ball.pos.z);
    w.i32(s.ball.tau);
    w.i32(s.ball.holder);

    w.f64(s.mdr.anchor.x);
    w.f64(s.mdr.anchor.z);
    w.i32(s.mdr.mu);
    for (const auto& c : s.mdr.corners) {
        w.f64(c.x);
        w.f64(c.z);
    }
    w.f64(s.mdr.bounds.x);
    w.f64(s.mdr.bounds.z);
    return std::move(w.bytes);
}

inline GameState deserialize_state(const std::vector<std::uint8_t>& bytes) {
    detail::ByteReader r{bytes.data(), bytes.data() + bytes.size()};
    if (r.u8() != 'L' || r.u8() != 'G' || r.u8() != 'S' || r.u8() != 'S')
        throw std::invalid_argument("bad snapshot magic");
    if (r.u16() != kSnapshotVersion)
        throw std::invalid_argument("unsupported snapshot version");

    GameState s;
    s.index = r.i32();
    s.time_s = r.f64();
    s.interval = r.f64();
    s.rng_cursor = r.u64();

    const std::uint32_t n = r.u32();
    s.players.reserve(n);
    for (std::uint32_t i = 0; i < n && !r.fail; ++i) {
        PlayerState p;
        p.id = r.i32();
        p.pos.x = r.f64();
        p.pos.y = r.f64();
        p.pos.z = r.f64();
        p.talent = static_cast<Talent>(r.u8());
        p.has_ball = r.u8() != 0;
        p.frozen = r.u8() != 0;
        p.height = r.f64();
        s.players.push_back(p);
    }

    s.ball.pos.x = r.f64();
    s.ball.pos.y = r.f64();
    s.ball.pos.z = r.f64();
    s.ball.tau = r.i32();
    s.ball.holder = r.i32();

    s.mdr.anchor.x = r.f64();
    s.mdr.anchor.z = r.f64();
    s.mdr.mu = r.i32();
    for (auto& c : s.mdr.corners) {
        c.x = r.f64();
        c.z = r.f64();
    }
    s.mdr.bounds.x = r.f64();
    s.mdr.bounds.z = r.f64();
    if (r.fail) throw std::invalid_argument("truncated snapshot");
    return s;
}

inline std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::uint64_t state_hash(const GameState& s) { return fnv1a64(serialize_state(s)); }

}  // namespace latgrid
