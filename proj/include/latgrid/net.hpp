// net.hpp — simulated transport primitives.
//
// Nothing here opens a socket. A link is a (base latency, jitter half-width,
// loss probability) triple; transmit() turns a send into either a delivery
// time or a drop, drawing from the scenario's seeded stream. Packets carry
// their send timestamp, which feeds both the jitter buffer's playout spacing
// and the round-trip estimator.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latgrid/core.hpp"
#include "latgrid/game.hpp"
#include "latgrid/region.hpp"

namespace latgrid {

struct NetConditions {
    double base_latency_ms = 50.0;
    double jitter_ms = 0.0;   // half-width of the symmetric uniform perturbation
    double loss_prob = 0.0;
    std::string profile = "custom";
};

// Echoed by the client so the server can compute a network-only RTT:
// rtt = arrival - update_sent_at - hold (hold = time the client sat on the
// update before its next send).
struct EchoInfo {
    double update_sent_at_ms = -1.0;  // negative: nothing to echo yet
    double hold_ms = 0.0;
};

struct InputBatch {
    int tick = 0;
    int client = 0;
    std::vector<InputEvent> events;
    EchoInfo echo;
};

// Per-client scoped state update: the MDR contents only.
struct ScopedUpdate {
    int tick = 0;
    double interval = 0.0;
    double rho = 0.0;
    BallState ball;
    Region mdr;
    std::vector<PlayerState> mdr_players;
    std::uint64_t full_state_hash = 0;
};

// Inter-server batches for the network-server topology.
struct RelayUp {
    int tick = 0;
    std::vector<InputBatch> batches;
};
struct RelayDown {
    int tick = 0;
    std::vector<int> clients;
    std::vector<ScopedUpdate> updates;  // parallel to clients
};

using Payload = std::variant<InputBatch, ScopedUpdate, RelayUp, RelayDown>;

struct Packet {
    std::uint64_t seq = 0;  // strictly increasing per sender
    double sent_at_ms = 0.0;
    int sender = 0;
    Payload payload;
};

// Either the simulated delivery time or nothing (lost). Loss is drawn
// first; the jitter draw happens only for delivered packets.
inline std::optional<double> transmit(const Packet& packet, const NetConditions& link,
                                      SeededStream& rng) {
    if (link.loss_prob > 0.0 && rng.next_unit() < link.loss_prob) return std::nullopt;
    double delay = link.base_latency_ms;
    if (link.jitter_ms > 0.0)
        delay += rng.next_in(-link.jitter_ms, link.jitter_ms);
    return packet.sent_at_ms + std::max(0.0, delay);
}

// JitterBuffer — releases packets in sequence order with inter-release
// spacing taken from the send timestamps. A missing predecessor holds its
// successors until declare_lost_up_to() runs at a tick boundary; skipped
// sequence numbers are counted as gaps.
class JitterBuffer {
public:
    explicit JitterBuffer(std::uint64_t first_seq = 0) : next_seq_(first_seq) {}

    void push(const Packet& p) {
        if (p.seq < next_seq_) return;  // duplicate or already skipped
        pending_.emplace(p.seq, p);
    }

    // In-order packets whose playout time has arrived.
    std::vector<Packet> pop_ready(double now_ms) {
        std::vector<Packet> out;
        while (true) {
            auto it = pending_.find(next_seq_);
            if (it == pending_.end()) break;
            const Packet& p = it->second;
            if (!anchored_) {
                anchor_offset_ms_ = now_ms - p.sent_at_ms;
                anchored_ = true;
            }
            if (p.sent_at_ms + anchor_offset_ms_ > now_ms) break;
            out.push_back(p);
            pending_.erase(it);
            ++next_seq_;
        }
        return out;
    }

    // Tick boundary: give up on every sequence number below the oldest
    // pending packet so later traffic can flow.
    void declare_lost_up_to_pending() {
        if (pending_.empty()) return;
        const std::uint64_t oldest = pending_.begin()->first;
        if (oldest > next_seq_) {
            gaps_ += oldest - next_seq_;
            next_seq_ = oldest;
        }
    }

    std::uint64_t gaps() const { return gaps_; }
    std::size_t pending() const { return pending_.size(); }
    std::uint64_t next_seq() const { return next_seq_; }

private:
    std::map<std::uint64_t, Packet> pending_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t gaps_ = 0;
    bool anchored_ = false;
    double anchor_offset_ms_ = 0.0;
};

// Exponentially weighted moving average of round-trip samples, smoothing
// factor 0.2, seeded by the first observation.
class RttEstimator {
public:
    void add(double sample_ms) {
        if (!estimate_)
            estimate_ = sample_ms;
        else
            estimate_ = kAlpha * sample_ms + (1.0 - kAlpha) * *estimate_;
        ++samples_;
    }

    std::optional<double> estimate() const { return estimate_; }
    std::size_t samples() const { return samples_; }

    static constexpr double kAlpha = 0.2;

private:
    std::optional<double> estimate_;
    std::size_t samples_ = 0;
};

enum class TopologyKind { p2p, client_server, network_server };

inline const char* to_string(TopologyKind k) {
    switch (k) {
        case TopologyKind::p2p: return "p2p";
        case TopologyKind::client_server: return "client_server";
        case TopologyKind::network_server: return "network_server";
    }
    return "?";
}

// Node ids: clients are 0..n-1, servers use a reserved range.
inline constexpr int kServer0 = 1000;
inline constexpr int kServer1 = 1001;

struct Topology {
    TopologyKind kind = TopologyKind::client_server;
    int clients = 0;
    std::map<std::pair<int, int>, NetConditions> links;

    const NetConditions& link(int from, int to) const {
        auto it = links.find({from, to});
        if (it == links.end()) throw std::invalid_argument("no such link");
        return it->second;
    }
};

// p2p: complete graph over clients. client_server: every client to/from
// server 0. network_server: clients split round-robin over two servers
// joined by one inter-server link.
inline Topology make_topology(TopologyKind kind, int clients,
                              const NetConditions& access,
                              const NetConditions& backbone = {}) {
    if (clients < 1) throw std::invalid_argument("need at least one client");
    Topology t;
    t.kind = kind;
    t.clients = clients;
    switch (kind) {
        case TopologyKind::p2p:
            for (int a = 0; a < clients; ++a)
                for (int b = 0; b < clients; ++b)
                    if (a != b) t.links[{a, b}] = access;
            break;
        case TopologyKind::client_server:
            for (int c = 0; c < clients; ++c) {
                t.links[{c, kServer0}] = access;
                t.links[{kServer0, c}] = access;
            }
            break;
        case TopologyKind::network_server:
            for (int c = 0; c < clients; ++c) {
                const int server = c % 2 == 0 ? kServer0 : kServer1;
                t.links[{c, server}] = access;
                t.links[{server, c}] = access;
            }
            t.links[{kServer0, kServer1}] = backbone;
            t.links[{kServer1, kServer0}] = backbone;
            break;
    }
    return t;
}

inline int server_of(const Topology& t, int client) {
    if (t.kind != TopologyKind::network_server) return kServer0;
    return client % 2 == 0 ? kServer0 : kServer1;
}

// Analytic per-protocol message count over `rounds` update rounds.
// p2p: every client to every other. client_server: n inputs up, n scoped
// updates down. network_server: the same 2n plus one inter-server exchange
// each way per round.
inline long traffic_count(TopologyKind kind, int clients, int rounds) {
    if (clients < 1) throw std::invalid_argument("need at least one client");
    if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
    const long n = clients;
    const long r = rounds;
    switch (kind) {
        case TopologyKind::p2p: return r * n * (n - 1);
        case TopologyKind::client_server: return r * 2 * n;
        case TopologyKind::network_server: return r * (2 * n + 2);
    }
    return 0;
}

}  // namespace latgrid
