// metrics.hpp — per-tick measurement rows and their CSV form.
//
// Column order is frozen (see README); doubles are printed with
// std::to_chars shortest round-trip form so equal runs produce
// byte-identical files.

#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "latgrid/core.hpp"

namespace latgrid {

struct MetricsRow {
    int tick = 0;
    double latency_ms = 0.0;  // L estimate in force at commit time
    double rho = 0.0;
    double interval = 0.0;
    bool predicted = false;      // committed via the predictor
    bool repartitioned = false;  // interval changed at this tick
    int unfrozen = 0;
    long msgs_sent = 0;   // protocol messages sent during this round
    long drops = 0;       // packets lost in flight during this round
    long late = 0;        // inputs discarded as late at this commit
    // Distance to the lossless shadow state in lattice steps; negative
    // when no ground truth is available.
    double err_ball_steps = -1.0;
    std::vector<double> err_player_steps;
};

inline std::string format_double(double v) {
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, p) : std::string("nan");
}

inline std::string metrics_header(int player_count) {
    std::string h =
        "tick,latency_ms,rho,interval,predicted,repartitioned,unfrozen,"
        "msgs_sent,drops,late,err_ball_steps";
    for (int k = 1; k <= player_count; ++k) h += ",err_p" + std::to_string(k);
    return h;
}

inline std::string metrics_row_csv(const MetricsRow& r) {
    std::string s;
    s += std::to_string(r.tick);
    s += ',';
    s += format_double(r.latency_ms);
    s += ',';
    s += format_double(r.rho);
    s += ',';
    s += format_double(r.interval);
    s += ',';
    s += r.predicted ? '1' : '0';
    s += ',';
    s += r.repartitioned ? '1' : '0';
    s += ',';
    s += std::to_string(r.unfrozen);
    s += ',';
    s += std::to_string(r.msgs_sent);
    s += ',';
    s += std::to_string(r.drops);
    s += ',';
    s += std::to_string(r.late);
    s += ',';
    s += r.err_ball_steps < 0.0 ? std::string() : format_double(r.err_ball_steps);
    for (double e : r.err_player_steps) {
        s += ',';
        s += e < 0.0 ? std::string() : format_double(e);
    }
    return s;
}

inline std::string metrics_csv(const std::vector<MetricsRow>& rows, int player_count) {
    std::string out = metrics_header(player_count);
    out += '\n';
    for (const auto& r : rows) {
        out += metrics_row_csv(r);
        out += '\n';
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << contents;
}

}  // namespace latgrid
