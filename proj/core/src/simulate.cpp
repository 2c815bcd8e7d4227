#include "geaoi/simulate.hpp"

#include "geaoi/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace geaoi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-replication uniform source. The seed sequence for replication r is
// splitmix64 applied to (seed, r) so substreams never share state.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t replication)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~replication))) {}

    // 53-bit uniform in [0, 1); independent of the standard library's
    // distribution implementations.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::mt19937_64 engine_;
};

struct Cycle {
    double S;
    double Z;
    State state;
};

class PathGenerator {
public:
    PathGenerator(const SimConfig &cfg, std::uint64_t replication)
        : stream_(cfg.seed, replication), P_(cfg.P) {
        std::visit(
            [this](const auto &sc) {
                service_ = {sc.service_rate(State::Bad), sc.service_rate(State::Good)};
                arrival_ = {sc.arrival_rate(State::Bad), sc.arrival_rate(State::Good)};
            },
            cfg.scenario);
        if (cfg.initial_state) {
            state_ = *cfg.initial_state;
        } else {
            const double pi_b = stationary_distribution(P_).pi_b;
            state_ = stream_.uniform() < pi_b ? State::Bad : State::Good;
        }
    }

    Cycle next() {
        const auto i = static_cast<std::size_t>(state_ == State::Good);
        Cycle c{};
        c.state = state_;
        c.S = stream_.exponential(service_[i]);
        c.Z = stream_.exponential(arrival_[i]);
        state_ = next_state(state_, P_, stream_.uniform());
        return c;
    }

private:
    Stream stream_;
    TransitionMatrix P_;
    std::array<double, 2> service_{};
    std::array<double, 2> arrival_{};
    State state_ = State::Bad;
};

struct Accumulator {
    double area = 0.0;
    double time = 0.0;
    double max_area = 0.0;
    std::uint64_t in_bad = 0;

    void add(double a, double t, State s) {
        area += a;
        time += t;
        max_area = std::max(max_area, a);
        in_bad += s == State::Bad;
    }
};

ReplicationResult run_sawtooth(const SimConfig &cfg, std::uint64_t r) {
    PathGenerator gen(cfg, r);
    Accumulator acc;
    Cycle prev = gen.next();
    for (std::uint64_t j = 0; j < cfg.num_cycles; ++j) {
        const Cycle cur = gen.next();
        const double span = prev.Z + cur.S;
        acc.add(prev.S * span + 0.5 * span * span, span, prev.state);
        prev = cur;
    }
    return {acc.area / acc.time, cfg.num_cycles, acc.time, acc.in_bad, acc.max_area};
}

ReplicationResult run_trapezoid(const SimConfig &cfg, std::uint64_t r) {
    PathGenerator gen(cfg, r);
    Accumulator acc;
    Cycle prev = gen.next();
    for (std::uint64_t j = 0; j < cfg.num_cycles; ++j) {
        const Cycle cur = gen.next();
        const double y = prev.S + prev.Z;
        acc.add(0.5 * y * y + y * cur.S, y, prev.state);
        prev = cur;
    }
    return {acc.area / acc.time, cfg.num_cycles, acc.time, acc.in_bad, acc.max_area};
}

template <typename Run>
SimResult run_replications(const SimConfig &cfg, Run run) {
    const std::uint32_t R = cfg.replications;
    std::vector<ReplicationResult> reps(R);

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, R);
    if (workers == 1) {
        for (std::uint32_t r = 0; r < R; ++r)
            reps[r] = run(cfg, r);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (auto r = next.fetch_add(1); r < R; r = next.fetch_add(1))
                    reps[r] = run(cfg, r);
            });
        }
    }

    // Reduction in replication order, independent of completion order.
    SimResult out{};
    double sum = 0.0;
    for (const auto &rep : reps) {
        sum += rep.delta_hat;
        out.cycles_total += rep.cycles;
        out.sim_time_total += rep.time;
    }
    out.delta_hat = sum / R;
    if (R > 1) {
        double ss = 0.0;
        for (const auto &rep : reps)
            ss += (rep.delta_hat - out.delta_hat) * (rep.delta_hat - out.delta_hat);
        out.std_error = std::sqrt(ss / (R - 1)) / std::sqrt(static_cast<double>(R));
    }
    out.per_replication = std::move(reps);
    return out;
}

} // namespace

void validate(const SimConfig &cfg, std::uint64_t min_cycles) {
    if (cfg.num_cycles < min_cycles)
        throw InvalidArgument("num_cycles must be at least " + std::to_string(min_cycles));
    if (cfg.replications < 1)
        throw InvalidArgument("replications must be at least 1");
}

SimResult simulate_cycles(const SimConfig &cfg) {
    validate(cfg);
    return run_replications(cfg, run_sawtooth);
}

SimResult simulate_area_paper_partition(const SimConfig &cfg) {
    validate(cfg, 2);
    return run_replications(cfg, run_trapezoid);
}

std::vector<CycleRecord> trajectory(const SimConfig &cfg, std::uint64_t max_cycles) {
    std::vector<CycleRecord> out;
    out.reserve(max_cycles);
    PathGenerator gen(cfg, 0);
    double t = 0.0;
    for (std::uint64_t j = 0; j < max_cycles; ++j) {
        const Cycle c = gen.next();
        t += c.S + c.Z;
        out.push_back({t, c.S, c.Z, c.state});
    }
    return out;
}

} // namespace geaoi
