#pragma once

#include "geaoi/analytic.hpp"
#include "geaoi/chain.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace geaoi {

/**
 * Seeded Monte Carlo run of the blocking server.
 *
 * Each replication r draws from an independent substream keyed by
 * (seed, r). Cycle j enters service in the current modulation state, draws
 * its service time and the residual wait for the next successful arrival,
 * then advances the chain once.
 */
struct SimConfig {
    Scenario scenario;
    TransitionMatrix P;
    /// Fixed starting state; nullopt draws it from the stationary distribution.
    std::optional<State> initial_state = std::nullopt;
    std::uint64_t num_cycles = 1'000'000;
    std::uint64_t seed = 0;
    std::uint32_t replications = 8;
    /// Worker threads for replications; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

struct ReplicationResult {
    double delta_hat;
    std::uint64_t cycles;
    double time;
    std::uint64_t cycles_in_bad;
    double max_cycle_area;
};

struct SimResult {
    double delta_hat;
    double std_error; ///< sample std of per-replication estimates / sqrt(R); 0 when R = 1
    std::uint64_t cycles_total;
    double sim_time_total;
    std::vector<ReplicationResult> per_replication;
};

/// One record of the sampled path. T is the generation time of the next
/// successful packet, i.e. T_j = T_{j-1} + S_j + Z_j with T_0 = 0.
struct CycleRecord {
    double T;
    double S;
    double Z;
    State state;
};

/// Throws InvalidArgument on num_cycles < min_cycles or replications < 1.
void validate(const SimConfig &cfg, std::uint64_t min_cycles = 1);

/**
 * Time average of the age sawtooth between consecutive deliveries: after
 * delivery j the age equals S_j and grows at unit slope for Z_j + S_{j+1}.
 * Estimate per replication is total area over total elapsed time.
 */
SimResult simulate_cycles(const SimConfig &cfg);

/**
 * Same sample paths as simulate_cycles, accumulated with the per-cycle
 * trapezoid Q_j = Y_j^2 / 2 + Y_j S_{j+1} over Y_j = S_j + Z_j. The two
 * estimators differ only by first/last boundary terms. Requires num_cycles >= 2.
 */
SimResult simulate_area_paper_partition(const SimConfig &cfg);

/// First max_cycles records of replication 0's sample path.
std::vector<CycleRecord> trajectory(const SimConfig &cfg, std::uint64_t max_cycles);

} // namespace geaoi
