#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trinc/analysis.hpp"

namespace trinc {

enum class TxScheme { Triangular, Rlnc, ArqRoundRobin, OraclePerfect };

const char* tx_scheme_name(TxScheme s);
TxScheme tx_scheme_from_name(const std::string& name);

struct SimConfig {
    TxScheme scheme = TxScheme::Triangular;
    std::uint32_t m = 1;
    std::uint64_t payload_bits = 128;
    LossProfile profile;
    unsigned q = 8;  // rlnc field size
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t max_tx = 0;     // per-trial safety cap; 0 selects ceil(50 * G)
    std::uint32_t preload = 0;    // packets handed loss-free to every receiver up front
};

struct SimReport {
    double mean_tx = 0.0;
    double stddev_tx = 0.0;
    double ci95 = 0.0;  // half-width of the 95% interval on the mean
    double analytic_g = 0.0;
    std::uint32_t trials = 0;
    std::uint32_t aborted = 0;  // trials that hit max_tx; excluded from the mean
    std::vector<std::uint64_t> trial_tx;  // completed trials in trial order
    std::vector<std::vector<std::uint32_t>> receiver_completion;  // [receiver][trial]
    std::uint64_t encoder_ops = 0;
    std::uint64_t decoder_ops = 0;
    std::uint32_t max_round = 0;  // triangular: highest id round generated
};

// Monte Carlo multicast over iid Bernoulli erasure channels: the transmitter
// emits packets in scheme order with no feedback; a trial ends when every
// receiver's decoder reports complete. Deterministic for a given config
// (trial i derives its streams from mix64(master_seed ^ i)).
SimReport run(const SimConfig& config);

// CSV rows over configs; header
// "scheme,M,N,p,q_or_alpha,mean_T,ci95,G,trials,aborted".
// q_or_alpha carries q for rlnc rows and the highest round used for
// triangular rows.
std::string sweep_csv(std::span<const SimConfig> configs);

}  // namespace trinc
