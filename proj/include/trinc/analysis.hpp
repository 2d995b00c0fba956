#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trinc {

// Per-receiver Bernoulli loss probabilities. p = max, k = how many receivers
// sit at the max.
struct LossProfile {
    std::vector<double> probs;

    double max_p() const;
    std::uint32_t worst_count() const;  // receivers with p_i == max_p()
    std::size_t receivers() const { return probs.size(); }
};

// Expected transmissions until every receiver has collected m innovative
// packets, heterogeneous loss (the exact series). Summation stops once the
// tail term drops below epsilon (and n >= m).
double expected_tx_exact(const LossProfile& profile, std::uint32_t m, double epsilon = 1e-12);

// Homogeneous approximation: only the k receivers at the maximum loss p count.
double expected_tx_approx(double p, std::uint32_t k, std::uint32_t m, double epsilon = 1e-12);

// Smallest alpha with alpha * m * (m-1) >= ceil(expected_tx_approx(p, k, m)).
std::uint32_t alpha_required(double p, std::uint32_t k, std::uint32_t m);

enum class OverheadScheme { Rlnc, Dlnc, Sparse, Xor, Triangular, TriangularCompact };

const char* scheme_name(OverheadScheme s);
OverheadScheme scheme_from_name(const std::string& name);

// Per-packet header/padding overhead in bits:
//   rlnc        M*q
//   dlnc        M*ceil(log2 N)
//   sparse      M*ceil(log2 N)
//   xor         M
//   triangular  r_max + M*ceil(log2 r_max), r_max = alpha*(M-1)
//   compact     r_max + the three fixed 16-bit index fields of the wire header
// The triangular formula keeps ceil(log2 r_max) even though representing
// 0..r_max strictly needs ceil(log2(r_max+1)) bits; the wire format uses the
// strict width. r_max = 1 therefore contributes no id bits (degenerate row).
struct OverheadReport {
    OverheadScheme scheme;
    std::uint64_t bits = 0;
    std::uint32_t m = 0;
    std::uint32_t n = 0;
    unsigned q = 0;
    std::uint32_t alpha = 0;
};

OverheadReport overhead_bits(OverheadScheme scheme, std::uint32_t m, std::uint32_t n, unsigned q,
                             std::uint32_t alpha);

// One row per (scheme, M) over an inclusive M range, with alpha chosen per M
// by alpha_required(p, n, M). Homogeneous profile: k = n.
std::vector<OverheadReport> overhead_sweep(std::uint32_t m_lo, std::uint32_t m_hi,
                                           std::uint32_t m_step, std::uint32_t n, double p,
                                           unsigned q);

// CSV with header "scheme,M,N,p,q,alpha,bits" (UTF-8, LF).
std::string overhead_csv(const std::vector<OverheadReport>& rows, double p);

}  // namespace trinc
