#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trinc/id_sequence.hpp"

namespace trinc {

using BigInt = boost::multiprecision::cpp_int;

// Integer coefficient row for an id: lambda_m = 2^(r_max - r_m), using the
// id's own r_max. Exact arithmetic; entries grow as 2^(round*(M-1)).
std::vector<BigInt> lambda_row(const TriId& id);
std::vector<std::vector<BigInt>> lambda_matrix(std::span<const TriId> ids);

// Exact rank of the lambda matrix over the rationals (fraction-free Bareiss
// elimination). Verification oracle only: batch sizes are capped at 16.
std::size_t lambda_rank(std::span<const TriId> ids);

// Independence test for one complete group plus a probe from another group:
// with the group reordered so its anchor is coordinate 1, checks
//   2^(rho(M-1)) * (2^rho - 1) * sum_{i>=2} lambda_i  !=  (2^(rho(M-1)) - 1) * lambda_1
// where rho is the group's round (the round-1 case is the textbook form).
// Rejects probes anchored at the group's anchor in the group's round.
bool lemma2_condition(std::span<const TriId> group, const TriId& probe);

// Dense GF(2) elimination over the M*B original bits: true iff the column
// equations of the given coded-packet ids determine every bit. Ground truth
// for decodability, independent of the peeling path.
bool bit_solvable(std::uint32_t m, std::uint64_t payload_bits, std::span<const TriId> ids);

// GF(2) row space with incremental rank, used by bit_solvable and tests.
class Gf2Matrix {
public:
    explicit Gf2Matrix(std::size_t columns);
    // Reduces the row against current pivots; returns true if it was
    // independent (rank grew).
    bool add_row(const std::vector<std::uint64_t>& row_words);
    std::size_t rank() const { return rows_.size(); }
    std::size_t columns() const { return cols_; }

private:
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;  // echelon rows
    std::vector<std::size_t> pivot_;                // pivot column per row
};

}  // namespace trinc
