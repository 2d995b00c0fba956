#include "trinc/rank_oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace trinc {

namespace {

constexpr std::uint32_t kOracleBatchCap = 16;

void check_batch(std::span<const TriId> ids) {
    if (ids.empty()) throw std::invalid_argument("rank oracle: no ids");
    const std::uint32_t m = ids[0].m;
    if (m > kOracleBatchCap)
        throw std::invalid_argument("rank oracle: batch size capped at 16");
    for (const TriId& id : ids)
        if (id.m != m) throw std::invalid_argument("rank oracle: mixed batch sizes");
}

}  // namespace

std::vector<BigInt> lambda_row(const TriId& id) {
    std::vector<BigInt> row(id.m);
    const std::uint32_t rmax = id.r_max();
    for (std::uint32_t i = 0; i < id.m; ++i) row[i] = BigInt(1) << (rmax - id.r[i]);
    return row;
}

std::vector<std::vector<BigInt>> lambda_matrix(std::span<const TriId> ids) {
    check_batch(ids);
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(ids.size());
    for (const TriId& id : ids) rows.push_back(lambda_row(id));
    return rows;
}

std::size_t lambda_rank(std::span<const TriId> ids) {
    auto a = lambda_matrix(ids);
    const std::size_t nrows = a.size();
    const std::size_t ncols = a[0].size();

    // Bareiss fraction-free elimination; prev divides exactly at every step.
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t sel = rank;
        while (sel < nrows && a[sel][col] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(a[rank], a[sel]);
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            for (std::size_t c = col + 1; c < ncols; ++c)
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

bool lemma2_condition(std::span<const TriId> group, const TriId& probe) {
    check_batch(group);
    const std::uint32_t m = group[0].m;
    if (m < 2) throw std::invalid_argument("lemma2: batch size must be >= 2");
    if (probe.m != m) throw std::invalid_argument("lemma2: probe batch size mismatch");
    if (group.size() != m - 1)
        throw std::invalid_argument("lemma2: expected one complete group of m-1 ids");

    const std::uint32_t anchor = group[0].group;
    const std::uint32_t round = group[0].round;
    std::vector<bool> seen(m - 1, false);
    for (const TriId& id : group) {
        if (id.group != anchor || id.round != round)
            throw std::invalid_argument("lemma2: ids are not one group");
        if (seen[id.rotation]) throw std::invalid_argument("lemma2: duplicate rotation in group");
        seen[id.rotation] = true;
    }
    if (probe.group == anchor && probe.round == round)
        throw std::invalid_argument("lemma2: probe anchored at the group's position");

    // Reorder coordinates so the group's anchor is coordinate 1.
    std::vector<BigInt> lam = lambda_row(probe);
    std::swap(lam[0], lam[anchor]);

    const BigInt a = (BigInt(1) << (std::uint64_t{round} * (m - 1))) * ((BigInt(1) << round) - 1);
    const BigInt b = (BigInt(1) << (std::uint64_t{round} * (m - 1))) - 1;
    BigInt tail = 0;
    for (std::uint32_t i = 1; i < m; ++i) tail += lam[i];
    return a * tail != b * lam[0];
}

Gf2Matrix::Gf2Matrix(std::size_t columns) : cols_(columns), words_((columns + 63) / 64) {}

bool Gf2Matrix::add_row(const std::vector<std::uint64_t>& row_words) {
    std::vector<std::uint64_t> row = row_words;
    row.resize(words_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivot_[i];
        if ((row[p >> 6] >> (p & 63)) & 1u)
            for (std::size_t w = 0; w < words_; ++w) row[w] ^= rows_[i][w];
    }
    for (std::size_t w = 0; w < words_; ++w) {
        if (row[w] == 0) continue;
        const std::size_t p = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
        rows_.push_back(std::move(row));
        pivot_.push_back(p);
        return true;
    }
    return false;
}

bool bit_solvable(std::uint32_t m, std::uint64_t payload_bits, std::span<const TriId> ids) {
    check_batch(ids);
    if (ids[0].m != m) throw std::invalid_argument("bit_solvable: batch size mismatch");
    if (payload_bits < 1) throw std::invalid_argument("bit_solvable: payload must be >= 1 bit");

    const std::size_t unknowns = m * payload_bits;
    Gf2Matrix mat(unknowns);
    std::vector<std::uint64_t> row((unknowns + 63) / 64);
    for (const TriId& id : ids) {
        const std::uint64_t rmax = id.r_max();
        for (std::uint64_t col = 0; col < payload_bits + rmax; ++col) {
            std::fill(row.begin(), row.end(), 0);
            bool any = false;
            for (std::uint32_t i = 0; i < m; ++i) {
                if (col < id.r[i]) continue;
                const std::uint64_t bit = col - id.r[i];
                if (bit >= payload_bits) continue;
                const std::size_t u = i * payload_bits + bit;
                row[u >> 6] |= std::uint64_t{1} << (u & 63);
                any = true;
            }
            if (any) mat.add_row(row);
        }
        if (mat.rank() == unknowns) return true;
    }
    return mat.rank() == unknowns;
}

}  // namespace trinc
