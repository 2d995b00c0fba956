#include "trinc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace trinc {

namespace {

constexpr std::uint64_t kMaxTerms = 1u << 24;  // guard against p pathologically close to 1

void check_loss(double p) {
    if (!(p >= 0.0) || !(p < 1.0))
        throw std::invalid_argument("loss probability must be in [0, 1)");
}

// Rolling binomial pmf: w[i] = P(Bin(n, 1-p) = i) for i < m, advanced one
// transmission at a time. P(receiver incomplete after n) = sum of w.
class IncompleteTail {
public:
    IncompleteTail(double p, std::uint32_t m) : loss_(p), w_(m, 0.0) { w_[0] = 1.0; }

    double incomplete() const {
        double s = 0.0;
        for (const double v : w_) s += v;
        return std::min(s, 1.0);
    }

    void step() {
        const double succ = 1.0 - loss_;
        for (std::size_t i = w_.size(); i-- > 1;) w_[i] = w_[i] * loss_ + w_[i - 1] * succ;
        w_[0] *= loss_;
    }

private:
    double loss_;
    std::vector<double> w_;
};

}  // namespace

double LossProfile::max_p() const {
    if (probs.empty()) throw std::invalid_argument("loss profile: no receivers");
    double p = 0.0;
    for (const double v : probs) {
        check_loss(v);
        p = std::max(p, v);
    }
    return p;
}

std::uint32_t LossProfile::worst_count() const {
    const double p = max_p();
    std::uint32_t k = 0;
    for (const double v : probs)
        if (v == p) ++k;
    return k;
}

double expected_tx_exact(const LossProfile& profile, std::uint32_t m, double epsilon) {
    if (m < 1) throw std::invalid_argument("expected_tx: m must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("expected_tx: epsilon must be positive");
    std::vector<IncompleteTail> tails;
    tails.reserve(profile.probs.size());
    for (const double p : profile.probs) {
        check_loss(p);
        tails.emplace_back(p, m);
    }
    if (tails.empty()) throw std::invalid_argument("expected_tx: no receivers");

    double total = 0.0;
    for (std::uint64_t n = 0;; ++n) {
        double all_done = 1.0;
        for (const auto& t : tails) all_done *= 1.0 - t.incomplete();
        const double term = 1.0 - all_done;
        total += term;
        if (n >= m && term < epsilon) break;
        if (n > kMaxTerms) throw std::runtime_error("expected_tx: series did not converge");
        for (auto& t : tails) t.step();
    }
    return total;
}

double expected_tx_approx(double p, std::uint32_t k, std::uint32_t m, double epsilon) {
    if (m < 1) throw std::invalid_argument("expected_tx: m must be >= 1");
    if (k < 1) throw std::invalid_argument("expected_tx: k must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("expected_tx: epsilon must be positive");
    check_loss(p);

    IncompleteTail tail(p, m);
    double total = 0.0;
    for (std::uint64_t n = 0;; ++n) {
        const double term = 1.0 - std::pow(1.0 - tail.incomplete(), static_cast<double>(k));
        total += term;
        if (n >= m && term < epsilon) break;
        if (n > kMaxTerms) throw std::runtime_error("expected_tx: series did not converge");
        tail.step();
    }
    return total;
}

std::uint32_t alpha_required(double p, std::uint32_t k, std::uint32_t m) {
    if (m < 2) throw std::invalid_argument("alpha_required: m must be >= 2");
    const double g = expected_tx_approx(p, k, m);
    // ids are discrete: compare against ceil(G)
    const auto need = static_cast<std::uint64_t>(std::ceil(g - 1e-9));
    const std::uint64_t per_round = std::uint64_t{m} * (m - 1);
    const std::uint64_t alpha = (need + per_round - 1) / per_round;
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, alpha));
}

const char* scheme_name(OverheadScheme s) {
    switch (s) {
        case OverheadScheme::Rlnc: return "rlnc";
        case OverheadScheme::Dlnc: return "dlnc";
        case OverheadScheme::Sparse: return "sparse";
        case OverheadScheme::Xor: return "xor";
        case OverheadScheme::Triangular: return "triangular";
        case OverheadScheme::TriangularCompact: return "triangular-compact";
    }
    throw std::invalid_argument("unknown scheme");
}

OverheadScheme scheme_from_name(const std::string& name) {
    if (name == "rlnc") return OverheadScheme::Rlnc;
    if (name == "dlnc") return OverheadScheme::Dlnc;
    if (name == "sparse") return OverheadScheme::Sparse;
    if (name == "xor") return OverheadScheme::Xor;
    if (name == "triangular") return OverheadScheme::Triangular;
    if (name == "triangular-compact") return OverheadScheme::TriangularCompact;
    throw std::invalid_argument("unknown scheme: " + name);
}

namespace {
std::uint64_t ceil_log2(std::uint64_t v) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < v) ++bits;
    return bits;
}
}  // namespace

OverheadReport overhead_bits(OverheadScheme scheme, std::uint32_t m, std::uint32_t n, unsigned q,
                             std::uint32_t alpha) {
    OverheadReport rep{scheme, 0, m, n, q, alpha};
    switch (scheme) {
        case OverheadScheme::Rlnc:
            if (q < 1) throw std::invalid_argument("overhead: q must be >= 1");
            rep.bits = std::uint64_t{m} * q;
            break;
        case OverheadScheme::Dlnc:
        case OverheadScheme::Sparse:
            if (n < 2) throw std::invalid_argument("overhead: dlnc/sparse need n >= 2");
            rep.bits = std::uint64_t{m} * ceil_log2(n);
            break;
        case OverheadScheme::Xor:
            rep.bits = m;
            break;
        case OverheadScheme::Triangular: {
            if (m < 2) throw std::invalid_argument("overhead: triangular needs m >= 2");
            if (alpha < 1) throw std::invalid_argument("overhead: alpha must be >= 1");
            const std::uint64_t rmax = std::uint64_t{alpha} * (m - 1);
            rep.bits = rmax + std::uint64_t{m} * ceil_log2(rmax);
            break;
        }
        case OverheadScheme::TriangularCompact: {
            if (m < 2) throw std::invalid_argument("overhead: triangular needs m >= 2");
            if (alpha < 1) throw std::invalid_argument("overhead: alpha must be >= 1");
            const std::uint64_t rmax = std::uint64_t{alpha} * (m - 1);
            rep.bits = rmax + 48;  // round + group + rotation, 16 bits each on the wire
            break;
        }
    }
    return rep;
}

std::vector<OverheadReport> overhead_sweep(std::uint32_t m_lo, std::uint32_t m_hi,
                                           std::uint32_t m_step, std::uint32_t n, double p,
                                           unsigned q) {
    if (m_lo > m_hi || m_step == 0) throw std::invalid_argument("overhead_sweep: bad m range");
    static constexpr OverheadScheme kAll[] = {
        OverheadScheme::Rlnc,       OverheadScheme::Dlnc,       OverheadScheme::Sparse,
        OverheadScheme::Xor,        OverheadScheme::Triangular, OverheadScheme::TriangularCompact,
    };
    std::vector<OverheadReport> rows;
    for (std::uint32_t m = m_lo; m <= m_hi; m += m_step) {
        const std::uint32_t alpha = alpha_required(p, n, m);
        for (const OverheadScheme s : kAll) rows.push_back(overhead_bits(s, m, n, q, alpha));
    }
    return rows;
}

std::string overhead_csv(const std::vector<OverheadReport>& rows, double p) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "scheme,M,N,p,q,alpha,bits\n";
    for (const auto& r : rows) {
        out << scheme_name(r.scheme) << ',' << r.m << ',' << r.n << ',' << p << ',' << r.q << ','
            << r.alpha << ',' << r.bits << '\n';
    }
    return out.str();
}

}  // namespace trinc
