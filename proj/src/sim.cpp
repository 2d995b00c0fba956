#include "trinc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "trinc/codec.hpp"
#include "trinc/random.hpp"
#include "trinc/rlnc.hpp"

namespace trinc {

const char* tx_scheme_name(TxScheme s) {
    switch (s) {
        case TxScheme::Triangular: return "triangular";
        case TxScheme::Rlnc: return "rlnc";
        case TxScheme::ArqRoundRobin: return "arq-roundrobin";
        case TxScheme::OraclePerfect: return "oracle-perfect";
    }
    throw std::invalid_argument("unknown scheme");
}

TxScheme tx_scheme_from_name(const std::string& name) {
    if (name == "triangular") return TxScheme::Triangular;
    if (name == "rlnc") return TxScheme::Rlnc;
    if (name == "arq-roundrobin" || name == "arq") return TxScheme::ArqRoundRobin;
    if (name == "oracle-perfect" || name == "oracle") return TxScheme::OraclePerfect;
    throw std::invalid_argument("unknown scheme: " + name);
}

namespace {

// Per-receiver decoder state behind one interface so the trial loop stays flat.
class Receiver {
public:
    virtual ~Receiver() = default;
    virtual bool deliver(const void* pkt) = 0;  // returns completion
    virtual std::uint64_t ops() const { return 0; }
};

class TriangularRx final : public Receiver {
public:
    TriangularRx(std::uint32_t m, std::uint64_t bits) : dec_(m, bits) {}
    bool deliver(const void* pkt) override {
        return dec_.push(*static_cast<const CodedPacket*>(pkt)).complete;
    }
    std::uint64_t ops() const override { return dec_.op_count(); }

private:
    Decoder dec_;
};

class RlncRx final : public Receiver {
public:
    RlncRx(std::uint32_t m, unsigned q) : m_(m), tracker_(m, q) {}
    bool deliver(const void* pkt) override {
        const auto& p = *static_cast<const RlncCodedPacket*>(pkt);
        tracker_.add(p.coefficients);
        ops_ += m_;  // one reduction pass over the coefficient vector
        return tracker_.rank() == m_;
    }
    std::uint64_t ops() const override { return ops_; }

private:
    std::uint32_t m_;
    RlncRankTracker tracker_;
    std::uint64_t ops_ = 0;
};

class ArqRx final : public Receiver {
public:
    explicit ArqRx(std::uint32_t m) : have_(m, false), m_(m) {}
    bool deliver(const void* pkt) override {
        const auto idx = *static_cast<const std::uint32_t*>(pkt);
        if (!have_[idx]) {
            have_[idx] = true;
            ++count_;
        }
        return count_ == m_;
    }

private:
    std::vector<bool> have_;
    std::uint32_t m_;
    std::uint32_t count_ = 0;
};

class OracleRx final : public Receiver {
public:
    explicit OracleRx(std::uint32_t m) : m_(m) {}
    bool deliver(const void*) override { return ++count_ == m_; }

private:
    std::uint32_t m_;
    std::uint32_t count_ = 0;
};

// Transmitter side: builds the packet for transmission index a (1-based).
class Transmitter {
public:
    Transmitter(const SimConfig& cfg, SplitMix64 rng)
        : cfg_(cfg), rng_(rng), ops_(0) {
        if (cfg.scheme == TxScheme::Triangular || cfg.scheme == TxScheme::Rlnc) {
            batch_.resize(cfg.m);
            for (std::uint32_t i = 0; i < cfg.m; ++i)
                batch_[i] = Packet{i + 1, random_bits(cfg.payload_bits, rng_)};
        }
    }

    const void* emit(std::uint64_t a) {
        switch (cfg_.scheme) {
            case TxScheme::Triangular: {
                const TriId id = cfg_.m == 1 ? uncoded_id() : id_at(cfg_.m, a);
                max_round_ = std::max(max_round_, id.round);
                coded_ = encode(batch_, id, &ops_);
                return &coded_;
            }
            case TxScheme::Rlnc:
                rlnc_ = rlnc_encode(batch_, cfg_.q, rng_, &ops_);
                return &rlnc_;
            case TxScheme::ArqRoundRobin:
                arq_index_ = static_cast<std::uint32_t>((a - 1) % cfg_.m);
                return &arq_index_;
            case TxScheme::OraclePerfect:
                return &dummy_;
        }
        throw std::logic_error("unreachable");
    }

    std::uint64_t ops() const { return ops_; }
    std::uint32_t max_round() const { return max_round_; }

private:
    const SimConfig& cfg_;
    SplitMix64 rng_;
    std::vector<Packet> batch_;
    CodedPacket coded_;
    RlncCodedPacket rlnc_;
    std::uint32_t arq_index_ = 0;
    int dummy_ = 0;
    std::uint64_t ops_;
    std::uint32_t max_round_ = 0;
};

std::unique_ptr<Receiver> make_receiver(const SimConfig& cfg) {
    switch (cfg.scheme) {
        case TxScheme::Triangular:
            return std::make_unique<TriangularRx>(cfg.m, cfg.payload_bits);
        case TxScheme::Rlnc: return std::make_unique<RlncRx>(cfg.m, cfg.q);
        case TxScheme::ArqRoundRobin: return std::make_unique<ArqRx>(cfg.m);
        case TxScheme::OraclePerfect: return std::make_unique<OracleRx>(cfg.m);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SimReport run(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("sim: trials must be >= 1");
    if (cfg.m < 1) throw std::invalid_argument("sim: m must be >= 1");
    if (cfg.payload_bits < 1) throw std::invalid_argument("sim: payload must be >= 1 bit");
    if (cfg.scheme == TxScheme::Rlnc && cfg.q != 1 && cfg.q != 4 && cfg.q != 8)
        throw std::invalid_argument("sim: q must be 1, 4 or 8");
    const std::size_t n_rx = cfg.profile.receivers();
    const double p_max = cfg.profile.max_p();

    SimReport rep;
    rep.analytic_g = expected_tx_approx(p_max, cfg.profile.worst_count(), cfg.m);
    std::uint64_t max_tx = cfg.max_tx;
    if (max_tx == 0) max_tx = static_cast<std::uint64_t>(std::ceil(50.0 * rep.analytic_g));
    max_tx = std::max<std::uint64_t>(max_tx, cfg.m);

    rep.trials = cfg.trials;
    rep.receiver_completion.resize(n_rx);
    rep.trial_tx.reserve(cfg.trials);

    double sum = 0.0, sumsq = 0.0;
    for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 seeds(trial_seed(cfg.master_seed, trial));
        Transmitter tx(cfg, SplitMix64(seeds.next()));
        std::vector<SplitMix64> loss;
        loss.reserve(n_rx);
        for (std::size_t i = 0; i < n_rx; ++i) loss.emplace_back(seeds.next());

        constexpr std::uint32_t kPending = 0xFFFFFFFFu;
        std::vector<std::unique_ptr<Receiver>> rx;
        std::vector<std::uint32_t> done_at(n_rx, kPending);
        std::size_t remaining = n_rx;
        rx.reserve(n_rx);
        for (std::size_t i = 0; i < n_rx; ++i) rx.push_back(make_receiver(cfg));

        std::uint64_t a = 0;
        for (std::uint32_t i = 0; i < cfg.preload; ++i) {
            const void* pkt = tx.emit(++a);
            for (std::size_t r = 0; r < n_rx; ++r) {
                if (done_at[r] == kPending && rx[r]->deliver(pkt)) {
                    done_at[r] = 0;  // complete before any counted transmission
                    --remaining;
                }
            }
        }

        std::uint64_t t = 0;
        while (remaining > 0 && t < max_tx) {
            ++t;
            const void* pkt = tx.emit(++a);
            for (std::size_t r = 0; r < n_rx; ++r) {
                if (done_at[r] != kPending) continue;
                if (loss[r].next_unit() < cfg.profile.probs[r]) continue;  // dropped
                if (rx[r]->deliver(pkt)) {
                    done_at[r] = static_cast<std::uint32_t>(t);
                    --remaining;
                }
            }
        }

        rep.encoder_ops += tx.ops();
        rep.max_round = std::max(rep.max_round, tx.max_round());
        for (const auto& r : rx) rep.decoder_ops += r->ops();

        if (remaining > 0) {
            ++rep.aborted;
            continue;
        }
        rep.trial_tx.push_back(t);
        sum += static_cast<double>(t);
        sumsq += static_cast<double>(t) * static_cast<double>(t);
        for (std::size_t r = 0; r < n_rx; ++r)
            rep.receiver_completion[r].push_back(done_at[r]);
    }

    const auto n = static_cast<double>(rep.trial_tx.size());
    if (n > 0) {
        rep.mean_tx = sum / n;
        if (n > 1) {
            const double var = std::max(0.0, (sumsq - n * rep.mean_tx * rep.mean_tx) / (n - 1));
            rep.stddev_tx = std::sqrt(var);
            rep.ci95 = 1.96 * rep.stddev_tx / std::sqrt(n);
        }
    }
    return rep;
}

std::string sweep_csv(std::span<const SimConfig> configs) {
    if (configs.empty()) throw std::invalid_argument("sweep: no configs");
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(6);
    out << "scheme,M,N,p,q_or_alpha,mean_T,ci95,G,trials,aborted\n";
    for (const SimConfig& cfg : configs) {
        const SimReport rep = run(cfg);
        std::uint64_t qa = 0;
        if (cfg.scheme == TxScheme::Rlnc)
            qa = cfg.q;
        else if (cfg.scheme == TxScheme::Triangular)
            qa = rep.max_round;
        out << tx_scheme_name(cfg.scheme) << ',' << cfg.m << ',' << cfg.profile.receivers() << ','
            << cfg.profile.max_p() << ',' << qa << ',' << rep.mean_tx << ',' << rep.ci95 << ','
            << rep.analytic_g << ',' << rep.trials << ',' << rep.aborted << '\n';
    }
    return out.str();
}

}  // namespace trinc
