// trinc: triangular network coding toolkit
//
// Subcommands: idgen, encode, decode, bound, alpha, overhead, simulate, verify.
// Exit codes: 0 success, 1 usage error, 2 runtime/data error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trinc/analysis.hpp"
#include "trinc/codec.hpp"
#include "trinc/errors.hpp"
#include "trinc/rank_oracle.hpp"
#include "trinc/sim.hpp"
#include "trinc/wire.hpp"

namespace fs = std::filesystem;
using namespace trinc;

namespace {

// data/runtime failures that must exit 2 rather than 1
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw DataError("write failed: " + path);
}

BitVec bits_from_bytes(const std::uint8_t* data, std::uint64_t bit_count) {
    BitVec v(bit_count);
    for (std::uint64_t i = 0; i < bit_count; ++i)
        if ((data[i >> 3] >> (7 - (i & 7))) & 1u) v.set(i, true);
    return v;
}

std::vector<std::uint8_t> bytes_from_bits(const BitVec& v) {
    std::vector<std::uint8_t> out((v.size() + 7) / 8, 0);
    for (std::uint64_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out[i >> 3] |= std::uint8_t{1} << (7 - (i & 7));
    return out;
}

// Splits a file into m equal packets (tail zero-padded).
std::vector<Packet> batch_from_file(const std::vector<std::uint8_t>& bytes, std::uint32_t m) {
    if (bytes.empty()) throw DataError("input file is empty");
    const std::uint64_t chunk = (bytes.size() + m - 1) / m;
    std::vector<Packet> batch(m);
    std::vector<std::uint8_t> padded(chunk * m, 0);
    std::copy(bytes.begin(), bytes.end(), padded.begin());
    for (std::uint32_t i = 0; i < m; ++i)
        batch[i] = Packet{i + 1, bits_from_bytes(padded.data() + i * chunk, chunk * 8)};
    return batch;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TRINC_SEED")) return std::strtoull(env, nullptr, 0);
    return 1;
}

struct IdgenArgs {
    std::uint32_t m = 0;
    std::uint64_t count = 0;
    std::string format = "csv";
};

void run_idgen(const IdgenArgs& args) {
    for (std::uint64_t a = 1; a <= args.count; ++a) {
        const TriId id = id_at(args.m, a);
        std::ostringstream row;
        if (args.format == "text") {
            row << "a=" << a << " round=" << id.round << " group=" << id.group
                << " rotation=" << id.rotation << " r=(";
        } else {
            row << a << ',' << id.round << ',' << id.group << ',' << id.rotation << ",(";
        }
        for (std::uint32_t i = 0; i < id.m; ++i) row << (i ? "," : "") << id.r[i];
        row << ')';
        std::cout << row.str() << '\n';
    }
}

struct EncodeArgs {
    std::uint32_t m = 0;
    std::uint64_t seq = 0;
    std::string in, out;
    std::string mode = "explicit";
};

void run_encode(const EncodeArgs& args) {
    const auto bytes = read_file(args.in);
    const auto batch = batch_from_file(bytes, args.m);
    const TriId id = args.m == 1 ? uncoded_id() : id_at(args.m, args.seq);
    const CodedPacket coded = encode(batch, id);
    const auto frame = serialize(
        coded, args.mode == "compact" ? FrameMode::Compact : FrameMode::ExplicitId);
    write_file(args.out, frame.data(), frame.size());
    const std::string meta = "original_bytes=" + std::to_string(bytes.size()) + "\n";
    write_file(args.out + ".meta", meta.data(), meta.size());
    std::cout << "frame=" << args.out << " bytes=" << frame.size()
              << " original_bytes=" << bytes.size() << '\n';
}

struct DecodeArgs {
    std::uint32_t m = 0;
    std::vector<std::string> in;
    std::string out_dir;
};

std::uint64_t sidecar_length(const std::vector<std::string>& inputs) {
    for (const auto& path : inputs) {
        std::ifstream meta(path + ".meta");
        if (!meta) continue;
        std::string line;
        while (std::getline(meta, line)) {
            if (line.rfind("original_bytes=", 0) == 0)
                return std::strtoull(line.c_str() + 15, nullptr, 10);
        }
    }
    return 0;
}

void run_decode(const DecodeArgs& args) {
    std::vector<CodedPacket> pkts;
    for (const auto& path : args.in) {
        const auto bytes = read_file(path);
        ParsedFrame frame = parse(bytes);
        if (!std::holds_alternative<CodedPacket>(frame))
            throw DataError(path + ": not a triangular-coded frame");
        pkts.push_back(std::get<CodedPacket>(std::move(frame)));
    }
    if (pkts.empty()) throw DataError("no input frames");
    const std::uint64_t bits = pkts[0].batch_bits;
    for (const auto& p : pkts)
        if (p.id.m != args.m || p.batch_bits != bits)
            throw DataError("frames disagree on batch size or payload length");

    const auto result = decode_all(args.m, bits, pkts);
    fs::create_directories(args.out_dir);
    std::vector<std::uint8_t> assembled;
    for (const Packet& p : result.packets) {
        const auto bytes = bytes_from_bits(p.payload);
        std::ostringstream name;
        name << "packet_" << std::setw(2) << std::setfill('0') << p.index << ".bin";
        write_file((fs::path(args.out_dir) / name.str()).string(), bytes.data(), bytes.size());
        assembled.insert(assembled.end(), bytes.begin(), bytes.end());
    }
    if (const std::uint64_t original = sidecar_length(args.in); original > 0) {
        if (original > assembled.size())
            throw DataError("sidecar length exceeds the decoded data");
        write_file((fs::path(args.out_dir) / "file.bin").string(), assembled.data(), original);
        std::cout << "file=" << (fs::path(args.out_dir) / "file.bin").string()
                  << " bytes=" << original << '\n';
    }
    std::cout << "decoded_packets=" << result.packets.size() << " ops=" << result.ops << '\n';
}

struct BoundArgs {
    std::uint32_t m = 0, k = 1;
    double p = 0.0;
    bool exact = false;
    std::string profile;
};

void run_bound(const BoundArgs& args) {
    if (args.exact) {
        LossProfile prof;
        std::stringstream ss(args.profile);
        std::string tok;
        while (std::getline(ss, tok, ',')) prof.probs.push_back(std::stod(tok));
        if (prof.probs.empty()) throw std::invalid_argument("--exact requires --profile");
        std::cout << expected_tx_exact(prof, args.m) << '\n';
    } else {
        std::cout << expected_tx_approx(args.p, args.k, args.m) << '\n';
    }
}

struct OverheadArgs {
    std::uint32_t n = 0;
    double p = 0.0;
    unsigned q = 8;
    std::string m_range;
    std::string out;
};

void run_overhead(const OverheadArgs& args) {
    std::uint32_t lo = 0, hi = 0, step = 0;
    if (std::sscanf(args.m_range.c_str(), "%u:%u:%u", &lo, &hi, &step) != 3)
        throw std::invalid_argument("--m-range wants LO:HI:STEP");
    const auto rows = overhead_sweep(lo, hi, step, args.n, args.p, args.q);
    const std::string csv = overhead_csv(rows, args.p);
    if (args.out.empty())
        std::cout << csv;
    else
        write_file(args.out, csv.data(), csv.size());
}

struct SimArgs {
    std::string scheme = "triangular";
    std::uint32_t m = 0, n = 0, trials = 0, preload = 0;
    double p = 0.0;
    unsigned q = 8;
    std::uint64_t seed = default_seed();
    std::uint64_t payload_bits = 128;
    std::uint64_t max_tx = 0;
    std::string config_file;
};

void apply_config_file(SimArgs& args) {
    std::ifstream in(args.config_file);
    if (!in) throw DataError("cannot read " + args.config_file);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line is not key=value: " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "scheme")
            args.scheme = value;
        else if (key == "m")
            args.m = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "n")
            args.n = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "p")
            args.p = std::stod(value);
        else if (key == "q")
            args.q = static_cast<unsigned>(std::stoul(value));
        else if (key == "trials")
            args.trials = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "seed")
            args.seed = std::stoull(value);
        else if (key == "payload_bits")
            args.payload_bits = std::stoull(value);
        else if (key == "max_tx")
            args.max_tx = std::stoull(value);
        else if (key == "preload")
            args.preload = static_cast<std::uint32_t>(std::stoul(value));
        else
            throw DataError("unknown config key: " + key);
    }
}

void run_simulate(SimArgs args) {
    if (!args.config_file.empty()) apply_config_file(args);
    if (args.m == 0 || args.n == 0 || args.trials == 0)
        throw std::invalid_argument("simulate needs --m, --n and --trials");
    SimConfig cfg;
    cfg.scheme = tx_scheme_from_name(args.scheme);
    cfg.m = args.m;
    cfg.payload_bits = args.payload_bits;
    cfg.profile.probs.assign(args.n, args.p);
    cfg.q = args.q;
    cfg.trials = args.trials;
    cfg.master_seed = args.seed;
    cfg.max_tx = args.max_tx;
    cfg.preload = args.preload;
    std::cout << sweep_csv(std::vector<SimConfig>{cfg});
}

struct VerifyArgs {
    std::uint32_t m_max = 0;
};

bool verify_property(const char* name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << name;
    if (!ok && !detail.empty()) std::cout << "  " << detail;
    std::cout << '\n';
    return ok;
}

std::string id_set_string(const std::vector<TriId>& ids) {
    std::ostringstream out;
    out << "counterexample:";
    for (const TriId& id : ids) {
        out << " (";
        for (std::uint32_t i = 0; i < id.m; ++i) out << (i ? "," : "") << id.r[i];
        out << ")_" << seq_of(id);
    }
    return out.str();
}

void run_verify(const VerifyArgs& args) {
    bool all_ok = true;
    for (std::uint32_t m = 2; m <= args.m_max; ++m) {
        const std::uint64_t pool_n = 2ull * m * (m - 1);
        std::vector<TriId> pool;
        for (std::uint64_t a = 1; a <= pool_n; ++a) pool.push_back(id_at(m, a));

        // complete groups have rank m-1 (rounds 1 and 2)
        bool lemma1 = true;
        std::string detail1;
        for (std::uint32_t round = 1; round <= 2 && lemma1; ++round)
            for (std::uint32_t g = 0; g < m && lemma1; ++g) {
                std::vector<TriId> grp;
                for (std::uint32_t t = 0; t < m - 1; ++t)
                    grp.push_back(tri_id_from_coords(m, round, g, t));
                if (lambda_rank(grp) != m - 1) {
                    lemma1 = false;
                    detail1 = id_set_string(grp);
                }
            }
        all_ok &= verify_property(("m=" + std::to_string(m) + " group-rank-m-1").c_str(), lemma1,
                                  detail1);

        // group plus an outside id has rank m
        bool lemma2 = true;
        std::string detail2;
        for (std::uint32_t g = 0; g < m && lemma2; ++g) {
            std::vector<TriId> grp;
            for (std::uint32_t t = 0; t < m - 1; ++t)
                grp.push_back(tri_id_from_coords(m, 1, g, t));
            for (const TriId& probe : pool) {
                if (probe.group == g && probe.round == 1) continue;
                grp.push_back(probe);
                if (lambda_rank(grp) != m || !lemma2_condition({grp.data(), grp.size() - 1}, probe)) {
                    lemma2 = false;
                    detail2 = id_set_string(grp);
                }
                grp.pop_back();
                if (!lemma2) break;
            }
        }
        all_ok &= verify_property(("m=" + std::to_string(m) + " group-plus-one-rank-m").c_str(),
                                  lemma2, detail2);

        // sequence prefixes are innovative
        bool prefix_ok = true;
        std::string detail3;
        std::vector<TriId> prefix;
        for (std::uint64_t a = 1; a <= m; ++a) {
            prefix.push_back(id_at(m, a));
            if (lambda_rank(prefix) != prefix.size()) {
                prefix_ok = false;
                detail3 = id_set_string(prefix);
                break;
            }
        }
        all_ok &= verify_property(("m=" + std::to_string(m) + " prefix-innovative").c_str(),
                                  prefix_ok, detail3);

        // arbitrary m-subsets of rounds 1-2: the claimed guarantee that every
        // collection is innovative (exhaustive for m <= 4, sampled above that)
        bool subsets_ok = true;
        std::string detail4;
        std::uint64_t checked = 0;
        if (m <= 4) {
            std::vector<std::uint32_t> pick;
            const auto recurse = [&](auto&& self, std::uint32_t start, std::uint32_t left) -> void {
                if (!subsets_ok) return;
                if (left == 0) {
                    std::vector<TriId> ids;
                    for (const auto i : pick) ids.push_back(pool[i]);
                    ++checked;
                    if (lambda_rank(ids) != ids.size()) {
                        subsets_ok = false;
                        detail4 = id_set_string(ids);
                    }
                    return;
                }
                for (std::uint32_t i = start; i + left <= pool_n && subsets_ok; ++i) {
                    pick.push_back(i);
                    self(self, i + 1, left - 1);
                    pick.pop_back();
                }
            };
            recurse(recurse, 0, m);
        } else {
            SplitMix64 rng(4242 + m);
            for (int iter = 0; iter < 20000 && subsets_ok; ++iter) {
                std::vector<std::size_t> perm(pool_n);
                for (std::size_t i = 0; i < pool_n; ++i) perm[i] = i;
                std::vector<TriId> ids;
                for (std::uint32_t i = 0; i < m; ++i) {
                    std::swap(perm[i], perm[i + rng.next_below(pool_n - i)]);
                    ids.push_back(pool[perm[i]]);
                }
                ++checked;
                if (lambda_rank(ids) != m) {
                    subsets_ok = false;
                    detail4 = id_set_string(ids);
                }
            }
        }
        all_ok &= verify_property(
            ("m=" + std::to_string(m) + " all-m-subsets-innovative (" + std::to_string(checked) +
             " sets)")
                .c_str(),
            subsets_ok, detail4);
    }
    if (!all_ok) throw DataError("verification found counterexamples (see FAIL lines)");
}

}  // namespace

int main(int argc, char** argv) {
    std::cout.imbue(std::locale::classic());
    std::cout.precision(6);

    CLI::App app{"triangular network coding toolkit"};
    app.require_subcommand(1);

    IdgenArgs idgen;
    auto* idgen_cmd = app.add_subcommand("idgen", "enumerate coding ids");
    idgen_cmd->add_option("--m", idgen.m, "batch size")->required()->check(CLI::Range(2u, 65535u));
    idgen_cmd->add_option("--count", idgen.count, "ids to print")->required()
        ->check(CLI::PositiveNumber);
    idgen_cmd->add_option("--format", idgen.format)->check(CLI::IsMember({"csv", "text"}));

    EncodeArgs enc;
    auto* encode_cmd = app.add_subcommand("encode", "encode a file into one coded frame");
    encode_cmd->add_option("--m", enc.m, "batch size")->required()->check(CLI::Range(1u, 65535u));
    encode_cmd->add_option("--seq", enc.seq, "sequence number of the id")->required()
        ->check(CLI::PositiveNumber);
    encode_cmd->add_option("--in", enc.in)->required();
    encode_cmd->add_option("--out", enc.out)->required();
    encode_cmd->add_option("--mode", enc.mode)->check(CLI::IsMember({"explicit", "compact"}));

    DecodeArgs dec;
    auto* decode_cmd = app.add_subcommand("decode", "decode coded frames back into packets");
    decode_cmd->add_option("--m", dec.m, "batch size")->required()->check(CLI::Range(1u, 65535u));
    decode_cmd->add_option("--in", dec.in, "frame files")->required()->expected(-1);
    decode_cmd->add_option("--out", dec.out_dir, "output directory")->required();

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "expected transmissions to complete a batch");
    bound_cmd->add_option("--m", bound.m)->required()->check(CLI::PositiveNumber);
    bound_cmd->add_option("--p", bound.p)->check(CLI::Range(0.0, 0.999999));
    bound_cmd->add_option("--k", bound.k)->check(CLI::PositiveNumber);
    bound_cmd->add_flag("--exact", bound.exact, "use the heterogeneous series over --profile");
    bound_cmd->add_option("--profile", bound.profile, "comma-separated loss probabilities");

    BoundArgs alpha;
    auto* alpha_cmd = app.add_subcommand("alpha", "smallest round count covering the bound");
    alpha_cmd->add_option("--m", alpha.m)->required()->check(CLI::Range(2u, 65535u));
    alpha_cmd->add_option("--p", alpha.p)->check(CLI::Range(0.0, 0.999999));
    alpha_cmd->add_option("--k", alpha.k)->check(CLI::PositiveNumber);

    OverheadArgs ovh;
    auto* ovh_cmd = app.add_subcommand("overhead", "per-packet overhead comparison sweep");
    ovh_cmd->add_option("--n", ovh.n)->required()->check(CLI::Range(2u, 1u << 20));
    ovh_cmd->add_option("--p", ovh.p)->check(CLI::Range(0.0, 0.999999));
    ovh_cmd->add_option("--q", ovh.q)->check(CLI::IsMember({1u, 4u, 8u}));
    ovh_cmd->add_option("--m-range", ovh.m_range, "LO:HI:STEP")->required();
    ovh_cmd->add_option("--out", ovh.out, "write CSV here instead of stdout");

    SimArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "erasure-channel multicast Monte Carlo");
    sim_cmd->add_option("--scheme", sim.scheme)
        ->check(CLI::IsMember({"triangular", "rlnc", "arq-roundrobin", "oracle-perfect"}));
    sim_cmd->add_option("--m", sim.m)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--n", sim.n)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--p", sim.p)->check(CLI::Range(0.0, 0.999999));
    sim_cmd->add_option("--q", sim.q)->check(CLI::IsMember({1u, 4u, 8u}));
    sim_cmd->add_option("--trials", sim.trials)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed);
    sim_cmd->add_option("--payload-bits", sim.payload_bits)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--max-tx", sim.max_tx);
    sim_cmd->add_option("--preload", sim.preload);
    sim_cmd->add_option("--config", sim.config_file, "key=value file; flags override");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "run the rank-oracle property suites");
    verify_cmd->add_option("--m-max", ver.m_max)->required()->check(CLI::Range(2u, 8u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*idgen_cmd) run_idgen(idgen);
        if (*encode_cmd) run_encode(enc);
        if (*decode_cmd) run_decode(dec);
        if (*bound_cmd) run_bound(bound);
        if (*alpha_cmd) std::cout << alpha_required(alpha.p, alpha.k, alpha.m) << '\n';
        if (*ovh_cmd) run_overhead(ovh);
        if (*sim_cmd) run_simulate(sim);
        if (*verify_cmd) run_verify(ver);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
