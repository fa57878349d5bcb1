#include "ldlcpkc/cli_run.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ldlcpkc/attacks.hpp"
#include "ldlcpkc/cca2.hpp"
#include "ldlcpkc/pkc.hpp"
#include "ldlcpkc/rng.hpp"

namespace ldlcpkc {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    return out;
}

IntVec read_vector_file(const std::string& path, std::size_t n) {
    std::ifstream in = open_in(path);
    IntVec v;
    std::string tok;
    while (in >> tok) {
        try {
            v.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw FormatError(path + ": not an integer: " + tok);
        }
    }
    if (v.size() != n)
        throw FormatError(path + ": expected " + std::to_string(n) + " integers, got " +
                          std::to_string(v.size()));
    return v;
}

void write_vector_file(const std::string& path, const IntVec& v) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < v.size(); ++i) out << v[i] << (i + 1 < v.size() ? ' ' : '\n');
}

Bytes read_bytes_file(const std::string& path) {
    std::ifstream in = open_in(path);
    Bytes b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return b;
}

void write_bytes_file(const std::string& path, const Bytes& b) {
    std::ofstream out = open_out(path);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    open_out(path) << text;
}

void trial_pool(std::size_t trials, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || trials <= 1) {
        for (std::size_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(jobs), trials);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t t = w; t < trials; t += nt) fn(t);
        });
    for (std::thread& th : pool) th.join();
}

struct KeygenOpts {
    std::size_t n = 16;
    std::size_t d = 3;
    std::vector<long> seq{2, 1, 1};
    double gamma = 0.5;
    std::uint64_t seed = 0;
    std::string out_pk, out_sk;
};

int run_keygen(const KeygenOpts& o) {
    LatinSquareParams p;
    p.n = o.n;
    p.d = o.d;
    p.gen_seq = o.seq;
    p.seed = o.seed;
    Keypair kp = keygen(p, o.gamma);
    {
        std::ofstream out = open_out(o.out_pk);
        serialize(out, kp.pk);
    }
    {
        std::ofstream out = open_out(o.out_sk);
        serialize(out, kp.sk);
    }
    std::cout << "keygen n=" << o.n << " d=" << o.d << " D=" << kp.pk.D
              << " sigma_int=" << kp.pk.sigma_int << "\n";
    return 0;
}

struct CryptOpts {
    std::string key, in, out;
    std::uint64_t seed = 0;
};

int run_encrypt(const CryptOpts& o) {
    std::ifstream kin = open_in(o.key);
    PublicKey pk = deserialize_pk(kin);
    IntVec m = read_vector_file(o.in, pk.n);
    CiphertextV1 ct = encrypt(pk, m, o.seed);
    std::ofstream out = open_out(o.out);
    serialize(out, ct);
    return 0;
}

int run_decrypt(const CryptOpts& o) {
    std::ifstream kin = open_in(o.key);
    SecretKey sk = deserialize_sk(kin);
    std::ifstream cin_ = open_in(o.in);
    CiphertextV1 ct = deserialize_ct(cin_);
    DecryptDetail det = decrypt_ex(sk, ct);
    if (!det.bp.converged) {
        std::cerr << "decode failure: decoder did not converge\n";
        return 3;
    }
    write_vector_file(o.out, det.m_hat);
    return 0;
}

int run_fo_encrypt(const CryptOpts& o) {
    std::ifstream kin = open_in(o.key);
    PublicKey pk = deserialize_pk(kin);
    Bytes m = read_bytes_file(o.in);
    FoCiphertext ct = fo_encrypt(pk, m, o.seed);
    std::ofstream out = open_out(o.out);
    serialize(out, ct);
    return 0;
}

int run_fo_decrypt(const CryptOpts& o) {
    std::ifstream kin = open_in(o.key);
    SecretKey sk = deserialize_sk(kin);
    std::ifstream cin_ = open_in(o.in);
    FoCiphertext ct = deserialize_fo(cin_);
    std::optional<Bytes> m = fo_decrypt(sk, ct);
    if (!m) {
        std::cerr << "REJECT\n";
        return 3;
    }
    write_bytes_file(o.out, *m);
    return 0;
}

struct AttackOpts {
    HarnessConfig hc;
    std::string csv;
};

int run_attack(const AttackOpts& o) {
    AttackReport rep = run_attack_harness(o.hc);
    double rate = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
    char line[256];
    std::snprintf(line, sizeof line,
                  "attack=%s scheme=%s n=%zu trials=%zu successes=%zu rate=%.3f "
                  "inapplicable=%zu wall=%.2fs\n",
                  rep.attack.c_str(), o.hc.scheme.c_str(), o.hc.n, rep.trials, rep.successes,
                  rate, rep.inapplicable, rep.wall_time_s);
    std::cout << line;
    if (!o.csv.empty()) {
        std::ostringstream os;
        os << "trial,success\n";
        for (std::size_t t = 0; t < rep.outcomes.size(); ++t)
            os << t << ',' << int(rep.outcomes[t]) << '\n';
        write_text(o.csv, os.str());
    }
    return 0;
}

struct SimulateOpts {
    std::size_t n = 16;
    std::size_t d = 3;
    std::vector<long> seq{2, 1, 1};
    std::vector<double> gammas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
};

int run_simulate(const SimulateOpts& o) {
    std::ostringstream os;
    os << "gamma,trials,successes,mean_iterations\n";
    for (std::size_t gi = 0; gi < o.gammas.size(); ++gi) {
        double gamma = o.gammas[gi];
        LatinSquareParams p;
        p.n = o.n;
        p.d = o.d;
        p.gen_seq = o.seq;
        p.seed = rng::derive(o.seed, 0x51000ULL + gi);
        Keypair kp = keygen(p, gamma);
        std::vector<std::uint8_t> ok(o.trials, 0);
        std::vector<std::size_t> iters(o.trials, 0);
        trial_pool(o.trials, o.jobs, [&](std::size_t t) {
            std::uint64_t ts = rng::derive(o.seed, 0x52000ULL + gi * 100000 + t);
            rng::Stream ms(rng::derive(ts, 0x6dULL));
            IntVec m(o.n);
            for (std::size_t i = 0; i < o.n; ++i) m[i] = ms.uniform_int(0, 255);
            CiphertextV1 ct = encrypt(kp.pk, m, rng::derive(ts, 0xeULL));
            DecryptDetail det = decrypt_ex(kp.sk, ct);
            ok[t] = det.bp.converged && det.m_hat == m;
            iters[t] = det.bp.iterations_used;
        });
        std::size_t successes = 0, iter_sum = 0;
        for (std::size_t t = 0; t < o.trials; ++t) {
            successes += ok[t];
            iter_sum += iters[t];
        }
        char row[128];
        std::snprintf(row, sizeof row, "%g,%zu,%zu,%.3f\n", gamma, o.trials, successes,
                      static_cast<double>(iter_sum) / static_cast<double>(o.trials));
        os << row;
    }
    write_text(o.out, os.str());
    return 0;
}

struct BenchOpts {
    std::vector<std::size_t> dims{32, 64, 128};
    long l = 4;
    std::uint64_t seed = 0;
    std::string out;
};

int run_bench(const BenchOpts& o) {
    std::vector<KeySizeBenchRow> rows = bench_keysize(o.dims, o.l, o.seed);
    std::ostringstream os;
    os << "n,hnf_bits,ggh_bits,reduction_percent\n";
    for (const KeySizeBenchRow& r : rows) {
        char row[128];
        std::snprintf(row, sizeof row, "%zu,%zu,%zu,%.2f\n", r.n, r.hnf_bits, r.ggh_bits,
                      r.reduction_percent);
        os << row;
    }
    write_text(o.out, os.str());
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"lattice public-key workbench: LDLC codes, HNF keys, GGH attacks"};
    app.require_subcommand(1);
    int rc = 0;

    KeygenOpts kg;
    CLI::App* keygen_cmd = app.add_subcommand("keygen", "generate a keypair");
    keygen_cmd->add_option("--n", kg.n, "lattice dimension")->required();
    keygen_cmd->add_option("--d", kg.d, "parity row degree");
    keygen_cmd->add_option("--seq", kg.seq, "generating sequence")->delimiter(',');
    keygen_cmd->add_option("--gamma", kg.gamma, "noise ratio sigma/sigma_max");
    keygen_cmd->add_option("--seed", kg.seed, "rng seed")->required();
    keygen_cmd->add_option("--out-pk", kg.out_pk, "public key file")->required();
    keygen_cmd->add_option("--out-sk", kg.out_sk, "secret key file")->required();
    keygen_cmd->callback([&] { rc = run_keygen(kg); });

    CryptOpts enc;
    CLI::App* enc_cmd = app.add_subcommand("encrypt", "encrypt an integer vector");
    enc_cmd->add_option("--pk", enc.key, "public key file")->required();
    enc_cmd->add_option("--msg", enc.in, "message file (whitespace separated integers)")
        ->required();
    enc_cmd->add_option("--seed", enc.seed, "rng seed")->required();
    enc_cmd->add_option("--out", enc.out, "ciphertext file")->required();
    enc_cmd->callback([&] { rc = run_encrypt(enc); });

    CryptOpts dec;
    CLI::App* dec_cmd = app.add_subcommand("decrypt", "decrypt a ciphertext");
    dec_cmd->add_option("--sk", dec.key, "secret key file")->required();
    dec_cmd->add_option("--ct", dec.in, "ciphertext file")->required();
    dec_cmd->add_option("--out", dec.out, "recovered message file")->required();
    dec_cmd->callback([&] { rc = run_decrypt(dec); });

    CryptOpts fe;
    CLI::App* fe_cmd = app.add_subcommand("fo-encrypt", "FO-encrypt a byte string");
    fe_cmd->add_option("--pk", fe.key, "public key file")->required();
    fe_cmd->add_option("--in", fe.in, "plaintext bytes file")->required();
    fe_cmd->add_option("--seed", fe.seed, "rng seed")->required();
    fe_cmd->add_option("--out", fe.out, "ciphertext file")->required();
    fe_cmd->callback([&] { rc = run_fo_encrypt(fe); });

    CryptOpts fd;
    CLI::App* fd_cmd = app.add_subcommand("fo-decrypt", "FO-decrypt (REJECT on any mismatch)");
    fd_cmd->add_option("--sk", fd.key, "secret key file")->required();
    fd_cmd->add_option("--ct", fd.in, "ciphertext file")->required();
    fd_cmd->add_option("--out", fd.out, "plaintext bytes file")->required();
    fd_cmd->callback([&] { rc = run_fo_decrypt(fd); });

    AttackOpts at;
    CLI::App* at_cmd = app.add_subcommand("attack", "run a known-answer attack harness");
    at_cmd->add_option("--name", at.hc.attack,
                       "roundoff | nearest-plane | embedding | nguyen | "
                       "broadcast-intersect | broadcast-sum")
        ->required();
    at_cmd->add_option("--scheme", at.hc.scheme, "ggh | ldlc | ldlc-fo")->required();
    at_cmd->add_option("--n", at.hc.n, "dimension")->required();
    at_cmd->add_option("--trials", at.hc.trials, "trial count");
    at_cmd->add_option("--seed", at.hc.seed, "rng seed")->required();
    at_cmd->add_option("--gamma", at.hc.gamma, "ldlc noise ratio");
    at_cmd->add_option("--beta", at.hc.ggh.beta, "ggh perturbation magnitude");
    at_cmd->add_option("--l", at.hc.ggh.l, "ggh entry bound");
    at_cmd->add_option("--mix-rounds", at.hc.ggh.mixing_rounds, "ggh unimodular factors");
    at_cmd->add_option("--mix-ops", at.hc.ggh.mix_ops, "elementary ops per factor");
    at_cmd->add_option("--recipients", at.hc.recipients, "broadcast recipient count");
    at_cmd->add_option("--jobs", at.hc.jobs, "parallel trial workers");
    at_cmd->add_option("--csv", at.csv, "per-trial outcome CSV path");
    at_cmd->callback([&] { rc = run_attack(at); });

    SimulateOpts sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "decoder success sweep over gamma");
    sim_cmd->add_option("--n", sim.n, "lattice dimension")->required();
    sim_cmd->add_option("--d", sim.d, "parity row degree");
    sim_cmd->add_option("--seq", sim.seq, "generating sequence")->delimiter(',');
    sim_cmd->add_option("--gammas", sim.gammas, "noise ratios")->delimiter(',');
    sim_cmd->add_option("--trials", sim.trials, "trials per gamma");
    sim_cmd->add_option("--seed", sim.seed, "rng seed")->required();
    sim_cmd->add_option("--jobs", sim.jobs, "parallel trial workers");
    sim_cmd->add_option("--out", sim.out, "CSV path (default stdout)");
    sim_cmd->callback([&] { rc = run_simulate(sim); });

    BenchOpts bench;
    CLI::App* bench_cmd = app.add_subcommand("bench-keysize", "HNF vs mixed-basis key size");
    bench_cmd->add_option("--dims", bench.dims, "dimension sweep")->delimiter(',');
    bench_cmd->add_option("--l", bench.l, "ggh entry bound");
    bench_cmd->add_option("--seed", bench.seed, "rng seed")->required();
    bench_cmd->add_option("--out", bench.out, "CSV path (default stdout)");
    bench_cmd->callback([&] { rc = run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionTooLarge& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace ldlcpkc
