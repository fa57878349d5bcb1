#pragma once

// GGH baseline and the attack toolbox, plus a known-answer harness used by
// the CLI and the measurement tests. All bases are row-convention:
// lattice points are m*B, ciphertexts c = m*B + e.
//
// Success criterion for the CVP attacks: the candidate lattice point
// reproduces the ciphertext up to a residual whose entries all satisfy
// |r_i| <= noise_bound (re-encryption check).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldlcpkc/matrix_core.hpp"

namespace ldlcpkc {

struct GghParams {
    std::size_t n = 16;
    long l = 4;             // |R'_ij| <= l
    long k = 0;             // diagonal shift; 0 -> ceil(l*sqrt(n))
    long beta = 1;          // perturbation magnitude, e in {-beta, +beta}^n
    int mixing_rounds = 2;  // unimodular factors applied to R
    long mix_ops = 0;       // elementary ops per factor; 0 -> 2n (light profile)
};

long ggh_shift(const GghParams& params);

struct GghKeypair {
    GghParams params;
    IntMatrix R;      // private basis, R = R' + kI
    IntMatrix B;      // public basis, rows span the same lattice
    RatMatrix R_inv;
    RatMatrix B_inv;
};

GghKeypair ggh_keygen(const GghParams& params, std::uint64_t seed);
IntVec ggh_encrypt(const IntMatrix& b, const IntVec& m, long beta, std::uint64_t seed);
IntVec ggh_decrypt(const GghKeypair& kp, const IntVec& c);

struct RoundoffEstimate {
    double entropy_bits = 0.0;           // h(d) = (n/2) log2(pi e sigma^2) + sum_i log2 ||g''_i||
    double entropy_bits_standard = 0.0;  // same with the 2 pi e differential-entropy constant
    double log2_search_space = 0.0;      // log2 N_d = h(d)
    std::vector<double> row_norms;       // ||g''_i||, rows of pub^-1
    bool below_half_bound = false;       // N_d < (1/2)^(n/2) * prod ||g''_i||
};

RoundoffEstimate roundoff_search_space(const IntMatrix& pub, double sigma);

enum class AttackStatus { OK, INAPPLICABLE, UNDETERMINED };

struct AttackReport {
    std::string attack;
    bool success = false;
    AttackStatus status = AttackStatus::OK;
    std::optional<IntVec> recovered;
    std::size_t trials = 1;
    std::size_t successes = 0;
    std::size_t inapplicable = 0;
    double wall_time_s = 0.0;
    std::string note;
    std::vector<std::uint8_t> outcomes;  // per-trial 1/0 when run under the harness
};

AttackReport roundoff_attack(const IntMatrix& pub, const IntVec& c, const Int& noise_bound);
AttackReport nearest_plane_attack(const IntMatrix& pub, const IntVec& c, const Int& noise_bound);
// reuses an LLL-reduced basis of L(pub) across many targets
AttackReport nearest_plane_attack(const IntMatrix& pub, const NearestPlaneSolver& reduced,
                                  const IntVec& c, const Int& noise_bound);
AttackReport embedding_attack(const IntMatrix& pub, const IntVec& c, const Int& noise_bound);

struct ModularReduction {
    long beta = 1;
    IntVec s;                                // (beta, ..., beta)
    std::vector<std::optional<Int>> m_mod;   // m mod 2*beta, nullopt = UNDETERMINED
    bool complete = false;
    RatVec reduced_target;                   // (c - m_2b * pub) / (2*beta), when complete
};

// Solves m mod 2*beta from c + s == m*pub (mod 2*beta), hands the reduced
// instance to the embedding attack, then validates the +-beta noise model on
// the full candidate. Gaussian-noise ciphertexts come back INAPPLICABLE.
std::pair<ModularReduction, AttackReport> nguyen_modular_attack(const IntMatrix& pub,
                                                                const IntVec& c, long beta);

struct BroadcastInstance {
    IntMatrix pub;
    IntVec c;
};

AttackReport broadcast_intersection(const std::vector<BroadcastInstance>& instances,
                                    const Int& noise_bound);
AttackReport broadcast_sum(const std::vector<BroadcastInstance>& instances,
                           const Int& noise_bound);

struct HarnessConfig {
    std::string attack;   // roundoff | nearest-plane | embedding | nguyen |
                          // broadcast-intersect | broadcast-sum
    std::string scheme;   // ggh | ldlc | ldlc-fo
    std::size_t n = 16;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    double gamma = 0.5;         // ldlc noise ratio
    GghParams ggh;              // ggh parameters (n is overridden)
    std::size_t recipients = 2; // broadcast instance count
    int jobs = 1;
};

// Runs `trials` known-answer instances and aggregates. success on a trial
// means the attack's recovered value equals the hidden truth; the aggregate
// `success` flag is set when every trial succeeded.
AttackReport run_attack_harness(const HarnessConfig& cfg);

// Serialized size of the mixed GGH public basis versus the HNF of the same
// lattice, the key-size argument for publishing HNF bases.
struct KeySizeBenchRow {
    std::size_t n = 0;
    std::size_t hnf_bits = 0;
    std::size_t ggh_bits = 0;
    double reduction_percent = 0.0;
};
std::vector<KeySizeBenchRow> bench_keysize(const std::vector<std::size_t>& dims, long l,
                                           std::uint64_t seed);

}  // namespace ldlcpkc
