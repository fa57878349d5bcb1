#pragma once

#include <cstdint>
#include <iosfwd>

#include "ldlcpkc/decoder.hpp"
#include "ldlcpkc/ldlc.hpp"

namespace ldlcpkc {

struct NoiseParams {
    double mu = 0.0;     // fixed zero-mean
    double gamma = 0.5;  // backoff ratio sigma / sigma_max, in (0, 1)
};

// sigma_max^2 = |det G|^(2/n) / (2*pi*e), evaluated in the log domain so the
// relative error stays below 1e-9 for determinants of thousands of bits
double sigma_max_sq_from_det(const Int& det_value, std::size_t n);
double sigma_max_sq(const IntMatrix& g);
double sigma_max(const IntMatrix& g);

struct PublicKey {
    std::size_t n = 0;
    std::size_t d = 0;
    Int D;
    double sigma_int = 0.0;  // noise stddev in integer-lattice units
    IntMatrix G_prime;       // HNF basis, lower triangular
    int format_version = 1;
};

struct SecretKey {
    LdlcCode code;
    IntMatrix U_inv;  // unimodular, m_hat = v_hat * U_inv
    DecoderConfig decoder_cfg;
    double sigma_int = 0.0;
};

struct Keypair {
    PublicKey pk;
    SecretKey sk;
};

// Rejects candidate codes until gamma * sigma_max(G_int) >= 4 so that integer
// rounding of the continuous Gaussian noise is negligible.
Keypair keygen(const LatinSquareParams& params, double gamma);

// e_i = round(g_i), g_i ~ N(0, sigma_int^2), deterministic per seed
IntVec sample_noise(std::size_t n, double sigma_int, std::uint64_t seed);

struct CiphertextV1 {
    std::size_t n = 0;
    std::size_t d = 0;
    Int D;
    double sigma_int = 0.0;
    IntVec c;  // c = m * G_prime + e
    int format_version = 1;
};

CiphertextV1 encrypt(const PublicKey& pk, const IntVec& m, std::uint64_t seed);
CiphertextV1 encrypt_with_noise(const PublicKey& pk, const IntVec& m, const IntVec& e);

struct DecryptDetail {
    IntVec m_hat;
    IntVec w;  // coordinates removed by the exact pre-reduction
    DecodeResult bp;
};

// Pipeline: w = round(c*H/D) exactly, c_red = c - w*G_int, y = c_red/D as
// reals, BP-decode y at sigma = sigma_int/D, then m_hat = (v_red + w)*U_inv.
// Non-convergence is reported through bp.converged, not an exception.
DecryptDetail decrypt_ex(const SecretKey& sk, const CiphertextV1& ct);
IntVec decrypt(const SecretKey& sk, const CiphertextV1& ct);

struct KeySizeReport {
    std::size_t serialized_bits = 0;
    std::size_t lower_bound_bits = 0;  // sum over columns of (n - j) * ceil(log2 diag_j)
};
KeySizeReport key_size_report(const PublicKey& pk);

// Line-oriented ASCII: "LDLC-PKC v1 <kind>" header, "n=.. d=.. D=..
// sigma_int=p/q" fields, then the payload matrices in the shared text formats.
void serialize(std::ostream& os, const PublicKey& pk);
void serialize(std::ostream& os, const SecretKey& sk);
void serialize(std::ostream& os, const CiphertextV1& ct);
PublicKey deserialize_pk(std::istream& is);
SecretKey deserialize_sk(std::istream& is);
CiphertextV1 deserialize_ct(std::istream& is);

}  // namespace ldlcpkc
