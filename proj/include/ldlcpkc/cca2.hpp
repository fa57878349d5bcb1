#pragma once

// Fujisaki-Okamoto wrapper around the lattice scheme.
//
// Oracles are SHAKE256 with domain-separated prefixes over canonical inputs:
//   E(e, m): length-n message-space vector, entries in [0, 2^16)
//   F(e):    32-byte symmetric key
// The symmetric layer is keystream XOR plus a 32-byte keyed tag.
//
// fo_decrypt rechecks the sender equation E(e_hat, m_hat)*G' + e_hat == c1.
// Since G' is nonsingular this is equivalent to E(e_hat, m_hat) == m_hat',
// which is the form computed here (it avoids a second basis multiply).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldlcpkc/pkc.hpp"

namespace ldlcpkc {

using Bytes = std::vector<std::uint8_t>;

struct OracleSuite {
    std::size_t n = 0;  // message-space dimension used by E

    IntVec E(const IntVec& e, const Bytes& m) const;
    Bytes F(const IntVec& e) const;  // 32 bytes
    Bytes keystream(const Bytes& key, std::size_t len) const;
    Bytes tag(const Bytes& key, const Bytes& c2) const;  // 32 bytes
};

struct FoCiphertext {
    CiphertextV1 c1;
    Bytes c2;
    Bytes tag;
    int format_version = 1;
};

FoCiphertext fo_encrypt(const PublicKey& pk, const Bytes& m, std::uint64_t seed);

// nullopt = REJECT (tag failure, decoder failure, or recheck failure)
std::optional<Bytes> fo_decrypt(const SecretKey& sk, const FoCiphertext& ct);

void serialize(std::ostream& os, const FoCiphertext& ct);
FoCiphertext deserialize_fo(std::istream& is);

std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& s);  // FormatError on bad input

}  // namespace ldlcpkc
