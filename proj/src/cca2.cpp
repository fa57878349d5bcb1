#include "ldlcpkc/cca2.hpp"

#include <openssl/evp.h>

#include <istream>
#include <ostream>
#include <sstream>

namespace ldlcpkc {

namespace {

Bytes shake256(const Bytes& input, std::size_t outlen) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("shake256: context allocation failed");
    Bytes out(outlen);
    int ok = EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) == 1 &&
             EVP_DigestUpdate(ctx, input.data(), input.size()) == 1 &&
             EVP_DigestFinalXOF(ctx, out.data(), outlen) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw Error("shake256: digest failure");
    return out;
}

void append_str(Bytes& buf, const std::string& s) { buf.insert(buf.end(), s.begin(), s.end()); }

void append_le64(Bytes& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_bytes(Bytes& buf, const Bytes& b) { buf.insert(buf.end(), b.begin(), b.end()); }

// canonical noise serialization: decimal entries joined by single spaces
Bytes canon_noise(const IntVec& e) {
    std::ostringstream os;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ' ';
        os << e[i];
    }
    std::string s = os.str();
    return Bytes(s.begin(), s.end());
}

}  // namespace

IntVec OracleSuite::E(const IntVec& e, const Bytes& m) const {
    Bytes in;
    append_str(in, "LDLC-FO-E");
    Bytes ce = canon_noise(e);
    append_le64(in, ce.size());
    append_bytes(in, ce);
    append_le64(in, m.size());
    append_bytes(in, m);
    Bytes out = shake256(in, 2 * n);
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<unsigned long>(out[2 * i]) | (static_cast<unsigned long>(out[2 * i + 1]) << 8);
    return v;
}

Bytes OracleSuite::F(const IntVec& e) const {
    Bytes in;
    append_str(in, "LDLC-FO-F");
    Bytes ce = canon_noise(e);
    append_le64(in, ce.size());
    append_bytes(in, ce);
    return shake256(in, 32);
}

Bytes OracleSuite::keystream(const Bytes& key, std::size_t len) const {
    Bytes in;
    append_str(in, "LDLC-FO-S");
    append_le64(in, key.size());
    append_bytes(in, key);
    return shake256(in, len);
}

Bytes OracleSuite::tag(const Bytes& key, const Bytes& c2) const {
    Bytes in;
    append_str(in, "LDLC-FO-T");
    append_le64(in, key.size());
    append_bytes(in, key);
    append_le64(in, c2.size());
    append_bytes(in, c2);
    return shake256(in, 32);
}

FoCiphertext fo_encrypt(const PublicKey& pk, const Bytes& m, std::uint64_t seed) {
    if (m.empty()) throw ParameterViolation("fo_encrypt: empty message");
    OracleSuite oracle{pk.n};
    IntVec e = sample_noise(pk.n, pk.sigma_int, seed);
    IntVec mp = oracle.E(e, m);
    FoCiphertext ct;
    ct.c1 = encrypt_with_noise(pk, mp, e);
    Bytes key = oracle.F(e);
    Bytes ks = oracle.keystream(key, m.size());
    ct.c2.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) ct.c2[i] = m[i] ^ ks[i];
    ct.tag = oracle.tag(key, ct.c2);
    return ct;
}

std::optional<Bytes> fo_decrypt(const SecretKey& sk, const FoCiphertext& ct) {
    std::size_t n = sk.code.params.n;
    if (ct.c1.c.size() != n) throw DimensionMismatch("fo_decrypt: ciphertext length mismatch");
    if (ct.c2.empty() || ct.tag.size() != 32) return std::nullopt;
    OracleSuite oracle{n};
    DecryptDetail det = decrypt_ex(sk, ct.c1);
    if (!det.bp.converged) return std::nullopt;
    // e_hat = c1 - m_hat'*G'; m_hat'*G' = (v_hat*U_inv)*G' = v_hat*G_int
    IntVec v_hat = add_vec(det.bp.v_hat, det.w);
    IntVec e_hat = sub_vec(ct.c1.c, mul_vec_mat(v_hat, sk.code.G_int));
    Bytes key = oracle.F(e_hat);
    if (oracle.tag(key, ct.c2) != ct.tag) return std::nullopt;
    Bytes ks = oracle.keystream(key, ct.c2.size());
    Bytes m(ct.c2.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ct.c2[i] ^ ks[i];
    if (oracle.E(e_hat, m) != det.m_hat) return std::nullopt;
    return m;
}

std::string to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(2 * b.size());
    for (std::uint8_t v : b) {
        s.push_back(digits[v >> 4]);
        s.push_back(digits[v & 15]);
    }
    return s;
}

Bytes from_hex(const std::string& s) {
    if (s.size() % 2 != 0) throw FormatError("hex string has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("hex string has a non-hex character");
    };
    Bytes out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
    return out;
}

void serialize(std::ostream& os, const FoCiphertext& ct) {
    os << "LDLC-PKC v1 fo\n";
    serialize(os, ct.c1);
    os << "c2=" << to_hex(ct.c2) << '\n';
    os << "tag=" << to_hex(ct.tag) << '\n';
}

FoCiphertext deserialize_fo(std::istream& is) {
    std::string magic, ver, kind;
    if (!(is >> magic >> ver >> kind)) throw FormatError("fo file: truncated header");
    if (magic != "LDLC-PKC" || ver != "v1" || kind != "fo") throw FormatError("fo file: bad magic");
    FoCiphertext ct;
    ct.c1 = deserialize_ct(is);
    auto read_field = [&](const char* name) {
        std::string tok;
        if (!(is >> tok)) throw FormatError(std::string("fo file: missing field ") + name);
        std::string prefix = std::string(name) + "=";
        if (tok.rfind(prefix, 0) != 0)
            throw FormatError(std::string("fo file: expected field ") + name);
        return from_hex(tok.substr(prefix.size()));
    };
    ct.c2 = read_field("c2");
    ct.tag = read_field("tag");
    if (ct.c2.empty()) throw FormatError("fo file: empty c2");
    if (ct.tag.size() != 32) throw FormatError("fo file: tag must be 32 bytes");
    return ct;
}

}  // namespace ldlcpkc
