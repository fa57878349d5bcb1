#include "ldlcpkc/pkc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ldlcpkc/matrix_core.hpp"
#include "ldlcpkc/rng.hpp"

namespace ldlcpkc {

namespace {
constexpr double kTwoPiE = 2.0 * M_PI * M_E;
}

double sigma_max_sq_from_det(const Int& det_value, std::size_t n) {
    if (det_value == 0) throw SingularMatrix("sigma_max: zero determinant");
    if (n == 0) throw ParameterViolation("sigma_max: n must be positive");
    long e = 0;
    double m = mpz_get_d_2exp(&e, det_value.get_mpz_t());
    double log2_det = std::log2(std::fabs(m)) + static_cast<double>(e);
    return std::exp2(2.0 * log2_det / static_cast<double>(n)) / kTwoPiE;
}

double sigma_max_sq(const IntMatrix& g) {
    if (g.rows() != g.cols()) throw DimensionMismatch("sigma_max: matrix not square");
    return sigma_max_sq_from_det(det(g), g.rows());
}

double sigma_max(const IntMatrix& g) { return std::sqrt(sigma_max_sq(g)); }

Keypair keygen(const LatinSquareParams& params, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterViolation("keygen: gamma outside (0, 1)");
    check_params(params);
    for (int attempt = 0; attempt < 64; ++attempt) {
        LatinSquareParams ap = params;
        ap.seed = rng::derive(params.seed, 0x6b670000ULL + static_cast<std::uint64_t>(attempt));
        LdlcCode code;
        try {
            code = generate(ap);
        } catch (const GenerationFailure&) {
            continue;
        }
        double sigma_int =
            gamma * std::sqrt(sigma_max_sq_from_det(code.det_G_int, code.params.n));
        if (sigma_int < 4.0) continue;  // integer rounding of the noise must be negligible
        IntMatrix g_prime = hnf_matrix(code.G_int, code.D);
        if (!is_hnf(g_prime)) throw Error("keygen: public basis not in HNF");
        Int prod = 1;
        for (std::size_t i = 0; i < g_prime.rows(); ++i) prod *= g_prime(i, i);
        if (prod != code.det_G_int) throw Error("keygen: HNF diagonal product mismatch");
        IntMatrix u_inv = solve_right_triangular(g_prime, code.G_int);  // U^-1 = G_int*G'^-1
        Keypair kp;
        kp.pk = PublicKey{code.params.n, code.params.d, code.D, sigma_int, g_prime, 1};
        kp.sk = SecretKey{std::move(code), std::move(u_inv), DecoderConfig{}, sigma_int};
        return kp;
    }
    throw GenerationFailure("keygen: no code met the sigma_int >= 4 floor");
}

IntVec sample_noise(std::size_t n, double sigma_int, std::uint64_t seed) {
    if (!(sigma_int >= 4.0)) throw ParameterViolation("sample_noise: sigma_int below 4");
    rng::Stream stream(rng::derive(seed, 0x6e6f6973ULL));
    IntVec e(n);
    for (std::size_t i = 0; i < n; ++i)
        e[i] = round_half_away(rat_of_double(sigma_int * stream.gauss()));
    return e;
}

CiphertextV1 encrypt_with_noise(const PublicKey& pk, const IntVec& m, const IntVec& e) {
    if (m.size() != pk.n) throw DimensionMismatch("encrypt: message length mismatch");
    if (e.size() != pk.n) throw DimensionMismatch("encrypt: noise length mismatch");
    CiphertextV1 ct;
    ct.n = pk.n;
    ct.d = pk.d;
    ct.D = pk.D;
    ct.sigma_int = pk.sigma_int;
    ct.c = add_vec(mul_vec_mat(m, pk.G_prime), e);
    return ct;
}

CiphertextV1 encrypt(const PublicKey& pk, const IntVec& m, std::uint64_t seed) {
    return encrypt_with_noise(pk, m, sample_noise(pk.n, pk.sigma_int, seed));
}

DecryptDetail decrypt_ex(const SecretKey& sk, const CiphertextV1& ct) {
    const LdlcCode& code = sk.code;
    std::size_t n = code.params.n;
    if (ct.c.size() != n) throw DimensionMismatch("decrypt: ciphertext length mismatch");
    DecryptDetail out;
    // w = round(c*H/D) with exact rationals; c_red = c - w*G_int is O(D)-sized
    out.w.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int t = 0;
        for (const SparseEntry& e : code.H.cols[j]) t += ct.c[e.index] * Int(e.value);
        out.w[j] = round_half_away(t, code.D);
    }
    IntVec c_red = sub_vec(ct.c, mul_vec_mat(out.w, code.G_int));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat r(c_red[i], code.D);
        r.canonicalize();
        y[i] = to_double(r);
    }
    double dd = mpz_get_d(code.D.get_mpz_t());
    double sigma = sk.sigma_int / dd;
    out.bp = bp_decode(code, y, sigma * sigma, sk.decoder_cfg);
    IntVec v_hat = add_vec(out.bp.v_hat, out.w);
    out.m_hat = mul_vec_mat(v_hat, sk.U_inv);
    return out;
}

IntVec decrypt(const SecretKey& sk, const CiphertextV1& ct) { return decrypt_ex(sk, ct).m_hat; }

namespace {

std::size_t ceil_log2(const Int& v) {
    if (v <= 1) return 0;
    std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    bool pow2 = mpz_popcount(v.get_mpz_t()) == 1;
    return bits - (pow2 ? 1 : 0);
}

void write_header(std::ostream& os, const char* kind, std::size_t n, std::size_t d, const Int& dd,
                  double sigma_int) {
    Rat s = rat_of_double(sigma_int);
    os << "LDLC-PKC v1 " << kind << '\n';
    os << "n=" << n << " d=" << d << " D=" << dd << " sigma_int=" << s.get_num() << '/'
       << s.get_den() << '\n';
}

std::string field_value(std::istream& is, const char* name) {
    std::string tok;
    if (!(is >> tok)) throw FormatError(std::string("key file: missing field ") + name);
    std::string prefix = std::string(name) + "=";
    if (tok.rfind(prefix, 0) != 0)
        throw FormatError(std::string("key file: expected field ") + name + ", got " + tok);
    return tok.substr(prefix.size());
}

Int parse_int(const std::string& s, const char* what) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw FormatError(std::string("key file: bad integer in ") + what);
    }
}

struct Header {
    std::size_t n = 0, d = 0;
    Int D;
    double sigma_int = 0.0;
};

Header read_header(std::istream& is, const char* expect_kind) {
    std::string magic, ver, kind;
    if (!(is >> magic >> ver >> kind)) throw FormatError("key file: truncated header");
    if (magic != "LDLC-PKC" || ver != "v1") throw FormatError("key file: bad magic");
    if (kind != expect_kind)
        throw FormatError("key file: expected kind " + std::string(expect_kind) + ", got " + kind);
    Header h;
    Int n = parse_int(field_value(is, "n"), "n");
    Int d = parse_int(field_value(is, "d"), "d");
    if (n < 1 || n > 100000 || d < 1 || d > n) throw FormatError("key file: bad n or d");
    h.n = static_cast<std::size_t>(n.get_ui());
    h.d = static_cast<std::size_t>(d.get_ui());
    h.D = parse_int(field_value(is, "D"), "D");
    if (h.D < 2) throw FormatError("key file: D must be >= 2");
    std::string sig = field_value(is, "sigma_int");
    std::size_t slash = sig.find('/');
    Int num = parse_int(slash == std::string::npos ? sig : sig.substr(0, slash), "sigma_int");
    Int den = slash == std::string::npos ? Int(1) : parse_int(sig.substr(slash + 1), "sigma_int");
    if (den < 1 || num < 0) throw FormatError("key file: bad sigma_int ratio");
    Rat r(num, den);
    r.canonicalize();
    h.sigma_int = to_double(r);
    if (!(h.sigma_int > 0.0)) throw FormatError("key file: sigma_int must be positive");
    return h;
}

}  // namespace

void serialize(std::ostream& os, const PublicKey& pk) {
    write_header(os, "pk", pk.n, pk.d, pk.D, pk.sigma_int);
    write_matrix(os, pk.G_prime);
}

void serialize(std::ostream& os, const SecretKey& sk) {
    write_header(os, "sk", sk.code.params.n, sk.code.params.d, sk.code.D, sk.sigma_int);
    write_sparse(os, sk.code.H);
    write_matrix(os, sk.U_inv);
}

void serialize(std::ostream& os, const CiphertextV1& ct) {
    write_header(os, "ct", ct.n, ct.d, ct.D, ct.sigma_int);
    IntMatrix row(1, ct.c.size());
    for (std::size_t j = 0; j < ct.c.size(); ++j) row(0, j) = ct.c[j];
    write_matrix(os, row);
}

PublicKey deserialize_pk(std::istream& is) {
    Header h = read_header(is, "pk");
    IntMatrix g = read_int_matrix(is);
    if (g.rows() != h.n || g.cols() != h.n) throw FormatError("pk: matrix shape mismatch");
    if (!is_hnf(g)) throw FormatError("pk: basis is not in HNF");
    Int prod = 1, expect = 1;
    for (std::size_t i = 0; i < h.n; ++i) prod *= g(i, i);
    for (std::size_t i = 0; i + 1 < h.n; ++i) expect *= h.D;
    if (prod != expect) throw FormatError("pk: determinant does not match D^(n-1)");
    return PublicKey{h.n, h.d, h.D, h.sigma_int, std::move(g), 1};
}

SecretKey deserialize_sk(std::istream& is) {
    Header h = read_header(is, "sk");
    SparseParityMatrix hm = read_sparse(is);
    if (hm.n != h.n || hm.d != h.d) throw FormatError("sk: parity matrix shape mismatch");
    if (hm.rows.empty() || hm.rows[0].size() != h.d)
        throw FormatError("sk: first row degree mismatch");
    LatinSquareParams params;
    params.n = h.n;
    params.d = h.d;
    params.gen_seq.clear();
    for (const SparseEntry& e : hm.rows[0]) params.gen_seq.push_back(std::labs(e.value));
    std::sort(params.gen_seq.begin(), params.gen_seq.end(), std::greater<long>());
    ValidationReport rep = validate(hm, params);
    if (!rep.all()) throw FormatError("sk: parity matrix fails Latin-square validation");
    LdlcCode code;
    try {
        code = code_from_parity(params, std::move(hm));
    } catch (const GenerationFailure&) {
        throw FormatError("sk: parity matrix is not sign-normalized with det >= 2");
    }
    if (code.D != h.D) throw FormatError("sk: determinant does not match header D");
    IntMatrix u_inv = read_int_matrix(is);
    if (u_inv.rows() != h.n || u_inv.cols() != h.n) throw FormatError("sk: U_inv shape mismatch");
    return SecretKey{std::move(code), std::move(u_inv), DecoderConfig{}, h.sigma_int};
}

CiphertextV1 deserialize_ct(std::istream& is) {
    Header h = read_header(is, "ct");
    IntMatrix row = read_int_matrix(is);
    if (row.rows() != 1 || row.cols() != h.n) throw FormatError("ct: vector shape mismatch");
    CiphertextV1 ct;
    ct.n = h.n;
    ct.d = h.d;
    ct.D = h.D;
    ct.sigma_int = h.sigma_int;
    ct.c = row.row(0);
    return ct;
}

KeySizeReport key_size_report(const PublicKey& pk) {
    std::ostringstream os;
    serialize(os, pk);
    KeySizeReport r;
    r.serialized_bits = os.str().size() * 8;
    r.lower_bound_bits = 0;
    for (std::size_t j = 0; j < pk.G_prime.rows(); ++j)
        r.lower_bound_bits += (pk.G_prime.rows() - j) * ceil_log2(pk.G_prime(j, j));
    return r;
}

}  // namespace ldlcpkc
