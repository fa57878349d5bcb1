#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <mpfr.h>

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ldlcpkc/matrix_core.hpp"
#include "ldlcpkc/pkc.hpp"
#include "ldlcpkc/rng.hpp"

using namespace ldlcpkc;

namespace {

constexpr double kTwoPiE = 2.0 * M_PI * M_E;

// 256-bit re-evaluation of sigma_max = det^(1/n) / sqrt(2 pi e)
double sigma_max_mpfr(const Int& det_value, std::size_t n) {
    mpfr_t t, den, one;
    mpfr_init2(t, 256);
    mpfr_init2(den, 256);
    mpfr_init2(one, 256);
    mpfr_set_z(t, det_value.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    mpfr_div_ui(t, t, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);  // det^(1/n)
    mpfr_const_pi(den, MPFR_RNDN);
    mpfr_mul_ui(den, den, 2, MPFR_RNDN);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(one, one, MPFR_RNDN);
    mpfr_mul(den, den, one, MPFR_RNDN);  // 2 pi e
    mpfr_sqrt(den, den, MPFR_RNDN);
    mpfr_div(t, t, den, MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(den);
    mpfr_clear(one);
    return out;
}

LatinSquareParams make_params(std::size_t n, std::uint64_t seed) {
    LatinSquareParams p;
    p.n = n;
    p.seed = seed;
    return p;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

IntVec random_message(std::size_t n, long bound, rng::Stream& st) {
    IntVec m(n);
    for (auto& x : m) x = st.uniform_int(-bound, bound);
    return m;
}

}  // namespace

TEST_CASE("sigma_max of the identity lattice is 1/sqrt(2 pi e)") {
    for (std::size_t n : {2u, 8u, 17u}) {
        double s2 = sigma_max_sq(IntMatrix::identity(n));
        CHECK(std::fabs(s2 - 1.0 / kTwoPiE) < 1e-12);
    }
}

TEST_CASE("sigma_max against the 256-bit oracle on 20 generated codes") {
    int checked = 0;
    for (std::size_t n : {8u, 10u, 12u, 16u}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            LdlcCode code = generate(make_params(n, 40 + seed));
            // det(G_int) = D^(n-1): the oracle recomputes sigma_max from scratch
            double mine = sigma_max(code.G_int);
            double want = sigma_max_mpfr(code.det_G_int, n);
            CHECK(std::fabs(mine - want) <= 1e-9 * want);
            ++checked;
        }
    }
    CHECK(checked == 20);
}

TEST_CASE("sigma_max stays accurate for multi-thousand-bit determinants") {
    LdlcCode code = generate(make_params(64, 7));
    CHECK(code.det_G_int == pow_int(code.D, 63));
    double mine = std::sqrt(sigma_max_sq_from_det(code.det_G_int, 64));
    double want = sigma_max_mpfr(code.det_G_int, 64);
    CHECK(std::fabs(mine - want) <= 1e-9 * want);
}

TEST_CASE("sample_noise: deterministic, integer-rounded Gaussian with the right moments") {
    const std::size_t n = 20000;
    const double sigma = 25.0;
    IntVec e = sample_noise(n, sigma, 987654321);
    CHECK(sample_noise(n, sigma, 987654321) == e);
    CHECK(sample_noise(n, sigma, 987654322) != e);
    double mean = 0.0;
    for (const Int& x : e) mean += mpz_get_d(x.get_mpz_t());
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const Int& x : e) {
        double d = mpz_get_d(x.get_mpz_t()) - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);
    double want = sigma * sigma + 1.0 / 12.0;  // rounding adds uniform(-1/2,1/2) variance
    CHECK(std::fabs(mean) < 4.0 * sigma / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - want) < 0.05 * want);
    // the >= 4 floor keeps that rounding correction negligible
    CHECK_THROWS_AS(sample_noise(16, 3.9, 1), ParameterViolation);
}

TEST_CASE("keygen: HNF public basis, certified determinant, unimodular transform") {
    Keypair kp = keygen(make_params(16, 3), 0.5);
    const PublicKey& pk = kp.pk;
    const SecretKey& sk = kp.sk;
    CHECK(pk.n == 16);
    CHECK(pk.D == sk.code.D);
    CHECK(is_hnf(pk.G_prime));
    Int prod = 1;
    for (std::size_t i = 0; i < 16; ++i) prod *= pk.G_prime(i, i);
    CHECK(prod == pow_int(pk.D, 15));
    Int du = det(sk.U_inv);
    CHECK((du == 1 || du == -1));
    CHECK(mul(sk.U_inv, pk.G_prime) == sk.code.G_int);
    // sigma_int = gamma * D^((n-1)/n) / sqrt(2 pi e), checked against MPFR
    double want = 0.5 * sigma_max_mpfr(sk.code.det_G_int, 16);
    CHECK(std::fabs(sk.sigma_int - want) <= 1e-9 * want);
    CHECK(pk.sigma_int == sk.sigma_int);
    CHECK(sk.sigma_int >= 4.0);
    // every HNF diagonal divides D, so public entries stay below D
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(mpz_divisible_p(pk.D.get_mpz_t(), pk.G_prime(i, i).get_mpz_t()));

    CHECK_THROWS_AS(keygen(make_params(16, 3), 0.0), ParameterViolation);
    CHECK_THROWS_AS(keygen(make_params(16, 3), 1.0), ParameterViolation);
    // tiny n at small gamma cannot reach the sigma_int >= 4 floor
    CHECK_THROWS_AS(keygen(make_params(4, 3), 0.05), GenerationFailure);
}

TEST_CASE("keygen is deterministic per seed") {
    Keypair a = keygen(make_params(12, 9), 0.4);
    Keypair b = keygen(make_params(12, 9), 0.4);
    std::ostringstream sa, sb;
    serialize(sa, a.pk);
    serialize(sb, b.pk);
    CHECK(sa.str() == sb.str());
    std::ostringstream ka, kb;
    serialize(ka, a.sk);
    serialize(kb, b.sk);
    CHECK(ka.str() == kb.str());
}

TEST_CASE("encrypt/decrypt round trip at n=16, gamma=0.5") {
    Keypair kp = keygen(make_params(16, 5), 0.5);
    rng::Stream st(1001);
    int ok = 0;
    for (int t = 0; t < 30; ++t) {
        IntVec m = random_message(16, 50, st);
        CiphertextV1 ct = encrypt(kp.pk, m, 7000 + t);
        CHECK(ct.c.size() == 16);
        DecryptDetail det_res = decrypt_ex(kp.sk, ct);
        if (det_res.bp.converged && det_res.m_hat == m) ++ok;
        CHECK(decrypt(kp.sk, ct) == det_res.m_hat);
    }
    CHECK(ok >= 29);
}

TEST_CASE("ciphertext is the lattice point shifted by the sampled noise") {
    Keypair kp = keygen(make_params(12, 6), 0.5);
    rng::Stream st(2002);
    IntVec m = random_message(12, 30, st);
    IntVec e = sample_noise(12, kp.pk.sigma_int, 4444);
    CiphertextV1 ct = encrypt_with_noise(kp.pk, m, e);
    IntVec base = mul_vec_mat(m, kp.pk.G_prime);
    for (std::size_t j = 0; j < 12; ++j) CHECK(ct.c[j] == base[j] + e[j]);
    CHECK(encrypt(kp.pk, m, 4444).c == ct.c);  // encrypt = encrypt_with_noise(sample_noise)
    IntVec short_m(5, Int(1));
    CHECK_THROWS_AS(encrypt(kp.pk, short_m, 1), DimensionMismatch);
    IntVec short_e(5, Int(1));
    CHECK_THROWS_AS(encrypt_with_noise(kp.pk, m, short_e), DimensionMismatch);
}

TEST_CASE("round trip at n=64, gamma=0.3") {
    Keypair kp = keygen(make_params(64, 11), 0.3);
    rng::Stream st(3003);
    int ok = 0;
    for (int t = 0; t < 30; ++t) {
        IntVec m = random_message(64, 100, st);
        CiphertextV1 ct = encrypt(kp.pk, m, 9000 + t);
        DecryptDetail d = decrypt_ex(kp.sk, ct);
        if (d.bp.converged && d.m_hat == m) ++ok;
    }
    CHECK(ok >= 29);
}

TEST_CASE("serialization: byte-stable round trips for pk, sk, ct") {
    Keypair kp = keygen(make_params(12, 21), 0.5);
    std::ostringstream pks;
    serialize(pks, kp.pk);
    std::istringstream pin(pks.str());
    PublicKey pk2 = deserialize_pk(pin);
    CHECK(pk2.n == kp.pk.n);
    CHECK(pk2.D == kp.pk.D);
    CHECK(pk2.G_prime == kp.pk.G_prime);
    CHECK(pk2.sigma_int == kp.pk.sigma_int);  // sigma is stored as an exact dyadic ratio
    std::ostringstream pks2;
    serialize(pks2, pk2);
    CHECK(pks2.str() == pks.str());

    std::ostringstream sks;
    serialize(sks, kp.sk);
    std::istringstream sin(sks.str());
    SecretKey sk2 = deserialize_sk(sin);
    CHECK(sk2.code.D == kp.sk.code.D);
    CHECK(sk2.code.H.dense() == kp.sk.code.H.dense());
    CHECK(sk2.code.G_int == kp.sk.code.G_int);
    CHECK(sk2.U_inv == kp.sk.U_inv);
    CHECK(sk2.code.params.gen_seq == kp.sk.code.params.gen_seq);
    std::ostringstream sks2;
    serialize(sks2, sk2);
    CHECK(sks2.str() == sks.str());

    rng::Stream st(717);
    IntVec m = random_message(12, 40, st);
    CiphertextV1 ct = encrypt(kp.pk, m, 515);
    std::ostringstream cts;
    serialize(cts, ct);
    std::istringstream cin(cts.str());
    CiphertextV1 ct2 = deserialize_ct(cin);
    CHECK(ct2.c == ct.c);
    CHECK(ct2.D == ct.D);
    // a deserialized key decrypts a deserialized ciphertext
    CHECK(decrypt(sk2, ct2) == m);
}

TEST_CASE("deserialization rejects damaged inputs") {
    Keypair kp = keygen(make_params(10, 23), 0.5);
    std::ostringstream pks;
    serialize(pks, kp.pk);
    std::string good = pks.str();

    std::istringstream wrong_magic("XXXX v1 pk\n" + good.substr(good.find('\n') + 1));
    CHECK_THROWS_AS(deserialize_pk(wrong_magic), FormatError);

    std::istringstream wrong_kind(good);
    CHECK_THROWS_AS(deserialize_sk(wrong_kind), FormatError);

    std::string cut = good.substr(0, good.size() * 2 / 3);
    std::istringstream truncated(cut);
    CHECK_THROWS_AS(deserialize_pk(truncated), FormatError);

    // tampered diagonal: the determinant certificate must fail
    PublicKey bad = kp.pk;
    bad.G_prime(3, 3) *= 2;
    for (std::size_t i = 4; i < 10; ++i) bad.G_prime(i, 3) = 0;  // keep the HNF shape
    std::ostringstream bads;
    serialize(bads, bad);
    std::istringstream badin(bads.str());
    CHECK_THROWS_AS(deserialize_pk(badin), FormatError);

    // secret key with a sign-flipped parity row is not accepted
    SecretKey sbad = kp.sk;
    for (auto& e : sbad.code.H.rows[0]) e.value = -e.value;
    sbad.code.H.rebuild_cols();
    std::ostringstream sbs;
    serialize(sbs, sbad);
    std::istringstream sbin(sbs.str());
    CHECK_THROWS_AS(deserialize_sk(sbin), FormatError);
}

TEST_CASE("key size report: serialized size dominates the information bound") {
    Keypair kp = keygen(make_params(16, 29), 0.5);
    KeySizeReport rep = key_size_report(kp.pk);
    CHECK(rep.lower_bound_bits > 0);
    CHECK(rep.serialized_bits > rep.lower_bound_bits);
}
