#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "ldlcpkc/ldlc.hpp"
#include "ldlcpkc/matrix_core.hpp"

using namespace ldlcpkc;

namespace {

LatinSquareParams small_params(std::size_t n, std::uint64_t seed) {
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

}  // namespace

TEST_CASE("alpha and parameter screening") {
    LatinSquareParams p = small_params(16, 1);
    CHECK(alpha_of(p) == doctest::Approx(0.5).epsilon(1e-15));  // (1+1)/2^2
    CHECK_NOTHROW(check_params(p));

    LatinSquareParams bad = p;
    bad.gen_seq = {1, 1, 1};  // alpha = 2
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    bad = p;
    bad.gen_seq = {1, 2, 1};  // increasing step
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    bad = p;
    bad.gen_seq = {2, 1};  // length != d
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    bad = p;
    bad.d = 1;
    bad.gen_seq = {2};
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    bad = p;
    bad.n = 2;  // d > n
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    bad = p;
    bad.gen_seq = {2, 1, 0};
    CHECK_THROWS_AS(check_params(bad), ParameterViolation);
    LatinSquareParams wide = small_params(16, 1);
    wide.d = 4;
    wide.gen_seq = {3, 2, 1, 1};  // alpha = 6/9 < 1
    CHECK_NOTHROW(check_params(wide));
}

TEST_CASE("generated parity matrices have Latin-square structure") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        LatinSquareParams p = small_params(16, seed);
        rng::Stream st(p.seed);
        SparseParityMatrix h = generate_parity(p, st);
        ValidationReport rep = validate(h, p);
        CHECK(rep.structure_ok);
        CHECK(rep.row_degrees_ok);
        CHECK(rep.col_degrees_ok);
        CHECK(rep.row_values_ok);
        CHECK(rep.col_values_ok);
        CHECK(rep.alpha_ok);
        CHECK(rep.det == det(h.dense()));
    }
}

TEST_CASE("full code construction: sign, exact generator, determinant power law") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LatinSquareParams p = small_params(8, 100 + seed);
        LdlcCode code = generate(p);
        CHECK(code.D >= 2);
        CHECK(det(code.H.dense()) == code.D);  // sign-normalized
        IntMatrix prod = mul(code.G_int, code.H.dense());
        CHECK(prod == scale(IntMatrix::identity(p.n), code.D));
        CHECK(code.det_G_int == pow_int(code.D, static_cast<unsigned long>(p.n - 1)));
        CHECK(det(code.G_int) == code.det_G_int);
        ValidationReport rep = validate(code.H, p);
        CHECK(rep.all());
    }
}

TEST_CASE("generation is deterministic in the seed") {
    LatinSquareParams p = small_params(12, 777);
    LdlcCode a = generate(p);
    LdlcCode b = generate(p);
    CHECK(a.D == b.D);
    CHECK(a.H.dense() == b.H.dense());
    CHECK(a.G_int == b.G_int);
    p.seed = 778;
    LdlcCode c = generate(p);
    CHECK(a.H.dense() != c.H.dense());
}

TEST_CASE("encode lands in the lattice and membership detects perturbations") {
    LatinSquareParams p = small_params(10, 42);
    LdlcCode code = generate(p);
    rng::Stream st(4242);
    for (int rep = 0; rep < 10; ++rep) {
        IntVec v(p.n);
        for (auto& x : v) x = st.uniform_int(-9, 9);
        IntVec point = encode(code, v);
        CHECK(point == mul_vec_mat(v, code.G_int));
        RatVec y(p.n);
        for (std::size_t j = 0; j < p.n; ++j) y[j] = Rat(point[j]);
        CHECK(membership(code, y));
        // shifting one coordinate by 1/(2D) breaks integrality of y * H
        std::size_t j = st.below(p.n);
        y[j] += Rat(1, 2 * code.D);
        y[j].canonicalize();
        CHECK_FALSE(membership(code, y));
    }
    // scaled lattice: points of L(G_int)/D are members too (y * H integral)
    RatVec frac(p.n);
    for (std::size_t j = 0; j < p.n; ++j) {
        frac[j] = Rat(code.G_int(0, j), code.D);
        frac[j].canonicalize();
    }
    CHECK(membership(code, frac));
}

TEST_CASE("validate flags structural damage") {
    LatinSquareParams p = small_params(9, 5);
    LdlcCode code = generate(p);
    SparseParityMatrix h = code.H;
    // value magnitude not drawn from the generating sequence
    h.rows[0][0].value = 7;
    h.rebuild_cols();
    ValidationReport rep = validate(h, p);
    CHECK_FALSE(rep.row_values_ok);
    CHECK_FALSE(rep.all());
    // column degree broken by moving an entry onto an occupied column
    h = code.H;
    h.rows[0][0].index = h.rows[0][1].index;
    h.rebuild_cols();
    rep = validate(h, p);
    CHECK_FALSE(rep.all());
    // alpha screened against the parameter set actually supplied
    LatinSquareParams hot = p;
    hot.gen_seq = {1, 1, 1};
    rep = validate(code.H, hot);
    CHECK_FALSE(rep.alpha_ok);
}

TEST_CASE("code_from_parity accepts normalized matrices and rejects the rest") {
    LatinSquareParams p = small_params(8, 9);
    LdlcCode code = generate(p);
    LdlcCode again = code_from_parity(p, code.H);
    CHECK(again.D == code.D);
    CHECK(again.G_int == code.G_int);
    // negating a row flips the determinant sign: no longer normalized
    SparseParityMatrix flipped = code.H;
    for (auto& e : flipped.rows[0]) e.value = -e.value;
    flipped.rebuild_cols();
    CHECK_THROWS_AS(code_from_parity(p, flipped), GenerationFailure);
}

TEST_CASE("sparse text round trip and rejection of malformed input") {
    LatinSquareParams p = small_params(11, 31);
    LdlcCode code = generate(p);
    std::ostringstream os;
    write_sparse(os, code.H);
    std::istringstream is(os.str());
    SparseParityMatrix back = read_sparse(is);
    CHECK(back.n == code.H.n);
    CHECK(back.d == code.H.d);
    CHECK(back.dense() == code.H.dense());

    std::istringstream bad_header("0 3\n");
    CHECK_THROWS_AS(read_sparse(bad_header), FormatError);
    std::istringstream truncated("2 1\n1 0 2\n1 1\n");
    CHECK_THROWS_AS(read_sparse(truncated), FormatError);
    std::istringstream out_of_range("2 1\n1 5 2\n1 1 2\n");
    CHECK_THROWS_AS(read_sparse(out_of_range), FormatError);
    std::istringstream zero_value("2 1\n1 0 0\n1 1 2\n");
    CHECK_THROWS_AS(read_sparse(zero_value), FormatError);
    std::istringstream dup_col("2 2\n2 0 1 0 1\n2 0 1 1 1\n");
    CHECK_THROWS_AS(read_sparse(dup_col), FormatError);
}
