#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ldlcpkc/matrix_core.hpp"
#include "ldlcpkc/rng.hpp"

using namespace ldlcpkc;

namespace {

// independent determinant oracle: cofactor expansion along the first row
Int det_cofactor(const IntMatrix& a) {
    std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = a(i, c);
            }
        }
        Int term = a(0, j) * det_cofactor(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

IntMatrix rand_matrix(std::size_t n, long bound, rng::Stream& st) {
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = st.uniform_int(-bound, bound);
    return a;
}

IntMatrix rand_nonsingular(std::size_t n, long bound, rng::Stream& st) {
    for (;;) {
        IntMatrix a = rand_matrix(n, bound, st);
        if (det(a) != 0) return a;
    }
}

IntMatrix rand_unimodular(std::size_t n, rng::Stream& st) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    for (std::size_t t = 0; t < 4 * n; ++t) {
        std::size_t i = st.below(n);
        std::size_t j = st.below(n);
        while (j == i) j = st.below(n);
        if (st.below(4) == 0) {
            u.swap_rows(i, j);
            continue;
        }
        if (st.coin())
            for (std::size_t c = 0; c < n; ++c) u(i, c) += u(j, c);
        else
            for (std::size_t c = 0; c < n; ++c) u(i, c) -= u(j, c);
    }
    return u;
}

bool in_lattice(const IntMatrix& basis, const IntVec& v) {
    RatMatrix inv = inverse_rational(basis);
    IntVec y = mul_vec_mat(v, inv.num);
    for (const Int& x : y)
        if (!mpz_divisible_p(x.get_mpz_t(), inv.den.get_mpz_t())) return false;
    return true;
}

Rat dist2(const IntVec& point, const RatVec& t) {
    Rat acc = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        Rat d = Rat(point[j]) - t[j];
        acc += d * d;
    }
    acc.canonicalize();
    return acc;
}

}  // namespace

TEST_CASE("determinant matches the cofactor-expansion oracle") {
    rng::Stream st(20260101);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            IntMatrix a = rand_matrix(n, 9, st);
            CHECK(det(a) == det_cofactor(a));
        }
    }
    // forced singular: duplicate row
    IntMatrix s = rand_matrix(5, 9, st);
    s.set_row(3, s.row(1));
    CHECK(det(s) == 0);
    CHECK(det_cofactor(s) == 0);
}

TEST_CASE("inverse_rational multiplies back to the identity") {
    rng::Stream st(20260102);
    for (int rep = 0; rep < 30; ++rep) {
        std::size_t n = 1 + st.below(7);
        IntMatrix a = rand_nonsingular(n, 9, st);
        RatMatrix inv = inverse_rational(a);
        IntMatrix p = mul(a, inv.num);
        CHECK(p == scale(IntMatrix::identity(n), inv.den));
    }
    IntMatrix s(3, 3);
    s(0, 0) = 1;
    s(1, 0) = 2;
    s(2, 0) = 3;
    CHECK_THROWS_AS(inverse_rational(s), SingularMatrix);
}

TEST_CASE("hnf: structure, transform, determinant, canonical form, idempotence") {
    rng::Stream st(20260103);
    for (int rep = 0; rep < 60; ++rep) {
        std::size_t n = 1 + st.below(8);
        IntMatrix a = rand_nonsingular(n, 20, st);
        HnfBasis h = hnf(a);
        CHECK(is_hnf(h.matrix));
        CHECK(mul(h.U, a) == h.matrix);
        Int du = det(h.U);
        CHECK((du == 1 || du == -1));
        Int da = det(a);
        Int prod = 1;
        for (std::size_t i = 0; i < n; ++i) prod *= h.matrix(i, i);
        CHECK(prod == abs(da));
        // canonical form is a lattice invariant
        IntMatrix u = rand_unimodular(n, st);
        CHECK(hnf(mul(u, a)).matrix == h.matrix);
        CHECK(hnf(h.matrix).matrix == h.matrix);
        CHECK(hnf_matrix(a) == h.matrix);
        CHECK(hnf_matrix(a, abs(da)) == h.matrix);
    }
}

TEST_CASE("hnf rejects rank-deficient input") {
    IntMatrix a(3, 3);
    a(0, 0) = 2;
    a(0, 1) = 4;
    a(1, 0) = 1;
    a(1, 1) = 2;
    a(2, 2) = 0;
    CHECK_THROWS_AS(hnf(a), SingularMatrix);
}

TEST_CASE("hnf_stack spans the union of generating rows") {
    rng::Stream st(20260104);
    for (int rep = 0; rep < 15; ++rep) {
        std::size_t n = 2 + st.below(4);
        IntMatrix a = rand_nonsingular(n, 9, st);
        Int da = abs(det(a));
        IntMatrix stack(2 * n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                stack(i, j) = a(i, j);
                stack(n + i, j) = i == j ? da : Int(0);  // da * I is inside L(a)
            }
        CHECK(hnf_stack(stack, da) == hnf(a).matrix);
    }
}

TEST_CASE("triangular solves recover exact coordinates") {
    rng::Stream st(20260105);
    for (int rep = 0; rep < 25; ++rep) {
        std::size_t n = 1 + st.below(7);
        IntMatrix t = hnf(rand_nonsingular(n, 15, st)).matrix;
        IntMatrix x(2, n);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) = st.uniform_int(-50, 50);
        IntMatrix b = mul(x, t);
        CHECK(solve_right_triangular(t, b) == x);
        IntVec coord;
        CHECK(triangular_coords(t, b.row(0), coord));
        CHECK(coord == x.row(0));
        // a vector off the lattice is reported, not mis-solved
        IntVec off = b.row(0);
        off[n - 1] = off[n - 1] * t(n - 1, n - 1) + 1;
        IntVec dummy;
        if (t(n - 1, n - 1) != 1) CHECK_FALSE(triangular_coords(t, off, dummy));
    }
}

TEST_CASE("lll finds the shortest vector of the classic 2x2 basis") {
    IntMatrix b(2, 2);
    b(0, 0) = 201;
    b(0, 1) = 37;
    b(1, 0) = 1648;
    b(1, 1) = 297;
    IntMatrix red = lll(b);
    CHECK(hnf(red).matrix == hnf(b).matrix);
    SvpResult sv = svp_exhaustive(b, 50);
    CHECK(norm2(red.row(0)) == sv.norm2);
}

TEST_CASE("lll output is size-reduced and Lovasz-reduced, and spans the input lattice") {
    rng::Stream st(20260106);
    Rat delta(99, 100);
    const Int p = delta.get_num(), q = delta.get_den();
    for (int rep = 0; rep < 25; ++rep) {
        std::size_t n = 2 + st.below(6);
        IntMatrix a = rand_nonsingular(n, 25, st);
        IntMatrix red = lll(a, delta);
        CHECK(hnf(red).matrix == hnf(a).matrix);
        IntegralGS gs = integral_gs(red);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                CHECK(2 * abs(gs.lam[i][j]) <= gs.dd[j + 1]);
        for (std::size_t k = 1; k < n; ++k) {
            const Int& lam = gs.lam[k][k - 1];
            CHECK(q * gs.dd[k + 1] * gs.dd[k - 1] >= p * gs.dd[k] * gs.dd[k] - q * lam * lam);
        }
    }
}

TEST_CASE("babai round and nearest plane return lattice points; cvp lower-bounds both") {
    rng::Stream st(20260107);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + st.below(4);  // n <= 5 keeps cvp_exhaustive cheap
        IntMatrix a = rand_nonsingular(n, 6, st);
        RatVec t(n);
        for (std::size_t j = 0; j < n; ++j) {
            t[j] = Rat(st.uniform_int(-40, 40), 1 + st.below(7));
            t[j].canonicalize();
        }
        IntVec cr = babai_round(a, t);
        IntVec cn = babai_nearest_plane(a, t);
        IntVec pr = mul_vec_mat(cr, a);
        IntVec pn = mul_vec_mat(cn, a);
        CHECK(in_lattice(a, pr));
        CHECK(in_lattice(a, pn));
        CvpResult cv = cvp_exhaustive(a, t, 3);
        CHECK(cv.dist2 <= dist2(pr, t));
        CHECK(cv.dist2 <= dist2(pn, t));
        CHECK(dist2(cv.vector, t) == cv.dist2);
        // exact lattice point is returned exactly by all three
        IntVec exact = mul_vec_mat(cr, a);
        RatVec te(n);
        for (std::size_t j = 0; j < n; ++j) te[j] = Rat(exact[j]);
        CHECK(babai_round(a, te) == cr);
        CHECK(babai_nearest_plane(a, te) == cr);
        CHECK(cvp_exhaustive(a, te, 2).dist2 == 0);
    }
}

TEST_CASE("babai_round triangular substitution equals the inverse path") {
    rng::Stream st(20260108);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 1 + st.below(7);
        IntMatrix t = hnf(rand_nonsingular(n, 12, st)).matrix;
        RatVec x(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = Rat(st.uniform_int(-99, 99), 1 + st.below(9));
            x[j].canonicalize();
        }
        CHECK(babai_round(t, x) == babai_round(inverse_rational(t), x));
    }
}

TEST_CASE("NearestPlaneSolver matches the one-shot function") {
    rng::Stream st(20260109);
    IntMatrix a = rand_nonsingular(5, 9, st);
    NearestPlaneSolver solver(a);
    for (int rep = 0; rep < 10; ++rep) {
        RatVec t(5);
        for (std::size_t j = 0; j < 5; ++j) {
            t[j] = Rat(st.uniform_int(-30, 30), 1 + st.below(5));
            t[j].canonicalize();
        }
        CHECK(solver.coeffs(t) == babai_nearest_plane(a, t));
        CHECK(solver.point(t) == mul_vec_mat(babai_nearest_plane(a, t), a));
    }
}

TEST_CASE("orthogonality defect of [[1,0],[1,1]] is sqrt(2) on both sides") {
    IntMatrix b(2, 2);
    b(0, 0) = 1;
    b(1, 0) = 1;
    b(1, 1) = 1;
    OdfReport r = odf_report(b);
    CHECK(r.odf == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.odf_dual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.log2_odf == doctest::Approx(0.5).epsilon(1e-12));
    // identity is perfectly orthogonal
    OdfReport id = odf_report(IntMatrix::identity(4));
    CHECK(id.odf == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.odf_dual == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dual basis: rows are biorthogonal and dual of dual returns the basis") {
    rng::Stream st(20260110);
    for (int rep = 0; rep < 15; ++rep) {
        std::size_t n = 1 + st.below(6);
        IntMatrix a = rand_nonsingular(n, 9, st);
        RatMatrix d = dual_basis(a);
        // a * d^T = I
        RatMatrix prod = mul(rat(a), transpose(d));
        prod.canonicalize();
        CHECK(prod.den == 1);
        CHECK(prod.num == IntMatrix::identity(n));
        RatMatrix dd = dual_basis(d);
        dd.canonicalize();
        CHECK(dd.den == 1);
        CHECK(dd.num == a);
    }
}

TEST_CASE("lattice intersection: diag(2,1) meet diag(3,1) is diag(6,1)") {
    IntMatrix a = IntMatrix::identity(2), b = IntMatrix::identity(2);
    a(0, 0) = 2;
    b(0, 0) = 3;
    IntMatrix m = lattice_intersect(a, b);
    IntMatrix want = IntMatrix::identity(2);
    want(0, 0) = 6;
    CHECK(m == want);
}

TEST_CASE("lattice intersection membership, symmetry, self-intersection") {
    rng::Stream st(20260111);
    for (int rep = 0; rep < 12; ++rep) {
        std::size_t n = 2 + st.below(3);
        IntMatrix a = rand_nonsingular(n, 5, st);
        IntMatrix b = rand_nonsingular(n, 5, st);
        IntMatrix m = lattice_intersect(a, b);
        CHECK(is_hnf(m));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(in_lattice(a, m.row(i)));
            CHECK(in_lattice(b, m.row(i)));
        }
        CHECK(lattice_intersect(b, a) == m);
        CHECK(lattice_intersect(a, a) == hnf(a).matrix);
        // lcm(det a, det b) * e_i always lies in the intersection
        Int l;
        Int da = abs(det(a)), db = abs(det(b));
        mpz_lcm(l.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = l;
            IntVec coord;
            CHECK(triangular_coords(m, e, coord));
        }
    }
}

TEST_CASE("svp_exhaustive: membership, nonzero, lll agreement on small random bases") {
    rng::Stream st(20260112);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 2 + st.below(3);
        IntMatrix a = rand_nonsingular(n, 7, st);
        SvpResult sv = svp_exhaustive(a, 4);
        CHECK(sv.vector == mul_vec_mat(sv.coeffs, a));
        CHECK(norm2(sv.vector) == sv.norm2);
        CHECK(sv.norm2 > 0);
        IntMatrix red = lll(a, Rat(99, 100));
        CHECK(sv.norm2 <= norm2(red.row(0)));
        // deterministic: same call, same answer
        SvpResult sv2 = svp_exhaustive(a, 4);
        CHECK(sv2.coeffs == sv.coeffs);
    }
}

TEST_CASE("exhaustive oracles enforce their dimension guards") {
    IntMatrix big = IntMatrix::identity(15);
    CHECK_THROWS_AS(svp_exhaustive(big, 1), DimensionTooLarge);
    IntMatrix big2 = IntMatrix::identity(13);
    RatVec t(13, Rat(1, 3));
    CHECK_THROWS_AS(cvp_exhaustive(big2, t, 1), DimensionTooLarge);
}

TEST_CASE("round_half_away ties go away from zero") {
    CHECK(round_half_away(Rat(1, 2)) == 1);
    CHECK(round_half_away(Rat(-1, 2)) == -1);
    CHECK(round_half_away(Rat(3, 2)) == 2);
    CHECK(round_half_away(Rat(-3, 2)) == -2);
    CHECK(round_half_away(Rat(7, 3)) == 2);
    CHECK(round_half_away(Rat(-7, 3)) == -2);
    CHECK(round_half_away(Rat(0)) == 0);
    CHECK(round_half_away(Int(7), Int(2)) == 4);
    CHECK(round_half_away(Int(-7), Int(2)) == -4);
}

TEST_CASE("matrix text round trip and format rejection") {
    rng::Stream st(20260113);
    IntMatrix a = rand_matrix(4, 99, st);
    std::string txt = to_text(a);
    std::istringstream is(txt);
    CHECK(read_int_matrix(is) == a);
    std::istringstream truncated("3 3 1\n1 2 3\n4 5\n");
    CHECK_THROWS_AS(read_int_matrix(truncated), FormatError);
    std::istringstream rational("2 2 3\n1 2\n3 4\n");
    CHECK_THROWS_AS(read_int_matrix(rational), FormatError);
}
