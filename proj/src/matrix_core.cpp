#include "ldlcpkc/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ldlcpkc {

namespace {

double log2_int(const Int& z) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// division that the surrounding algebra guarantees to be exact; checked so a
// broken invariant surfaces as an error instead of silent truncation
Int exdiv(const Int& a, const Int& b) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw Error("exdiv: inexact division");
    return q;
}

void reduce_row_mod(IntVec& r, const Int& m) {
    for (Int& v : r) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
}

bool is_zero_vec(const IntVec& r) {
    for (const Int& v : r)
        if (v != 0) return false;
    return true;
}

struct Scaled {
    IntVec num;
    Int den = 1;
};

Scaled scale_common(const RatVec& t) {
    Scaled s;
    for (const Rat& x : t) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), x.get_den().get_mpz_t());
    s.num.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        s.num[i] = Int(t[i].get_num()) * exdiv(s.den, Int(t[i].get_den()));
    return s;
}

// HNF of a generating set, valid whenever modulus*Z^n lies inside the spanned
// lattice. Columns are cleared right to left with gcd row combinations; rows
// stay reduced into [0, modulus). Each column pivot is folded against
// modulus*e_c through a 2x2 unimodular transform whose second output row
// rejoins the working set, so the span never shrinks.
IntMatrix hnf_core(std::vector<IntVec> rows, std::size_t n, const Int& modulus) {
    if (modulus < 1) throw ParameterViolation("hnf: modulus must be positive");
    for (IntVec& r : rows) reduce_row_mod(r, modulus);
    std::vector<IntVec> pivot(n);
    Int g, u, v, q;
    for (std::size_t cc = n; cc-- > 0;) {
        IntVec* w = nullptr;
        for (IntVec& r : rows) {
            if (r[cc] == 0) continue;
            if (!w) {
                w = &r;
                continue;
            }
            IntVec& a = *w;
            if (mpz_divisible_p(r[cc].get_mpz_t(), a[cc].get_mpz_t())) {
                q = exdiv(r[cc], a[cc]);
                for (std::size_t j = 0; j <= cc; ++j)
                    mpz_submul(r[j].get_mpz_t(), q.get_mpz_t(), a[j].get_mpz_t());
            } else {
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a[cc].get_mpz_t(),
                           r[cc].get_mpz_t());
                Int ag = exdiv(a[cc], g), rg = exdiv(r[cc], g);
                IntVec na(n, Int(0)), nr(n, Int(0));
                for (std::size_t j = 0; j <= cc; ++j) {
                    na[j] = u * a[j] + v * r[j];
                    nr[j] = ag * r[j] - rg * a[j];
                }
                a = std::move(na);  // a[cc] = g
                r = std::move(nr);  // r[cc] = 0; det of the transform is +1
                reduce_row_mod(a, modulus);
            }
            reduce_row_mod(r, modulus);
        }
        if (!w) {
            pivot[cc] = IntVec(n, Int(0));
            pivot[cc][cc] = modulus;
            continue;
        }
        IntVec& a = *w;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a[cc].get_mpz_t(),
                   modulus.get_mpz_t());
        Int mg = exdiv(modulus, g);
        IntVec z1(n, Int(0)), z2(n, Int(0));
        for (std::size_t j = 0; j < cc; ++j) {
            z1[j] = u * a[j];
            z2[j] = -(mg * a[j]);
        }
        z1[cc] = g;  // u*a[cc] + v*modulus
        z2[cc] = 0;  // (a[cc]/g)*modulus - (modulus/g)*a[cc]
        reduce_row_mod(z1, modulus);
        if (z1[cc] == 0) z1[cc] = modulus;  // g == modulus case folds to the top
        reduce_row_mod(z2, modulus);
        pivot[cc] = std::move(z1);
        a = std::move(z2);  // rejoins the working set with column cc cleared
    }
    for (const IntVec& r : rows)
        if (!is_zero_vec(r)) throw Error("hnf: internal nonzero residual row");
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.set_row(i, pivot[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j-- > 0;) {
            mpz_fdiv_q(q.get_mpz_t(), out(i, j).get_mpz_t(), out(j, j).get_mpz_t());
            if (q == 0) continue;
            for (std::size_t c = 0; c <= j; ++c)
                mpz_submul(out(i, c).get_mpz_t(), q.get_mpz_t(), out(j, c).get_mpz_t());
        }
    return out;
}

void certify_membership(const IntMatrix& hnf_out, const IntMatrix& input) {
    IntVec x;
    for (std::size_t i = 0; i < input.rows(); ++i)
        if (!triangular_coords(hnf_out, input.row(i), x))
            throw Error("hnf: result does not span the input rows");
}

}  // namespace

bool triangular_coords(const IntMatrix& t, const IntVec& r, IntVec& x) {
    std::size_t n = t.rows();
    if (t.cols() != n || r.size() != n) throw DimensionMismatch("triangular_coords: shape");
    x.assign(n, Int(0));
    IntVec rem = r;
    for (std::size_t j = n; j-- > 0;) {
        if (t(j, j) == 0) throw SingularMatrix("triangular_coords: zero diagonal");
        if (!mpz_divisible_p(rem[j].get_mpz_t(), t(j, j).get_mpz_t())) return false;
        mpz_divexact(x[j].get_mpz_t(), rem[j].get_mpz_t(), t(j, j).get_mpz_t());
        if (x[j] == 0) continue;
        for (std::size_t c = 0; c <= j; ++c)
            mpz_submul(rem[c].get_mpz_t(), x[j].get_mpz_t(), t(j, c).get_mpz_t());
    }
    return is_zero_vec(rem);
}

IntMatrix solve_right_triangular(const IntMatrix& t, const IntMatrix& b) {
    if (b.cols() != t.rows()) throw DimensionMismatch("solve_right_triangular: shape");
    IntMatrix x(b.rows(), t.rows());
    IntVec xi;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (!triangular_coords(t, b.row(i), xi))
            throw Error("solve_right_triangular: no exact solution");
        x.set_row(i, xi);
    }
    return x;
}

IntMatrix hnf_matrix(const IntMatrix& a, const Int& modulus) {
    if (a.rows() != a.cols()) throw DimensionMismatch("hnf: matrix not square");
    Int m = modulus;
    if (m == 0) {
        m = det(a);
        if (m == 0) throw SingularMatrix("hnf: singular matrix");
        mpz_abs(m.get_mpz_t(), m.get_mpz_t());
    }
    std::vector<IntVec> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = a.row(i);
    IntMatrix t = hnf_core(std::move(rows), a.cols(), m);
    certify_membership(t, a);
    return t;
}

HnfBasis hnf(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("hnf: matrix not square");
    Int d = det(a);
    if (d == 0) throw SingularMatrix("hnf: singular matrix");
    Int m;
    mpz_abs(m.get_mpz_t(), d.get_mpz_t());
    std::vector<IntVec> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = a.row(i);
    IntMatrix t = hnf_core(std::move(rows), a.cols(), m);
    certify_membership(t, a);
    Int prod = 1;
    for (std::size_t i = 0; i < t.rows(); ++i) prod *= t(i, i);
    if (prod != m) throw Error("hnf: diagonal product mismatch");
    RatMatrix u = mul(rat(t), inverse_rational(a));
    if (!u.is_integral()) throw Error("hnf: transform not integral");
    return HnfBasis{std::move(t), std::move(u.num)};
}

IntMatrix hnf_stack(const IntMatrix& stack, const Int& modulus) {
    std::vector<IntVec> rows(stack.rows());
    for (std::size_t i = 0; i < stack.rows(); ++i) rows[i] = stack.row(i);
    IntMatrix t = hnf_core(std::move(rows), stack.cols(), modulus);
    certify_membership(t, stack);
    return t;
}

bool is_hnf(const IntMatrix& a) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i) < 1) return false;
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (a(i, j) < 0 || a(i, j) >= a(j, j)) return false;
    }
    return true;
}

IntegralGS integral_gs(const IntMatrix& basis) {
    std::size_t n = basis.rows();
    IntegralGS gs;
    gs.dd.assign(n + 1, Int(0));
    gs.dd[0] = 1;
    gs.lam.assign(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Int u = dot(basis.row(i), basis.row(j));
            for (std::size_t k = 0; k < j; ++k)
                u = exdiv(gs.dd[k + 1] * u - gs.lam[i][k] * gs.lam[j][k], gs.dd[k]);
            if (j < i)
                gs.lam[i][j] = u;
            else
                gs.dd[i + 1] = u;
        }
        if (gs.dd[i + 1] <= 0) throw SingularMatrix("integral_gs: rows not independent");
    }
    return gs;
}

IntMatrix lll(const IntMatrix& basis, const Rat& delta) {
    Rat dl = delta;
    dl.canonicalize();
    if (!(dl > Rat(1, 4) && dl < 1)) throw ParameterViolation("lll: delta outside (1/4, 1)");
    Int p(dl.get_num()), q(dl.get_den());
    std::size_t n = basis.rows();
    IntMatrix b = basis;
    if (n <= 1) {
        if (n == 1 && norm2(b.row(0)) == 0) throw SingularMatrix("lll: zero row");
        return b;
    }
    std::vector<Int> dd(n + 1, Int(0));
    std::vector<IntVec> lam(n, IntVec(n, Int(0)));
    dd[0] = 1;
    dd[1] = norm2(b.row(0));
    if (dd[1] == 0) throw SingularMatrix("lll: dependent rows");

    Int qq;
    auto red = [&](std::size_t k, std::size_t l) {
        Int twice = 2 * lam[k][l];
        mpz_abs(twice.get_mpz_t(), twice.get_mpz_t());
        if (twice <= dd[l + 1]) return;
        qq = round_half_away(lam[k][l], dd[l + 1]);
        for (std::size_t j = 0; j < b.cols(); ++j)
            mpz_submul(b(k, j).get_mpz_t(), qq.get_mpz_t(), b(l, j).get_mpz_t());
        lam[k][l] -= qq * dd[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= qq * lam[l][i];
    };

    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                Int u = dot(b.row(k), b.row(j));
                for (std::size_t i = 0; i < j; ++i)
                    u = exdiv(dd[i + 1] * u - lam[k][i] * lam[j][i], dd[i]);
                if (j < k)
                    lam[k][j] = u;
                else
                    dd[k + 1] = u;
            }
            if (dd[k + 1] <= 0) throw SingularMatrix("lll: dependent rows");
        }
        for (;;) {
            red(k, k - 1);
            // swap iff q*d_k*d_{k-2} < p*d_{k-1}^2 - q*lam^2 (Lovasz with delta = p/q)
            Int lhs = q * dd[k + 1] * dd[k - 1];
            Int rhs = p * dd[k] * dd[k] - q * lam[k][k - 1] * lam[k][k - 1];
            if (lhs < rhs) {
                b.swap_rows(k, k - 1);
                for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
                Int l0 = lam[k][k - 1];
                Int bb = exdiv(dd[k - 1] * dd[k + 1] + l0 * l0, dd[k]);
                for (std::size_t i = k + 1; i <= kmax; ++i) {
                    Int t = lam[i][k];
                    lam[i][k] = exdiv(dd[k + 1] * lam[i][k - 1] - l0 * t, dd[k]);
                    lam[i][k - 1] = exdiv(bb * t + l0 * lam[i][k], dd[k + 1]);
                }
                dd[k] = bb;
                k = std::max<std::size_t>(k - 1, 1);
                continue;
            }
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
            break;
        }
    }
    return b;
}

IntVec babai_round(const RatMatrix& basis_inv, const RatVec& t) {
    if (t.size() != basis_inv.rows()) throw DimensionMismatch("babai_round: length");
    Scaled s = scale_common(t);
    Int den = s.den * basis_inv.den;
    IntVec num = mul_vec_mat(s.num, basis_inv.num);
    IntVec out(num.size());
    for (std::size_t j = 0; j < num.size(); ++j) out[j] = round_half_away(num[j], den);
    return out;
}

namespace {

bool lower_triangular_nonsingular(const IntMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i) == 0) return false;
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    }
    return true;
}

}  // namespace

IntVec babai_round(const IntMatrix& basis, const RatVec& t) {
    // triangular bases (HNF public keys) solve by substitution, no inverse
    if (lower_triangular_nonsingular(basis)) {
        std::size_t n = basis.rows();
        if (t.size() != n) throw DimensionMismatch("babai_round: length");
        RatVec y(n);
        IntVec out(n);
        for (std::size_t j = n; j-- > 0;) {
            Rat acc = t[j];
            for (std::size_t i = j + 1; i < n; ++i)
                if (basis(i, j) != 0) acc -= y[i] * Rat(basis(i, j));
            y[j] = acc / Rat(basis(j, j));
            out[j] = round_half_away(y[j]);
        }
        return out;
    }
    return babai_round(inverse_rational(basis), t);
}

IntVec babai_round(const IntMatrix& basis, const IntVec& t) {
    return babai_round(basis, rat_vec(t));
}

namespace {

IntVec nearest_plane_core(const IntMatrix& basis, const IntegralGS& gs, const RatVec& t) {
    std::size_t n = basis.rows();
    if (t.size() != basis.cols()) throw DimensionMismatch("babai_nearest_plane: length");
    Scaled s = scale_common(t);
    IntVec lamt(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int u = dot(s.num, basis.row(j));
        for (std::size_t i = 0; i < j; ++i)
            u = exdiv(gs.dd[i + 1] * u - lamt[i] * gs.lam[j][i], gs.dd[i]);
        lamt[j] = u;
    }
    IntVec c(n);
    for (std::size_t i = n; i-- > 0;) {
        Int num = lamt[i];
        for (std::size_t j = i + 1; j < n; ++j) num -= c[j] * gs.lam[j][i] * s.den;
        c[i] = round_half_away(num, s.den * gs.dd[i + 1]);
    }
    return c;
}

}  // namespace

IntVec babai_nearest_plane(const IntMatrix& basis, const RatVec& t) {
    return nearest_plane_core(basis, integral_gs(basis), t);
}

IntVec babai_nearest_plane(const IntMatrix& basis, const IntVec& t) {
    return babai_nearest_plane(basis, rat_vec(t));
}

NearestPlaneSolver::NearestPlaneSolver(IntMatrix basis)
    : basis_(std::move(basis)), gs_(integral_gs(basis_)) {}

IntVec NearestPlaneSolver::coeffs(const RatVec& t) const {
    return nearest_plane_core(basis_, gs_, t);
}

IntVec NearestPlaneSolver::point(const RatVec& t) const {
    return mul_vec_mat(coeffs(t), basis_);
}

OdfReport odf_report(const IntMatrix& basis) {
    Int d = det(basis);
    if (d == 0) throw SingularMatrix("odf_report: singular matrix");
    double log2_det = log2_int(d);
    double sum_rows = 0.0;
    for (std::size_t i = 0; i < basis.rows(); ++i) sum_rows += 0.5 * log2_int(norm2(basis.row(i)));
    RatMatrix dual = dual_basis(basis);
    double log2_den = log2_int(dual.den);
    double sum_dual = 0.0;
    for (std::size_t i = 0; i < dual.rows(); ++i)
        sum_dual += 0.5 * log2_int(norm2(dual.num.row(i))) - log2_den;
    OdfReport r;
    r.log2_odf = sum_rows - log2_det;
    r.log2_odf_dual = sum_dual + log2_det;
    r.odf = std::exp2(r.log2_odf);
    r.odf_dual = std::exp2(r.log2_odf_dual);
    return r;
}

RatMatrix dual_basis(const IntMatrix& basis) {
    RatMatrix inv = inverse_rational(basis);
    return RatMatrix{transpose(inv.num), inv.den};
}

RatMatrix dual_basis(const RatMatrix& basis) {
    RatMatrix inv = inverse_rational(basis);
    return RatMatrix{transpose(inv.num), inv.den};
}

IntMatrix lattice_intersect(const IntMatrix& b1, const IntMatrix& b2) {
    std::size_t n = b1.rows();
    if (b1.cols() != n || b2.rows() != n || b2.cols() != n)
        throw DimensionMismatch("lattice_intersect: need square bases of equal dimension");
    RatMatrix d1 = dual_basis(b1), d2 = dual_basis(b2);
    Int l;
    mpz_lcm(l.get_mpz_t(), d1.den.get_mpz_t(), d2.den.get_mpz_t());
    IntMatrix n1 = scale(d1.num, exdiv(l, d1.den));
    IntMatrix n2 = scale(d2.num, exdiv(l, d2.den));
    IntMatrix stack(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        stack.set_row(i, n1.row(i));
        stack.set_row(n + i, n2.row(i));
    }
    Int mod = det(n1);
    mpz_abs(mod.get_mpz_t(), mod.get_mpz_t());
    IntMatrix w = hnf_stack(stack, mod);  // dual of the sum, scaled by l
    RatMatrix inv = inverse_rational(w);
    RatMatrix meet{transpose(scale(inv.num, l)), inv.den};
    meet.canonicalize();
    if (!meet.is_integral()) throw Error("lattice_intersect: non-integral result");
    IntMatrix out = hnf_matrix(meet.num);
    RatMatrix i1 = inverse_rational(b1), i2 = inverse_rational(b2);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec r1 = mul_vec_mat(out.row(i), i1.num), r2 = mul_vec_mat(out.row(i), i2.num);
        for (std::size_t j = 0; j < n; ++j)
            if (!mpz_divisible_p(r1[j].get_mpz_t(), i1.den.get_mpz_t()) ||
                !mpz_divisible_p(r2[j].get_mpz_t(), i2.den.get_mpz_t()))
                throw Error("lattice_intersect: row escapes an input lattice");
    }
    return out;
}

SvpResult svp_exhaustive(const IntMatrix& basis, long coeff_bound) {
    std::size_t n = basis.rows();
    if (n > 14) throw DimensionTooLarge("svp_exhaustive: n > 14");
    if (coeff_bound < 1) throw ParameterViolation("svp_exhaustive: bound < 1");
    IntegralGS gs = integral_gs(basis);
    std::vector<long> x(n, -coeff_bound);
    IntVec v(basis.cols(), Int(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) v[j] += basis(i, j) * (-coeff_bound);
    SvpResult best;
    bool have = false;
    for (;;) {
        Int nn = norm2(v);
        if (nn != 0 && (!have || nn < best.norm2)) {
            have = true;
            best.norm2 = nn;
            best.coeffs.assign(x.begin(), x.end());
            best.vector = v;
        }
        bool advanced = false;
        for (std::size_t j = n; j-- > 0;) {
            if (x[j] < coeff_bound) {
                ++x[j];
                for (std::size_t c = 0; c < basis.cols(); ++c) v[c] += basis(j, c);
                advanced = true;
                break;
            }
            x[j] = -coeff_bound;
            for (std::size_t c = 0; c < basis.cols(); ++c) v[c] -= basis(j, c) * (2 * coeff_bound);
        }
        if (!advanced) break;
    }
    if (!have) throw Error("svp_exhaustive: empty search");
    Rat min_gs(gs.dd[1], gs.dd[0]);
    min_gs.canonicalize();
    for (std::size_t i = 1; i < n; ++i) {
        Rat g(gs.dd[i + 1], gs.dd[i]);
        g.canonicalize();
        if (g < min_gs) min_gs = g;
    }
    best.bound_certified = Rat(best.norm2) < Rat(coeff_bound) * Rat(coeff_bound) * min_gs;
    best.norm = std::sqrt(to_double(Rat(best.norm2)));
    return best;
}

CvpResult cvp_exhaustive(const IntMatrix& basis, const RatVec& t, long window) {
    std::size_t n = basis.rows();
    if (n > 12) throw DimensionTooLarge("cvp_exhaustive: n > 12");
    if (window < 0) throw ParameterViolation("cvp_exhaustive: negative window");
    IntegralGS gs = integral_gs(basis);
    IntVec v0 = babai_round(basis, t);
    Scaled s = scale_common(t);
    // u tracks den*(v*B) - den*t; squared distance is norm2(u)/den^2
    IntVec center = mul_vec_mat(v0, basis);
    IntVec u(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) u[j] = center[j] * s.den - s.num[j];
    IntMatrix mb = scale(basis, s.den);
    std::vector<long> o(n, -window);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) u[j] += mb(i, j) * (-window);
    std::vector<long> best_o;
    Int best_sq;
    bool have = false;
    for (;;) {
        Int sq = norm2(u);
        if (!have || sq < best_sq) {
            have = true;
            best_sq = sq;
            best_o = o;
        }
        bool advanced = false;
        for (std::size_t j = n; j-- > 0;) {
            if (o[j] < window) {
                ++o[j];
                for (std::size_t c = 0; c < basis.cols(); ++c) u[c] += mb(j, c);
                advanced = true;
                break;
            }
            o[j] = -window;
            for (std::size_t c = 0; c < basis.cols(); ++c) u[c] -= mb(j, c) * (2 * window);
        }
        if (!advanced) break;
    }
    CvpResult r;
    r.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.coeffs[i] = v0[i] + best_o[i];
    r.vector = mul_vec_mat(r.coeffs, basis);
    r.dist2 = Rat(best_sq, s.den * s.den);
    r.dist2.canonicalize();
    Rat min_gs(gs.dd[1], gs.dd[0]);
    min_gs.canonicalize();
    for (std::size_t i = 1; i < n; ++i) {
        Rat g(gs.dd[i + 1], gs.dd[i]);
        g.canonicalize();
        if (g < min_gs) min_gs = g;
    }
    r.window_certified = r.dist2 < Rat(window) * Rat(window) * min_gs;
    return r;
}

RatVec rat_vec(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

RatVec rat_vec(const std::vector<double>& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = rat_of_double(v[i]);
    return r;
}

}  // namespace ldlcpkc
