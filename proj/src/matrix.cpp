#include "ldlcpkc/matrix.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace ldlcpkc {

void RatMatrix::canonicalize() {
    if (den == 0) throw SingularMatrix("zero denominator");
    if (den < 0) {
        den = -den;
        num = ldlcpkc::neg(num);
    }
    Int g = den;
    for (std::size_t i = 0; i < num.rows() && g != 1; ++i)
        for (std::size_t j = 0; j < num.cols() && g != 1; ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num(i, j).get_mpz_t());
    if (g > 1) {
        for (std::size_t i = 0; i < num.rows(); ++i)
            for (std::size_t j = 0; j < num.cols(); ++j)
                mpz_divexact(num(i, j).get_mpz_t(), num(i, j).get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
}

IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mul: inner dimensions differ");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
        }
    return c;
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shapes differ");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sub: shapes differ");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntMatrix neg(const IntMatrix& a) {
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    return c;
}

IntMatrix scale(const IntMatrix& a, const Int& c) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * c;
    return r;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix r{mul(a.num, b.num), a.den * b.den};
    r.canonicalize();
    return r;
}

RatMatrix transpose(const RatMatrix& a) { return RatMatrix{transpose(a.num), a.den}; }

IntVec mul_vec_mat(const IntVec& x, const IntMatrix& b) {
    if (x.size() != b.rows()) throw DimensionMismatch("mul_vec_mat: length mismatch");
    IntVec r(b.cols());
    for (std::size_t k = 0; k < b.rows(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j)
            mpz_addmul(r[j].get_mpz_t(), x[k].get_mpz_t(), b(k, j).get_mpz_t());
    }
    return r;
}

RatVec mul_vec_mat(const RatVec& x, const RatMatrix& b) {
    if (x.size() != b.rows()) throw DimensionMismatch("mul_vec_mat: length mismatch");
    RatVec r(b.cols(), Rat(0));
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) r[j] += x[k] * b.at(k, j);
    return r;
}

IntVec add_vec(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add_vec: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub_vec(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub_vec: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

Int norm2(const IntVec& a) { return dot(a, a); }

Int det(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("det: matrix not square");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1, t = 0;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            m.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // m[i][j] <- (m[i][j]*m[k][k] - m[i][k]*m[k][j]) / prev, exact
                mpz_mul(t.get_mpz_t(), m(i, j).get_mpz_t(), m(k, k).get_mpz_t());
                mpz_submul(t.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Int d = m(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

RatMatrix inverse_rational(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("inverse: matrix not square");
    std::size_t n = a.rows();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a(i, j));
        m[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) throw SingularMatrix("inverse: singular matrix");
        if (p != k) std::swap(m[p], m[k]);
        Rat inv_piv = 1 / m[k][k];
        for (std::size_t j = k; j < 2 * n; ++j) m[k][j] *= inv_piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat f = m[i][k];
            for (std::size_t j = k; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    Int L = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), m[i][n + j].get_den().get_mpz_t());
    RatMatrix r{IntMatrix(n, n), L};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = m[i][n + j] * L;
            r.num(i, j) = v.get_num();  // v is integral: L is a common denominator
        }
    r.canonicalize();
    return r;
}

RatMatrix inverse_rational(const RatMatrix& a) {
    RatMatrix inv = inverse_rational(a.num);  // (N/d)^-1 = d * N^-1
    inv.num = scale(inv.num, a.den);
    inv.canonicalize();
    return inv;
}

Int round_half_away(const Int& num, const Int& den) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = 2 * r;
    if (twice > den) return q + 1;
    if (twice < den) return q;
    return q >= 0 ? q + 1 : q;  // tie x = q + 1/2, away from zero
}

Int round_half_away(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    return round_half_away(Int(c.get_num()), Int(c.get_den()));
}

void write_matrix(std::ostream& os, const RatMatrix& m) {
    RatMatrix c = m;
    c.canonicalize();
    os << c.rows() << ' ' << c.cols() << ' ' << c.den << '\n';
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            if (j) os << ' ';
            os << c.num(i, j);
        }
        os << '\n';
    }
}

void write_matrix(std::ostream& os, const IntMatrix& m) { write_matrix(os, RatMatrix{m, 1}); }

RatMatrix read_matrix(std::istream& is) {
    long long rows = 0, cols = 0;
    Int den;
    if (!(is >> rows >> cols >> den)) throw FormatError("matrix: bad header");
    if (rows < 1 || cols < 1) throw FormatError("matrix: non-positive shape");
    if (den < 1) throw FormatError("matrix: non-positive denominator");
    RatMatrix m{IntMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)), den};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!(is >> m.num(i, j))) throw FormatError("matrix: truncated entries");
    m.canonicalize();
    return m;
}

IntMatrix read_int_matrix(std::istream& is) {
    RatMatrix m = read_matrix(is);
    if (!m.is_integral()) throw FormatError("matrix: expected integral entries");
    return m.num;
}

std::string to_text(const IntMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

std::string to_text(const RatMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw NonFinite("rat_of_double: non-finite input");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

double to_double(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

}  // namespace ldlcpkc
