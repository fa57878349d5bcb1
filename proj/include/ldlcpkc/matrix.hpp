#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldlcpkc/errors.hpp"

namespace ldlcpkc {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense row-major integer matrix. Row convention throughout: lattice vectors
// are rows, v = x * B maps coefficient rows to lattice rows.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec row(std::size_t i) const {
        return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void set_row(std::size_t i, const IntVec& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Rational matrix held as integer matrix over one common positive denominator.
struct RatMatrix {
    IntMatrix num;
    Int den = 1;

    std::size_t rows() const { return num.rows(); }
    std::size_t cols() const { return num.cols(); }
    Rat at(std::size_t i, std::size_t j) const {
        Rat r(num(i, j), den);
        r.canonicalize();
        return r;
    }
    // divide out gcd of all entries and the denominator; den > 0 afterwards
    void canonicalize();
    bool is_integral() const { return den == 1; }
};

IntMatrix transpose(const IntMatrix& a);
IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix add(const IntMatrix& a, const IntMatrix& b);
IntMatrix sub(const IntMatrix& a, const IntMatrix& b);
IntMatrix neg(const IntMatrix& a);
IntMatrix scale(const IntMatrix& a, const Int& c);
inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mul(a, b); }

RatMatrix mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);
inline RatMatrix rat(const IntMatrix& a) { return RatMatrix{a, 1}; }

IntVec mul_vec_mat(const IntVec& x, const IntMatrix& b);  // row vector times matrix
RatVec mul_vec_mat(const RatVec& x, const RatMatrix& b);
IntVec add_vec(const IntVec& a, const IntVec& b);
IntVec sub_vec(const IntVec& a, const IntVec& b);
Int dot(const IntVec& a, const IntVec& b);
Int norm2(const IntVec& a);

// determinant by fraction-free Bareiss elimination; 0 for singular input
Int det(const IntMatrix& a);

// exact inverse by rational Gauss-Jordan; throws SingularMatrix
RatMatrix inverse_rational(const IntMatrix& a);
RatMatrix inverse_rational(const RatMatrix& a);

// nearest integer, ties away from zero
Int round_half_away(const Rat& x);
Int round_half_away(const Int& num, const Int& den);  // den > 0

// Text format: "rows cols denominator" header line, then one row of numerators
// per line, decimal, space separated.
void write_matrix(std::ostream& os, const RatMatrix& m);
void write_matrix(std::ostream& os, const IntMatrix& m);
RatMatrix read_matrix(std::istream& is);  // throws FormatError
IntMatrix read_int_matrix(std::istream& is);  // throws FormatError on den != 1

std::string to_text(const IntMatrix& m);
std::string to_text(const RatMatrix& m);

// exact conversion of a (finite, dyadic) double
Rat rat_of_double(double x);
double to_double(const Rat& x);

}  // namespace ldlcpkc
