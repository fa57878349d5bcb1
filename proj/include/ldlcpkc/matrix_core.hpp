#pragma once

#include <cstdint>
#include <vector>

#include "ldlcpkc/matrix.hpp"

namespace ldlcpkc {

// Lower-triangular row-form Hermite normal form: matrix = U * input with U
// unimodular, zeros above the diagonal, diagonal >= 1, and for i > j
// 0 <= matrix(i,j) < matrix(j,j).
struct HnfBasis {
    IntMatrix matrix;
    IntMatrix U;
};

HnfBasis hnf(const IntMatrix& a);  // square nonsingular; throws SingularMatrix

// HNF without the transform. `modulus`, when nonzero, must be a positive
// integer M with M*Z^n contained in the row lattice of `a` (|det a| always
// qualifies; 0 means: compute |det a| internally).
IntMatrix hnf_matrix(const IntMatrix& a, const Int& modulus = 0);

// HNF of a stacked generating set (k*n rows, n columns) spanning a full-rank
// lattice that contains modulus*Z^n.
IntMatrix hnf_stack(const IntMatrix& stack, const Int& modulus);

bool is_hnf(const IntMatrix& a);

// Solve X * T = B exactly for lower-triangular nonsingular T; throws
// SingularMatrix on zero diagonal, DimensionMismatch, or FormatError-free
// failure via return flag variant below.
IntMatrix solve_right_triangular(const IntMatrix& t, const IntMatrix& b);
// coefficient row x with x * T = r, or false if r is not in the row span
bool triangular_coords(const IntMatrix& t, const IntVec& r, IntVec& x);

// Integral Gram-Schmidt data: dd[0] = 1, dd[i+1] = det of the Gram matrix of
// the first i+1 rows, lam[i][j] = dd[j+1] * mu_{i,j} for j < i.
struct IntegralGS {
    std::vector<Int> dd;
    std::vector<IntVec> lam;
};
IntegralGS integral_gs(const IntMatrix& basis);

// LLL reduction with exact integer arithmetic; delta in (1/4, 1).
IntMatrix lll(const IntMatrix& basis, const Rat& delta = Rat(99, 100));

// round(t * B^-1) with ties away from zero; returns the coefficient vector.
IntVec babai_round(const IntMatrix& basis, const RatVec& t);
IntVec babai_round(const IntMatrix& basis, const IntVec& t);
IntVec babai_round(const RatMatrix& basis_inv, const RatVec& t);

// Babai nearest-plane coefficients against the given (ideally reduced) basis.
IntVec babai_nearest_plane(const IntMatrix& basis, const RatVec& t);
IntVec babai_nearest_plane(const IntMatrix& basis, const IntVec& t);

// Precomputes the integral Gram-Schmidt tables once for many targets.
class NearestPlaneSolver {
  public:
    explicit NearestPlaneSolver(IntMatrix basis);
    IntVec coeffs(const RatVec& t) const;
    IntVec point(const RatVec& t) const;  // coeffs * basis
    const IntMatrix& basis() const { return basis_; }

  private:
    IntMatrix basis_;
    IntegralGS gs_;
};

// Orthogonality defect |det B^-1| * prod ||b_i|| and its dual counterpart
// |det B| * prod ||b*_i|| over the dual basis rows.
struct OdfReport {
    double odf = 0.0;
    double odf_dual = 0.0;
    double log2_odf = 0.0;
    double log2_odf_dual = 0.0;
};
OdfReport odf_report(const IntMatrix& basis);

RatMatrix dual_basis(const IntMatrix& basis);  // B^-T
RatMatrix dual_basis(const RatMatrix& basis);

// Exact intersection of two full-rank integer lattices via duals: stack the
// duals over a common denominator, HNF the stack (the dual of the sum), then
// dualize back. Result is in canonical HNF.
IntMatrix lattice_intersect(const IntMatrix& b1, const IntMatrix& b2);

struct SvpResult {
    IntVec coeffs;
    IntVec vector;
    Int norm2;
    double norm = 0.0;
    bool bound_certified = false;
};
// exhaustive shortest vector over coefficients in [-coeff_bound, coeff_bound]^n
SvpResult svp_exhaustive(const IntMatrix& basis, long coeff_bound);  // n <= 14

struct CvpResult {
    IntVec coeffs;
    IntVec vector;
    Rat dist2;
    bool window_certified = false;
};
// exhaustive closest vector over the box of half-width `window` centered at
// the babai_round coefficients; ties broken by lexicographic coefficient order
CvpResult cvp_exhaustive(const IntMatrix& basis, const RatVec& t, long window);  // n <= 12

RatVec rat_vec(const IntVec& v);
RatVec rat_vec(const std::vector<double>& v);

}  // namespace ldlcpkc
