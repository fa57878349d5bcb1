#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ldlcpkc/matrix.hpp"
#include "ldlcpkc/rng.hpp"

namespace ldlcpkc {

// Latin-square code parameters: the degree-d generating sequence
// h_1 >= h_2 >= ... >= h_d >= 1 with alpha = sum_{i>=2} h_i^2 / h_1^2 < 1.
struct LatinSquareParams {
    std::size_t n = 0;
    std::size_t d = 3;
    std::vector<long> gen_seq = {2, 1, 1};
    std::uint64_t seed = 0;
};

double alpha_of(const LatinSquareParams& params);
void check_params(const LatinSquareParams& params);  // throws ParameterViolation

struct SparseEntry {
    std::uint32_t index;  // column in a row list, row in a column list
    long value;
};

// Sparse Latin-square parity matrix: d nonzeros per row and per column, the
// magnitude multiset of every row and column equal to gen_seq.
struct SparseParityMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<SparseEntry>> rows;  // (column, value), sorted by column
    std::vector<std::vector<SparseEntry>> cols;  // (row, value), sorted by row

    IntMatrix dense() const;
    void rebuild_cols();
};

struct LdlcCode {
    LatinSquareParams params;
    SparseParityMatrix H;
    Int D;               // |det H|, sign-normalized so det(dense H) = +D
    IntMatrix G_int;     // D * H^-1, exact integers; G_int * H = D * I
    Int det_G_int;       // D^(n-1)
};

// Places one signed generalized permutation per sequence entry, resampling a
// permutation on position collisions (retry budget 64 per layer).
SparseParityMatrix generate_parity(const LatinSquareParams& params, rng::Stream& stream);

// Full construction: parity matrix, determinant (resampling until |det| >= 2,
// retry budget 64), sign normalization, exact integer generator.
LdlcCode generate(const LatinSquareParams& params);

// Code from an already sign-normalized parity matrix (det >= 2 required);
// used when loading secret keys. Throws GenerationFailure otherwise.
LdlcCode code_from_parity(const LatinSquareParams& params, SparseParityMatrix h);

struct ValidationReport {
    bool structure_ok = false;      // row/column lists mutually consistent
    bool row_degrees_ok = false;
    bool col_degrees_ok = false;
    bool row_values_ok = false;     // magnitude multiset equals gen_seq
    bool col_values_ok = false;
    bool alpha_ok = false;
    bool det_ok = false;            // |det| >= 2
    Int det;
    bool all() const {
        return structure_ok && row_degrees_ok && col_degrees_ok && row_values_ok &&
               col_values_ok && alpha_ok && det_ok;
    }
};
ValidationReport validate(const SparseParityMatrix& h, const LatinSquareParams& params);

IntVec encode(const LdlcCode& code, const IntVec& v);  // v * G_int

// true iff y * H is integral, i.e. y lies in the code lattice L(G_int)/D
bool membership(const LdlcCode& code, const RatVec& y);
bool membership(const SparseParityMatrix& h, const RatVec& y);

// Text format: "n d" header, then one line per row: degree followed by
// (column, value) pairs, decimal, 0-based columns.
void write_sparse(std::ostream& os, const SparseParityMatrix& h);
SparseParityMatrix read_sparse(std::istream& is);  // throws FormatError

}  // namespace ldlcpkc
