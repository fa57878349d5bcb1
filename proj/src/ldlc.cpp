#include "ldlcpkc/ldlc.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "ldlcpkc/matrix_core.hpp"

namespace ldlcpkc {

double alpha_of(const LatinSquareParams& params) {
    double h1 = static_cast<double>(params.gen_seq.at(0));
    double s = 0.0;
    for (std::size_t i = 1; i < params.gen_seq.size(); ++i) {
        double h = static_cast<double>(params.gen_seq[i]);
        s += h * h;
    }
    return s / (h1 * h1);
}

void check_params(const LatinSquareParams& params) {
    if (params.d < 2) throw ParameterViolation("ldlc: degree d must be >= 2");
    if (params.d > params.n) throw ParameterViolation("ldlc: degree d exceeds dimension n");
    if (params.gen_seq.size() != params.d)
        throw ParameterViolation("ldlc: gen_seq length must equal d");
    for (std::size_t i = 0; i < params.d; ++i) {
        if (params.gen_seq[i] < 1) throw ParameterViolation("ldlc: gen_seq entries must be >= 1");
        if (i > 0 && params.gen_seq[i] > params.gen_seq[i - 1])
            throw ParameterViolation("ldlc: gen_seq must be non-increasing");
    }
    if (!(alpha_of(params) < 1.0)) throw ParameterViolation("ldlc: alpha must be < 1");
}

IntMatrix SparseParityMatrix::dense() const {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (const SparseEntry& e : rows[i]) m(i, e.index) = e.value;
    return m;
}

void SparseParityMatrix::rebuild_cols() {
    cols.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (const SparseEntry& e : rows[i])
            cols[e.index].push_back(SparseEntry{static_cast<std::uint32_t>(i), e.value});
    for (auto& c : cols)
        std::sort(c.begin(), c.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
}

SparseParityMatrix generate_parity(const LatinSquareParams& params, rng::Stream& stream) {
    check_params(params);
    std::size_t n = params.n;
    SparseParityMatrix h;
    h.n = n;
    h.d = params.d;
    h.rows.assign(n, {});
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    for (std::size_t layer = 0; layer < params.d; ++layer) {
        std::vector<uint32_t> perm;
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            perm = stream.permutation(static_cast<uint32_t>(n));
            placed = true;
            for (std::size_t i = 0; i < n; ++i)
                if (used[i][perm[i]]) {
                    placed = false;
                    break;
                }
        }
        if (!placed) throw GenerationFailure("ldlc: permutation collisions exhausted retries");
        long mag = params.gen_seq[layer];
        for (std::size_t i = 0; i < n; ++i) {
            used[i][perm[i]] = 1;
            long val = stream.coin() ? mag : -mag;
            h.rows[i].push_back(SparseEntry{perm[i], val});
        }
    }
    for (auto& r : h.rows)
        std::sort(r.begin(), r.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    h.rebuild_cols();
    return h;
}

namespace {

void build_code(const LatinSquareParams& params, SparseParityMatrix h, const IntMatrix& dense,
                const Int& dt, LdlcCode& out) {
    RatMatrix inv = inverse_rational(dense);
    Int f, r;
    mpz_tdiv_qr(f.get_mpz_t(), r.get_mpz_t(), dt.get_mpz_t(), inv.den.get_mpz_t());
    if (r != 0) throw Error("ldlc: inverse denominator does not divide det");
    out.params = params;
    out.H = std::move(h);
    out.D = dt;
    out.G_int = scale(inv.num, f);
    IntMatrix check = mul(out.G_int, dense);
    for (std::size_t i = 0; i < dense.rows(); ++i)
        for (std::size_t j = 0; j < dense.cols(); ++j)
            if (check(i, j) != (i == j ? dt : Int(0)))
                throw Error("ldlc: G_int * H != D * I");
    Int dg = 1;
    for (std::size_t i = 0; i + 1 < dense.rows(); ++i) dg *= dt;
    out.det_G_int = dg;
}

// exact integer generator from the parity matrix; false when |det| < 2
bool make_code(const LatinSquareParams& params, SparseParityMatrix h, LdlcCode& out) {
    IntMatrix dense = h.dense();
    Int dt = det(dense);
    if (dt == 0) return false;
    if (dt < 0) {  // negate row 0 so det = +D; the mirrored code is kept as-is
        for (SparseEntry& e : h.rows[0]) e.value = -e.value;
        h.rebuild_cols();
        for (std::size_t j = 0; j < h.n; ++j) dense(0, j) = -dense(0, j);
        dt = -dt;
    }
    if (dt < 2) return false;
    build_code(params, std::move(h), dense, dt, out);
    return true;
}

}  // namespace

LdlcCode code_from_parity(const LatinSquareParams& params, SparseParityMatrix h) {
    check_params(params);
    IntMatrix dense = h.dense();
    Int dt = det(dense);
    if (dt < 2)
        throw GenerationFailure("ldlc: parity matrix must be sign-normalized with det >= 2");
    LdlcCode code;
    build_code(params, std::move(h), dense, dt, code);
    return code;
}

LdlcCode generate(const LatinSquareParams& params) {
    check_params(params);
    rng::Stream stream(rng::derive(params.seed, 0x1d1c));
    LdlcCode code;
    for (int attempt = 0; attempt < 64; ++attempt) {
        SparseParityMatrix h = generate_parity(params, stream);
        if (make_code(params, std::move(h), code)) return code;
    }
    throw GenerationFailure("ldlc: no nonsingular parity matrix with |det| >= 2 found");
}

ValidationReport validate(const SparseParityMatrix& h, const LatinSquareParams& params) {
    ValidationReport rep;
    std::vector<long> want;
    for (long v : params.gen_seq) want.push_back(v);
    std::sort(want.begin(), want.end());

    rep.structure_ok = h.rows.size() == h.n && h.cols.size() == h.n;
    if (rep.structure_ok) {
        std::vector<std::vector<std::pair<uint32_t, long>>> from_rows(h.n);
        for (std::size_t i = 0; i < h.n; ++i)
            for (const SparseEntry& e : h.rows[i]) {
                if (e.index >= h.n || e.value == 0) rep.structure_ok = false;
                else from_rows[e.index].push_back({static_cast<uint32_t>(i), e.value});
            }
        for (std::size_t j = 0; j < h.n && rep.structure_ok; ++j) {
            std::sort(from_rows[j].begin(), from_rows[j].end());
            std::vector<std::pair<uint32_t, long>> have;
            for (const SparseEntry& e : h.cols[j]) have.push_back({e.index, e.value});
            std::sort(have.begin(), have.end());
            if (have != from_rows[j]) rep.structure_ok = false;
        }
    }

    auto degree_and_values = [&](const std::vector<std::vector<SparseEntry>>& lists, bool& deg_ok,
                                 bool& val_ok) {
        deg_ok = val_ok = true;
        for (const auto& lst : lists) {
            if (lst.size() != params.d) deg_ok = false;
            std::vector<long> mags;
            for (const SparseEntry& e : lst) mags.push_back(std::labs(e.value));
            std::sort(mags.begin(), mags.end());
            if (mags != want) val_ok = false;
        }
    };
    degree_and_values(h.rows, rep.row_degrees_ok, rep.row_values_ok);
    degree_and_values(h.cols, rep.col_degrees_ok, rep.col_values_ok);
    rep.alpha_ok = alpha_of(params) < 1.0;
    rep.det = det(h.dense());
    Int a = rep.det;
    mpz_abs(a.get_mpz_t(), a.get_mpz_t());
    rep.det_ok = a >= 2;
    return rep;
}

IntVec encode(const LdlcCode& code, const IntVec& v) {
    if (v.size() != code.params.n) throw DimensionMismatch("encode: length mismatch");
    return mul_vec_mat(v, code.G_int);
}

bool membership(const SparseParityMatrix& h, const RatVec& y) {
    if (y.size() != h.n) return false;
    for (std::size_t j = 0; j < h.n; ++j) {
        Rat s(0);
        for (const SparseEntry& e : h.cols[j]) s += y[e.index] * Rat(e.value);
        s.canonicalize();
        if (s.get_den() != 1) return false;
    }
    return true;
}

bool membership(const LdlcCode& code, const RatVec& y) { return membership(code.H, y); }

void write_sparse(std::ostream& os, const SparseParityMatrix& h) {
    os << h.n << ' ' << h.d << '\n';
    for (std::size_t i = 0; i < h.n; ++i) {
        os << h.rows[i].size();
        for (const SparseEntry& e : h.rows[i]) os << ' ' << e.index << ' ' << e.value;
        os << '\n';
    }
}

SparseParityMatrix read_sparse(std::istream& is) {
    long long n = 0, d = 0;
    if (!(is >> n >> d) || n < 1 || d < 1) throw FormatError("sparse matrix: bad header");
    SparseParityMatrix h;
    h.n = static_cast<std::size_t>(n);
    h.d = static_cast<std::size_t>(d);
    h.rows.assign(h.n, {});
    for (std::size_t i = 0; i < h.n; ++i) {
        long long cnt = 0;
        if (!(is >> cnt) || cnt < 0 || cnt > n) throw FormatError("sparse matrix: bad row count");
        for (long long k = 0; k < cnt; ++k) {
            long long col = 0, val = 0;
            if (!(is >> col >> val)) throw FormatError("sparse matrix: truncated row");
            if (col < 0 || col >= n || val == 0) throw FormatError("sparse matrix: bad entry");
            h.rows[i].push_back(SparseEntry{static_cast<uint32_t>(col), static_cast<long>(val)});
        }
        std::sort(h.rows[i].begin(), h.rows[i].end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
        for (std::size_t k = 1; k < h.rows[i].size(); ++k)
            if (h.rows[i][k].index == h.rows[i][k - 1].index)
                throw FormatError("sparse matrix: duplicate column in row");
    }
    h.rebuild_cols();
    return h;
}

}  // namespace ldlcpkc
