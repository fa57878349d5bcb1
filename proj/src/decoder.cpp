#include "ldlcpkc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ldlcpkc {

double PdfGrid::mass() const {
    double s = 0.0;
    for (double v : samples) s += v;
    return s * delta;
}

void PdfGrid::normalize() {
    double m = mass();
    if (!(m > 0.0) || !std::isfinite(m)) {
        double flat = 1.0 / (delta * static_cast<double>(samples.size()));
        for (double& v : samples) v = flat;
        return;
    }
    for (double& v : samples) v /= m;
}

PdfGrid gaussian_grid(double center, double sigma2, double delta, double half_width) {
    if (!(sigma2 > 0.0) || !(delta > 0.0) || !(half_width > 0.0))
        throw ConfigViolation("gaussian_grid: need positive sigma2, delta, half_width");
    std::size_t k = static_cast<std::size_t>(std::llround(half_width / delta));
    PdfGrid g;
    g.center = center;
    g.delta = delta;
    g.half_width = half_width;
    g.samples.resize(2 * k + 1);
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        double x = (static_cast<double>(i) - static_cast<double>(k)) * delta;
        g.samples[i] = std::exp(-x * x / (2.0 * sigma2));
    }
    g.normalize();
    return g;
}

DecoderConfig resolve_config(const DecoderConfig& cfg, double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw ConfigViolation("decoder: sigma2 must be positive and finite");
    DecoderConfig out = cfg;
    if (out.delta == 0.0) out.delta = std::min(1.0 / 64.0, std::sqrt(sigma2) / 8.0);
    if (!(out.delta > 0.0)) throw ConfigViolation("decoder: delta must be positive");
    if (!(out.half_width >= 1.0)) throw ConfigViolation("decoder: half_width must be >= 1");
    if (out.max_iterations < 1) throw ConfigViolation("decoder: max_iterations must be >= 1");
    if (out.stability_window < 1) throw ConfigViolation("decoder: stability_window must be >= 1");
    if (out.jobs < 1) throw ConfigViolation("decoder: jobs must be >= 1");
    return out;
}

namespace {

// contiguous window of a pdf sampled at the shared grid spacing
struct Win {
    double org = 0.0;  // position of v[0]
    std::vector<double> v;
};

void win_normalize(Win& w, double delta) {
    double s = 0.0;
    for (double x : w.v) s += x;
    s *= delta;
    if (!(s > 0.0) || !std::isfinite(s)) {
        double flat = 1.0 / (delta * static_cast<double>(w.v.size()));
        for (double& x : w.v) x = flat;
        return;
    }
    for (double& x : w.v) x /= s;
}

double win_sample(const Win& w, double pos, double delta) {
    double u = (pos - w.org) / delta;
    long lsize = static_cast<long>(w.v.size());
    if (u <= -1.0 || u >= static_cast<double>(lsize)) return 0.0;
    double fl = std::floor(u);
    long i = static_cast<long>(fl);
    double f = u - fl;
    double lo = (i >= 0 && i < lsize) ? w.v[i] : 0.0;
    double hi = (i + 1 >= 0 && i + 1 < lsize) ? w.v[i + 1] : 0.0;
    return lo * (1.0 - f) + hi * f;
}

// pdf of a*X for integer a != 0, resampled onto the shared spacing
Win stretch(const Win& w, long a, double delta) {
    std::size_t lsrc = w.v.size();
    long aa = std::labs(a);
    Win out;
    out.v.assign(static_cast<std::size_t>(aa) * (lsrc - 1) + 1, 0.0);
    out.org = a > 0 ? a * w.org : a * (w.org + static_cast<double>(lsrc - 1) * delta);
    double scale = 1.0 / static_cast<double>(aa);
    for (std::size_t m = 0; m < out.v.size(); ++m) {
        double u = static_cast<double>(m) / static_cast<double>(aa);
        if (a < 0) u = static_cast<double>(lsrc - 1) - u;
        double fl = std::floor(u);
        long i = static_cast<long>(fl);
        double f = u - fl;
        double lo = (i >= 0 && i < static_cast<long>(lsrc)) ? w.v[i] : 0.0;
        double hi = (i + 1 >= 0 && i + 1 < static_cast<long>(lsrc)) ? w.v[i + 1] : 0.0;
        out.v[m] = (lo * (1.0 - f) + hi * f) * scale;
    }
    return out;
}

Win convolve(const Win& x, const Win& y, double delta) {
    Win out;
    out.org = x.org + y.org;
    out.v.assign(x.v.size() + y.v.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.v.size(); ++i) {
        double xv = x.v[i];
        if (xv == 0.0) continue;
        for (std::size_t j = 0; j < y.v.size(); ++j) out.v[i + j] += xv * y.v[j];
    }
    for (double& t : out.v) t *= delta;
    return out;
}

// r(y) = sum_b s(b - a*y) on the target window; the fractional part of the
// index into s is constant along k because a and the grids share the spacing
Win periodize(const Win& s, long a, double t_org, std::size_t len, double delta) {
    Win out;
    out.org = t_org;
    out.v.assign(len, 0.0);
    long lsize = static_cast<long>(s.v.size());
    double s_end = s.org + static_cast<double>(lsize - 1) * delta;
    double t_end = t_org + static_cast<double>(len - 1) * delta;
    double ay0 = static_cast<double>(a) * t_org, ay1 = static_cast<double>(a) * t_end;
    long b_lo = static_cast<long>(std::ceil(s.org + std::min(ay0, ay1) - 1e-9));
    long b_hi = static_cast<long>(std::floor(s_end + std::max(ay0, ay1) + 1e-9));
    for (long b = b_lo; b <= b_hi; ++b) {
        double u0 = (static_cast<double>(b) - static_cast<double>(a) * t_org - s.org) / delta;
        double fl = std::floor(u0);
        long i0 = static_cast<long>(fl);
        double f = u0 - fl;
        for (std::size_t k = 0; k < len; ++k) {
            long i = i0 - a * static_cast<long>(k);
            if (i < -1 || i >= lsize) continue;
            double lo = (i >= 0) ? s.v[i] : 0.0;
            double hi = (i + 1 < lsize) ? s.v[i + 1] : 0.0;
            out.v[k] += lo * (1.0 - f) + hi * f;
        }
    }
    return out;
}

Win check_reply(const std::vector<Win>& stretched, std::size_t skip, long a_target, double t_org,
                std::size_t len, double delta) {
    Win s;
    bool first = true;
    for (std::size_t i = 0; i < stretched.size(); ++i) {
        if (i == skip) continue;
        if (first) {
            s = stretched[i];
            first = false;
        } else {
            s = convolve(s, stretched[i], delta);
        }
    }
    if (first) throw ParameterViolation("check_message: a check needs at least two variables");
    Win r = periodize(s, a_target, t_org, len, delta);
    win_normalize(r, delta);
    return r;
}

template <class F>
void parallel_for(std::size_t count, int jobs, F&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += nt) fn(i);
        });
    for (auto& t : pool) t.join();
}

// exact solution of x*H = v by rational elimination on the transposed system
RatVec solve_row_system(const IntMatrix& hdense, const IntVec& v) {
    std::size_t n = hdense.rows();
    bool all_zero = true;
    for (const Int& z : v)
        if (z != 0) all_zero = false;
    if (all_zero) return RatVec(n, Rat(0));
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(hdense(j, i));
        m[i][n] = Rat(v[i]);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw SingularMatrix("bp_decode: singular parity matrix");
        if (p != c) std::swap(m[p], m[c]);
        Rat inv = 1 / m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[c][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

struct BpCore {
    std::vector<double> y_hat;
    std::vector<long> v_est;
    bool converged = false;
    int iterations = 0;
};

BpCore bp_core(const SparseParityMatrix& h, const std::vector<double>& y, double sigma2,
               const DecoderConfig& cfg) {
    std::size_t n = h.n;
    double delta = cfg.delta;
    double sigma = std::sqrt(sigma2);
    double radius = std::min(cfg.half_width, std::max(8.0 * sigma, 6.0 * delta));
    std::size_t kw = static_cast<std::size_t>(std::ceil(radius / delta));
    if (kw < 3) kw = 3;
    std::size_t len = 2 * kw + 1;

    std::vector<double> org(n);
    std::vector<std::vector<double>> chan(n, std::vector<double>(len));
    for (std::size_t i = 0; i < n; ++i) {
        org[i] = y[i] - static_cast<double>(kw) * delta;
        for (std::size_t k = 0; k < len; ++k) {
            double x = (static_cast<double>(k) - static_cast<double>(kw)) * delta;
            chan[i][k] = std::exp(-x * x / (2.0 * sigma2));
        }
        Win w{org[i], chan[i]};
        win_normalize(w, delta);
        chan[i] = std::move(w.v);
    }

    // edge slots follow row order; slot_in_row[j][s] locates column j inside
    // the row list of the s-th variable of column j
    std::vector<std::vector<std::size_t>> slot_in_row(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (h.cols[j].size() < 2)
            throw ParameterViolation("bp_decode: a parity column has degree < 2");
        for (const SparseEntry& e : h.cols[j]) {
            std::size_t slot = 0;
            while (slot < h.rows[e.index].size() && h.rows[e.index][slot].index != j) ++slot;
            if (slot == h.rows[e.index].size()) throw Error("bp_decode: inconsistent sparse lists");
            slot_in_row[j].push_back(slot);
        }
    }

    auto degree = [&](std::size_t i) { return h.rows[i].size(); };
    std::vector<std::vector<std::vector<double>>> q(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i].assign(degree(i), chan[i]);
        r[i].assign(degree(i), std::vector<double>(len, 0.0));
    }

    BpCore out;
    out.y_hat.assign(n, 0.0);
    std::vector<double> sums(n, 0.0);
    std::vector<long> prev;
    int streak = 0;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        parallel_for(n, cfg.jobs, [&](std::size_t j) {
            const auto& col = h.cols[j];
            std::vector<Win> stretched(col.size());
            for (std::size_t s = 0; s < col.size(); ++s) {
                std::size_t k = col[s].index;
                stretched[s] =
                    stretch(Win{org[k], q[k][slot_in_row[j][s]]}, col[s].value, delta);
            }
            for (std::size_t s = 0; s < col.size(); ++s) {
                std::size_t i = col[s].index;
                Win reply = check_reply(stretched, s, col[s].value, org[i], len, delta);
                r[i][slot_in_row[j][s]] = std::move(reply.v);
            }
        });
        parallel_for(n, cfg.jobs, [&](std::size_t i) {
            std::size_t d = degree(i);
            for (std::size_t t = 0; t < d; ++t) {
                Win w{org[i], chan[i]};
                for (std::size_t t2 = 0; t2 < d; ++t2) {
                    if (t2 == t) continue;
                    for (std::size_t k = 0; k < len; ++k) w.v[k] *= r[i][t2][k];
                }
                win_normalize(w, delta);
                q[i][t] = std::move(w.v);
            }
            Win bel{org[i], chan[i]};
            for (std::size_t t = 0; t < d; ++t)
                for (std::size_t k = 0; k < len; ++k) bel.v[k] *= r[i][t][k];
            double best = -1.0, best_pos = y[i];
            for (std::size_t k = 0; k < len; ++k) {
                double pos = org[i] + static_cast<double>(k) * delta;
                if (bel.v[k] > best ||
                    (bel.v[k] == best && std::fabs(pos - y[i]) < std::fabs(best_pos - y[i]))) {
                    best = bel.v[k];
                    best_pos = pos;
                }
            }
            out.y_hat[i] = best_pos;
        });
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (const SparseEntry& e : h.cols[j])
                s += static_cast<double>(e.value) * out.y_hat[e.index];
            sums[j] = s;
        }
        std::vector<long> est(n);
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            est[j] = std::lround(sums[j]);
            worst = std::max(worst, std::fabs(sums[j] - static_cast<double>(est[j])));
        }
        out.iterations = it;
        if (worst < 1e-9) {  // beliefs sit exactly on a lattice point
            out.v_est = std::move(est);
            out.converged = true;
            return out;
        }
        if (!prev.empty() && est == prev)
            ++streak;
        else
            streak = 1;
        prev = est;
        out.v_est = std::move(est);
        if (streak >= cfg.stability_window) {
            out.converged = true;
            return out;
        }
    }
    out.converged = false;
    return out;
}

DecodeResult finish(const SparseParityMatrix& h, BpCore core, RatVec x_exact) {
    DecodeResult res;
    res.y_hat = std::move(core.y_hat);
    res.v_hat.resize(h.n);
    for (std::size_t j = 0; j < h.n; ++j) res.v_hat[j] = core.v_est[j];
    res.x_exact = std::move(x_exact);
    res.converged = core.converged;
    res.iterations_used = core.iterations;
    return res;
}

void validate_input(const SparseParityMatrix& h, const std::vector<double>& y, double sigma2) {
    if (y.size() != h.n) throw DimensionMismatch("bp_decode: length mismatch");
    for (double v : y)
        if (!std::isfinite(v)) throw NonFinite("bp_decode: non-finite input");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw ConfigViolation("bp_decode: sigma2 must be positive");
}

}  // namespace

PdfGrid check_message(const std::vector<CheckInput>& incoming, long a_target,
                      const DecoderConfig& cfg, double target_center) {
    if (incoming.empty()) throw ConfigViolation("check_message: no incoming messages");
    if (a_target == 0) throw ConfigViolation("check_message: zero target coefficient");
    if (!(cfg.delta > 0.0) || !(cfg.half_width >= 1.0))
        throw ConfigViolation("check_message: explicit positive delta and half_width required");
    double delta = cfg.delta;
    std::vector<Win> stretched;
    for (const CheckInput& in : incoming) {
        if (in.coeff == 0) throw ConfigViolation("check_message: zero coefficient");
        if (in.pdf.samples.empty() || std::fabs(in.pdf.delta - delta) > 1e-12)
            throw ConfigViolation("check_message: grid spacing mismatch");
        stretched.push_back(stretch(Win{in.pdf.position(0), in.pdf.samples}, in.coeff, delta));
    }
    Win s = stretched[0];
    for (std::size_t i = 1; i < stretched.size(); ++i) s = convolve(s, stretched[i], delta);
    std::size_t k = static_cast<std::size_t>(std::llround(cfg.half_width / delta));
    std::size_t len = 2 * k + 1;
    double t_org = target_center - static_cast<double>(k) * delta;
    Win r = periodize(s, a_target, t_org, len, delta);
    win_normalize(r, delta);
    PdfGrid out;
    out.center = target_center;
    out.delta = delta;
    out.half_width = cfg.half_width;
    out.samples = std::move(r.v);
    return out;
}

PdfGrid variable_message(const PdfGrid& channel, const std::vector<PdfGrid>& incoming,
                         const DecoderConfig& cfg) {
    if (channel.samples.empty() || !(channel.delta > 0.0))
        throw ConfigViolation("variable_message: bad channel grid");
    (void)cfg;
    PdfGrid out = channel;
    for (const PdfGrid& in : incoming) {
        Win w{in.position(0), in.samples};
        for (std::size_t k = 0; k < out.samples.size(); ++k)
            out.samples[k] *= win_sample(w, out.position(k), in.delta);
    }
    out.normalize();
    return out;
}

DecodeResult bp_decode(const SparseParityMatrix& h, const std::vector<double>& y, double sigma2,
                       const DecoderConfig& cfg) {
    validate_input(h, y, sigma2);
    DecoderConfig rc = resolve_config(cfg, sigma2);
    BpCore core = bp_core(h, y, sigma2, rc);
    IntVec v(h.n);
    for (std::size_t j = 0; j < h.n; ++j) v[j] = core.v_est[j];
    RatVec x = solve_row_system(h.dense(), v);
    return finish(h, std::move(core), std::move(x));
}

DecodeResult bp_decode(const LdlcCode& code, const std::vector<double>& y, double sigma2,
                       const DecoderConfig& cfg) {
    validate_input(code.H, y, sigma2);
    DecoderConfig rc = resolve_config(cfg, sigma2);
    BpCore core = bp_core(code.H, y, sigma2, rc);
    IntVec v(code.H.n);
    for (std::size_t j = 0; j < code.H.n; ++j) v[j] = core.v_est[j];
    // x = v * H^-1 = (v * G_int) / D
    IntVec num = mul_vec_mat(v, code.G_int);
    RatVec x(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        x[i] = Rat(num[i], code.D);
        x[i].canonicalize();
    }
    return finish(code.H, std::move(core), std::move(x));
}

}  // namespace ldlcpkc
