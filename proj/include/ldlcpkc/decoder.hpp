#pragma once

#include <cstddef>
#include <vector>

#include "ldlcpkc/ldlc.hpp"

namespace ldlcpkc {

// Sampled pdf on a uniform grid: samples[i] is the density at
// center + (i - k_radius())*delta; mass() = sum * delta.
struct PdfGrid {
    double center = 0.0;
    double delta = 0.0;
    double half_width = 0.0;
    std::vector<double> samples;

    std::size_t k_radius() const { return samples.size() / 2; }
    double position(std::size_t i) const {
        return center + (static_cast<double>(i) - static_cast<double>(k_radius())) * delta;
    }
    double mass() const;
    void normalize();  // mass becomes 1; degenerate grids fall back to flat
};

PdfGrid gaussian_grid(double center, double sigma2, double delta, double half_width);

struct DecoderConfig {
    double delta = 0.0;  // 0 resolves to min(1/64, sigma/8)
    double half_width = 3.0;
    int max_iterations = 20;
    int stability_window = 3;  // stop when v_hat is unchanged this many iterations
    int jobs = 1;
};

// validates and fills defaults; throws ConfigViolation
DecoderConfig resolve_config(const DecoderConfig& cfg, double sigma2);

struct DecodeResult {
    std::vector<double> y_hat;  // per-symbol belief argmax
    IntVec v_hat;               // round(y_hat * H)
    RatVec x_exact;             // v_hat * H^-1, exact
    bool converged = false;
    int iterations_used = 0;
};

struct CheckInput {
    PdfGrid pdf;
    long coeff;
};

// Check-node reply: stretch each incoming pdf by its coefficient, convolve,
// then periodize with period 1/|a_target| onto a grid centered target_center.
PdfGrid check_message(const std::vector<CheckInput>& incoming, long a_target,
                      const DecoderConfig& cfg, double target_center = 0.0);

// Variable-node update: channel pdf times all incoming replies, renormalized
// on the channel's grid (other grids are aligned by interpolation).
PdfGrid variable_message(const PdfGrid& channel, const std::vector<PdfGrid>& incoming,
                         const DecoderConfig& cfg);

DecodeResult bp_decode(const SparseParityMatrix& h, const std::vector<double>& y, double sigma2,
                       const DecoderConfig& cfg = {});
// same decoder; x_exact resnapped through the code's exact integer generator
DecodeResult bp_decode(const LdlcCode& code, const std::vector<double>& y, double sigma2,
                       const DecoderConfig& cfg = {});

}  // namespace ldlcpkc
