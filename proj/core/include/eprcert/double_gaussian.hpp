#pragma once

#include "eprcert/entropy.hpp"

#include <cstdint>
#include <vector>

namespace eprcert {

// Two-mode Gaussian test state with exact closed forms for everything the
// witness pipeline estimates. The joint position wavefunction is
//
//   psi(x_a, x_b) = (2 pi s+ s-)^(-1/2)
//                   * exp(-(x_a + x_b)^2 / (8 s+^2))
//                   * exp(-(x_a - x_b)^2 / (8 s-^2))
//
// In rotated coordinates u = (x_a + x_b)/sqrt(2), v = (x_a - x_b)/sqrt(2)
// this factors into two minimum-uncertainty packets of widths s+ and s-,
// so the Fourier transform factors the same way with widths 1/(2 s+) and
// 1/(2 s-) in the rotated momentum coordinates. That gives the width
// identities std(x_a + x_b) = sqrt(2) s+ and std(k_a + k_b) = 1/(sqrt(2) s+)
// used below; the correlation ratio R = s+/s- is the single knob that
// controls every derived quantity.

struct DoubleGaussianParams {
    double sigma_plus = 1.0;  // canonical: sigma_plus >= sigma_minus > 0
    double sigma_minus = 1.0;
    bool flipped = false;     // inputs arrived with the roles swapped; the
                              // B-side coordinate carries a sign flip

    // Canonicalizes so that ratio() >= 1, recording the swap in `flipped`.
    static DoubleGaussianParams make(double sigma_plus, double sigma_minus);
    double ratio() const { return sigma_plus / sigma_minus; }
};

double wavefunction(const DoubleGaussianParams& p, double x_a, double x_b);
double position_density(const DoubleGaussianParams& p, double x_a, double x_b);
double momentum_density(const DoubleGaussianParams& p, double k_a, double k_b);

// Exact standard deviations of the sum/difference coordinates and of the
// single-arm marginals.
double position_sum_std(const DoubleGaussianParams& p);    // sqrt(2) s+
double position_diff_std(const DoubleGaussianParams& p);   // sqrt(2) s-
double momentum_sum_std(const DoubleGaussianParams& p);    // 1/(sqrt(2) s+)
double momentum_diff_std(const DoubleGaussianParams& p);   // 1/(sqrt(2) s-)
double position_marginal_std(const DoubleGaussianParams& p);
double momentum_marginal_std(const DoubleGaussianParams& p);

// Inference (conditional) standard deviations of one arm given the other.
// Their product is 1/(R + 1/R), so the Gaussian variance witness on these
// widths reproduces the entropic certificate exactly.
double position_conditional_std(const DoubleGaussianParams& p);
double momentum_conditional_std(const DoubleGaussianParams& p);

// h(x_a|x_b) + h(k_a|k_b) = log2(2 pi e / (R + 1/R)) bits, per dimension.
double conditional_entropy_sum(double ratio);
double conditional_entropy_sum(const DoubleGaussianParams& p);

// Entanglement certified by the continuous relation on exact statistics:
// max(0, log2((R + 1/R)/e)) ebits per dimension.
double witnessed_entanglement(double ratio);
double witnessed_entanglement(const DoubleGaussianParams& p);

// Correlation ratio at which the witness first fires: the root of
// R + 1/R = e, about 2.2796.
double witness_threshold_ratio();

// Largest Schmidt coefficient lambda = 4R/(R+1)^2 of the geometric
// spectrum lambda_n = lambda (1-lambda)^n.
double schmidt_lambda(double ratio);
double schmidt_lambda(const DoubleGaussianParams& p);

// Actual entanglement entropy of the pure state, h2(lambda)/lambda ebits
// per dimension; the ceiling any witness can reach.
double max_entanglement(double ratio);
double max_entanglement(const DoubleGaussianParams& p);

// Large-R limit of max_entanglement - witnessed_entanglement over both
// transverse dimensions: 2 (2 log2 e - 2) = 1.7708 ebits.
double gap_asymptote_two_dimensions();

struct SchmidtSpectrum {
    double lambda = 1.0;              // largest coefficient
    std::vector<double> eigenvalues;  // lambda (1-lambda)^n, n = 0..K-1
    double truncation_bound = 0.0;    // (1-lambda)^K, the discarded mass

    // Entropy of the full spectrum in bits: explicit sum over the kept
    // eigenvalues plus the closed-form entropy of the geometric tail.
    double entropy_bits() const;
};

// Keeps eigenvalues until the discarded mass drops to tail_tolerance.
SchmidtSpectrum schmidt_spectrum(const DoubleGaussianParams& p, double tail_tolerance = 1e-12);

// Joint measurement outcomes drawn from the exact position and momentum
// densities (independent ensembles, as in a real complementary-observable
// experiment). Fixed seed -> byte-identical draws on a given platform.
struct SampleBatch {
    std::vector<double> x_a, x_b; // position pairs
    std::vector<double> k_a, k_b; // momentum pairs
};
SampleBatch sample(const DoubleGaussianParams& p, std::int64_t n, std::uint64_t seed);

// Exact cell masses of the position / momentum densities on the given
// axes, renormalized over the window. TruncationError when the discarded
// tail mass exceeds tail_tolerance.
JointDistribution binned_position_distribution(const DoubleGaussianParams& p,
                                               const AxisSpec& axis_a, const AxisSpec& axis_b,
                                               double tail_tolerance = 1e-6);
JointDistribution binned_momentum_distribution(const DoubleGaussianParams& p,
                                               const AxisSpec& axis_a, const AxisSpec& axis_b,
                                               double tail_tolerance = 1e-6);

} // namespace eprcert
