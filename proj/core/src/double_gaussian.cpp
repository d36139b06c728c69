#include "eprcert/double_gaussian.hpp"

#include "eprcert/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace eprcert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_ratio(double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw DomainError("correlation ratio must be positive and finite");
}

double normal_pdf(double x, double sigma) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(kTwoPi));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// h2(p)/p of the geometric Schmidt spectrum, written with log1p so the
// small-lambda (large R) regime keeps full precision.
double geometric_entropy_bits(double lambda) {
    if (lambda >= 1.0) return 0.0;
    const double q = 1.0 - lambda;
    const double h2 = -lambda * std::log2(lambda) - q * std::log1p(-lambda) / kLn2;
    return h2 / lambda;
}

// Both measured tables are bivariate normals with equal single-arm sigmas;
// only the correlation differs between the position and momentum views.
struct BivariateNormal {
    double sigma = 1.0; // marginal standard deviation, both arms
    double rho = 0.0;   // correlation
};

BivariateNormal position_view(const DoubleGaussianParams& p) {
    const double a = p.sigma_plus * p.sigma_plus;
    const double b = p.sigma_minus * p.sigma_minus;
    double rho = (a - b) / (a + b);
    if (p.flipped) rho = -rho;
    return {std::sqrt(0.5 * (a + b)), rho};
}

BivariateNormal momentum_view(const DoubleGaussianParams& p) {
    const double a = 1.0 / (4.0 * p.sigma_plus * p.sigma_plus);
    const double b = 1.0 / (4.0 * p.sigma_minus * p.sigma_minus);
    double rho = (a - b) / (a + b);
    if (p.flipped) rho = -rho;
    return {std::sqrt(0.5 * (a + b)), rho};
}

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlPoints = 10;
constexpr double kGlNode[kGlPoints] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr double kGlWeight[kGlPoints] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

// Mass of one axis-aligned cell: exact Gaussian CDF across the row
// variable, Gauss-Legendre panels across the column variable. Panel width
// tracks the conditional scale so steep correlation ridges stay resolved.
double cell_mass(const BivariateNormal& bn, double a_lo, double a_hi, double b_lo, double b_hi) {
    const double sigma_c = bn.sigma * std::sqrt(std::max(1.0 - bn.rho * bn.rho, 1e-300));
    const double width = b_hi - b_lo;
    const int panels =
        std::clamp(static_cast<int>(std::ceil(width / std::min(bn.sigma, sigma_c))), 1, 32);
    const double panel_width = width / panels;
    double mass = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = b_lo + (p + 0.5) * panel_width;
        const double half = 0.5 * panel_width;
        double acc = 0.0;
        for (int g = 0; g < kGlPoints; ++g) {
            const double xb = mid + half * kGlNode[g];
            const double mu = bn.rho * xb; // conditional mean, equal sigmas
            const double slice = normal_cdf((a_hi - mu) / sigma_c) -
                                 normal_cdf((a_lo - mu) / sigma_c);
            acc += kGlWeight[g] * normal_pdf(xb, bn.sigma) * slice;
        }
        mass += acc * half;
    }
    return mass;
}

JointDistribution binned_view(const BivariateNormal& bn, const AxisSpec& axis_a,
                              const AxisSpec& axis_b, double tail_tolerance) {
    axis_a.validate();
    axis_b.validate();
    if (!(tail_tolerance > 0.0)) throw DomainError("tail_tolerance must be positive");
    Eigen::MatrixXd p(axis_a.count, axis_b.count);
    for (int j = 0; j < axis_b.count; ++j) {
        const double b_lo = axis_b.lower_edge(j);
        const double b_hi = b_lo + axis_b.bin_width;
        for (int i = 0; i < axis_a.count; ++i) {
            const double a_lo = axis_a.lower_edge(i);
            p(i, j) = cell_mass(bn, a_lo, a_lo + axis_a.bin_width, b_lo, b_hi);
        }
    }
    const double covered = p.sum();
    if (1.0 - covered > tail_tolerance)
        throw TruncationError("binning window discards too much probability mass (covered " +
                              std::to_string(covered) + ")");
    return JointDistribution::renormalized(std::move(p), axis_a, axis_b);
}

// Deterministic Box-Muller over mt19937_64; std::normal_distribution is
// implementation-defined, this is not.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;         // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = kTwoPi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

DoubleGaussianParams DoubleGaussianParams::make(double sigma_plus, double sigma_minus) {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0) || !std::isfinite(sigma_plus) ||
        !std::isfinite(sigma_minus))
        throw DomainError("correlation widths must be positive and finite");
    DoubleGaussianParams p;
    if (sigma_plus >= sigma_minus) {
        p.sigma_plus = sigma_plus;
        p.sigma_minus = sigma_minus;
        p.flipped = false;
    } else {
        p.sigma_plus = sigma_minus;
        p.sigma_minus = sigma_plus;
        p.flipped = true;
    }
    return p;
}

double wavefunction(const DoubleGaussianParams& p, double x_a, double x_b) {
    if (p.flipped) x_b = -x_b;
    const double sum = x_a + x_b;
    const double diff = x_a - x_b;
    const double norm = 1.0 / std::sqrt(kTwoPi * p.sigma_plus * p.sigma_minus);
    return norm * std::exp(-sum * sum / (8.0 * p.sigma_plus * p.sigma_plus) -
                           diff * diff / (8.0 * p.sigma_minus * p.sigma_minus));
}

double position_density(const DoubleGaussianParams& p, double x_a, double x_b) {
    const double psi = wavefunction(p, x_a, x_b);
    return psi * psi;
}

double momentum_density(const DoubleGaussianParams& p, double k_a, double k_b) {
    if (p.flipped) k_b = -k_b;
    const double ku = (k_a + k_b) / kSqrt2;
    const double kv = (k_a - k_b) / kSqrt2;
    return normal_pdf(ku, 1.0 / (2.0 * p.sigma_plus)) *
           normal_pdf(kv, 1.0 / (2.0 * p.sigma_minus));
}

double position_sum_std(const DoubleGaussianParams& p) { return kSqrt2 * p.sigma_plus; }
double position_diff_std(const DoubleGaussianParams& p) { return kSqrt2 * p.sigma_minus; }
double momentum_sum_std(const DoubleGaussianParams& p) { return 1.0 / (kSqrt2 * p.sigma_plus); }
double momentum_diff_std(const DoubleGaussianParams& p) { return 1.0 / (kSqrt2 * p.sigma_minus); }

double position_marginal_std(const DoubleGaussianParams& p) { return position_view(p).sigma; }
double momentum_marginal_std(const DoubleGaussianParams& p) { return momentum_view(p).sigma; }

double position_conditional_std(const DoubleGaussianParams& p) {
    const BivariateNormal bn = position_view(p);
    return bn.sigma * std::sqrt(1.0 - bn.rho * bn.rho);
}

double momentum_conditional_std(const DoubleGaussianParams& p) {
    const BivariateNormal bn = momentum_view(p);
    return bn.sigma * std::sqrt(1.0 - bn.rho * bn.rho);
}

double conditional_entropy_sum(double ratio) {
    require_ratio(ratio);
    return std::log2(kTwoPi * std::exp(1.0) / (ratio + 1.0 / ratio));
}

double conditional_entropy_sum(const DoubleGaussianParams& p) {
    return conditional_entropy_sum(p.ratio());
}

double witnessed_entanglement(double ratio) {
    require_ratio(ratio);
    const double bits = std::log2((ratio + 1.0 / ratio) / std::exp(1.0));
    return bits > 0.0 ? bits : 0.0;
}

double witnessed_entanglement(const DoubleGaussianParams& p) {
    return witnessed_entanglement(p.ratio());
}

double witness_threshold_ratio() {
    const double e = std::exp(1.0);
    return 0.5 * (e + std::sqrt(e * e - 4.0));
}

double schmidt_lambda(double ratio) {
    require_ratio(ratio);
    return 4.0 * ratio / ((ratio + 1.0) * (ratio + 1.0));
}

double schmidt_lambda(const DoubleGaussianParams& p) { return schmidt_lambda(p.ratio()); }

double max_entanglement(double ratio) { return geometric_entropy_bits(schmidt_lambda(ratio)); }

double max_entanglement(const DoubleGaussianParams& p) { return max_entanglement(p.ratio()); }

double gap_asymptote_two_dimensions() { return 2.0 * (2.0 * std::log2(std::exp(1.0)) - 2.0); }

double SchmidtSpectrum::entropy_bits() const {
    double kept = 0.0;
    for (double ev : eigenvalues)
        if (ev > 0.0) kept -= ev * std::log2(ev);
    if (!(truncation_bound > 0.0)) return kept;
    // Geometric tail, summed in closed form: the discarded terms
    // lambda q^n for n >= K contribute
    //   -q^K [ log2(lambda) + (K + q/lambda) log2(q) ].
    const double q = 1.0 - lambda;
    const double k = static_cast<double>(eigenvalues.size());
    const double tail =
        -truncation_bound * (std::log2(lambda) + (k + q / lambda) * std::log2(q));
    return kept + tail;
}

SchmidtSpectrum schmidt_spectrum(const DoubleGaussianParams& p, double tail_tolerance) {
    if (!(tail_tolerance > 0.0) || tail_tolerance >= 1.0)
        throw DomainError("tail tolerance must lie in (0, 1)");
    SchmidtSpectrum spectrum;
    spectrum.lambda = schmidt_lambda(p);
    const double q = 1.0 - spectrum.lambda;
    // q^K <= tol  =>  K >= log(tol)/log(q)
    constexpr std::size_t kMaxTerms = 1u << 22;
    double remaining = 1.0;
    double term = spectrum.lambda;
    while (remaining > tail_tolerance) {
        if (spectrum.eigenvalues.size() >= kMaxTerms)
            throw TruncationError("Schmidt spectrum did not reach the tail tolerance within " +
                                  std::to_string(kMaxTerms) + " terms");
        spectrum.eigenvalues.push_back(term);
        remaining -= term;
        term *= q;
        if (!(term > 0.0)) {
            remaining = 0.0;
            break;
        }
    }
    spectrum.truncation_bound = std::max(remaining, 0.0);
    return spectrum;
}

SampleBatch sample(const DoubleGaussianParams& p, std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw DomainError("sample count must be non-negative");
    SampleBatch batch;
    batch.x_a.reserve(n);
    batch.x_b.reserve(n);
    batch.k_a.reserve(n);
    batch.k_b.reserve(n);
    GaussianStream g(seed);
    const double flip = p.flipped ? -1.0 : 1.0;
    const double sku = 1.0 / (2.0 * p.sigma_plus);
    const double skv = 1.0 / (2.0 * p.sigma_minus);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = g.next() * p.sigma_plus;
        const double v = g.next() * p.sigma_minus;
        batch.x_a.push_back((u + v) / kSqrt2);
        batch.x_b.push_back(flip * (u - v) / kSqrt2);
        const double ku = g.next() * sku;
        const double kv = g.next() * skv;
        batch.k_a.push_back((ku + kv) / kSqrt2);
        batch.k_b.push_back(flip * (ku - kv) / kSqrt2);
    }
    return batch;
}

JointDistribution binned_position_distribution(const DoubleGaussianParams& p,
                                               const AxisSpec& axis_a, const AxisSpec& axis_b,
                                               double tail_tolerance) {
    return binned_view(position_view(p), axis_a, axis_b, tail_tolerance);
}

JointDistribution binned_momentum_distribution(const DoubleGaussianParams& p,
                                               const AxisSpec& axis_a, const AxisSpec& axis_b,
                                               double tail_tolerance) {
    return binned_view(momentum_view(p), axis_a, axis_b, tail_tolerance);
}

} // namespace eprcert
