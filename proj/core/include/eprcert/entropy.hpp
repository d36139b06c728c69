#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>

namespace eprcert {

// Conventions used throughout:
//   - all entropies are in bits (base-2 logarithms), with 0*log(0) = 0
//   - a joint distribution is a count_a x count_b matrix of probabilities;
//     rows index the A-side outcome, columns the B-side outcome
//   - "differential" entropies are formed from discrete ones through the
//     bin-width identity  h = H + log2(bin width of the left variable)

struct AxisSpec {
    std::string label;
    double bin_width = 1.0; // > 0, in the coordinate's own units
    double offset = 0.0;    // coordinate of the center of bin 0
    int count = 1;          // >= 1; a single bin models an unmeasured side

    double center(int i) const { return offset + i * bin_width; }
    double lower_edge(int i) const { return offset + (i - 0.5) * bin_width; }
    void validate() const; // throws DomainError
};

// Builds the axis for a window symmetric about 0: count bins covering
// [-half_width, half_width).
AxisSpec centered_axis(std::string label, int count, double half_width);

enum class Side { a, b };
enum class Direction { a_given_b, b_given_a };

inline Side left_of(Direction d) { return d == Direction::a_given_b ? Side::a : Side::b; }
inline Side right_of(Direction d) { return d == Direction::a_given_b ? Side::b : Side::a; }

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

class JointDistribution {
public:
    // Validates shape against the axes, non-negativity, and normalization
    // (sum within 1e-12 of 1). Throws ShapeError / NormalizationError /
    // EmptyHistogram / DomainError.
    JointDistribution(Eigen::MatrixXd probabilities, AxisSpec axis_a, AxisSpec axis_b,
                      std::optional<std::int64_t> sample_size = std::nullopt);

    // For probabilities produced by exact arithmetic whose sum is only
    // correct up to rounding (or a documented window truncation): divides by
    // the actual sum. Not a repair path for measured data; ingest counts via
    // from_histogram instead.
    static JointDistribution renormalized(Eigen::MatrixXd probabilities, AxisSpec axis_a,
                                          AxisSpec axis_b,
                                          std::optional<std::int64_t> sample_size = std::nullopt);

    const Eigen::MatrixXd& probabilities() const { return p_; }
    const AxisSpec& axis(Side s) const { return s == Side::a ? axis_a_ : axis_b_; }
    std::optional<std::int64_t> sample_size() const { return sample_size_; }

    Eigen::VectorXd marginal(Side s) const;

private:
    JointDistribution() = default;
    Eigen::MatrixXd p_;
    AxisSpec axis_a_;
    AxisSpec axis_b_;
    std::optional<std::int64_t> sample_size_;
};

// Normalizes integer counts to probabilities; the only renormalization path
// for measured data. Total must be positive. Records the total as
// sample_size. Throws EmptyHistogram / ShapeError / ParseError (negative).
JointDistribution from_histogram(const CountMatrix& counts, AxisSpec axis_a, AxisSpec axis_b);

enum class EntropyKind { discrete, differential };

struct EntropyValue {
    double bits = 0.0;
    EntropyKind kind = EntropyKind::discrete;
    bool conditioned = false;
};

// Plug-in uses the empirical probabilities as-is. Miller-Madow adds the
// standard (K-1)/(2N ln 2) occupancy correction and therefore needs a
// recorded sample size. Certificates always use plug_in; the corrected
// estimator exists for exploratory comparisons only.
enum class Estimator { plug_in, miller_madow };

inline const char* estimator_name(Estimator e) {
    return e == Estimator::plug_in ? "plug-in" : "miller-madow";
}

// H(A,B) over the whole table.
EntropyValue shannon_entropy(const JointDistribution& dist, Estimator est = Estimator::plug_in);

// H(A) or H(B) from the side's marginal.
EntropyValue marginal_entropy(const JointDistribution& dist, Side side,
                              Estimator est = Estimator::plug_in);

// H(A|B) = H(A,B) - H(B)  (and the mirrored direction).
EntropyValue conditional_entropy(const JointDistribution& dist, Direction dir,
                                 Estimator est = Estimator::plug_in);

// h(A|B) = H(A|B) + log2(bin width of the left variable's axis).
EntropyValue differential_conditional_entropy(const JointDistribution& dist, Direction dir,
                                              Estimator est = Estimator::plug_in);

// h(A) = H(A) + log2(bin width of that axis).
EntropyValue differential_marginal_entropy(const JointDistribution& dist, Side side,
                                           Estimator est = Estimator::plug_in);

// Merges adjacent bins in groups of `factor` along one axis; count must be
// divisible by factor. Bin width scales by factor, offset moves to the
// center of the first merged group. Never decreases conditional entropies.
JointDistribution coarsen(const JointDistribution& dist, Side side, int factor);

} // namespace eprcert
