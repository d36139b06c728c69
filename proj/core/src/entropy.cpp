#include "eprcert/entropy.hpp"

#include "eprcert/error.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace eprcert {

namespace {

constexpr double kNormTolerance = 1e-12;

// Kahan-compensated accumulator. The normalization tolerance is tight
// enough that naive summation over a 512x512 table would eat most of it.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

double accurate_sum(const double* data, Eigen::Index n) {
    CompensatedSum acc;
    for (Eigen::Index i = 0; i < n; ++i) acc.add(data[i]);
    return acc.value();
}

// -sum p log2 p over strictly positive entries, plus the occupancy count
// needed by the Miller-Madow correction.
struct PlugIn {
    double bits = 0.0;
    std::int64_t occupied = 0;
};

PlugIn plug_in_bits(const double* data, Eigen::Index n) {
    CompensatedSum acc;
    PlugIn out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = data[i];
        if (p > 0.0) {
            acc.add(-p * std::log2(p));
            ++out.occupied;
        }
    }
    out.bits = acc.value();
    return out;
}

double corrected_bits(const PlugIn& raw, Estimator est,
                      const std::optional<std::int64_t>& sample_size) {
    if (est == Estimator::plug_in) return raw.bits;
    if (!sample_size)
        throw DomainError("miller-madow estimator requires a recorded sample size");
    const double n = static_cast<double>(*sample_size);
    return raw.bits + static_cast<double>(raw.occupied - 1) / (2.0 * n) * std::log2(std::exp(1.0));
}

} // namespace

void AxisSpec::validate() const {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw DomainError("axis '" + label + "': bin_width must be positive and finite");
    if (!std::isfinite(offset))
        throw DomainError("axis '" + label + "': offset must be finite");
    if (count < 1)
        throw DomainError("axis '" + label + "': count must be >= 1");
}

AxisSpec centered_axis(std::string label, int count, double half_width) {
    if (count < 1) throw DomainError("centered_axis: count must be >= 1");
    if (!(half_width > 0.0)) throw DomainError("centered_axis: half_width must be positive");
    AxisSpec axis;
    axis.label = std::move(label);
    axis.count = count;
    axis.bin_width = 2.0 * half_width / count;
    axis.offset = -half_width + 0.5 * axis.bin_width;
    return axis;
}

JointDistribution::JointDistribution(Eigen::MatrixXd probabilities, AxisSpec axis_a,
                                     AxisSpec axis_b, std::optional<std::int64_t> sample_size) {
    axis_a.validate();
    axis_b.validate();
    if (probabilities.size() == 0) throw EmptyHistogram("joint distribution has no cells");
    if (probabilities.rows() != axis_a.count || probabilities.cols() != axis_b.count) {
        std::ostringstream msg;
        msg << "probability matrix is " << probabilities.rows() << "x" << probabilities.cols()
            << " but axes declare " << axis_a.count << "x" << axis_b.count;
        throw ShapeError(msg.str());
    }
    if (!probabilities.allFinite())
        throw NumericalError("joint distribution contains non-finite entries");
    if ((probabilities.array() < 0.0).any())
        throw DomainError("joint distribution contains negative entries");
    const double total = accurate_sum(probabilities.data(), probabilities.size());
    if (std::abs(total - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probabilities sum to " << total << ", expected 1 within " << kNormTolerance;
        throw NormalizationError(msg.str());
    }
    if (sample_size && *sample_size < 0)
        throw DomainError("sample_size must be non-negative");
    p_ = std::move(probabilities);
    axis_a_ = std::move(axis_a);
    axis_b_ = std::move(axis_b);
    sample_size_ = sample_size;
}

JointDistribution JointDistribution::renormalized(Eigen::MatrixXd probabilities, AxisSpec axis_a,
                                                  AxisSpec axis_b,
                                                  std::optional<std::int64_t> sample_size) {
    if (probabilities.size() == 0) throw EmptyHistogram("joint distribution has no cells");
    if (!probabilities.allFinite())
        throw NumericalError("joint distribution contains non-finite entries");
    if ((probabilities.array() < 0.0).any())
        throw DomainError("joint distribution contains negative entries");
    const double total = accurate_sum(probabilities.data(), probabilities.size());
    if (!(total > 0.0)) throw NormalizationError("probability mass is zero, cannot renormalize");
    probabilities /= total;
    return JointDistribution(std::move(probabilities), std::move(axis_a), std::move(axis_b),
                             sample_size);
}

Eigen::VectorXd JointDistribution::marginal(Side s) const {
    return s == Side::a ? Eigen::VectorXd(p_.rowwise().sum())
                        : Eigen::VectorXd(p_.colwise().sum().transpose());
}

JointDistribution from_histogram(const CountMatrix& counts, AxisSpec axis_a, AxisSpec axis_b) {
    if (counts.size() == 0) throw EmptyHistogram("histogram has no cells");
    axis_a.validate();
    axis_b.validate();
    if (counts.rows() != axis_a.count || counts.cols() != axis_b.count) {
        std::ostringstream msg;
        msg << "histogram is " << counts.rows() << "x" << counts.cols() << " but axes declare "
            << axis_a.count << "x" << axis_b.count;
        throw ShapeError(msg.str());
    }
    std::int64_t total = 0;
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
        for (Eigen::Index i = 0; i < counts.rows(); ++i) {
            const std::int64_t c = counts(i, j);
            if (c < 0) {
                std::ostringstream msg;
                msg << "negative count " << c << " at cell (" << i << "," << j << ")";
                throw ParseError(msg.str());
            }
            total += c;
        }
    }
    if (total == 0) throw EmptyHistogram("histogram holds zero events");
    Eigen::MatrixXd p = counts.cast<double>() / static_cast<double>(total);
    return JointDistribution(std::move(p), std::move(axis_a), std::move(axis_b), total);
}

EntropyValue shannon_entropy(const JointDistribution& dist, Estimator est) {
    const auto& p = dist.probabilities();
    const PlugIn raw = plug_in_bits(p.data(), p.size());
    return EntropyValue{corrected_bits(raw, est, dist.sample_size()), EntropyKind::discrete, false};
}

EntropyValue marginal_entropy(const JointDistribution& dist, Side side, Estimator est) {
    const Eigen::VectorXd m = dist.marginal(side);
    const PlugIn raw = plug_in_bits(m.data(), m.size());
    return EntropyValue{corrected_bits(raw, est, dist.sample_size()), EntropyKind::discrete, false};
}

EntropyValue conditional_entropy(const JointDistribution& dist, Direction dir, Estimator est) {
    const EntropyValue joint = shannon_entropy(dist, est);
    const EntropyValue cond_marginal = marginal_entropy(dist, right_of(dir), est);
    return EntropyValue{joint.bits - cond_marginal.bits, EntropyKind::discrete, true};
}

EntropyValue differential_conditional_entropy(const JointDistribution& dist, Direction dir,
                                              Estimator est) {
    EntropyValue h = conditional_entropy(dist, dir, est);
    h.bits += std::log2(dist.axis(left_of(dir)).bin_width);
    h.kind = EntropyKind::differential;
    return h;
}

EntropyValue differential_marginal_entropy(const JointDistribution& dist, Side side,
                                           Estimator est) {
    EntropyValue h = marginal_entropy(dist, side, est);
    h.bits += std::log2(dist.axis(side).bin_width);
    h.kind = EntropyKind::differential;
    return h;
}

JointDistribution coarsen(const JointDistribution& dist, Side side, int factor) {
    if (factor < 1) throw DomainError("coarsen: factor must be >= 1");
    const AxisSpec& axis = dist.axis(side);
    if (axis.count % factor != 0)
        throw DomainError("coarsen: bin count " + std::to_string(axis.count) +
                          " is not divisible by factor " + std::to_string(factor));
    const int merged = axis.count / factor;

    const Eigen::MatrixXd& p = dist.probabilities();
    Eigen::MatrixXd q;
    if (side == Side::a) {
        q.setZero(merged, p.cols());
        for (int g = 0; g < merged; ++g)
            q.row(g) = p.middleRows(g * factor, factor).colwise().sum();
    } else {
        q.setZero(p.rows(), merged);
        for (int g = 0; g < merged; ++g)
            q.col(g) = p.middleCols(g * factor, factor).rowwise().sum();
    }

    AxisSpec merged_axis = axis;
    merged_axis.count = merged;
    merged_axis.bin_width = axis.bin_width * factor;
    merged_axis.offset = axis.offset + 0.5 * (factor - 1) * axis.bin_width;

    AxisSpec axis_a = side == Side::a ? merged_axis : dist.axis(Side::a);
    AxisSpec axis_b = side == Side::b ? merged_axis : dist.axis(Side::b);
    // Sums of the original probabilities keep the normalization invariant.
    return JointDistribution(std::move(q), std::move(axis_a), std::move(axis_b),
                             dist.sample_size());
}

} // namespace eprcert
