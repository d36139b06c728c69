#include "eprcert/witness.hpp"

#include "eprcert/error.hpp"

#include <cmath>
#include <numbers>

namespace eprcert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_kind(const EntropyValue& h, EntropyKind expected, const char* which) {
    if (h.kind != expected) {
        const char* want = expected == EntropyKind::discrete ? "discrete" : "differential";
        throw KindMismatch(std::string(which) + " entropy must be " + want +
                           " for this relation");
    }
}

void require_finite(const EntropyValue& h, const char* which) {
    if (!std::isfinite(h.bits))
        throw NumericalError(std::string(which) + " entropy is not finite");
}

SteeringAssessment assess(double lhs, double bound, Direction dir, std::string relation_id) {
    SteeringAssessment a;
    a.lhs_bits = lhs;
    a.bound_bits = bound;
    a.s_ab_upper_bits = lhs - bound;
    a.direction = dir;
    a.relation_id = std::move(relation_id);
    a.vacuous = !(bound > 0.0);
    return a;
}

} // namespace

const char* observable_kind_name(ObservableKind k) {
    switch (k) {
    case ObservableKind::position_momentum: return "position_momentum";
    case ObservableKind::time_frequency: return "time_frequency";
    case ObservableKind::quadratures: return "quadratures";
    case ObservableKind::angle_oam: return "angle_oam";
    case ObservableKind::number_phase: return "number_phase";
    case ObservableKind::discrete_mub: return "discrete_mub";
    case ObservableKind::hybrid_continuous_discrete: return "hybrid_continuous_discrete";
    }
    throw DomainError("unknown observable kind");
}

ObservableKind observable_kind_from_name(const std::string& name) {
    for (ObservableKind k :
         {ObservableKind::position_momentum, ObservableKind::time_frequency,
          ObservableKind::quadratures, ObservableKind::angle_oam, ObservableKind::number_phase,
          ObservableKind::discrete_mub, ObservableKind::hybrid_continuous_discrete}) {
        if (name == observable_kind_name(k)) return k;
    }
    throw DomainError("unknown observable kind '" + name + "'");
}

ObservablePairSpec ObservablePairSpec::make(ObservableKind kind, CommutatorConvention commutator,
                                            std::optional<double> omega) {
    ObservablePairSpec spec;
    spec.kind = kind;
    spec.commutator = commutator;
    spec.omega = omega;
    switch (kind) {
    case ObservableKind::position_momentum:
    case ObservableKind::time_frequency:
    case ObservableKind::quadratures:
        spec.continuous = {true, true, true, true};
        break;
    case ObservableKind::angle_oam:
        // first observable: integer angular momentum; second: angle.
        spec.continuous = {false, false, true, true};
        break;
    case ObservableKind::number_phase:
        spec.continuous = {false, false, true, true};
        break;
    case ObservableKind::discrete_mub:
        spec.continuous = {false, false, false, false};
        break;
    case ObservableKind::hybrid_continuous_discrete:
        // binned continuum on the A side, discrete register on B.
        spec.continuous = {false, false, false, false};
        break;
    }
    spec.validate();
    return spec;
}

void ObservablePairSpec::validate() const {
    if (kind == ObservableKind::discrete_mub) {
        if (!omega) throw DomainError("discrete_mub requires a complementarity constant");
        if (!(*omega >= 1.0) || !std::isfinite(*omega))
            throw DomainError("complementarity constant must be finite and >= 1");
    } else if (omega) {
        throw DomainError("complementarity constant is only meaningful for discrete_mub");
    }
    if (commutator == CommutatorConvention::half && kind != ObservableKind::quadratures)
        throw DomainError("the half commutator convention applies to quadratures only");
}

SteeringAssessment discrete_memory_bound(const EntropyValue& h_qq, const EntropyValue& h_rr,
                                         double omega, Direction dir) {
    require_finite(h_qq, "first");
    require_finite(h_rr, "second");
    require_kind(h_qq, EntropyKind::discrete, "first");
    require_kind(h_rr, EntropyKind::discrete, "second");
    if (!(omega >= 1.0) || !std::isfinite(omega))
        throw DomainError("complementarity constant must be finite and >= 1");
    return assess(h_qq.bits + h_rr.bits, std::log2(omega), dir, "discrete-memory");
}

SteeringAssessment continuous_memory_bound(const EntropyValue& h_xx, const EntropyValue& h_kk,
                                           const ObservablePairSpec& spec, Direction dir) {
    spec.validate();
    if (spec.kind == ObservableKind::discrete_mub)
        throw DomainError("discrete_mub pairs use discrete_memory_bound");
    require_finite(h_xx, "first");
    require_finite(h_kk, "second");
    const bool first_left = dir == Direction::a_given_b ? spec.continuous.first_a
                                                        : spec.continuous.first_b;
    const bool second_left = dir == Direction::a_given_b ? spec.continuous.second_a
                                                         : spec.continuous.second_b;
    require_kind(h_xx, first_left ? EntropyKind::differential : EntropyKind::discrete, "first");
    require_kind(h_kk, second_left ? EntropyKind::differential : EntropyKind::discrete, "second");
    double bound = std::log2(kTwoPi);
    if (spec.commutator == CommutatorConvention::half) bound += 1.0;
    return assess(h_xx.bits + h_kk.bits, bound, dir, "continuous-memory");
}

SteeringAssessment coarse_grained_bound(const EntropyValue& h_xx, const EntropyValue& h_kk,
                                        double dx_a, double dk_a, Direction dir) {
    require_finite(h_xx, "first");
    require_finite(h_kk, "second");
    require_kind(h_xx, EntropyKind::discrete, "first");
    require_kind(h_kk, EntropyKind::discrete, "second");
    if (!(dx_a > 0.0) || !(dk_a > 0.0) || !std::isfinite(dx_a) || !std::isfinite(dk_a))
        throw DomainError("bin widths must be positive and finite");
    return assess(h_xx.bits + h_kk.bits, std::log2(kTwoPi / (dx_a * dk_a)), dir,
                  "coarse-grained");
}

SteeringAssessment hybrid_bound(const EntropyValue& h_xq, const EntropyValue& h_kr, double dx_a,
                                double dk_a, Direction dir) {
    SteeringAssessment a = coarse_grained_bound(h_xq, h_kr, dx_a, dk_a, dir);
    a.relation_id = "hybrid-coarse-grained";
    return a;
}

double variance_witness(double sigma_x, double sigma_k) {
    if (!(sigma_x > 0.0) || !(sigma_k > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_k))
        throw DomainError("standard deviations must be positive and finite");
    const double witnessed = -std::log2(std::exp(1.0) * sigma_x * sigma_k);
    return witnessed > 0.0 ? witnessed : 0.0;
}

EntropyValue gaussian_differential_entropy(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("standard deviation must be positive and finite");
    const double bits = 0.5 * std::log2(kTwoPi * std::exp(1.0) * sigma * sigma);
    return EntropyValue{bits, EntropyKind::differential, false};
}

double single_particle_bound(const EntropyValue& h_x, const EntropyValue& h_k) {
    require_finite(h_x, "first");
    require_finite(h_k, "second");
    require_kind(h_x, EntropyKind::differential, "first");
    require_kind(h_k, EntropyKind::differential, "second");
    return h_x.bits + h_k.bits - std::log2(kTwoPi);
}

double complementarity_constant(const Eigen::MatrixXcd& basis_q, const Eigen::MatrixXcd& basis_r) {
    const Eigen::Index d = basis_q.rows();
    if (d == 0 || basis_q.cols() != d || basis_r.rows() != d || basis_r.cols() != d)
        throw ShapeError("bases must be square matrices of the same dimension");
    constexpr double kOrthoTol = 1e-10;
    const Eigen::MatrixXcd iq = basis_q.adjoint() * basis_q;
    const Eigen::MatrixXcd ir = basis_r.adjoint() * basis_r;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    if ((iq - eye).cwiseAbs().maxCoeff() > kOrthoTol ||
        (ir - eye).cwiseAbs().maxCoeff() > kOrthoTol)
        throw DomainError("bases must be orthonormal");
    const double max_overlap_sq = (basis_q.adjoint() * basis_r).cwiseAbs2().maxCoeff();
    return 1.0 / max_overlap_sq;
}

} // namespace eprcert
