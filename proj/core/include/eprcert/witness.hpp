#pragma once

#include "eprcert/entropy.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace eprcert {

// Every bound here has the same shape: a conditional-entropy sum on the
// left, a complementarity constant on the right, and any gap attributable
// to the conditioning system bounded by S(A|B). The assessment stores
//   s_ab_upper = lhs - bound,
// an upper bound on the conditional von Neumann entropy of the state.
// Negative values are what certify entanglement downstream.

enum class ObservableKind {
    position_momentum,
    time_frequency,
    quadratures,
    angle_oam,
    number_phase,
    discrete_mub,
    hybrid_continuous_discrete,
};

const char* observable_kind_name(ObservableKind k);
ObservableKind observable_kind_from_name(const std::string& name); // DomainError on unknown

// unit: [q, r] = i (positions/momenta, angle/angular momentum).
// half: [q, r] = i/2 (optical quadratures); adds one bit to the bound.
enum class CommutatorConvention { unit, half };

struct ObservablePairSpec {
    ObservableKind kind = ObservableKind::position_momentum;
    CommutatorConvention commutator = CommutatorConvention::unit;
    std::optional<double> omega; // complementarity constant; discrete_mub only

    // Which of the four measured variables take values in a continuum:
    // first/second observable, A/B side. The left-variable flags decide the
    // entropy kind each relation expects.
    struct ContinuousSides {
        bool first_a = true;
        bool first_b = true;
        bool second_a = true;
        bool second_b = true;
    } continuous;

    static ObservablePairSpec make(ObservableKind kind,
                                   CommutatorConvention commutator = CommutatorConvention::unit,
                                   std::optional<double> omega = std::nullopt);
    void validate() const; // DomainError on inconsistent fields
};

struct SteeringAssessment {
    double lhs_bits = 0.0;
    double bound_bits = 0.0;
    double s_ab_upper_bits = 0.0; // lhs - bound, exactly
    Direction direction = Direction::a_given_b;
    std::string relation_id;
    bool vacuous = false; // bound <= 0: the relation cannot certify anything
};

// H(Q_A|Q_B) + H(R_A|R_B) >= log2(omega) + S(A|B) for a pair of discrete
// observables with complementarity constant omega >= 1.
SteeringAssessment discrete_memory_bound(const EntropyValue& h_qq, const EntropyValue& h_rr,
                                         double omega, Direction dir = Direction::a_given_b);

// h(x_A|x_B) + h(k_A|k_B) >= log2(2 pi) + S(A|B) for Fourier-conjugate
// continuous observables. Entropy kinds must match spec.continuous; the
// quadrature half convention raises the bound by one bit.
SteeringAssessment continuous_memory_bound(const EntropyValue& h_xx, const EntropyValue& h_kk,
                                           const ObservablePairSpec& spec,
                                           Direction dir = Direction::a_given_b);

// H(X_A|X_B) + H(K_A|K_B) >= log2(2 pi / (dx_a dk_a)) + S(A|B) for binned
// conjugate observables at the left side's resolutions. dx_a dk_a > 2 pi
// makes the bound negative; that assessment is flagged vacuous, not an error.
SteeringAssessment coarse_grained_bound(const EntropyValue& h_xx, const EntropyValue& h_kk,
                                        double dx_a, double dk_a,
                                        Direction dir = Direction::a_given_b);

// Same arithmetic when the conditioning side is a discrete register instead
// of a binned continuum; only the relation id differs.
SteeringAssessment hybrid_bound(const EntropyValue& h_xq, const EntropyValue& h_kr, double dx_a,
                                double dk_a, Direction dir = Direction::a_given_b);

// max(0, -log2(e sigma_x sigma_k)) from the standard deviations of the
// position difference and momentum sum. A Gaussian-statistics shortcut:
// never beats the entropic route on the same state.
double variance_witness(double sigma_x, double sigma_k);

// Differential entropy of a Gaussian with standard deviation sigma,
// (1/2) log2(2 pi e sigma^2); the maximum at fixed variance, which is what
// turns measured widths into entropy bounds.
EntropyValue gaussian_differential_entropy(double sigma);

// h(x) + h(k) - log2(2 pi): the no-memory slack of a single system. Always
// >= log2(e/2) for valid marginals.
double single_particle_bound(const EntropyValue& h_x, const EntropyValue& h_k);

// 1 / max_ij |<q_i|r_j>|^2 for two orthonormal bases given as column
// matrices. Equals the dimension exactly when the bases are mutually
// unbiased.
double complementarity_constant(const Eigen::MatrixXcd& basis_q, const Eigen::MatrixXcd& basis_r);

} // namespace eprcert
