#pragma once

#include "eprcert/double_gaussian.hpp"
#include "eprcert/entropy.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eprcert {

// Finite-dimensional stand-in for the continuum: n position bins of width
// dx with centered indices l in [-n/2, n/2 - 1], and the conjugate grid of
// width dk = 2 pi / (n dx). The product dx dk n = 2 pi is what makes the
// discrete Fourier kernel below exactly unitary.
struct QftGrid {
    int n = 2;
    double dx = 1.0;
    double dk = 0.0;

    static QftGrid make(int n, double dx);
    // dx chosen so the n bins cover [-half_width, half_width).
    static QftGrid centered(int n, double half_width);

    double x(int i) const { return (i - n / 2) * dx; }
    double k(int j) const { return (j - n / 2) * dk; }
    AxisSpec position_axis(std::string label) const;
    AxisSpec momentum_axis(std::string label) const;
};

// <X_l|K_m> = exp(i 2 pi l m / n) / sqrt(n) over centered indices.
Eigen::MatrixXcd qft_kernel(const QftGrid& grid);

struct DiscretizedPureState {
    Eigen::MatrixXcd amplitudes; // rows: A-side index, cols: B-side index
    QftGrid grid_a;
    QftGrid grid_b;
    double norm_deficit = 0.0;   // 1 - |psi|^2 mass captured before renormalizing
};

// Samples the joint wavefunction at the grid points, scales by
// sqrt(dx_a dx_b) and renormalizes. Throws TruncationError when the grids
// miss more than deficit_threshold of the mass.
DiscretizedPureState discretize(const DoubleGaussianParams& params, const QftGrid& grid_a,
                                const QftGrid& grid_b, double deficit_threshold = 1e-6);

// Wraps arbitrary amplitudes (normalizing them) in the same type; for
// synthetic and randomized states.
DiscretizedPureState state_from_amplitudes(Eigen::MatrixXcd amplitudes, QftGrid grid_a,
                                           QftGrid grid_b);

// Haar-ish random bipartite pure state: iid complex Gaussian amplitudes,
// normalized. Deterministic in the seed.
DiscretizedPureState random_pure_state(int n, std::uint64_t seed);

// |amplitudes|^2 with the position axes attached.
JointDistribution position_distribution(const DiscretizedPureState& state);

// Conjugate-basis probabilities: transform both sides by the Fourier
// kernel, then take moduli squared. Exactly norm-preserving.
JointDistribution momentum_distribution(const DiscretizedPureState& state);

// S(A|B) = -S(A) for a pure state, via SVD of the amplitude matrix.
// Returned in bits (negative whenever the state is entangled).
double schmidt_conditional_entropy(const DiscretizedPureState& state);

// H(X_A|X_B) + H(K_A|K_B) - log2(2 pi / (dx_a dk_a)) - S(A|B).
// Non-negative for every valid state; zero only at saturation.
double discrete_relation_margin(const DiscretizedPureState& state);

struct ConvergenceRow {
    int n = 0;
    double dx = 0.0;
    double dk = 0.0;
    double lhs_differential = 0.0; // discrete conditional sum + bin-width terms
    double analytic_lhs = 0.0;     // closed-form differential conditional sum
    double s_ab_exact = 0.0;       // SVD conditional entropy of the grid state
    double s_ab_analytic = 0.0;    // -max_entanglement, the continuum value
    double margin = 0.0;
    double norm_deficit = 0.0;
};

using GridSchedule = std::vector<std::pair<int, double>>; // (n, dx) rows

// Refinement with the physical window held fixed: dx = 2 half_width / n.
GridSchedule fixed_window_schedule(const std::vector<int>& n_values, double half_width);
// Refinement with the resolution held fixed: the window grows with n.
GridSchedule fixed_resolution_schedule(const std::vector<int>& n_values, double dx);

// Runs the discretization at every (n, dx) and reports how the
// bin-corrected entropy sum and the exact conditional entropy approach
// their continuum values. Throws TruncationError naming the offending row
// if a grid is too narrow.
std::vector<ConvergenceRow> convergence_study(const DoubleGaussianParams& params,
                                              const GridSchedule& schedule);

} // namespace eprcert
