#include "eprcert/qft_lab.hpp"

#include "eprcert/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace eprcert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite_amplitudes(const Eigen::MatrixXcd& amplitudes) {
    if (!amplitudes.allFinite()) throw NumericalError("amplitudes contain non-finite values");
}

double entropy_of_probabilities(const Eigen::VectorXd& p) {
    double bits = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) bits -= p[i] * std::log2(p[i]);
    return bits;
}

} // namespace

QftGrid QftGrid::make(int n, double dx) {
    if (n < 2 || n % 2 != 0) throw DomainError("grid size must be even and >= 2");
    if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("dx must be positive and finite");
    QftGrid g;
    g.n = n;
    g.dx = dx;
    g.dk = kTwoPi / (n * dx);
    return g;
}

QftGrid QftGrid::centered(int n, double half_width) {
    if (!(half_width > 0.0)) throw DomainError("half_width must be positive");
    if (n < 2) throw DomainError("grid size must be even and >= 2");
    return make(n, 2.0 * half_width / n);
}

AxisSpec QftGrid::position_axis(std::string label) const {
    AxisSpec axis;
    axis.label = std::move(label);
    axis.bin_width = dx;
    axis.offset = x(0);
    axis.count = n;
    return axis;
}

AxisSpec QftGrid::momentum_axis(std::string label) const {
    AxisSpec axis;
    axis.label = std::move(label);
    axis.bin_width = dk;
    axis.offset = k(0);
    axis.count = n;
    return axis;
}

Eigen::MatrixXcd qft_kernel(const QftGrid& grid) {
    const int n = grid.n;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd u(n, n);
    for (int j = 0; j < n; ++j) {
        const long long m = j - n / 2;
        for (int i = 0; i < n; ++i) {
            const long long l = i - n / 2;
            // Reduce the phase index mod n before touching floating point;
            // unitarity then survives large grids at the 1e-12 level.
            long long r = (l * m) % n;
            if (r < 0) r += n;
            const double angle = kTwoPi * static_cast<double>(r) / n;
            u(i, j) = std::polar(inv_sqrt_n, angle);
        }
    }
    return u;
}

DiscretizedPureState discretize(const DoubleGaussianParams& params, const QftGrid& grid_a,
                                const QftGrid& grid_b, double deficit_threshold) {
    Eigen::MatrixXcd amp(grid_a.n, grid_b.n);
    const double scale = std::sqrt(grid_a.dx * grid_b.dx);
    for (int j = 0; j < grid_b.n; ++j) {
        const double xb = grid_b.x(j);
        for (int i = 0; i < grid_a.n; ++i)
            amp(i, j) = scale * wavefunction(params, grid_a.x(i), xb);
    }
    const double captured = amp.cwiseAbs2().sum();
    const double deficit = 1.0 - captured;
    if (deficit > deficit_threshold) {
        std::ostringstream msg;
        msg << "grid keeps only " << captured << " of the state's mass (deficit " << deficit
            << " > " << deficit_threshold << "); widen the window";
        throw TruncationError(msg.str());
    }
    DiscretizedPureState state;
    state.amplitudes = amp / std::sqrt(captured);
    state.grid_a = grid_a;
    state.grid_b = grid_b;
    state.norm_deficit = deficit;
    return state;
}

DiscretizedPureState state_from_amplitudes(Eigen::MatrixXcd amplitudes, QftGrid grid_a,
                                           QftGrid grid_b) {
    require_finite_amplitudes(amplitudes);
    if (amplitudes.rows() != grid_a.n || amplitudes.cols() != grid_b.n)
        throw ShapeError("amplitude matrix does not match the grids");
    const double norm_sq = amplitudes.cwiseAbs2().sum();
    if (!(norm_sq > 0.0)) throw NormalizationError("amplitudes have zero norm");
    DiscretizedPureState state;
    state.amplitudes = amplitudes / std::sqrt(norm_sq);
    state.grid_a = grid_a;
    state.grid_b = grid_b;
    state.norm_deficit = 0.0;
    return state;
}

DiscretizedPureState random_pure_state(int n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw DomainError("grid size must be even and >= 2");
    std::mt19937_64 eng(seed);
    auto uniform = [&eng] { return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53; };
    Eigen::MatrixXcd amp(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double r = std::sqrt(-2.0 * std::log(uniform()));
            const double t = kTwoPi * uniform();
            amp(i, j) = std::complex<double>(r * std::cos(t), r * std::sin(t));
        }
    }
    return state_from_amplitudes(std::move(amp), QftGrid::make(n, 1.0), QftGrid::make(n, 1.0));
}

JointDistribution position_distribution(const DiscretizedPureState& state) {
    require_finite_amplitudes(state.amplitudes);
    return JointDistribution::renormalized(state.amplitudes.cwiseAbs2(),
                                           state.grid_a.position_axis("x_a"),
                                           state.grid_b.position_axis("x_b"));
}

JointDistribution momentum_distribution(const DiscretizedPureState& state) {
    require_finite_amplitudes(state.amplitudes);
    const Eigen::MatrixXcd ua = qft_kernel(state.grid_a);
    const Eigen::MatrixXcd ub = qft_kernel(state.grid_b);
    // phi[m_a, m_b] = sum_{l_a, l_b} conj(U_a[l_a, m_a]) psi[l_a, l_b] conj(U_b[l_b, m_b])
    const Eigen::MatrixXcd phi = ua.adjoint() * state.amplitudes * ub.conjugate();
    return JointDistribution::renormalized(phi.cwiseAbs2(),
                                           state.grid_a.momentum_axis("k_a"),
                                           state.grid_b.momentum_axis("k_b"));
}

double schmidt_conditional_entropy(const DiscretizedPureState& state) {
    require_finite_amplitudes(state.amplitudes);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(state.amplitudes);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::VectorXd p = s.array().square();
    const double total = p.sum();
    if (!(total > 0.0) || !std::isfinite(total))
        throw NumericalError("singular values do not form a distribution");
    p /= total;
    return -entropy_of_probabilities(p);
}

double discrete_relation_margin(const DiscretizedPureState& state) {
    const JointDistribution pos = position_distribution(state);
    const JointDistribution mom = momentum_distribution(state);
    const double lhs = conditional_entropy(pos, Direction::a_given_b).bits +
                       conditional_entropy(mom, Direction::a_given_b).bits;
    const double bound = std::log2(kTwoPi / (state.grid_a.dx * state.grid_a.dk));
    return lhs - bound - schmidt_conditional_entropy(state);
}

GridSchedule fixed_window_schedule(const std::vector<int>& n_values, double half_width) {
    if (!(half_width > 0.0)) throw DomainError("half_width must be positive");
    GridSchedule schedule;
    for (int n : n_values) schedule.emplace_back(n, 2.0 * half_width / n);
    return schedule;
}

GridSchedule fixed_resolution_schedule(const std::vector<int>& n_values, double dx) {
    if (!(dx > 0.0)) throw DomainError("dx must be positive");
    GridSchedule schedule;
    for (int n : n_values) schedule.emplace_back(n, dx);
    return schedule;
}

std::vector<ConvergenceRow> convergence_study(const DoubleGaussianParams& params,
                                              const GridSchedule& schedule) {
    if (schedule.empty()) throw EmptyInput("convergence schedule is empty");
    std::vector<ConvergenceRow> rows;
    rows.reserve(schedule.size());
    const double analytic_lhs = conditional_entropy_sum(params);
    const double s_analytic = -max_entanglement(params);
    for (const auto& [n, dx] : schedule) {
        const QftGrid grid = QftGrid::make(n, dx);
        ConvergenceRow row;
        row.n = n;
        row.dx = grid.dx;
        row.dk = grid.dk;
        row.analytic_lhs = analytic_lhs;
        row.s_ab_analytic = s_analytic;
        try {
            const DiscretizedPureState state = discretize(params, grid, grid);
            const JointDistribution pos = position_distribution(state);
            const JointDistribution mom = momentum_distribution(state);
            row.lhs_differential =
                differential_conditional_entropy(pos, Direction::a_given_b).bits +
                differential_conditional_entropy(mom, Direction::a_given_b).bits;
            row.s_ab_exact = schmidt_conditional_entropy(state);
            row.margin = row.lhs_differential - std::log2(kTwoPi) - row.s_ab_exact;
            row.norm_deficit = state.norm_deficit;
        } catch (const TruncationError& err) {
            std::ostringstream msg;
            msg << "schedule row n=" << n << " dx=" << dx << ": " << err.what();
            throw TruncationError(msg.str());
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace eprcert
