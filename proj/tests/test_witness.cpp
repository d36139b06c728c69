#include <doctest.h>

#include "support.hpp"

#include <eprcert/double_gaussian.hpp>
#include <eprcert/entropy.hpp>
#include <eprcert/error.hpp>
#include <eprcert/qft_lab.hpp>
#include <eprcert/witness.hpp>

#include <cmath>
#include <numbers>

using namespace eprcert;
using namespace testsupport;

namespace {

EntropyValue discrete_bits(double bits) { return {bits, EntropyKind::discrete, true}; }
EntropyValue differential_bits(double bits) { return {bits, EntropyKind::differential, true}; }

constexpr double kLog2TwoPi = 2.6514961294723187; // log2(2 pi)

} // namespace

TEST_CASE("discrete-memory relation arithmetic") {
    const SteeringAssessment perfect =
        discrete_memory_bound(discrete_bits(0.0), discrete_bits(0.0), 4.0);
    CHECK(perfect.s_ab_upper_bits == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(perfect.relation_id == "discrete-memory");
    CHECK_FALSE(perfect.vacuous);

    CHECK(discrete_memory_bound(discrete_bits(1.0), discrete_bits(1.0), 4.0).s_ab_upper_bits ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(discrete_memory_bound(discrete_bits(0.5), discrete_bits(0.3), 8.0).s_ab_upper_bits ==
          doctest::Approx(-2.2).epsilon(1e-12));

    CHECK_THROWS_AS(discrete_memory_bound(differential_bits(0.5), discrete_bits(0.3), 8.0),
                    KindMismatch);
    CHECK_THROWS_AS(discrete_memory_bound(discrete_bits(0.5), discrete_bits(0.3), 0.5),
                    DomainError);
}

TEST_CASE("continuous-memory relation and conventions") {
    const ObservablePairSpec xk = ObservablePairSpec::make(ObservableKind::position_momentum);
    const double lhs = conditional_entropy_sum(30.8);
    const SteeringAssessment a =
        continuous_memory_bound(differential_bits(lhs / 2), differential_bits(lhs / 2), xk);
    CHECK(a.bound_bits == doctest::Approx(kLog2TwoPi).epsilon(1e-15));
    CHECK(a.s_ab_upper_bits == doctest::Approx(-3.5036834074).epsilon(1e-9));
    CHECK(std::abs(a.s_ab_upper_bits - (-3.504)) < 1e-3);

    const SteeringAssessment boundary = continuous_memory_bound(
        differential_bits(kLog2TwoPi), differential_bits(0.0), xk);
    CHECK(boundary.s_ab_upper_bits == doctest::Approx(0.0).epsilon(1e-12));

    const ObservablePairSpec quad =
        ObservablePairSpec::make(ObservableKind::quadratures, CommutatorConvention::half);
    const SteeringAssessment half =
        continuous_memory_bound(differential_bits(3.6515), differential_bits(0.0), quad);
    CHECK(half.bound_bits == doctest::Approx(kLog2TwoPi + 1.0).epsilon(1e-15));
    CHECK(std::abs(half.s_ab_upper_bits) < 1e-3);

    CHECK_THROWS_AS(continuous_memory_bound(discrete_bits(1.0), differential_bits(1.0), xk),
                    KindMismatch);

    // angle/OAM keeps the first (angular momentum) side discrete
    const ObservablePairSpec oam = ObservablePairSpec::make(ObservableKind::angle_oam);
    CHECK_NOTHROW(continuous_memory_bound(discrete_bits(0.2), differential_bits(1.0), oam));
    CHECK_THROWS_AS(continuous_memory_bound(differential_bits(0.2), differential_bits(1.0), oam),
                    KindMismatch);
}

TEST_CASE("assessments satisfy the lhs - bound identity bit-exactly") {
    const SteeringAssessment a =
        discrete_memory_bound(discrete_bits(0.7231), discrete_bits(1.1117), 6.0);
    CHECK(a.s_ab_upper_bits == a.lhs_bits - a.bound_bits);
    const SteeringAssessment b = coarse_grained_bound(discrete_bits(2.5), discrete_bits(3.5),
                                                      0.31, 0.17);
    CHECK(b.s_ab_upper_bits == b.lhs_bits - b.bound_bits);
}

TEST_CASE("coarse-grained relation, vacuous flagging and hybrid variant") {
    const double dx = 0.125, dk = 2.0 * std::numbers::pi / (1024.0 * dx);
    const SteeringAssessment tight =
        coarse_grained_bound(discrete_bits(0.0), discrete_bits(0.0), dx, dk);
    CHECK(tight.s_ab_upper_bits == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK_FALSE(tight.vacuous);

    const SteeringAssessment vac = coarse_grained_bound(discrete_bits(0.4), discrete_bits(0.3),
                                                        1.0, 2.0 * std::numbers::pi);
    CHECK(vac.vacuous);
    CHECK(vac.s_ab_upper_bits == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(coarse_grained_bound(discrete_bits(0.0), discrete_bits(0.0), -0.1, 0.1),
                    DomainError);
    CHECK_THROWS_AS(coarse_grained_bound(differential_bits(0.0), discrete_bits(0.0), 0.1, 0.1),
                    KindMismatch);

    const SteeringAssessment hyb = hybrid_bound(discrete_bits(0.0), discrete_bits(0.0), 0.5,
                                                2.0 * std::numbers::pi / 8.0);
    CHECK(hyb.s_ab_upper_bits == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(hyb.relation_id == "hybrid-coarse-grained");
    const SteeringAssessment hyb2 = hybrid_bound(discrete_bits(0.5), discrete_bits(0.5), 1.0,
                                                 2.0 * std::numbers::pi / 8.0);
    CHECK(hyb2.s_ab_upper_bits == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("hybrid with an independent B side reduces to the single-particle relation") {
    // 2 spatial bins x 2 polarization outcomes, product distribution
    Eigen::MatrixXd p(2, 2);
    p << 0.35, 0.35, 0.15, 0.15;
    AxisSpec xa = unit_axis("x", 2);
    xa.bin_width = 0.5;
    const JointDistribution dist = JointDistribution::renormalized(p, xa, unit_axis("pol", 2));
    const double h_cond = conditional_entropy(dist, Direction::a_given_b).bits;
    const double h_marg = marginal_entropy(dist, Side::a).bits;
    CHECK(h_cond == doctest::Approx(h_marg).epsilon(1e-12));
}

TEST_CASE("continuous and coarse assessments agree on the same binned data") {
    std::mt19937_64 eng(5150);
    const Eigen::MatrixXd px = random_distribution(16, 16, eng);
    const Eigen::MatrixXd pk = random_distribution(16, 16, eng);
    AxisSpec xa = unit_axis("x", 16), xb = unit_axis("x", 16);
    AxisSpec ka = unit_axis("k", 16), kb = unit_axis("k", 16);
    xa.bin_width = xb.bin_width = 0.21;
    ka.bin_width = kb.bin_width = 0.095;
    const JointDistribution dx = JointDistribution::renormalized(px, xa, xb);
    const JointDistribution dk = JointDistribution::renormalized(pk, ka, kb);

    const ObservablePairSpec spec = ObservablePairSpec::make(ObservableKind::position_momentum);
    const SteeringAssessment cont = continuous_memory_bound(
        differential_conditional_entropy(dx, Direction::a_given_b),
        differential_conditional_entropy(dk, Direction::a_given_b), spec);
    const SteeringAssessment coarse = coarse_grained_bound(
        conditional_entropy(dx, Direction::a_given_b),
        conditional_entropy(dk, Direction::a_given_b), 0.21, 0.095);
    CHECK(cont.s_ab_upper_bits == doctest::Approx(coarse.s_ab_upper_bits).epsilon(1e-12));
}

TEST_CASE("binned double-Gaussian certificates stay below the continuum and refine toward it") {
    const DoubleGaussianParams p = DoubleGaussianParams::make(4.0, 1.0);
    const double continuum = witnessed_entanglement(p);
    const double sx = position_marginal_std(p);
    const double sk = momentum_marginal_std(p);

    double previous = 0.0;
    for (const int bins : {64, 128, 256}) {
        const AxisSpec xa = centered_axis("x_A", bins, 4.0 * sx);
        const AxisSpec xb = centered_axis("x_B", bins, 4.0 * sx);
        const AxisSpec ka = centered_axis("k_A", bins, 4.0 * sk);
        const AxisSpec kb = centered_axis("k_B", bins, 4.0 * sk);
        const JointDistribution pos = binned_position_distribution(p, xa, xb, 1e-3);
        const JointDistribution mom = binned_momentum_distribution(p, ka, kb, 1e-3);
        const SteeringAssessment a = coarse_grained_bound(
            conditional_entropy(pos, Direction::a_given_b),
            conditional_entropy(mom, Direction::a_given_b), xa.bin_width, ka.bin_width);
        const double certified = -a.s_ab_upper_bits;
        CHECK(certified > 0.5);
        CHECK(certified < continuum + 5e-3);
        CHECK(certified > previous - 1e-9);
        previous = certified;
    }
    CHECK(previous == doctest::Approx(continuum).epsilon(0.02));
}

TEST_CASE("variance witness closed forms") {
    CHECK(variance_witness(0.1, 1.0) == doctest::Approx(1.8792330539983988).epsilon(1e-12));
    CHECK(std::abs(variance_witness(0.1, 1.0) - 1.879) < 0.01);
    CHECK(variance_witness(1.0 / std::numbers::e, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(variance_witness(0.5, 1.0 / std::numbers::e) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(variance_witness(10.0, 10.0) == 0.0); // clamped, never negative
    CHECK_THROWS_AS(variance_witness(0.0, 1.0), DomainError);
}

TEST_CASE("gaussian differential entropy closed forms") {
    CHECK(gaussian_differential_entropy(1.0).bits == doctest::Approx(2.0470956).epsilon(1e-6));
    const double sigma0 = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(gaussian_differential_entropy(sigma0).bits == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gaussian_differential_entropy(2.0).bits ==
          doctest::Approx(gaussian_differential_entropy(1.0).bits + 1.0).epsilon(1e-12));
    CHECK(gaussian_differential_entropy(1.0).kind == EntropyKind::differential);
    CHECK_THROWS_AS(gaussian_differential_entropy(-1.0), DomainError);
}

TEST_CASE("single-particle relation") {
    const double log2_pie = std::log2(std::numbers::pi * std::numbers::e);
    CHECK(single_particle_bound(differential_bits(log2_pie / 2),
                                differential_bits(log2_pie / 2)) ==
          doctest::Approx(std::log2(std::numbers::e / 2.0)).epsilon(1e-12));
    CHECK(single_particle_bound(differential_bits(kLog2TwoPi), differential_bits(0.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(single_particle_bound(differential_bits(kLog2TwoPi + 1.0), differential_bits(1.0)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(single_particle_bound(discrete_bits(1.0), differential_bits(1.0)),
                    KindMismatch);
}

TEST_CASE("witness fires exactly above the threshold ratio") {
    const ObservablePairSpec spec = ObservablePairSpec::make(ObservableKind::position_momentum);
    for (const double ratio : {1.0, 1.5, 2.27, 2.2796, 2.2797, 2.5, 4.0, 30.8}) {
        const double lhs = conditional_entropy_sum(ratio);
        const SteeringAssessment a = continuous_memory_bound(
            differential_bits(lhs / 2), differential_bits(lhs / 2), spec);
        const double certified = std::max(0.0, -a.s_ab_upper_bits);
        if (ratio > witness_threshold_ratio())
            CHECK(certified > 0.0);
        else
            CHECK(certified == 0.0);
        CHECK(certified == doctest::Approx(witnessed_entanglement(ratio)).epsilon(1e-12));
    }
}

TEST_CASE("variance path never beats the entropy path and matches it on the oracle") {
    for (const double ratio : {1.2, 2.0, 4.0, 30.8}) {
        const DoubleGaussianParams p = DoubleGaussianParams::make(ratio, 1.0);
        const double via_variance =
            variance_witness(position_conditional_std(p), momentum_conditional_std(p));
        CHECK(via_variance == doctest::Approx(witnessed_entanglement(p)).epsilon(1e-9));
        CHECK(via_variance <= witnessed_entanglement(p) + 1e-9);

        // the cruder sum/difference widths give exactly log2(R/e), weaker
        const double crude =
            variance_witness(position_diff_std(p), momentum_sum_std(p));
        CHECK(crude ==
              doctest::Approx(std::max(0.0, std::log2(ratio / std::numbers::e))).epsilon(1e-12));
        CHECK(crude <= witnessed_entanglement(p) + 1e-12);
    }
}

TEST_CASE("coarsening measured data never increases the certified bound") {
    const DoubleGaussianParams p = DoubleGaussianParams::make(4.0, 1.0);
    const double sx = position_marginal_std(p);
    const double sk = momentum_marginal_std(p);
    const JointDistribution pos = binned_position_distribution(
        p, centered_axis("x_A", 64, 5.0 * sx), centered_axis("x_B", 64, 5.0 * sx), 1e-3);
    const JointDistribution mom = binned_momentum_distribution(
        p, centered_axis("k_A", 64, 5.0 * sk), centered_axis("k_B", 64, 5.0 * sk), 1e-3);

    const auto certified = [](const JointDistribution& x, const JointDistribution& k) {
        const SteeringAssessment a = coarse_grained_bound(
            conditional_entropy(x, Direction::a_given_b),
            conditional_entropy(k, Direction::a_given_b), x.axis(Side::a).bin_width,
            k.axis(Side::a).bin_width);
        return -a.s_ab_upper_bits;
    };

    const double base = certified(pos, mom);
    for (const int factor : {2, 4, 8}) {
        // A-side merges shrink the bound as fast as the entropy can drop
        CHECK(certified(coarsen(pos, Side::a, factor), mom) <= base + 1e-12);
        // B-side merges leave the bound alone and cannot lower H(A|B)
        CHECK(certified(coarsen(pos, Side::b, factor), mom) <= base + 1e-12);
        CHECK(certified(pos, coarsen(mom, Side::a, factor)) <= base + 1e-12);
    }
}

TEST_CASE("complementarity constant from explicit bases") {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(8, 8);
    const Eigen::MatrixXcd fourier = qft_kernel(QftGrid::make(8, 1.0));
    CHECK(complementarity_constant(eye, fourier) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(complementarity_constant(eye, eye) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd skewed = eye;
    skewed(0, 0) = 2.0;
    CHECK_THROWS_AS(complementarity_constant(eye, skewed), DomainError);
    CHECK_THROWS_AS(complementarity_constant(eye, Eigen::MatrixXcd::Identity(4, 4)), ShapeError);
}

TEST_CASE("observable pair specs validate their fields") {
    CHECK_THROWS_AS(ObservablePairSpec::make(ObservableKind::discrete_mub), DomainError);
    CHECK_NOTHROW(ObservablePairSpec::make(ObservableKind::discrete_mub,
                                           CommutatorConvention::unit, 16.0));
    CHECK_THROWS_AS(ObservablePairSpec::make(ObservableKind::discrete_mub,
                                             CommutatorConvention::unit, 0.5),
                    DomainError);
    CHECK_THROWS_AS(ObservablePairSpec::make(ObservableKind::position_momentum,
                                             CommutatorConvention::half),
                    DomainError);
    CHECK_THROWS_AS(ObservablePairSpec::make(ObservableKind::position_momentum,
                                             CommutatorConvention::unit, 4.0),
                    DomainError);

    for (const ObservableKind kind :
         {ObservableKind::position_momentum, ObservableKind::time_frequency,
          ObservableKind::quadratures, ObservableKind::angle_oam, ObservableKind::number_phase,
          ObservableKind::discrete_mub, ObservableKind::hybrid_continuous_discrete})
        CHECK(observable_kind_from_name(observable_kind_name(kind)) == kind);
    CHECK_THROWS_AS(observable_kind_from_name("spin_parity"), DomainError);
}
