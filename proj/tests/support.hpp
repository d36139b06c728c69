#pragma once

// Shared helpers for the test binaries. Reference implementations here are
// deliberately naive and independent of the library's code paths, so they
// can serve as oracles for it.

#include <eprcert/entropy.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace testsupport {

// Naive -sum p log2 p, no compensation, no library calls.
inline double reference_entropy_bits(const Eigen::MatrixXd& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        for (Eigen::Index j = 0; j < p.cols(); ++j)
            if (p(i, j) > 0.0) h -= p(i, j) * std::log2(p(i, j));
    return h;
}

inline double reference_entropy_bits(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > 0.0) h -= p(i) * std::log2(p(i));
    return h;
}

// H(A|B) = H(AB) - H(B) with B along the columns.
inline double reference_conditional_bits(const Eigen::MatrixXd& p) {
    const Eigen::VectorXd b = p.colwise().sum().transpose();
    return reference_entropy_bits(p) - reference_entropy_bits(b);
}

// Random strictly positive distribution from exponential weights.
inline Eigen::MatrixXd random_distribution(int rows, int cols, std::mt19937_64& eng) {
    std::exponential_distribution<double> expo(1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = expo(eng);
    return m / m.sum();
}

// Random contiguous partition of `count` bins into `parts` non-empty groups.
inline std::vector<int> random_partition(int count, int parts, std::mt19937_64& eng) {
    std::vector<int> sizes(parts, 1);
    std::uniform_int_distribution<int> pick(0, parts - 1);
    for (int extra = count - parts; extra > 0; --extra) ++sizes[pick(eng)];
    return sizes;
}

// Merges groups of adjacent columns (B bins) given their sizes.
inline Eigen::MatrixXd merge_columns(const Eigen::MatrixXd& p, const std::vector<int>& sizes) {
    Eigen::MatrixXd out(p.rows(), static_cast<Eigen::Index>(sizes.size()));
    Eigen::Index col = 0;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        out.col(static_cast<Eigen::Index>(g)) =
            p.middleCols(col, sizes[g]).rowwise().sum();
        col += sizes[g];
    }
    return out;
}

inline Eigen::MatrixXd merge_rows(const Eigen::MatrixXd& p, const std::vector<int>& sizes) {
    return merge_columns(p.transpose(), sizes).transpose();
}

// Composite Gauss-Legendre quadrature, 10 points per panel. Plenty for the
// smooth Gaussian-entropy integrands used in the oracle checks.
inline constexpr int kQuadPoints = 10;
inline constexpr double kQuadNode[kQuadPoints] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
inline constexpr double kQuadWeight[kQuadPoints] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

template <class F>
double integrate(F f, double lo, double hi, int panels) {
    const double width = (hi - lo) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        double local = 0.0;
        for (int g = 0; g < kQuadPoints; ++g)
            local += kQuadWeight[g] * f(mid + 0.5 * width * kQuadNode[g]);
        acc += local * 0.5 * width;
    }
    return acc;
}

template <class F>
double integrate2d(F f, double lo, double hi, int panels) {
    return integrate([&](double x) { return integrate([&](double y) { return f(x, y); },
                                                      lo, hi, panels); },
                     lo, hi, panels);
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double std_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

inline eprcert::AxisSpec unit_axis(const char* label, int count) {
    eprcert::AxisSpec axis;
    axis.label = label;
    axis.count = count;
    return axis;
}

} // namespace testsupport
