#pragma once

#include "eprcert/double_gaussian.hpp"
#include "eprcert/entropy.hpp"
#include "eprcert/monotones.hpp"
#include "eprcert/qft_lab.hpp"
#include "eprcert/witness.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eprcert {

// Joint histogram text format, version 1. Header lines start with '#';
// data rows are comma-separated non-negative integers, one row per A bin:
//
//   # eprcert-histogram v1
//   # observable: position
//   # axis_a: label=x_A units=mm bin_width=0.1 offset=-12.75 count=256
//   # axis_b: label=x_B units=mm bin_width=0.1 offset=-12.75 count=256
//   # sample_size: 1000000
//   0,3,1,...
//
// Unknown "# key: value" lines are preserved as metadata. Whitespace around
// delimiters is ignored; doubles are written with 17 significant digits so
// the file round-trips bit-exactly.
struct HistogramFile {
    CountMatrix counts;
    AxisSpec axis_a;
    AxisSpec axis_b;
    std::string units_a;
    std::string units_b;
    std::optional<std::int64_t> sample_size;
    std::vector<std::pair<std::string, std::string>> metadata;
};

HistogramFile read_histogram_file(const std::filesystem::path& path);
void write_histogram_file(const std::filesystem::path& path, const HistogramFile& histogram);

// Reads, validates and normalizes in one step. Axis metadata from the file
// header is used unless an override is supplied (for headerless matrices).
// With `angular` set, both axes are checked to span at most a full turn and
// offsets are wrapped into [-pi, pi).
JointDistribution ingest_histogram(const std::filesystem::path& path,
                                   std::optional<std::pair<AxisSpec, AxisSpec>> axes = std::nullopt,
                                   bool angular = false);

// Bins sample pairs onto the axes; pairs falling outside the window are
// dropped and counted.
struct BinnedSamples {
    CountMatrix counts;
    std::int64_t dropped = 0;
};
BinnedSamples bin_samples(const std::vector<double>& a, const std::vector<double>& b,
                          const AxisSpec& axis_a, const AxisSpec& axis_b);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

enum class RelationChoice { coarse_grained, continuous, discrete_mub, hybrid };
const char* relation_choice_name(RelationChoice r);

struct DatasetDescriptor {
    std::filesystem::path first_histogram;  // e.g. position table
    std::filesystem::path second_histogram; // e.g. momentum table
    std::string dof_label;
};

struct CertifyOptions {
    std::vector<DatasetDescriptor> datasets;
    ObservableKind pair_kind = ObservableKind::position_momentum;
    CommutatorConvention commutator = CommutatorConvention::unit;
    RelationChoice relation = RelationChoice::coarse_grained;
    std::optional<double> omega;       // discrete_mub only
    bool both_directions = true;       // false: A|B only, no distillable bound
    Estimator estimator = Estimator::plug_in;

    // Variance mode: bypasses histograms entirely.
    std::optional<double> sigma_x;
    std::optional<double> sigma_k;
};

struct DofRecord {
    std::string label;
    std::string first_path;
    std::string second_path;
    std::string first_digest;
    std::string second_digest;
    double h_first_ab = 0.0; // bits, discrete
    double h_second_ab = 0.0;
    std::optional<double> h_first_ba;
    std::optional<double> h_second_ba;
    double dx_a = 0.0, dk_a = 0.0, dx_b = 0.0, dk_b = 0.0;
    std::optional<std::int64_t> sample_size_first;
    std::optional<std::int64_t> sample_size_second;
    SteeringAssessment ab;
    std::optional<SteeringAssessment> ba;
    EntanglementCertificate certificate;
};

struct CertificateDocument {
    int schema_version = 0;
    std::string tool_name;
    std::string tool_version;
    std::string timestamp_utc; // excluded from reproducibility guarantees
    std::string estimator;
    std::vector<DofRecord> dofs;
    EntanglementCertificate combined;
    std::optional<double> variance_witness_ebits; // variance mode only

    std::string to_json() const; // deterministic except for the timestamp
};

CertificateDocument run_certify(const CertifyOptions& options);
void write_certificate(const std::filesystem::path& path, const CertificateDocument& doc);

struct SimulateOptions {
    double sigma_plus = 1.0;
    double sigma_minus = 1.0;
    std::int64_t n = 100000;
    std::uint64_t seed = 1;
    int bins = 256;
    double window_sigmas = 5.0; // half-width in units of the marginal stds
    int dofs = 1;
    std::filesystem::path out_dir;
};

struct SimulatedDof {
    std::string label;
    std::filesystem::path x_hist;
    std::filesystem::path k_hist;
    std::uint64_t seed = 0;
    std::int64_t dropped_position = 0;
    std::int64_t dropped_momentum = 0;
};

struct SimulateManifest {
    SimulateOptions options;
    double ratio = 1.0;
    std::vector<SimulatedDof> dofs;
    // closed-form expectations for the simulated state, per dimension
    double expected_entropy_sum_bits = 0.0;
    double expected_witnessed_ebits = 0.0;
    double expected_max_entanglement_ebits = 0.0;
    double expected_schmidt_lambda = 0.0;

    std::string to_json() const;
};

// Draws the samples, writes <label>_x.hist / <label>_k.hist per degree of
// freedom plus manifest.json into out_dir. Deterministic in the seed.
SimulateManifest run_simulate(const SimulateOptions& options);

struct ConvergeOptions {
    double sigma_plus = 4.0;
    double sigma_minus = 1.0;
    std::vector<int> n_values = {32, 64, 128, 256, 512};
    double window_sigmas = 8.0;    // half-width in units of sigma_plus
    std::optional<double> fixed_dx; // adds a fixed-resolution block
    std::filesystem::path table_path;
    std::filesystem::path sweep_path; // empty: skip the sweep file
    int sweep_points = 201;
    double sweep_max_ratio = 1e4;
};

// Writes the refinement table (and optionally the witnessed-vs-maximum
// entanglement sweep used for plotting) as tab-separated text.
std::vector<ConvergenceRow> run_converge(const ConvergeOptions& options);

struct OracleReport {
    double ratio = 1.0;
    double schmidt_lambda = 1.0;
    double entropy_sum_bits = 0.0;
    double witnessed_per_dimension = 0.0;
    double witnessed_two_dimensions = 0.0;
    double max_per_dimension = 0.0;
    double max_two_dimensions = 0.0;
    double gap_two_dimensions = 0.0;
    double threshold_ratio = 0.0;
    double gap_asymptote = 0.0;
};

OracleReport oracle_report(double ratio);
std::string format_oracle_report(const OracleReport& report);

} // namespace eprcert
