#include "eprcert/io.hpp"

#include "eprcert/error.hpp"
#include "eprcert/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

namespace eprcert {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trimmed(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    return s.substr(i);
}

std::string sanitize_token(std::string s) {
    std::replace_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; },
                    '_');
    return s.empty() ? std::string("unnamed") : s;
}

double parse_double(const std::string& text, const std::string& where) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(where + ": '" + text + "' is not a number");
    return value;
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
    std::int64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(where + ": '" + text + "' is not an integer");
    return value;
}

// "label=x_A units=mm bin_width=0.1 offset=-3.2 count=64"
void parse_axis_line(const std::string& value, const std::string& where, AxisSpec& axis,
                     std::string& units) {
    std::istringstream tokens(value);
    std::string token;
    bool saw_width = false, saw_offset = false, saw_count = false;
    while (tokens >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError(where + ": expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string val = token.substr(eq + 1);
        if (key == "label") {
            axis.label = val;
        } else if (key == "units") {
            units = val;
        } else if (key == "bin_width") {
            axis.bin_width = parse_double(val, where);
            saw_width = true;
        } else if (key == "offset") {
            axis.offset = parse_double(val, where);
            saw_offset = true;
        } else if (key == "count") {
            axis.count = static_cast<int>(parse_int(val, where));
            saw_count = true;
        } else {
            throw ParseError(where + ": unknown axis field '" + key + "'");
        }
    }
    if (!saw_width || !saw_offset || !saw_count)
        throw ParseError(where + ": axis needs bin_width, offset and count");
}

std::string timestamp_now_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

json assessment_json(const SteeringAssessment& a) {
    return json{{"lhs_bits", a.lhs_bits},
                {"bound_bits", a.bound_bits},
                {"s_upper_bits", a.s_ab_upper_bits},
                {"direction", a.direction == Direction::a_given_b ? "a_given_b" : "b_given_a"},
                {"relation", a.relation_id},
                {"vacuous", a.vacuous}};
}

json certificate_json(const EntanglementCertificate& c) {
    json per_dof = json::array();
    for (const DofContribution& d : c.per_dof)
        per_dof.push_back(json{{"label", d.label},
                               {"ef_ere_esq_lower_ebits", d.ef_ebits},
                               {"ed_lower_ebits", d.ed_ebits},
                               {"ed_certified", d.ed_certified}});
    json out{{"ef_ere_esq_lower_ebits", c.ef_ere_esq_lower},
             {"ed_lower_ebits", c.ed_lower},
             {"ed_certified", c.ed_certified},
             {"s_ab_upper_bits", c.s_ab_upper},
             {"vacuous", c.vacuous},
             {"relation_ids", c.relation_ids},
             {"estimator", c.estimator_note},
             {"per_dof", per_dof}};
    if (c.ed_certified) out["ed_raw_mean_ebits"] = c.ed_raw_mean;
    if (c.s_ba_upper) out["s_ba_upper_bits"] = *c.s_ba_upper;
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

struct IngestedPair {
    JointDistribution first;
    JointDistribution second;
    std::string first_digest;
    std::string second_digest;
};

EntropyValue entropy_of_kind(const JointDistribution& dist, Direction dir, bool continuous_var,
                             Estimator est) {
    return continuous_var ? differential_conditional_entropy(dist, dir, est)
                          : conditional_entropy(dist, dir, est);
}

SteeringAssessment assess_direction(const JointDistribution& first,
                                    const JointDistribution& second, Direction dir,
                                    const CertifyOptions& options,
                                    const ObservablePairSpec& spec) {
    const Side left = left_of(dir);
    const bool left_is_a = left == Side::a;
    switch (options.relation) {
    case RelationChoice::coarse_grained: {
        const EntropyValue h1 = entropy_of_kind(first, dir, false, options.estimator);
        const EntropyValue h2 = entropy_of_kind(second, dir, false, options.estimator);
        return coarse_grained_bound(h1, h2, first.axis(left).bin_width,
                                    second.axis(left).bin_width, dir);
    }
    case RelationChoice::hybrid: {
        const EntropyValue h1 = entropy_of_kind(first, dir, false, options.estimator);
        const EntropyValue h2 = entropy_of_kind(second, dir, false, options.estimator);
        return hybrid_bound(h1, h2, first.axis(left).bin_width, second.axis(left).bin_width,
                            dir);
    }
    case RelationChoice::continuous: {
        // The spec's continuity flags decide, per observable, whether the
        // left variable contributes a differential or a discrete term
        // (angle/OAM keeps the OAM register discrete, for instance).
        const EntropyValue h1 = entropy_of_kind(
            first, dir, left_is_a ? spec.continuous.first_a : spec.continuous.first_b,
            options.estimator);
        const EntropyValue h2 = entropy_of_kind(
            second, dir, left_is_a ? spec.continuous.second_a : spec.continuous.second_b,
            options.estimator);
        return continuous_memory_bound(h1, h2, spec, dir);
    }
    case RelationChoice::discrete_mub: {
        if (!options.omega) throw DomainError("discrete_mub relation requires omega");
        const EntropyValue h1 = entropy_of_kind(first, dir, false, options.estimator);
        const EntropyValue h2 = entropy_of_kind(second, dir, false, options.estimator);
        return discrete_memory_bound(h1, h2, *options.omega, dir);
    }
    }
    throw DomainError("unknown relation choice");
}

} // namespace

const char* relation_choice_name(RelationChoice r) {
    switch (r) {
    case RelationChoice::coarse_grained: return "coarse_grained";
    case RelationChoice::continuous: return "continuous";
    case RelationChoice::discrete_mub: return "discrete_mub";
    case RelationChoice::hybrid: return "hybrid";
    }
    throw DomainError("unknown relation choice");
}

HistogramFile read_histogram_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    HistogramFile hist;
    bool saw_axis_a = false, saw_axis_b = false;
    std::vector<std::vector<std::int64_t>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string where = path.filename().string() + ":" + std::to_string(line_no);
        std::string text = trimmed(line);
        if (text.empty()) continue;
        if (text[0] == '#') {
            text = trimmed(text.substr(1));
            if (text.rfind("eprcert-histogram", 0) == 0) {
                if (text != "eprcert-histogram v1")
                    throw ParseError(where + ": unsupported format version '" + text + "'");
                continue;
            }
            const std::size_t colon = text.find(':');
            if (colon == std::string::npos) continue; // free comment
            const std::string key = trimmed(text.substr(0, colon));
            const std::string value = trimmed(text.substr(colon + 1));
            if (key == "axis_a") {
                parse_axis_line(value, where, hist.axis_a, hist.units_a);
                saw_axis_a = true;
            } else if (key == "axis_b") {
                parse_axis_line(value, where, hist.axis_b, hist.units_b);
                saw_axis_b = true;
            } else if (key == "sample_size") {
                hist.sample_size = parse_int(value, where);
            } else {
                hist.metadata.emplace_back(key, value);
            }
            continue;
        }
        // data row: comma-separated integer counts
        std::vector<std::int64_t> row;
        std::size_t start = 0;
        int cell = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string::npos) comma = text.size();
            const std::string token = trimmed(text.substr(start, comma - start));
            ++cell;
            const std::string cell_where = where + " cell " + std::to_string(cell);
            if (token.empty()) throw ParseError(cell_where + ": empty count");
            const std::int64_t count = parse_int(token, cell_where);
            if (count < 0)
                throw ParseError(cell_where + ": negative count " + std::to_string(count));
            row.push_back(count);
            start = comma + 1;
            if (comma == text.size()) break;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(where + ": row has " + std::to_string(row.size()) +
                             " cells, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw IoError("failed while reading '" + path.string() + "'");
    if (rows.empty()) throw EmptyHistogram("'" + path.string() + "' holds no data rows");

    hist.counts.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            hist.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    if (!saw_axis_a || !saw_axis_b) {
        // Headerless matrix: leave unit axes sized to the data so callers
        // may still ingest with an explicit override.
        if (!saw_axis_a) {
            hist.axis_a.label = "a";
            hist.axis_a.count = static_cast<int>(hist.counts.rows());
        }
        if (!saw_axis_b) {
            hist.axis_b.label = "b";
            hist.axis_b.count = static_cast<int>(hist.counts.cols());
        }
    }
    return hist;
}

void write_histogram_file(const std::filesystem::path& path, const HistogramFile& histogram) {
    std::ostringstream out;
    out << "# eprcert-histogram v" << kHistogramFormatVersion << "\n";
    for (const auto& [key, value] : histogram.metadata) out << "# " << key << ": " << value << "\n";
    const auto axis_line = [&out](const char* name, const AxisSpec& axis,
                                  const std::string& units) {
        out << "# " << name << ": label=" << sanitize_token(axis.label);
        if (!units.empty()) out << " units=" << sanitize_token(units);
        out << " bin_width=" << fmt17(axis.bin_width) << " offset=" << fmt17(axis.offset)
            << " count=" << axis.count << "\n";
    };
    axis_line("axis_a", histogram.axis_a, histogram.units_a);
    axis_line("axis_b", histogram.axis_b, histogram.units_b);
    if (histogram.sample_size) out << "# sample_size: " << *histogram.sample_size << "\n";
    for (Eigen::Index i = 0; i < histogram.counts.rows(); ++i) {
        for (Eigen::Index j = 0; j < histogram.counts.cols(); ++j) {
            if (j) out << ',';
            out << histogram.counts(i, j);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

JointDistribution ingest_histogram(const std::filesystem::path& path,
                                   std::optional<std::pair<AxisSpec, AxisSpec>> axes,
                                   bool angular) {
    HistogramFile hist = read_histogram_file(path);
    AxisSpec axis_a = axes ? axes->first : hist.axis_a;
    AxisSpec axis_b = axes ? axes->second : hist.axis_b;
    if (angular) {
        for (AxisSpec* axis : {&axis_a, &axis_b}) {
            if (axis->count * axis->bin_width > kTwoPi + 1e-9)
                throw DomainError("angular axis '" + axis->label + "' spans more than 2 pi");
            axis->offset = std::remainder(axis->offset, kTwoPi);
        }
    }
    return from_histogram(hist.counts, std::move(axis_a), std::move(axis_b));
}

BinnedSamples bin_samples(const std::vector<double>& a, const std::vector<double>& b,
                          const AxisSpec& axis_a, const AxisSpec& axis_b) {
    if (a.size() != b.size()) throw ShapeError("sample vectors differ in length");
    axis_a.validate();
    axis_b.validate();
    BinnedSamples out;
    out.counts.setZero(axis_a.count, axis_b.count);
    const double a_origin = axis_a.lower_edge(0);
    const double b_origin = axis_b.lower_edge(0);
    for (std::size_t s = 0; s < a.size(); ++s) {
        const double ia = std::floor((a[s] - a_origin) / axis_a.bin_width);
        const double ib = std::floor((b[s] - b_origin) / axis_b.bin_width);
        if (ia < 0 || ia >= axis_a.count || ib < 0 || ib >= axis_b.count) {
            ++out.dropped;
            continue;
        }
        ++out.counts(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib));
    }
    return out;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::uint64_t h = 14695981039346656037ull; // FNV-1a offset basis
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

std::string CertificateDocument::to_json() const {
    json dofs_json = json::array();
    for (const DofRecord& d : dofs) {
        json entry{{"label", d.label},
                   {"inputs",
                    json::array({json{{"path", d.first_path}, {"fnv1a64", d.first_digest}},
                                 json{{"path", d.second_path}, {"fnv1a64", d.second_digest}}})},
                   {"entropies_bits",
                    json{{"first_a_given_b", d.h_first_ab}, {"second_a_given_b", d.h_second_ab}}},
                   {"resolutions",
                    json{{"dx_a", d.dx_a}, {"dk_a", d.dk_a}, {"dx_b", d.dx_b}, {"dk_b", d.dk_b}}},
                   {"assessment_a_given_b", assessment_json(d.ab)},
                   {"certificate", certificate_json(d.certificate)}};
        if (d.h_first_ba) entry["entropies_bits"]["first_b_given_a"] = *d.h_first_ba;
        if (d.h_second_ba) entry["entropies_bits"]["second_b_given_a"] = *d.h_second_ba;
        if (d.ba) entry["assessment_b_given_a"] = assessment_json(*d.ba);
        if (d.sample_size_first) entry["sample_size_first"] = *d.sample_size_first;
        if (d.sample_size_second) entry["sample_size_second"] = *d.sample_size_second;
        dofs_json.push_back(entry);
    }
    json doc{{"schema_version", schema_version},
             {"tool", json{{"name", tool_name}, {"version", tool_version}}},
             {"timestamp_utc", timestamp_utc},
             {"estimator", estimator},
             {"dofs", dofs_json},
             {"combined", certificate_json(combined)}};
    if (variance_witness_ebits) doc["variance_witness_ebits"] = *variance_witness_ebits;
    return doc.dump(2) + "\n";
}

CertificateDocument run_certify(const CertifyOptions& options) {
    CertificateDocument doc;
    doc.schema_version = kCertificateSchemaVersion;
    doc.tool_name = kToolName;
    doc.tool_version = kToolVersion;
    doc.timestamp_utc = timestamp_now_utc();
    doc.estimator = estimator_name(options.estimator);

    if (options.sigma_x || options.sigma_k) {
        if (!options.sigma_x || !options.sigma_k)
            throw DomainError("variance mode needs both sigma_x and sigma_k");
        if (!options.datasets.empty())
            throw DomainError("variance mode does not take histogram datasets");
        const double witnessed = variance_witness(*options.sigma_x, *options.sigma_k);
        doc.variance_witness_ebits = witnessed;
        // Gaussian maximum-entropy stand-ins for the measured conditionals
        // give the same certificate through the continuous relation.
        const double lhs = gaussian_differential_entropy(*options.sigma_x).bits +
                           gaussian_differential_entropy(*options.sigma_k).bits;
        const double bound = std::log2(kTwoPi);
        SteeringAssessment ab{lhs, bound, lhs - bound, Direction::a_given_b, "variance-gaussian",
                              false};
        SteeringAssessment ba = ab;
        ba.direction = Direction::b_given_a;
        doc.combined = certify(ab, ba, "variance", "gaussian-variance");
        return doc;
    }

    if (options.datasets.empty()) throw EmptyInput("no datasets to certify");
    if (options.relation == RelationChoice::discrete_mub && !options.omega)
        throw DomainError("discrete_mub relation requires omega");

    const ObservablePairSpec spec =
        ObservablePairSpec::make(options.pair_kind, options.commutator,
                                 options.pair_kind == ObservableKind::discrete_mub
                                     ? options.omega
                                     : std::nullopt);
    const bool angular = options.pair_kind == ObservableKind::angle_oam ||
                         options.pair_kind == ObservableKind::number_phase;

    std::vector<EntanglementCertificate> parts;
    for (std::size_t i = 0; i < options.datasets.size(); ++i) {
        const DatasetDescriptor& ds = options.datasets[i];
        const std::string label = ds.dof_label.empty() ? "dof" + std::to_string(i) : ds.dof_label;
        const JointDistribution first = ingest_histogram(ds.first_histogram);
        const JointDistribution second =
            ingest_histogram(ds.second_histogram, std::nullopt, angular);

        DofRecord rec;
        rec.label = label;
        rec.first_path = ds.first_histogram.string();
        rec.second_path = ds.second_histogram.string();
        rec.first_digest = file_digest(ds.first_histogram);
        rec.second_digest = file_digest(ds.second_histogram);
        rec.dx_a = first.axis(Side::a).bin_width;
        rec.dk_a = second.axis(Side::a).bin_width;
        rec.dx_b = first.axis(Side::b).bin_width;
        rec.dk_b = second.axis(Side::b).bin_width;
        rec.sample_size_first = first.sample_size();
        rec.sample_size_second = second.sample_size();

        rec.ab = assess_direction(first, second, Direction::a_given_b, options, spec);
        rec.h_first_ab = conditional_entropy(first, Direction::a_given_b, options.estimator).bits;
        rec.h_second_ab =
            conditional_entropy(second, Direction::a_given_b, options.estimator).bits;
        std::optional<SteeringAssessment> ba;
        if (options.both_directions) {
            ba = assess_direction(first, second, Direction::b_given_a, options, spec);
            rec.ba = ba;
            rec.h_first_ba =
                conditional_entropy(first, Direction::b_given_a, options.estimator).bits;
            rec.h_second_ba =
                conditional_entropy(second, Direction::b_given_a, options.estimator).bits;
        }
        rec.certificate = certify(rec.ab, ba, label, estimator_name(options.estimator));
        parts.push_back(rec.certificate);
        doc.dofs.push_back(std::move(rec));
    }
    doc.combined = combine_dofs(parts);
    return doc;
}

void write_certificate(const std::filesystem::path& path, const CertificateDocument& doc) {
    write_text_file(path, doc.to_json());
}

std::string SimulateManifest::to_json() const {
    json dofs_json = json::array();
    for (const SimulatedDof& d : dofs)
        dofs_json.push_back(json{{"label", d.label},
                                 {"x_hist", d.x_hist.filename().string()},
                                 {"k_hist", d.k_hist.filename().string()},
                                 {"seed", d.seed},
                                 {"dropped_position", d.dropped_position},
                                 {"dropped_momentum", d.dropped_momentum}});
    json doc{{"schema_version", kCertificateSchemaVersion},
             {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
             {"params",
              json{{"sigma_plus", options.sigma_plus},
                   {"sigma_minus", options.sigma_minus},
                   {"ratio", ratio}}},
             {"n", options.n},
             {"seed", options.seed},
             {"bins", options.bins},
             {"window_sigmas", options.window_sigmas},
             {"expected_per_dimension",
              json{{"entropy_sum_bits", expected_entropy_sum_bits},
                   {"witnessed_ebits", expected_witnessed_ebits},
                   {"max_entanglement_ebits", expected_max_entanglement_ebits},
                   {"schmidt_lambda", expected_schmidt_lambda}}},
             {"dofs", dofs_json}};
    return doc.dump(2) + "\n";
}

SimulateManifest run_simulate(const SimulateOptions& options) {
    if (options.n <= 0) throw DomainError("sample count must be positive");
    if (options.bins < 1) throw DomainError("bins must be >= 1");
    if (!(options.window_sigmas > 0.0)) throw DomainError("window_sigmas must be positive");
    if (options.dofs < 1) throw DomainError("dofs must be >= 1");
    const DoubleGaussianParams params =
        DoubleGaussianParams::make(options.sigma_plus, options.sigma_minus);

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + options.out_dir.string() + "'");

    SimulateManifest manifest;
    manifest.options = options;
    manifest.ratio = params.ratio();
    manifest.expected_entropy_sum_bits = conditional_entropy_sum(params);
    manifest.expected_witnessed_ebits = witnessed_entanglement(params);
    manifest.expected_max_entanglement_ebits = max_entanglement(params);
    manifest.expected_schmidt_lambda = schmidt_lambda(params);

    const double x_half = options.window_sigmas * position_marginal_std(params);
    const double k_half = options.window_sigmas * momentum_marginal_std(params);

    for (int dof = 0; dof < options.dofs; ++dof) {
        const std::string label = "dof" + std::to_string(dof);
        const std::uint64_t dof_seed =
            splitmix64(options.seed + static_cast<std::uint64_t>(dof) * 0x9E3779B97F4A7C15ull);
        const SampleBatch batch = sample(params, options.n, dof_seed);

        const AxisSpec xa = centered_axis("x_A", options.bins, x_half);
        const AxisSpec xb = centered_axis("x_B", options.bins, x_half);
        const AxisSpec ka = centered_axis("k_A", options.bins, k_half);
        const AxisSpec kb = centered_axis("k_B", options.bins, k_half);

        const BinnedSamples pos = bin_samples(batch.x_a, batch.x_b, xa, xb);
        const BinnedSamples mom = bin_samples(batch.k_a, batch.k_b, ka, kb);

        SimulatedDof rec;
        rec.label = label;
        rec.seed = dof_seed;
        rec.dropped_position = pos.dropped;
        rec.dropped_momentum = mom.dropped;
        rec.x_hist = options.out_dir / (label + "_x.hist");
        rec.k_hist = options.out_dir / (label + "_k.hist");

        HistogramFile xfile;
        xfile.counts = pos.counts;
        xfile.axis_a = xa;
        xfile.axis_b = xb;
        xfile.units_a = xfile.units_b = "mm";
        xfile.sample_size = options.n - pos.dropped;
        xfile.metadata.emplace_back("observable", "position");
        write_histogram_file(rec.x_hist, xfile);

        HistogramFile kfile;
        kfile.counts = mom.counts;
        kfile.axis_a = ka;
        kfile.axis_b = kb;
        kfile.units_a = kfile.units_b = "rad/mm";
        kfile.sample_size = options.n - mom.dropped;
        kfile.metadata.emplace_back("observable", "momentum");
        write_histogram_file(rec.k_hist, kfile);

        manifest.dofs.push_back(std::move(rec));
    }
    write_text_file(options.out_dir / "manifest.json", manifest.to_json());
    return manifest;
}

std::vector<ConvergenceRow> run_converge(const ConvergeOptions& options) {
    if (options.n_values.empty()) throw EmptyInput("no grid sizes requested");
    const DoubleGaussianParams params =
        DoubleGaussianParams::make(options.sigma_plus, options.sigma_minus);

    std::ostringstream table;
    table << "# eprcert convergence v1\n";
    table << "# state: sigma_plus=" << fmt17(options.sigma_plus)
          << " sigma_minus=" << fmt17(options.sigma_minus) << " ratio=" << fmt17(params.ratio())
          << "\n";
    table << "# columns: mode\tn\tdx\tdk\tlhs_differential\tanalytic_lhs\tlhs_error\t"
             "s_ab_exact\ts_ab_analytic\ts_error\tmargin\tnorm_deficit\n";

    const auto emit = [&table](const char* mode, const std::vector<ConvergenceRow>& rows) {
        for (const ConvergenceRow& r : rows) {
            table << mode << '\t' << r.n << '\t' << fmt17(r.dx) << '\t' << fmt17(r.dk) << '\t'
                  << fmt17(r.lhs_differential) << '\t' << fmt17(r.analytic_lhs) << '\t'
                  << fmt17(std::abs(r.lhs_differential - r.analytic_lhs)) << '\t'
                  << fmt17(r.s_ab_exact) << '\t' << fmt17(r.s_ab_analytic) << '\t'
                  << fmt17(std::abs(r.s_ab_exact - r.s_ab_analytic)) << '\t' << fmt17(r.margin)
                  << '\t' << fmt17(r.norm_deficit) << '\n';
        }
    };

    const double half_width = options.window_sigmas * params.sigma_plus;
    const std::vector<ConvergenceRow> window_rows =
        convergence_study(params, fixed_window_schedule(options.n_values, half_width));
    emit("fixed-window", window_rows);
    if (options.fixed_dx) {
        const std::vector<ConvergenceRow> res_rows = convergence_study(
            params, fixed_resolution_schedule(options.n_values, *options.fixed_dx));
        emit("fixed-resolution", res_rows);
    }
    if (!options.table_path.empty()) write_text_file(options.table_path, table.str());

    if (!options.sweep_path.empty()) {
        if (options.sweep_points < 2) throw DomainError("sweep needs at least two points");
        if (!(options.sweep_max_ratio > 1.0)) throw DomainError("sweep_max_ratio must exceed 1");
        std::ostringstream sweep;
        sweep << "# eprcert ratio sweep v1\n";
        sweep << "# witness threshold ratio: " << fmt17(witness_threshold_ratio()) << "\n";
        sweep << "# gap asymptote (two dimensions): " << fmt17(gap_asymptote_two_dimensions())
              << "\n";
        sweep << "# columns: ratio\twitnessed_per_dim\tmax_per_dim\twitnessed_two_dim\t"
                 "max_two_dim\tgap_two_dim\n";
        const double log_max = std::log(options.sweep_max_ratio);
        for (int i = 0; i < options.sweep_points; ++i) {
            const double r = std::exp(log_max * i / (options.sweep_points - 1));
            const double w = witnessed_entanglement(r);
            const double m = max_entanglement(r);
            sweep << fmt17(r) << '\t' << fmt17(w) << '\t' << fmt17(m) << '\t' << fmt17(2 * w)
                  << '\t' << fmt17(2 * m) << '\t' << fmt17(2 * (m - w)) << '\n';
        }
        write_text_file(options.sweep_path, sweep.str());
    }
    return window_rows;
}

OracleReport oracle_report(double ratio) {
    OracleReport r;
    r.ratio = ratio;
    r.schmidt_lambda = schmidt_lambda(ratio);
    r.entropy_sum_bits = conditional_entropy_sum(ratio);
    r.witnessed_per_dimension = witnessed_entanglement(ratio);
    r.witnessed_two_dimensions = 2.0 * r.witnessed_per_dimension;
    r.max_per_dimension = max_entanglement(ratio);
    r.max_two_dimensions = 2.0 * r.max_per_dimension;
    r.gap_two_dimensions = r.max_two_dimensions - r.witnessed_two_dimensions;
    r.threshold_ratio = witness_threshold_ratio();
    r.gap_asymptote = gap_asymptote_two_dimensions();
    return r;
}

std::string format_oracle_report(const OracleReport& r) {
    std::ostringstream out;
    char buf[128];
    const auto line = [&out, &buf](const char* name, double value) {
        std::snprintf(buf, sizeof buf, "  %-34s %.6f\n", name, value);
        out << buf;
    };
    out << "double-Gaussian oracle at ratio " << fmt17(r.ratio) << "\n";
    line("schmidt_lambda", r.schmidt_lambda);
    line("conditional entropy sum (bits)", r.entropy_sum_bits);
    line("witnessed per dimension (ebits)", r.witnessed_per_dimension);
    line("witnessed, two dimensions", r.witnessed_two_dimensions);
    line("maximum per dimension (ebits)", r.max_per_dimension);
    line("maximum, two dimensions", r.max_two_dimensions);
    line("gap, two dimensions", r.gap_two_dimensions);
    line("witness threshold ratio", r.threshold_ratio);
    line("gap asymptote, two dimensions", r.gap_asymptote);
    return out.str();
}

} // namespace eprcert
