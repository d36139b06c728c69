// eprcert: certify entanglement lower bounds from joint histograms of
// complementary observables, generate synthetic double-Gaussian data, and
// study the discretized relation's approach to the continuum.
#include <CLI11.hpp>

#include "eprcert/error.hpp"
#include "eprcert/io.hpp"
#include "eprcert/version.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace eprcert;

void print_certificate_summary(const CertificateDocument& doc) {
    const EntanglementCertificate& c = doc.combined;
    std::printf("E_F, E_RE, E_SQ >= %.6f ebits\n", c.ef_ere_esq_lower);
    if (c.ed_certified)
        std::printf("E_D          >= %.6f ebits\n", c.ed_lower);
    else
        std::printf("E_D           : not certified (needs both directions)\n");
    std::printf("S(A|B)       <= %.6f bits\n", c.s_ab_upper);
    if (c.s_ba_upper) std::printf("S(B|A)       <= %.6f bits\n", *c.s_ba_upper);
    if (c.vacuous) std::printf("note: every relation bound was vacuous at this resolution\n");
    std::string relations;
    for (const std::string& id : c.relation_ids) {
        if (!relations.empty()) relations += ", ";
        relations += id;
    }
    std::printf("relations     : %s\n", relations.c_str());
    std::printf("estimator     : %s\n", doc.estimator.c_str());
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement certification from complementary-observable statistics"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    const std::map<std::string, RelationChoice> relation_names{
        {"coarse_grained", RelationChoice::coarse_grained},
        {"continuous", RelationChoice::continuous},
        {"discrete_mub", RelationChoice::discrete_mub},
        {"hybrid", RelationChoice::hybrid}};
    const std::map<std::string, ObservableKind> pair_names{
        {"position_momentum", ObservableKind::position_momentum},
        {"time_frequency", ObservableKind::time_frequency},
        {"quadratures", ObservableKind::quadratures},
        {"angle_oam", ObservableKind::angle_oam},
        {"number_phase", ObservableKind::number_phase},
        {"discrete_mub", ObservableKind::discrete_mub},
        {"hybrid_continuous_discrete", ObservableKind::hybrid_continuous_discrete}};
    const std::map<std::string, CommutatorConvention> commutator_names{
        {"unit", CommutatorConvention::unit}, {"half", CommutatorConvention::half}};
    const std::map<std::string, Estimator> estimator_names{
        {"plug_in", Estimator::plug_in}, {"miller_madow", Estimator::miller_madow}};

    // certify
    auto* certify_cmd =
        app.add_subcommand("certify", "turn histogram pairs into an entanglement certificate");
    std::vector<std::string> firsts, seconds, labels;
    std::string out_path = "certificate.json";
    CertifyOptions certify_options;
    bool one_direction = false;
    certify_cmd->add_option("--first", firsts,
                            "first-observable histogram, one per degree of freedom");
    certify_cmd->add_option("--second", seconds,
                            "second-observable histogram, one per degree of freedom");
    certify_cmd->add_option("--label", labels, "degree-of-freedom labels (defaults to dofN)");
    certify_cmd->add_option("--relation", certify_options.relation, "uncertainty relation to apply")
        ->transform(CLI::CheckedTransformer(relation_names, CLI::ignore_case))
        ->default_str("coarse_grained");
    certify_cmd->add_option("--pair", certify_options.pair_kind, "observable pair kind")
        ->transform(CLI::CheckedTransformer(pair_names, CLI::ignore_case))
        ->default_str("position_momentum");
    certify_cmd
        ->add_option("--commutator", certify_options.commutator,
                     "commutator convention (half only for quadratures)")
        ->transform(CLI::CheckedTransformer(commutator_names, CLI::ignore_case))
        ->default_str("unit");
    certify_cmd->add_option("--omega", certify_options.omega,
                            "complementarity constant for discrete_mub");
    certify_cmd->add_flag("--one-direction", one_direction,
                          "assess A|B only; drops the distillable-entanglement bound");
    certify_cmd->add_option("--estimator", certify_options.estimator, "entropy estimator")
        ->transform(CLI::CheckedTransformer(estimator_names, CLI::ignore_case))
        ->default_str("plug_in");
    certify_cmd->add_option("--sigma-x", certify_options.sigma_x,
                            "variance mode: inference std of the first observable");
    certify_cmd->add_option("--sigma-k", certify_options.sigma_k,
                            "variance mode: inference std of the second observable");
    certify_cmd->add_option("-o,--out", out_path, "certificate output path")
        ->capture_default_str();

    // simulate
    auto* simulate_cmd =
        app.add_subcommand("simulate", "draw double-Gaussian samples and export histograms");
    SimulateOptions simulate_options;
    simulate_options.out_dir = "simulated";
    simulate_cmd->add_option("--sigma-plus", simulate_options.sigma_plus, "std of (x_a+x_b)/sqrt2")
        ->capture_default_str();
    simulate_cmd
        ->add_option("--sigma-minus", simulate_options.sigma_minus, "std of (x_a-x_b)/sqrt2")
        ->capture_default_str();
    simulate_cmd->add_option("-n,--events", simulate_options.n, "events per degree of freedom")
        ->capture_default_str();
    simulate_cmd->add_option("--seed", simulate_options.seed, "master seed")
        ->capture_default_str();
    simulate_cmd->add_option("--bins", simulate_options.bins, "bins per axis")
        ->capture_default_str();
    simulate_cmd
        ->add_option("--window", simulate_options.window_sigmas,
                     "half-width in units of the marginal std")
        ->capture_default_str();
    simulate_cmd->add_option("--dofs", simulate_options.dofs, "independent degrees of freedom")
        ->capture_default_str();
    simulate_cmd->add_option("-o,--out-dir", simulate_options.out_dir, "output directory")
        ->capture_default_str();

    // converge
    auto* converge_cmd = app.add_subcommand(
        "converge", "tabulate the discretized relation against its continuum values");
    ConvergeOptions converge_options;
    converge_options.table_path = "convergence.tsv";
    std::string table_path_str = converge_options.table_path.string();
    std::string sweep_path_str;
    converge_cmd->add_option("--sigma-plus", converge_options.sigma_plus, "std of (x_a+x_b)/sqrt2")
        ->capture_default_str();
    converge_cmd
        ->add_option("--sigma-minus", converge_options.sigma_minus, "std of (x_a-x_b)/sqrt2")
        ->capture_default_str();
    converge_cmd->add_option("--grid", converge_options.n_values, "grid sizes, even, ascending");
    converge_cmd
        ->add_option("--window", converge_options.window_sigmas,
                     "half-width in units of sigma_plus")
        ->capture_default_str();
    converge_cmd->add_option("--fixed-dx", converge_options.fixed_dx,
                             "also run a fixed-resolution block at this spacing");
    converge_cmd->add_option("--table", table_path_str, "refinement table output")
        ->capture_default_str();
    converge_cmd->add_option("--sweep", sweep_path_str,
                             "also write the witnessed-vs-maximum ratio sweep here");
    converge_cmd->add_option("--sweep-points", converge_options.sweep_points, "sweep row count")
        ->capture_default_str();
    converge_cmd
        ->add_option("--sweep-max-ratio", converge_options.sweep_max_ratio, "sweep upper ratio")
        ->capture_default_str();

    // oracle
    auto* oracle_cmd =
        app.add_subcommand("oracle", "print the double-Gaussian closed forms for a ratio");
    double oracle_ratio = 4.0;
    oracle_cmd->add_option("-r,--ratio", oracle_ratio, "correlation ratio sigma_plus/sigma_minus")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (certify_cmd->parsed()) {
        return run_guarded([&] {
            if (firsts.size() != seconds.size())
                throw ParseError("--first and --second must be given the same number of times");
            for (std::size_t i = 0; i < firsts.size(); ++i) {
                DatasetDescriptor ds;
                ds.first_histogram = firsts[i];
                ds.second_histogram = seconds[i];
                if (i < labels.size()) ds.dof_label = labels[i];
                certify_options.datasets.push_back(std::move(ds));
            }
            certify_options.both_directions = !one_direction;
            const CertificateDocument doc = run_certify(certify_options);
            write_certificate(out_path, doc);
            print_certificate_summary(doc);
            std::printf("certificate   : %s\n", out_path.c_str());
        });
    }
    if (simulate_cmd->parsed()) {
        return run_guarded([&] {
            const SimulateManifest manifest = run_simulate(simulate_options);
            std::printf("wrote %zu degree(s) of freedom under %s\n", manifest.dofs.size(),
                        simulate_options.out_dir.string().c_str());
            for (const SimulatedDof& d : manifest.dofs)
                std::printf("  %s: %s %s (dropped %lld position, %lld momentum)\n",
                            d.label.c_str(), d.x_hist.filename().string().c_str(),
                            d.k_hist.filename().string().c_str(),
                            static_cast<long long>(d.dropped_position),
                            static_cast<long long>(d.dropped_momentum));
            std::printf("expected per dimension: witnessed %.6f ebits, maximum %.6f ebits\n",
                        manifest.expected_witnessed_ebits,
                        manifest.expected_max_entanglement_ebits);
        });
    }
    if (converge_cmd->parsed()) {
        return run_guarded([&] {
            converge_options.table_path = table_path_str;
            converge_options.sweep_path = sweep_path_str;
            const std::vector<ConvergenceRow> rows = run_converge(converge_options);
            const ConvergenceRow& last = rows.back();
            std::printf("table         : %s\n", table_path_str.c_str());
            if (!sweep_path_str.empty()) std::printf("sweep         : %s\n", sweep_path_str.c_str());
            std::printf("finest row    : n=%d dx=%.6g lhs_error=%.3e s_error=%.3e margin=%.3e\n",
                        last.n, last.dx, std::abs(last.lhs_differential - last.analytic_lhs),
                        std::abs(last.s_ab_exact - last.s_ab_analytic), last.margin);
        });
    }
    return run_guarded([&] { std::fputs(format_oracle_report(oracle_report(oracle_ratio)).c_str(),
                                        stdout); });
}
