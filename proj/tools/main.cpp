// spikes — command-line front end for sparse measure recovery.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "report.hpp"
#include "spikes/io.hpp"

using namespace spikes::cli;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << "\n";
    else
        spikes::write_file(out_path, text);
}

void emitj(const nlohmann::json& j, const std::string& out_path) { emit(j.dump(), out_path); }

}  // namespace

namespace {
// The spike separation flag is spelled --h, so the default -h help shorthand
// must go everywhere.
CLI::App* sub(CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->set_help_flag("--help", "print help and exit");
    return s;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse measure recovery toolkit"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    bool no_meta = false;
    app.add_option("--out", out_path, "write the result JSON to this path")->capture_default_str();
    app.add_option("--seed", seed, "PRNG seed (splitmix64)")->capture_default_str();
    app.add_option("--tol", tol, "tolerance for experiment checks")->capture_default_str();
    app.add_flag("--no-meta", no_meta, "omit wall times for byte-identical reruns");

    int exit_code = 0;

    // ---- bp ----
    auto* bp = sub(&app, "bp", "basis pursuit for measures on the torus");
    {
        auto* solve = sub(bp, "solve", "solve min |mu|(T) s.t. moments(mu) = y");
        auto fc = std::make_shared<int>(0);
        auto y_path = std::make_shared<std::string>();
        auto grid = std::make_shared<std::int64_t>(2048);
        auto polish = std::make_shared<bool>(false);
        auto feas_tol = std::make_shared<double>(1e-7);
        solve->add_option("--fc", *fc, "frequency cutoff (required for CSV input)");
        solve->add_option("--y", *y_path, "moment vector (JSON or CSV file)")->required();
        solve->add_option("--grid", *grid, "grid size N")->capture_default_str();
        solve->add_flag("--polish", *polish, "refine atom positions off the grid");
        solve->add_option("--feas-tol", *feas_tol, "moment residual tolerance");
        solve->callback([=, &out_path, &no_meta]() {
            emitj(run_bp_solve(*fc, *y_path, *grid, *polish, *feas_tol, !no_meta), out_path);
        });

        auto* cert = sub(bp, "certify", "check a primal-dual pair");
        auto m_path = std::make_shared<std::string>();
        auto d_path = std::make_shared<std::string>();
        auto ycert = std::make_shared<std::string>();
        auto ncheck = std::make_shared<std::int64_t>(0);
        auto ctol = std::make_shared<double>(1e-3);
        cert->add_option("--measure", *m_path, "measure JSON")->required();
        cert->add_option("--dual", *d_path, "dual polynomial JSON")->required();
        cert->add_option("--y", *ycert, "moment vector JSON")->required();
        cert->add_option("--ncheck", *ncheck, "sup-norm sample count (0 = 4096 fc)");
        cert->add_option("--cert-tol", *ctol, "certificate tolerance");
        cert->callback([=, &out_path, &exit_code]() {
            bool pass = false;
            emitj(run_bp_certify(*m_path, *d_path, *ycert, *ctol, *ncheck, &pass), out_path);
            if (!pass) exit_code = 1;
        });
    }

    // ---- oracle ----
    auto* oracle = sub(&app, "oracle", "closed-form reference solutions");
    {
        auto* two = sub(oracle, "two-spike", "Dirac-comb solution for a close pair");
        auto fc = std::make_shared<int>(2);
        auto h = std::make_shared<double>(0.1);
        auto table = std::make_shared<bool>(false);
        two->add_option("--fc", *fc, "frequency cutoff")->required();
        two->add_option("--h", *h, "spike separation")->required();
        two->add_flag("--table", *table, "emit a (j, t_j, a_j) CSV instead of JSON");
        two->callback([=, &out_path]() {
            if (*table)
                emit(oracle_table_csv(*fc, *h), out_path);
            else
                emitj(run_oracle_two_spike(*fc, *h), out_path);
        });
    }

    // ---- moment ----
    auto* moment = sub(&app, "moment", "truncated trigonometric moment problems");
    {
        auto* rec = sub(moment, "recover", "nonnegative measure from moments");
        auto y_path = std::make_shared<std::string>();
        auto t0 = std::make_shared<double>(0.0);
        auto charge = std::make_shared<bool>(false);
        rec->add_option("--y", *y_path, "moment vector JSON")->required();
        auto* opt = rec->add_option("--charge", *t0, "construct the solution charging this point");
        rec->callback([=, &out_path]() {
            *charge = opt->count() > 0;
            emitj(run_moment_recover(*y_path, *charge, *t0), out_path);
        });
    }

    // ---- prune ----
    auto* prune = sub(&app, "prune", "constructive sparsification");
    {
        auto* atoms = sub(prune, "atoms", "Caratheodory pruning of a feature instance");
        auto inst = std::make_shared<std::string>();
        atoms->add_option("--instance", *inst, "FeatureInstance JSON")->required();
        atoms->callback([=, &out_path]() { emitj(run_prune_atoms(*inst), out_path); });

        auto* psd = sub(prune, "psd", "rank reduction of a feasible PSD matrix");
        auto pinst = std::make_shared<std::string>();
        psd->add_option("--instance", *pinst, "PsdInstance JSON")->required();
        psd->callback([=, &out_path]() { emitj(run_prune_psd(*pinst), out_path); });
    }

    // ---- spline ----
    auto* spline = sub(&app, "spline", "total-variation spline fitting");
    {
        auto* solve = sub(spline, "solve", "fit min ||D^n u|| under interpolation");
        auto order = std::make_shared<int>(1);
        auto samples = std::make_shared<std::string>();
        auto grid = std::make_shared<std::int64_t>(512);
        auto eval_out = std::make_shared<std::string>();
        solve->add_option("--order", *order, "derivative order n")->required();
        solve->add_option("--samples", *samples, "CSV file with lines s,y")->required();
        solve->add_option("--grid", *grid, "knot grid size")->capture_default_str();
        solve->add_option("--eval-out", *eval_out, "write a dense evaluation CSV here");
        solve->callback([=, &out_path]() {
            emitj(run_spline_solve(*order, *samples, *grid, *eval_out), out_path);
        });
    }

    // ---- experiments ----
    auto* exp = sub(&app, "experiment", "end-to-end reproduction runs");
    {
        auto* two = sub(exp, "two-spike", "recover the comb and check it");
        auto fc = std::make_shared<int>(2);
        auto h = std::make_shared<double>(0.1);
        auto grid = std::make_shared<std::int64_t>(4096);
        auto csv_prefix = std::make_shared<std::string>();
        two->add_option("--fc", *fc, "frequency cutoff")->required();
        two->add_option("--h", *h, "spike separation")->required();
        two->add_option("--grid", *grid, "grid size N")->capture_default_str();
        two->add_option("--csv-prefix", *csv_prefix, "emit plot CSVs with this prefix");
        two->callback([=, &out_path, &seed, &tol, &no_meta, &exit_code]() {
            const ExperimentReport rep =
                cmd_two_spike_experiment(*fc, *h, *grid, seed, tol, *csv_prefix);
            emitj(rep.to_json(!no_meta), out_path);
            if (!rep.all_pass()) exit_code = 1;
        });

        auto* toep = sub(exp, "toeplitz", "forward-recover round trip");
        auto tfc = std::make_shared<int>(3);
        auto tr = std::make_shared<int>(2);
        toep->add_option("--fc", *tfc, "frequency cutoff")->required();
        toep->add_option("--r", *tr, "atom count (<= fc)")->required();
        toep->callback([=, &out_path, &seed, &no_meta, &exit_code]() {
            const ExperimentReport rep = cmd_toeplitz_roundtrip(*tfc, *tr, seed);
            emitj(rep.to_json(!no_meta), out_path);
            if (!rep.all_pass()) exit_code = 1;
        });

        auto* pr = sub(exp, "prune", "pruning property sweep");
        auto pm = std::make_shared<std::size_t>(7);
        auto prr = std::make_shared<std::size_t>(50);
        auto trials = std::make_shared<int>(100);
        pr->add_option("--m", *pm, "measurement count")->required();
        pr->add_option("--r", *prr, "atom count (> m)")->required();
        pr->add_option("--trials", *trials, "number of seeded instances")->capture_default_str();
        pr->callback([=, &out_path, &seed, &no_meta, &exit_code]() {
            const ExperimentReport rep = cmd_prune_bench(*pm, *prr, *trials, seed);
            emitj(rep.to_json(!no_meta), out_path);
            if (!rep.all_pass()) exit_code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
