#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "spikes/bp_torus.hpp"
#include "spikes/certificate.hpp"
#include "spikes/io.hpp"
#include "spikes/l1_lp.hpp"
#include "spikes/measures.hpp"
#include "spikes/rng.hpp"
#include "spikes/sparsify.hpp"
#include "spikes/spline.hpp"
#include "spikes/toeplitz.hpp"
#include "spikes/two_spike.hpp"

namespace spikes::cli {

using nlohmann::json;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

json measure_json(const AtomicMeasure& mu) { return json::parse(spikes::to_json(mu)); }
json poly_json(const TrigPolynomial& p) { return json::parse(spikes::to_json(p)); }

MomentVector load_moments(const std::string& path, int fc_hint) {
    const std::string text = read_file(path);
    // JSON payloads start with '{'; anything else is treated as CSV and
    // needs the cutoff from the command line.
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return moments_from_json(text);
    if (fc_hint < 1)
        throw UsageError("CSV moment input requires --fc");
    return MomentVector(TrigSystem(fc_hint), csv_to_vector(text));
}

Mat mat_from_json(const json& j) {
    Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows * m.cols)
        throw UsageError("matrix payload size does not match its dimensions");
    m.a = data;
    return m;
}

json mat_to_json(const Mat& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.a}};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::violated: return "violated";
        default: return "inconclusive";
    }
}

json certificate_json(const CertificateReport& r) {
    return json{{"sup_norm_bound", r.sup_norm_bound},
                {"extremality_max_err", r.extremality_max_err},
                {"gap", r.gap},
                {"verdict", verdict_name(r.verdict)}};
}

// Greedy matching of recovered atoms against a reference; infinity on a
// count mismatch.
void match_errors(const AtomicMeasure& got, const AtomicMeasure& want, double* pos_err,
                  double* amp_err, bool relative_amp = false) {
    *pos_err = std::numeric_limits<double>::infinity();
    *amp_err = std::numeric_limits<double>::infinity();
    if (got.size() != want.size()) return;
    *pos_err = 0.0;
    *amp_err = 0.0;
    std::vector<bool> used(want.size(), false);
    for (const Atom& g : got.atoms()) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t pick = want.size();
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (used[i]) continue;
            const double d = TorusPoint::distance(g.position, want.atoms()[i].position);
            if (d < best) {
                best = d;
                pick = i;
            }
        }
        used[pick] = true;
        *pos_err = std::max(*pos_err, best);
        double da = std::abs(g.amplitude - want.atoms()[pick].amplitude);
        if (relative_amp) da /= std::max(std::abs(want.atoms()[pick].amplitude), 1e-300);
        *amp_err = std::max(*amp_err, da);
    }
}

AtomicMeasure random_separated(SplitMix64& rng, int count, double min_sep, double lo, double hi,
                               bool signed_amps) {
    std::vector<Atom> atoms;
    int guard = 0;
    while (static_cast<int>(atoms.size()) < count && guard < 200000) {
        ++guard;
        const TorusPoint x(rng.uniform());
        bool ok = true;
        for (const Atom& a : atoms)
            if (TorusPoint::distance(a.position, x) < min_sep) ok = false;
        if (!ok) continue;
        double amp = rng.uniform(lo, hi);
        if (signed_amps && rng.next() % 2 == 0) amp = -amp;
        atoms.push_back(Atom{x, amp});
    }
    if (static_cast<int>(atoms.size()) != count)
        throw UsageError("cannot place the requested atom count at this separation");
    return AtomicMeasure(std::move(atoms));
}

}  // namespace

json run_bp_solve(int fc, const std::string& y_path, std::int64_t grid, bool polish,
                  double feas_tol, bool include_meta) {
    const MomentVector y = load_moments(y_path, fc);
    BpConfig cfg;
    cfg.grid_size = grid;
    cfg.polish = polish;
    cfg.feas_tol = feas_tol;
    const double t0 = now_ms();
    const BpResult r = solve_bp_grid(y, cfg);
    const double t1 = now_ms();
    json out{{"measure", measure_json(r.measure)},
             {"dual", poly_json(r.dual)},
             {"objective", r.objective},
             {"gap", r.duality_gap},
             {"lp_objective", r.lp_objective}};
    if (include_meta) out["wall_time_ms"] = t1 - t0;
    return out;
}

json run_bp_certify(const std::string& measure_path, const std::string& dual_path,
                    const std::string& y_path, double tol, std::int64_t n_check, bool* pass) {
    const AtomicMeasure mu = measure_from_json(read_file(measure_path));
    const TrigPolynomial eta = trig_poly_from_json(read_file(dual_path));
    const MomentVector y = moments_from_json(read_file(y_path));
    const CertificateReport r = certify(mu, eta, y, tol, n_check);
    if (pass) *pass = r.verdict == Verdict::certified;
    return certificate_json(r);
}

json run_oracle_two_spike(int fc, double h) {
    if (fc < 1) throw UsageError("--fc must be >= 1");
    if (!(h > 0.0) || h > 1.0 / (2.0 * fc))
        throw UsageError("--h must lie in (0, 1/(2 fc)]");
    if (h == 1.0 / (2.0 * fc)) {
        const AtomicMeasure mu = oracle_boundary(fc);
        TrigSystem sys(fc);
        std::vector<double> p(sys.size(), 0.0);
        p.back() = 1.0;
        return json{{"measure", measure_json(mu)},
                    {"dual", poly_json(TrigPolynomial(sys, p))},
                    {"boundary", true}};
    }
    const auto [mu, eta] = oracle_solution(fc, h);
    return json{{"measure", measure_json(mu)}, {"dual", poly_json(eta)}, {"boundary", false}};
}

std::string oracle_table_csv(int fc, double h) {
    if (fc < 1) throw UsageError("--fc must be >= 1");
    if (!(h > 0.0 && h < 1.0 / (2.0 * fc)))
        throw UsageError("--table requires 0 < h < 1/(2 fc)");
    const auto [mu, eta] = oracle_solution(fc, h);
    std::ostringstream out;
    out << "j,t_j,a_j\n";
    int j = -fc;
    for (const Atom& a : mu.atoms()) {
        out << j << "," << to_csv(std::vector<double>{a.position.value()}) << "," << to_csv(std::vector<double>{a.amplitude}) << "\n";
        ++j;
    }
    return out.str();
}

json run_moment_recover(const std::string& y_path, bool charge, double t0) {
    const MomentVector y = moments_from_json(read_file(y_path));
    if (charge) {
        const AtomicMeasure mu = recover_charging(y, TorusPoint(t0));
        const MomentDiagnosis d = diagnose(build_toeplitz(y));
        return json{{"branch", "charging"},
                    {"measure", measure_json(mu)},
                    {"diagnosis",
                     {{"is_psd", d.is_psd}, {"rank", d.rank}, {"eigenvalues", d.eigenvalues}}}};
    }
    const MomentRecovery rec = recover_nonneg(y);
    const char* branch = rec.branch == MomentBranch::recovered
                             ? "recovered"
                             : (rec.branch == MomentBranch::nonunique ? "nonunique"
                                                                      : "no_solution");
    json out{{"branch", branch},
             {"diagnosis",
              {{"is_psd", rec.diagnosis.is_psd},
               {"rank", rec.diagnosis.rank},
               {"eigenvalues", rec.diagnosis.eigenvalues}}}};
    if (rec.branch == MomentBranch::recovered) out["measure"] = measure_json(rec.measure);
    return out;
}

json run_prune_atoms(const std::string& instance_path) {
    const json j = json::parse(read_file(instance_path));
    FeatureInstance inst = FeatureInstance::checked(
        mat_from_json(j.at("features")), j.at("amplitudes").get<std::vector<double>>(),
        j.at("target").get<std::vector<double>>());
    const FeatureInstance out = caratheodory_prune(inst);
    double tv_in = 0.0, tv_out = 0.0;
    for (double v : inst.amplitudes) tv_in += std::abs(v);
    for (double v : out.amplitudes) tv_out += std::abs(v);
    const std::vector<double> back = out.features * out.amplitudes;
    double drift = 0.0;
    for (std::size_t i = 0; i < out.target.size(); ++i)
        drift = std::max(drift, std::abs(back[i] - out.target[i]));
    return json{{"features", mat_to_json(out.features)},
                {"amplitudes", out.amplitudes},
                {"target", out.target},
                {"atoms_in", inst.amplitudes.size()},
                {"atoms_out", out.amplitudes.size()},
                {"tv_in", tv_in},
                {"tv_out", tv_out},
                {"feasibility_drift", drift}};
}

json run_prune_psd(const std::string& instance_path) {
    const json j = json::parse(read_file(instance_path));
    std::vector<Mat> constraints;
    for (const auto& c : j.at("constraints")) constraints.push_back(mat_from_json(c));
    PsdInstance inst = PsdInstance::checked(mat_from_json(j.at("q")), std::move(constraints),
                                            j.at("rhs").get<std::vector<double>>());
    const PsdInstance out = psd_rank_reduce(inst);
    double drift = 0.0;
    for (std::size_t i = 0; i < out.rhs.size(); ++i)
        drift = std::max(drift, std::abs(mat_inner(out.constraints[i], out.q) - out.rhs[i]));
    const SymEig e = jacobi_eig(out.q);
    return json{{"q", mat_to_json(out.q)},
                {"rank_in", sym_rank(inst.q)},
                {"rank_out", sym_rank(out.q)},
                {"face_dim_out", psd_face_dim(out.q)},
                {"min_eigenvalue", e.values.empty() ? 0.0 : e.values.front()},
                {"feasibility_drift", drift}};
}

json run_spline_solve(int order, const std::string& samples_path, std::int64_t grid,
                      const std::string& eval_csv_path) {
    SplineProblem prob;
    prob.order = order;
    prob.knot_grid = grid;
    std::istringstream in(read_file(samples_path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = csv_to_vector(line);
        if (row.size() != 2) throw UsageError("samples CSV must have lines of the form s,y");
        prob.samples.push_back({row[0], row[1]});
    }
    const SplineSolution sol = solve_spline(prob);

    json knots = json::array();
    for (const SplineKnot& k : sol.model.knots) knots.push_back({{"x", k.x}, {"a", k.a}});
    json out{{"order", sol.model.order},
             {"knots", knots},
             {"poly", sol.model.poly},
             {"objective", sol.objective},
             {"poly_block_rank", sol.poly_block_rank}};

    if (!eval_csv_path.empty()) {
        std::ostringstream csv;
        csv << "x,u\n";
        const int samples = 1024;
        for (int i = 0; i <= samples; ++i) {
            const double x = static_cast<double>(i) / samples;
            csv << to_csv(std::vector<double>{x, eval_spline(sol.model, x)}) << "\n";
        }
        write_file(eval_csv_path, csv.str());
    }
    return out;
}

ExperimentReport cmd_two_spike_experiment(int fc, double h, std::int64_t grid,
                                          std::uint64_t seed, double gap_tol,
                                          const std::string& csv_prefix) {
    if (fc < 1) throw UsageError("--fc must be >= 1");
    const double h_max = 1.0 / (2.0 * fc);
    if (!(h > 0.0) || h > h_max) throw UsageError("--h must lie in (0, 1/(2 fc)]");
    const bool boundary = h == h_max;

    ExperimentReport rep;
    rep.command = "experiment two-spike";
    rep.seed = seed;
    rep.inputs = json{{"fc", fc}, {"h", h}, {"grid", grid}};
    const double t0 = now_ms();

    TrigSystem sys(fc);
    const AtomicMeasure mu0(
        {Atom{TorusPoint(h / 2.0), 1.0}, Atom{TorusPoint(-h / 2.0), -1.0}});
    const MomentVector y = moments(mu0, sys);

    AtomicMeasure oracle_mu;
    std::vector<double> pstar(sys.size(), 0.0);
    pstar.back() = 1.0;
    TrigPolynomial oracle_dual(sys, pstar);
    if (boundary) {
        oracle_mu = oracle_boundary(fc);
    } else {
        auto pair = oracle_solution(fc, h);
        oracle_mu = pair.first;
        oracle_dual = pair.second;
    }

    BpConfig cfg;
    cfg.grid_size = grid;
    cfg.polish = true;
    const BpResult bp = solve_bp_grid(y, cfg);

    const CertificateReport cert_oracle = certify(oracle_mu, oracle_dual, y);
    const CertificateReport cert_bp = certify(bp.measure, bp.dual, y);

    const std::size_t expected_atoms = boundary ? 2 : 2 * static_cast<std::size_t>(fc);
    double pos_err = 0.0, amp_err = 0.0;
    match_errors(bp.measure, oracle_mu, &pos_err, &amp_err, /*relative_amp=*/!boundary);

    double dual_err = 0.0;
    for (std::size_t k = 0; k < bp.dual.p.size(); ++k)
        dual_err = std::max(dual_err, std::abs(bp.dual.p[k] - pstar[k]));

    const double tol_match = boundary ? 1e-6 : 1e-3;
    rep.add_check("atom_count_matches", std::abs(static_cast<double>(bp.measure.size()) -
                                                 static_cast<double>(expected_atoms)),
                  0.0);
    rep.add_check("position_error", pos_err, tol_match);
    rep.add_check(boundary ? "amplitude_error" : "amplitude_rel_error", amp_err, tol_match);
    rep.add_check("duality_gap", bp.duality_gap, gap_tol);
    rep.add_check("dual_matches_top_sine", dual_err, 1e-4);
    rep.add_check("oracle_certified", cert_oracle.verdict == Verdict::certified ? 0.0 : 1.0, 0.0);
    rep.add_check("moment_residual", moment_residual(bp.measure, y), cfg.feas_tol);

    rep.outputs = json{{"measure", measure_json(bp.measure)},
                       {"dual", poly_json(bp.dual)},
                       {"objective", bp.objective},
                       {"gap", bp.duality_gap},
                       {"lp_objective", bp.lp_objective},
                       {"oracle_certificate", certificate_json(cert_oracle)},
                       {"bp_certificate", certificate_json(cert_bp)}};

    if (!csv_prefix.empty()) {
        std::ostringstream eta_csv;
        eta_csv << "t,eta\n";
        for (int i = 0; i <= 2048; ++i) {
            const double t = static_cast<double>(i) / 2048.0;
            eta_csv << to_csv(std::vector<double>{t, eval_trig_poly(oracle_dual, TorusPoint(t))}) << "\n";
        }
        write_file(csv_prefix + "_dual.csv", eta_csv.str());
        std::ostringstream atom_csv;
        atom_csv << "t,a\n";
        for (const Atom& a : bp.measure.atoms())
            atom_csv << to_csv(std::vector<double>{a.position.value(), a.amplitude}) << "\n";
        write_file(csv_prefix + "_atoms.csv", atom_csv.str());
    }

    rep.wall_time_ms = now_ms() - t0;
    return rep;
}

ExperimentReport cmd_toeplitz_roundtrip(int fc, int r, std::uint64_t seed) {
    if (fc < 1) throw UsageError("--fc must be >= 1");
    if (r < 0 || r > fc) throw UsageError("--r must lie in [0, fc]");

    ExperimentReport rep;
    rep.command = "experiment toeplitz";
    rep.seed = seed;
    rep.inputs = json{{"fc", fc}, {"r", r}};
    const double t0 = now_ms();

    SplitMix64 rng(seed);
    const AtomicMeasure mu =
        r == 0 ? AtomicMeasure()
               : random_separated(rng, r, 0.5 / fc, 0.5, 2.0, /*signed_amps=*/false);
    const MomentVector y = moments(mu, TrigSystem(fc));
    const MomentRecovery rec = recover_nonneg(y);

    double pos_err = 0.0, amp_err = 0.0;
    match_errors(rec.measure, mu, &pos_err, &amp_err);
    if (r == 0) pos_err = amp_err = rec.measure.empty() ? 0.0 : 1.0;

    rep.add_check("branch_recovered", rec.branch == MomentBranch::recovered ? 0.0 : 1.0, 0.0);
    rep.add_check("rank_equals_cardinality",
                  std::abs(static_cast<double>(rec.diagnosis.rank) - r), 0.0);
    rep.add_check("position_error", pos_err, 1e-6);
    rep.add_check("amplitude_error", amp_err, 1e-6);

    rep.outputs = json{{"truth", measure_json(mu)},
                       {"recovered", measure_json(rec.measure)},
                       {"diagnosis",
                        {{"is_psd", rec.diagnosis.is_psd},
                         {"rank", rec.diagnosis.rank},
                         {"eigenvalues", rec.diagnosis.eigenvalues}}}};
    rep.wall_time_ms = now_ms() - t0;
    return rep;
}

ExperimentReport cmd_prune_bench(std::size_t m, std::size_t r, int trials, std::uint64_t seed) {
    if (r <= m) throw UsageError("--r must exceed --m");
    if (trials < 1) throw UsageError("--trials must be positive");

    ExperimentReport rep;
    rep.command = "experiment prune";
    rep.seed = seed;
    rep.inputs = json{{"m", m}, {"r", r}, {"trials", trials}};
    const double t0 = now_ms();

    double max_drift = 0.0, max_tv_increase = 0.0;
    std::size_t max_atoms = 0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(seed ^ static_cast<std::uint64_t>(t));
        FeatureInstance inst;
        inst.features = Mat(m, r);
        for (double& v : inst.features.a) v = rng.uniform(-1.0, 1.0);
        inst.amplitudes.resize(r);
        for (double& v : inst.amplitudes) {
            v = rng.uniform(0.1, 1.0);
            if (rng.next() % 2 == 0) v = -v;
        }
        inst.target = inst.features * inst.amplitudes;

        const FeatureInstance out = caratheodory_prune(inst);
        double tv_in = 0.0, tv_out = 0.0;
        for (double v : inst.amplitudes) tv_in += std::abs(v);
        for (double v : out.amplitudes) tv_out += std::abs(v);
        const std::vector<double> back = out.features * out.amplitudes;
        for (std::size_t i = 0; i < m; ++i)
            max_drift = std::max(max_drift, std::abs(back[i] - inst.target[i]));
        max_tv_increase = std::max(max_tv_increase, tv_out - tv_in);
        max_atoms = std::max(max_atoms, out.amplitudes.size());
    }

    rep.add_check("max_feasibility_drift", max_drift, 1e-9);
    rep.add_check("max_tv_increase", max_tv_increase, 1e-12);
    rep.add_check("max_atom_count", static_cast<double>(max_atoms), static_cast<double>(m));
    rep.outputs = json{{"max_feasibility_drift", max_drift},
                       {"max_tv_increase", max_tv_increase},
                       {"max_atom_count", max_atoms}};
    rep.wall_time_ms = now_ms() - t0;
    return rep;
}

}  // namespace spikes::cli
