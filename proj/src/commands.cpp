#include "usc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "usc/circuit.hpp"
#include "usc/csv.hpp"
#include "usc/error.hpp"
#include "usc/fit.hpp"
#include "usc/longitudinal.hpp"
#include "usc/spectrum.hpp"

namespace usc::commands {

namespace {

namespace fs = std::filesystem;
using config::Config;
using io::format_number;

constexpr std::string_view kNames[] = {"sweep", "anticross", "project", "oracle", "fit", "quantize"};

struct Report {
  std::ostringstream text;
  bool ok = true;

  void check(const std::string& name, bool pass, const std::string& detail) {
    text << "check " << name << ": " << (pass ? "PASS" : "FAIL") << " (" << detail << ")\n";
    ok = ok && pass;
  }
  template <class T>
  void value(const std::string& key, const T& v) {
    text << key << " = " << v << "\n";
  }
};

struct Context {
  const Config& cfg;
  const RunOptions& options;
  Report report;
  RunResult result;
  std::string digest;

  std::vector<std::string> preamble(std::string_view command) const {
    return {"command=" + std::string(command), "config_digest=" + digest};
  }
  void write(const std::string& name, const std::string& content) {
    const fs::path path = options.out_dir / name;
    io::write_atomic(path, content);
    result.files.push_back(path);
  }
};

std::string fmt(double v) { return format_number(v); }

std::string line_name(int i, int j) {
  return "omega_" + std::to_string(j) + "_" + std::to_string(i) + "_ghz";
}

spectrum::ModelPoint model_from(const Config& cfg) {
  spectrum::ModelPoint m;
  m.model.omega_r = cfg.number("model", "omega_r");
  m.model.g1 = cfg.number("model", "g1");
  m.model.g2 = cfg.number("model", "g2");
  m.model.delta1 = cfg.number("model", "delta1");
  m.model.delta2 = cfg.number("model", "delta2");
  m.model.eps2 = cfg.number("model", "eps2");
  m.model.n_cut = cfg.integer("model", "n_cut");
  m.calibration.a_crosstalk = cfg.number("calibration", "a_crosstalk");
  m.calibration.b_plus = cfg.number("calibration", "b_plus");
  m.calibration.b_minus = cfg.number("calibration", "b_minus");
  m.calibration.eps_coeff = cfg.number("calibration", "eps_coeff");
  m.calibration.i_b0 = cfg.number("calibration", "i_b0");
  m.model.validate();
  return m;
}

void report_model(Context& ctx, const spectrum::ModelPoint& m) {
  ctx.report.value("coupling_ratio.g1_over_omega_r", fmt(m.model.g1 / m.model.omega_r));
  ctx.report.value("coupling_ratio.g2_over_omega_r", fmt(m.model.g2 / m.model.omega_r));
}

// eps1 grid (GHz) and, for bias sweeps, the matching currents.
std::vector<double> sweep_grid(const Config& cfg, const spectrum::SweepCalibration& cal,
                               std::vector<double>* bias) {
  const int points = cfg.integer("sweep", "points");
  if (points < 1) fail(ErrorCode::config, "[sweep] points must be >= 1");
  const auto raw = spectrum::linspace(cfg.number("sweep", "start"), cfg.number("sweep", "stop"),
                                      points);
  if (cfg.text("sweep", "unit") == "ghz") return raw;
  std::vector<double> eps;
  for (double x : raw) eps.push_back(spectrum::bias_to_epsilon(x, cal));
  if (bias) *bias = raw;
  return eps;
}

// Largest change of the lowest `levels` eigenvalues when n_cut is doubled.
double fock_change(const dicke::DickeParams& p, int levels) {
  dicke::DickeParams wide = p;
  wide.n_cut = 2 * p.n_cut;
  return (dicke::flux_energies(wide, levels) - dicke::flux_energies(p, levels))
      .cwiseAbs()
      .maxCoeff();
}

void cmd_sweep(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const auto m = model_from(cfg);
  report_model(ctx, m);
  std::vector<double> bias;
  const auto grid = sweep_grid(cfg, m.calibration, &bias);
  const int n_levels = cfg.integer("sweep", "n_levels");
  const auto extra = fit::parse_lines(cfg.list("sweep", "transitions").empty()
                                          ? std::vector<std::string>{"0-1"}
                                          : cfg.list("sweep", "transitions"));
  const bool with_extra = !cfg.list("sweep", "transitions").empty();
  for (auto [i, j] : extra)
    if (std::max(i, j) >= n_levels)
      fail(ErrorCode::config, "[sweep] transitions refer to a level above n_levels");

  auto table_for = [&](spectrum::Model model) {
    const auto t = spectrum::sweep(m.model, m.calibration, grid,
                                   {.n_levels = n_levels, .threads = ctx.options.threads,
                                    .model = model});
    io::CsvTable csv;
    csv.header.push_back("eps1_ghz");
    if (!bias.empty()) csv.header.push_back("i_b_ma");
    for (int i = 1; i < n_levels; ++i) csv.header.push_back(line_name(0, i));
    if (with_extra)
      for (auto [i, j] : extra) csv.header.push_back(line_name(i, j));
    for (std::size_t p = 0; p < t.points.size(); ++p) {
      std::vector<double> row{t.points[p].eps1};
      if (!bias.empty()) row.push_back(bias[p]);
      for (int i = 1; i < n_levels; ++i) row.push_back(t.transition(p, 0, i));
      if (with_extra)
        for (auto [i, j] : extra) row.push_back(t.transition(p, i, j));
      csv.rows.push_back(std::move(row));
    }
    return csv;
  };

  const auto full = table_for(spectrum::Model::flux);
  ctx.write("sweep.csv", io::to_csv(full, ctx.preamble("sweep")));
  ctx.report.value("grid_points", grid.size());
  ctx.report.value("eps1_range_ghz", fmt(grid.front()) + " .. " + fmt(grid.back()));
  if (cfg.boolean("sweep", "reference")) {
    const auto ref = table_for(spectrum::Model::reference);
    ctx.write("sweep_reference.csv", io::to_csv(ref, ctx.preamble("sweep")));
    ctx.report.value("reference_delta1_ghz",
                     fmt(dicke::renormalized_gap(m.model.delta1, m.model.g1, m.model.omega_r)));
    ctx.report.value("reference_delta2_ghz",
                     fmt(dicke::renormalized_gap(m.model.delta2, m.model.g2, m.model.omega_r)));
  }

  const double tol = cfg.number("sweep", "fock_tolerance");
  double worst = 0.0;
  for (std::size_t k : {std::size_t(0), grid.size() / 2, grid.size() - 1})
    worst = std::max(worst, fock_change(spectrum::apply_crosstalk(m.model, grid[k], m.calibration),
                                        n_levels));
  ctx.report.check("fock_convergence", worst < tol,
                   "doubling n_cut moves the lowest levels by " + fmt(worst) + " GHz, limit " +
                       fmt(tol));
}

void cmd_anticross(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const auto m = model_from(cfg);
  report_model(ctx, m);
  const int lower = cfg.integer("anticross", "lower"), upper = cfg.integer("anticross", "upper");
  const double lo = cfg.number("anticross", "window_lo"), hi = cfg.number("anticross", "window_hi");
  const spectrum::AnticrossOptions opts{.grid_points = cfg.integer("anticross", "grid_points"),
                                        .tolerance = cfg.number("anticross", "tolerance"),
                                        .threads = ctx.options.threads};
  const auto search = spectrum::find_anticrossing(m.model, m.calibration, lower, upper, lo, hi, opts);
  ctx.report.value("branches", std::to_string(lower) + "," + std::to_string(upper));
  ctx.report.value("window_ghz", fmt(lo) + " .. " + fmt(hi));
  io::CsvTable csv;
  csv.header = {"eps1_star_ghz", "gap_min_ghz", "half_splitting_mhz", "omega_lower_ghz",
                "omega_upper_ghz", "center_ghz"};
  if (!search.crossing) {
    ctx.report.value("result", "monotone");
    ctx.report.check("interior_minimum", false, search.diagnostic);
    ctx.write("anticross.csv", io::to_csv(csv, ctx.preamble("anticross")));
    return;
  }
  const auto& x = *search.crossing;
  ctx.report.value("eps1_star_ghz", fmt(x.eps1_star));
  ctx.report.value("gap_min_ghz", fmt(x.gap_min));
  ctx.report.value("half_splitting_mhz", fmt(x.half_splitting * 1e3));
  ctx.report.value("omega_" + std::to_string(lower) + "0_ghz", fmt(x.omega_lower));
  ctx.report.value("omega_" + std::to_string(upper) + "0_ghz", fmt(x.omega_upper));
  ctx.report.value("center_ghz", fmt(x.center_frequency));
  ctx.report.check("interior_minimum", true, "minimum inside the window");

  std::vector<double> row{x.eps1_star, x.gap_min, x.half_splitting * 1e3, x.omega_lower,
                          x.omega_upper, x.center_frequency};
  if (cfg.boolean("anticross", "dressed")) {
    const auto d = spectrum::dressed_frequencies(
        m.model, m.calibration, x.eps1_star, {.steps = cfg.integer("anticross", "dressed_steps")});
    ctx.report.value("dressed.omega_01_ghz", fmt(d.omega_q1));
    ctx.report.value("dressed.omega_02_ghz", fmt(d.omega_q2));
    ctx.report.value("dressed.sum_ghz", fmt(d.omega_q1 + d.omega_q2));
    ctx.report.value("dressed.photon_like_ghz", fmt(d.omega_photon));
    ctx.report.check("dressed_tracking", !d.ambiguous,
                     "smallest overlap " +
                         fmt(std::min({d.dominance_q1, d.dominance_q2, d.dominance_photon})));
    csv.header.insert(csv.header.end(), {"omega_01_ghz", "omega_02_ghz", "dressed_sum_ghz"});
    row.insert(row.end(), {d.omega_q1, d.omega_q2, d.omega_q1 + d.omega_q2});
  }
  csv.rows.push_back(row);

  auto wide = m.model;
  wide.n_cut = 2 * m.model.n_cut;
  const auto again = spectrum::find_anticrossing(wide, m.calibration, lower, upper, lo, hi, opts);
  const double tol = cfg.number("anticross", "fock_tolerance_mhz");
  const double change =
      again.crossing ? std::abs(again.crossing->half_splitting - x.half_splitting) * 1e3 : 1e300;
  ctx.report.check("fock_convergence", change < tol,
                   "half splitting moves " + fmt(change) + " MHz when n_cut doubles, limit " +
                       fmt(tol));
  ctx.write("anticross.csv", io::to_csv(csv, ctx.preamble("anticross")));
}

void cmd_project(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const auto m = model_from(cfg);
  report_model(ctx, m);
  const auto grid = sweep_grid(cfg, m.calibration, nullptr);
  std::vector<int> states;
  for (const auto& s : cfg.list("project", "states")) {
    try {
      states.push_back(std::stoi(s));
    } catch (const std::exception&) {
      fail(ErrorCode::config, "[project] states: '" + s + "' is not an integer");
    }
  }
  if (states.empty()) fail(ErrorCode::config, "[project] states is empty");
  std::vector<dicke::BareLabel> labels;
  for (const auto& l : cfg.list("project", "labels")) labels.push_back(dicke::BareLabel::parse(l));
  const int n_levels =
      std::max(cfg.integer("sweep", "n_levels"), *std::max_element(states.begin(), states.end()) + 1);
  const auto table = spectrum::sweep(
      m.model, m.calibration, grid,
      {.n_levels = n_levels, .keep_vectors = true, .threads = ctx.options.threads});
  const auto proj = spectrum::projections(table, states, labels);

  io::CsvTable csv;
  csv.header.push_back("eps1_ghz");
  for (int s : states)
    for (const auto& l : labels) csv.header.push_back("P_" + std::to_string(s) + "_" + l.str());
  for (int s : states) csv.header.push_back("completeness_" + std::to_string(s));
  double worst = 0.0;
  for (std::size_t p = 0; p < proj.grid.size(); ++p) {
    std::vector<double> row{proj.grid[p]};
    for (std::size_t s = 0; s < states.size(); ++s)
      for (std::size_t l = 0; l < labels.size(); ++l) row.push_back(proj.at(p, s, l));
    for (std::size_t s = 0; s < states.size(); ++s) {
      const double c = proj.completeness[p * states.size() + s];
      row.push_back(c);
      worst = std::max(worst, std::abs(c - 1.0));
    }
    csv.rows.push_back(std::move(row));
  }
  if (proj.grid.size() <= 5) {
    for (std::size_t p = 0; p < proj.grid.size(); ++p)
      for (std::size_t s = 0; s < states.size(); ++s)
        for (std::size_t l = 0; l < labels.size(); ++l)
          ctx.report.value("P[" + std::to_string(states[s]) + "][" + labels[l].str() + "] at " +
                               fmt(proj.grid[p]) + " GHz",
                           fmt(proj.at(p, s, l)));
  } else {
    ctx.report.value("grid_points", proj.grid.size());
  }
  const double tol = cfg.number("project", "completeness_tolerance");
  ctx.report.check("completeness", worst <= tol,
                   "max |sum_j P_j - 1| = " + fmt(worst) + ", limit " + fmt(tol));
  ctx.write("project.csv", io::to_csv(csv, ctx.preamble("project")));
}

void cmd_oracle(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const double eps1 = cfg.number("oracle", "eps1"), eps2 = cfg.number("oracle", "eps2");
  const double g = cfg.number("oracle", "g"), omega_r = cfg.number("oracle", "omega_r");
  const longitudinal::OracleOptions opts{.n_cut = cfg.integer("oracle", "n_cut"),
                                         .per_sector = cfg.integer("oracle", "per_sector"),
                                         .spin_spin = cfg.boolean("oracle", "spin_spin")};
  const double tol = cfg.number("oracle", "tolerance");
  const double amp_tol = cfg.number("oracle", "amplitude_tolerance");

  std::string csv = "# command=oracle\n# config_digest=" + ctx.digest +
                    "\nsign_eps1,m1,m2,M,state,energy_analytic_ghz,energy_numeric_ghz,"
                    "coherent_amplitude\n";
  for (double e1 : {eps1, -eps1}) {
    const auto r = longitudinal::check(e1, eps2, g, omega_r, opts);
    const std::string tag = "eps1=" + fmt(e1);
    const double err = std::max(r.max_energy_error, r.max_spectrum_error);
    ctx.report.check("analytic = numeric [" + tag + "]", err <= tol,
                     "max deviation " + fmt(err) + " GHz, limit " + fmt(tol));
    ctx.report.check("coherent amplitude [" + tag + "]", r.max_amplitude_error <= amp_tol,
                     "max |<a> + M g/omega_r| = " + fmt(r.max_amplitude_error));
    for (std::size_t s = 0; s < r.sectors.size(); ++s) {
      const auto& sec = r.sectors[s];
      ctx.report.value("  " + tag + " m=(" + std::to_string(sec.m1) + "," +
                           std::to_string(sec.m2) + ") M=" + std::to_string(sec.M),
                       longitudinal::state_label(sec));
      csv += std::to_string(sec.sign_eps1) + "," + std::to_string(sec.m1) + "," +
             std::to_string(sec.m2) + "," + std::to_string(sec.M) + "," +
             longitudinal::state_label(sec) + "," + fmt(sec.energy_offset) + "," +
             fmt(r.numeric_ground[s]) + "," + fmt(sec.coherent_amplitude) + "\n";
    }
  }
  ctx.write("oracle.csv", csv);
}

void cmd_fit(Context& ctx) {
  const Config& cfg = ctx.cfg;
  auto truth = model_from(cfg);
  const int n_cut = cfg.integer("fit", "n_cut");
  truth.model.n_cut = n_cut;
  const std::uint64_t seed = cfg.unsigned_integer("fit", "seed");
  const auto lines = fit::parse_lines(cfg.list("fit", "synth_lines"));

  fit::PeakData data;
  const std::string path = cfg.text("fit", "data");
  if (!path.empty()) {
    data = fit::load_peaks(fs::path(path).is_absolute() ? fs::path(path) : cfg.base_dir() / path);
    ctx.report.value("data", path);
  } else {
    std::vector<double> bias;
    for (double e : spectrum::linspace(cfg.number("fit", "synth_start"),
                                       cfg.number("fit", "synth_stop"),
                                       cfg.integer("fit", "synth_points")))
      bias.push_back(spectrum::epsilon_to_bias(e, truth.calibration));
    data = fit::synth_peaks(truth, bias, fit::Abscissa::bias_ma, lines,
                            cfg.number("fit", "noise_ghz"), seed);
    ctx.write("fit_data.csv", fit::peaks_to_csv(data, ctx.preamble("fit")));
    ctx.report.value("data", "synthetic from [model] and [calibration]");
  }
  ctx.report.value("records", data.records.size());
  if (data.records.size() < 3 * std::size_t(fit::kParameterCount))
    ctx.report.value("warning", "fewer than three records per free parameter");

  // Initial point: every parameter scaled by 1 +- perturb with seeded signs.
  const double perturb = cfg.number("fit", "perturb");
  fit::Vector11 start = fit::to_vector(truth);
  std::mt19937_64 signs(seed + 1);
  for (double& v : start) v *= (signs() & 1) ? 1.0 + perturb : 1.0 - perturb;

  fit::FitOptions opts;
  opts.lines = lines;
  opts.stages = cfg.integer("fit", "stages");
  opts.max_evaluations = cfg.integer("fit", "max_evals");
  opts.threads = ctx.options.threads;
  opts.n_cut = n_cut;
  const auto r = fit::fit(fit::from_vector(start, n_cut), data, opts);

  const auto got = fit::to_vector(r.params);
  const auto ref = fit::to_vector(truth);
  const double tol = cfg.number("fit", "recovery_tolerance");
  double worst = 0.0;
  ctx.report.text << "parameter        initial          recovered        reference        rel_error\n";
  for (int i = 0; i < fit::kParameterCount; ++i) {
    const double rel = ref[i] != 0.0 ? std::abs(got[i] / ref[i] - 1.0) : std::abs(got[i]);
    if (opts.stages == 2 || i < 8) worst = std::max(worst, rel);
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %-16s %-16s %-16s %.3e\n",
                  std::string(fit::parameter_names()[i]).c_str(), fmt(start[i]).c_str(),
                  fmt(got[i]).c_str(), fmt(ref[i]).c_str(), rel);
    ctx.report.text << line;
  }
  ctx.report.value("residual_rms_ghz", fmt(r.residual_rms));
  ctx.report.value("stage1_rms_ghz", fmt(r.stage1_rms));
  ctx.report.value("evaluations", r.evaluations);
  ctx.report.check("simplex_converged", r.converged,
                   r.converged ? "tolerances met" : "evaluation budget exhausted");
  if (cfg.boolean("fit", "check_recovery"))
    ctx.report.check("recovery", worst <= tol,
                     "max relative error " + fmt(worst) + ", limit " + fmt(tol));

  io::CsvTable csv;
  for (auto n : fit::parameter_names()) csv.header.emplace_back(n);
  csv.header.insert(csv.header.end(), {"residual_rms_ghz", "stage"});
  std::vector<double> row(got.begin(), got.end());
  row.push_back(r.residual_rms);
  row.push_back(r.stage);
  csv.rows.push_back(row);
  ctx.write("fit.csv", io::to_csv(csv, ctx.preamble("fit")));
  ctx.write("fit.txt", "# config_digest=" + ctx.digest + "\n" + fit::result_text(r));
  io::CsvTable trace;
  trace.header = {"iteration", "best_rms_ghz"};
  for (std::size_t i = 0; i < r.trace.size(); ++i) trace.rows.push_back({double(i), r.trace[i]});
  ctx.write("fit_trace.csv", io::to_csv(trace, ctx.preamble("fit")));
}

circuit::CircuitParams circuit_from(const Config& cfg) {
  circuit::CircuitParams p;
  for (int k = 0; k < 2; ++k) {
    const std::string q = "q" + std::to_string(k + 1) + "_";
    p.qubits[k] = {cfg.number("circuit", q + "e_j"), cfg.number("circuit", q + "e_c"),
                   cfg.number("circuit", q + "alpha"), cfg.number("circuit", q + "beta"),
                   cfg.number("circuit", q + "phi_e")};
  }
  p.e_lr = cfg.number("circuit", "e_lr");
  p.omega_r = cfg.number("circuit", "omega_r");
  p.n_charge = cfg.integer("circuit", "n_charge");
  p.validate();
  return p;
}

void cmd_quantize(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const auto p = circuit_from(cfg);
  const int n_levels = cfg.integer("circuit", "n_levels");
  const int n_cut = cfg.integer("circuit", "n_cut");
  const bool same = p.qubits[0].e_j == p.qubits[1].e_j && p.qubits[0].e_c == p.qubits[1].e_c &&
                    p.qubits[0].alpha == p.qubits[1].alpha &&
                    p.qubits[0].beta == p.qubits[1].beta && p.qubits[0].phi_e == p.qubits[1].phi_e;

  std::array<circuit::QubitReduction, 2> red;
  io::CsvTable csv;
  csv.header = {"qubit", "level", "omega_ghz"};
  for (int j = 0; j < n_levels; ++j) csv.header.push_back("abs_g_" + std::to_string(j) + "_ghz");
  for (int k = 1; k <= 2; ++k) {
    red[k - 1] = (k == 2 && same) ? red[0] : circuit::two_level_reduce(p, k, n_levels);
    const auto& r = red[k - 1];
    const std::string tag = "qubit" + std::to_string(k);
    ctx.report.value(tag + ".delta_ghz", fmt(r.delta));
    ctx.report.value(tag + ".eps_ghz", fmt(r.eps));
    ctx.report.value(tag + ".eps_slope_ghz_per_flux_quantum", fmt(r.eps_slope));
    ctx.report.value(tag + ".g_ghz", fmt(r.g));
    ctx.report.value(tag + ".g_00_ghz", fmt(r.g_matrix(0, 0).real()));
    ctx.report.value(tag + ".g_11_ghz", fmt(r.g_matrix(1, 1).real()));
    const double herm = (r.g_matrix - r.g_matrix.adjoint()).cwiseAbs().maxCoeff() /
                        std::max(r.g_matrix.cwiseAbs().maxCoeff(), 1e-300);
    ctx.report.check(tag + ".g_hermitian", herm <= 1e-10, "relative asymmetry " + fmt(herm));
    if (cfg.boolean("circuit", "convergence")) {
      if (k == 2 && same) {
        ctx.report.check(tag + ".charge_convergence", true, "identical to qubit1");
      } else {
        const auto c = circuit::check_charge_convergence(p, k, n_levels);
        ctx.report.check(tag + ".charge_convergence", c.converged,
                         "n_charge " + std::to_string(p.n_charge - 2) + " -> " +
                             std::to_string(p.n_charge) + " moves levels by " + fmt(c.max_change) +
                             " GHz, limit " + fmt(c.tolerance));
      }
    }
    for (int i = 0; i < n_levels; ++i) {
      std::vector<double> row{double(k), double(i), r.levels[i]};
      for (int j = 0; j < n_levels; ++j) row.push_back(std::abs(r.g_matrix(i, j)));
      csv.rows.push_back(std::move(row));
    }
  }

  const auto d = circuit::to_dicke(red[0], red[1], p.omega_r, n_cut);
  const int shown = 6;
  const RVector two = dicke::flux_energies(d, shown);
  const RVector multi =
      qop::hermitian_eig(circuit::build_multilevel(red[0], red[1], p.omega_r, n_cut),
                         {.count = shown, .vectors = false})
          .values;
  double worst = 0.0;
  for (int i = 1; i < shown; ++i)
    worst = std::max(worst, std::abs((two[i] - two[0]) / (multi[i] - multi[0]) - 1.0));
  ctx.report.value("two_level_vs_multilevel_max_rel", fmt(worst));
  ctx.write("quantize.csv", io::to_csv(csv, ctx.preamble("quantize")));
}

}  // namespace

std::span<const std::string_view> names() { return kNames; }

RunResult run(std::string_view command, Config cfg, const RunOptions& options) {
  const std::map<std::string_view, std::function<void(Context&)>> table = {
      {"sweep", cmd_sweep},   {"anticross", cmd_anticross}, {"project", cmd_project},
      {"oracle", cmd_oracle}, {"fit", cmd_fit},             {"quantize", cmd_quantize}};
  const auto it = table.find(command);
  if (it == table.end())
    fail(ErrorCode::invalid_argument, "unknown command '" + std::string(command) + "'");
  if (options.threads < 1) fail(ErrorCode::invalid_argument, "threads must be >= 1");
  if (options.seed) cfg.set("fit", "seed", std::to_string(*options.seed));

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + options.out_dir.string());

  Context ctx{cfg, options, {}, {}, cfg.digest()};
  ctx.report.value("command", command);
  ctx.report.value("config_digest", ctx.digest);
  it->second(ctx);
  ctx.report.value("result", ctx.report.ok ? "all checks passed" : "some checks failed");

  const std::string name(command);
  ctx.write(name + ".resolved.conf", "# config_digest=" + ctx.digest + "\n" + cfg.resolved());
  ctx.result.summary = ctx.report.text.str();
  ctx.result.checks_passed = ctx.report.ok;
  ctx.write(name + ".summary.txt", ctx.result.summary);
  return ctx.result;
}

RunResult run_file(std::string_view command, const std::filesystem::path& config_path,
                   const RunOptions& options) {
  return run(command, Config::load(config_path), options);
}

}  // namespace usc::commands
