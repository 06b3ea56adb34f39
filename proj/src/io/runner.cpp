#include "qnls/io/runner.hpp"

#include <cmath>
#include <cstdio>

#include "qnls/errors.hpp"
#include "qnls/io/checkpoint.hpp"
#include "qnls/io/csv.hpp"

namespace qnls::io {

namespace {

std::filesystem::path checkpoint_name(const std::filesystem::path& dir, std::size_t step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "checkpoint_%08zu.bin", step);
  return dir / buf;
}

void print_fit(std::ostream& os, const char* label, const std::optional<RateFit>& fit) {
  os << "  " << label << ": ";
  if (!fit) {
    os << "rejected\n";
    return;
  }
  os << "T*=" << format_number(fit->T_star) << " C=" << format_number(fit->C);
  if (fit->model == RateModel::free_exponent) os << " alpha=" << format_number(fit->alpha);
  os << " rms=" << format_number(fit->rms_residual) << '\n';
}

std::optional<RateFit> try_fit(std::span<const std::pair<double, double>> series, RateModel model, double hint) {
  try {
    return fit_rate(series, model, hint);
  } catch (const FitRejected&) {
    return std::nullopt;
  }
}

double default_hint(std::span<const std::pair<double, double>> tail) {
  try {
    const auto est = estimate_blowup_time(tail);
    if (est.t_star > tail.back().first) return est.t_star;
  } catch (const FitRejected&) {
  }
  const double span = tail.back().first - tail.front().first;
  return tail.back().first + std::max(1e-3 * span, 1e-9);
}

}  // namespace

BlowupReport analyse_blowup(const std::vector<std::pair<double, double>>& series) {
  BlowupReport rep;
  const auto tail = monotone_tail(series);
  try {
    rep.estimate = estimate_blowup_time(tail);
  } catch (const FitRejected&) {
    rep.estimate.t_star = std::numeric_limits<double>::quiet_NaN();
  }
  if (tail.size() < 10) return rep;
  const double hint = default_hint(tail);
  rep.scaling = try_fit(tail, RateModel::scaling, hint);
  rep.loglog = try_fit(tail, RateModel::loglog, hint);
  rep.free_exponent = try_fit(tail, RateModel::free_exponent, hint);
  return rep;
}

RunResult run(const RunConfig& cfg, std::ostream& report) {
  const Field u0 = make_initial_field(cfg);
  const DiagnosticsSpec spec{cfg.solver.sign, cfg.diagnostics.s, cfg.diagnostics.N_list, cfg.diagnostics.widths};
  const std::size_t stride = cfg.diagnostics.stride;
  const auto& out = cfg.output;

  std::vector<std::vector<double>> rows;
  std::vector<std::filesystem::path> checkpoints;
  double last_row_time = -std::numeric_limits<double>::infinity();

  SolverConfig sc = cfg.solver;
  sc.snapshot_stride = std::numeric_limits<std::size_t>::max();
  sc.tail_snapshots = 0;
  const auto observer = [&](const Field& f, const StepRecord& rec) {
    if (rec.step % stride == 0) {
      rows.push_back(diagnostics_row(make_record(f, spec), rec.dt));
      last_row_time = f.time;
    }
    if (out.checkpoint_dir && out.checkpoint_stride > 0 && rec.step > 0 && rec.step % out.checkpoint_stride == 0) {
      checkpoints.push_back(checkpoint_name(*out.checkpoint_dir, rec.step));
      save_checkpoint(checkpoints.back(), f);
    }
  };
  const Trajectory traj = evolve(u0, sc, observer);
  const Field& last = traj.final_state();
  if (last.time != last_row_time) rows.push_back(diagnostics_row(make_record(last, spec), traj.records.back().dt));
  if (out.checkpoint_dir) {
    checkpoints.push_back(*out.checkpoint_dir / "checkpoint_final.bin");
    save_checkpoint(checkpoints.back(), last);
  }
  if (out.csv_path) write_csv(*out.csv_path, diagnostics_header(spec), rows);

  RunResult result;
  result.termination = traj.termination;
  result.final_state = last;
  result.steps = traj.records.back().step;
  result.csv_rows = rows.size();
  result.checkpoints = checkpoints;

  const auto& first = traj.records.front();
  const auto& fin = traj.records.back();
  report << "termination: " << to_string(traj.termination) << '\n'
         << "steps: " << result.steps << '\n'
         << "final time: " << format_number(fin.time) << '\n'
         << "mass drift: " << format_number(fin.mass - first.mass) << '\n'
         << "energy drift: " << format_number(fin.energy - first.energy) << '\n'
         << "gradnorm: " << format_number(first.gradnorm) << " -> " << format_number(fin.gradnorm) << '\n';
  if (out.csv_path) report << "csv: " << out.csv_path->string() << " (" << rows.size() << " rows)\n";
  if (out.checkpoint_dir) report << "checkpoints: " << checkpoints.size() << " in " << out.checkpoint_dir->string() << '\n';

  if (traj.termination == Termination::gradnorm_exceeded || traj.termination == Termination::resolution_exceeded) {
    result.blowup = analyse_blowup(traj.gradnorm_series());
    const auto& b = *result.blowup;
    report << "blow-up estimate T*: " << format_number(b.estimate.t_star)
           << " (R^2=" << format_number(b.estimate.fit_quality) << ", " << b.estimate.samples_used << " samples)\n";
    print_fit(report, "scaling", b.scaling);
    print_fit(report, "loglog", b.loglog);
    print_fit(report, "free exponent", b.free_exponent);
  }
  return result;
}

std::vector<DecayRow> sweep(const RunConfig& cfg, const std::vector<double>& N_list,
                            const std::optional<std::filesystem::path>& out, std::ostream& report) {
  if (N_list.empty()) throw ConfigError("sweep: N_list is empty");
  const Field u0 = make_initial_field(cfg);
  const double horizon = cfg.solver.stop_time - u0.time;
  if (!(horizon > 0.0)) throw ConfigError("sweep: solver.stop_time must exceed the initial time");
  const auto rows = decay_sweep(u0, cfg.diagnostics.s, N_list, horizon, cfg.solver);
  std::vector<std::vector<double>> table;
  report << "N,increment\n";
  for (const auto& r : rows) {
    table.push_back({r.N, r.increment});
    report << format_number(r.N) << ',' << format_number(r.increment) << '\n';
  }
  if (out) write_csv(*out, {"N", "increment"}, table);
  return rows;
}

FitReport fit(const std::filesystem::path& csv, RateModel model, std::optional<double> T_star_hint,
              std::ostream& report) {
  const CsvTable table = read_csv(csv);
  const std::size_t ct = table.column("t");
  const std::size_t cg = table.column("gradnorm");
  std::vector<std::pair<double, double>> series;
  for (const auto& row : table.rows) series.emplace_back(row[ct], row[cg]);
  const auto tail = monotone_tail(series);
  if (tail.size() < 10) throw FitRejected("fit: monotone tail has fewer than 10 samples");
  const double hint = T_star_hint.value_or(default_hint(tail));

  FitReport rep{fit_rate(tail, model, hint), std::nullopt, std::nullopt};
  if (model != RateModel::free_exponent) rep.free_exponent = try_fit(tail, RateModel::free_exponent, hint);
  if (model == RateModel::scaling) rep.other_model = try_fit(tail, RateModel::loglog, hint);
  if (model == RateModel::loglog) rep.other_model = try_fit(tail, RateModel::scaling, hint);

  report << "samples: " << tail.size() << " (monotone tail of " << series.size() << ")\n";
  print_fit(report, std::string(to_string(model)).c_str(), rep.fit);
  if (rep.other_model) print_fit(report, std::string(to_string(rep.other_model->model)).c_str(), rep.other_model);
  if (model != RateModel::free_exponent) print_fit(report, "free exponent", rep.free_exponent);
  return rep;
}

}  // namespace qnls::io
