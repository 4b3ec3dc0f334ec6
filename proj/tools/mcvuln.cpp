// Command-line front end: simulation runs, analytic queries, oracle
// verification and parameter sweeps, all with machine-readable output.
//
// Exit codes: 0 success, 1 usage error, 2 resource guard, 3 verification
// failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "json_writer.hpp"
#include "mcvuln/analytic.hpp"
#include "mcvuln/montecarlo.hpp"
#include "mcvuln/oracle.hpp"
#include "mcvuln/rational.hpp"
#include "mcvuln/settling.hpp"
#include "mcvuln/types.hpp"

namespace {

using namespace mcvuln;
using tool::format_float;
using tool::JsonWriter;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerifyFailed = 3;

std::vector<long> parse_lengths(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(',', pos);
    const std::string item =
        text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad length list '" + text + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw UsageError("empty length list");
  return out;
}

std::pair<long, long> parse_range(const std::string& text) {
  const std::size_t sep = text.find("..");
  try {
    if (sep == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    const long lo = std::stol(text.substr(0, sep));
    const long hi = std::stol(text.substr(sep + 2));
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "' (expected A..B or a single value)");
  }
}

int resolve_cli_workers(int flag_value) {
  // MCVULN_WORKERS, when set, wins over --workers.
  if (const char* env = std::getenv("MCVULN_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w > 0) return w;
    } catch (const std::exception&) {
    }
    throw UsageError("MCVULN_WORKERS must be a positive integer");
  }
  return flag_value;
}

void emit(const JsonWriter& json) { std::cout << json.str() << "\n"; }

void write_exact(JsonWriter& json, const RationalInterval& value) {
  if (value.exact()) {
    json.key("value").value(to_fraction_string(value.lower));
    json.key("float").value(to_double(value.lower));
  } else {
    json.key("lower").value(to_fraction_string(value.lower));
    json.key("upper").value(to_fraction_string(value.upper));
    json.key("lower_float").value(to_double(value.lower));
    json.key("upper_float").value(to_double(value.upper));
  }
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string model;
  int threads = 2;
  int program_len = 64;
  uint64_t samples = 1000000;
  uint64_t seed = 0;
  int workers = 0;
  std::string overlap = "closed";
  bool independent_programs = false;
};

int run_simulate(const SimulateArgs& args) {
  const MemoryModel& model = parse_model(args.model);
  if (args.threads < 2) throw UsageError("--threads must be >= 2");
  if (args.program_len < 0) throw UsageError("--program-len must be >= 0");
  if (args.samples == 0) throw UsageError("--samples must be >= 1");

  ModelParams params;
  params.m = args.program_len;
  montecarlo::SimulateOptions opts;
  opts.overlap = parse_overlap(args.overlap);
  opts.independent_programs = args.independent_programs;
  opts.workers = resolve_cli_workers(args.workers);

  const montecarlo::Estimate est = montecarlo::estimate_pr_disjoint(
      model, args.threads, params, args.samples, args.seed, opts);

  // The worker count never affects counts and is deliberately not echoed, so
  // payloads are byte-identical across worker settings.
  JsonWriter json;
  json.begin_object();
  json.key("command").value("simulate");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("model").value(to_string(model.name()));
  json.key("threads").value(args.threads);
  json.key("program_len").value(args.program_len);
  json.key("p").value(params.p);
  json.key("s").value(params.s[0][0]);
  json.key("samples").value(args.samples);
  json.key("overlap").value(to_string(opts.overlap));
  json.key("independent_programs").value(args.independent_programs);
  json.end_object();
  json.key("seed").value(args.seed);
  json.key("result").begin_object();
  json.key("mean").value(est.mean);
  json.key("stderr").value(est.std_err);
  json.key("ci95_lo").value(est.ci95_lo);
  json.key("ci95_hi").value(est.ci95_hi);
  json.key("hits").value(est.hits);
  json.key("samples").value(est.samples);
  json.end_object();
  json.end_object();
  emit(json);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analytic

int run_analytic_window(const std::string& model_text,
                        const std::string& gamma_range) {
  const MemoryModel& model = parse_model(model_text);
  const auto [lo, hi] = parse_range(gamma_range);
  if (lo < 0) throw UsageError("--gamma must be >= 0");

  JsonWriter json;
  json.begin_object();
  json.key("command").value("analytic window");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("model").value(to_string(model.name()));
  json.key("gamma").value(gamma_range);
  json.end_object();
  json.key("seed").null();
  json.key("rows").begin_array();
  for (long gamma = lo; gamma <= hi; ++gamma) {
    json.begin_object();
    json.key("gamma").value(gamma);
    if (model.name() == ModelName::TSO)
      write_exact(json, analytic::window_pmf_bounds(gamma));
    else
      write_exact(json,
                  RationalInterval::point(analytic::window_pmf(model, gamma)));
    json.end_object();
  }
  json.end_array();
  json.end_object();
  emit(json);
  return kExitOk;
}

int run_analytic_disjoint(const std::string& lengths_text) {
  const SegmentLengths lengths{parse_lengths(lengths_text)};
  const Rational value = analytic::disjoint_probability(lengths);

  JsonWriter json;
  json.begin_object();
  json.key("command").value("analytic disjoint");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("lengths").begin_array();
  for (long len : lengths.lengths) json.value(len);
  json.end_array();
  json.end_object();
  json.key("seed").null();
  json.key("value").value(to_fraction_string(value));
  json.key("float").value(to_double(value));
  json.end_object();
  emit(json);
  return kExitOk;
}

int run_analytic_two_thread(const std::string& model_text) {
  const MemoryModel& model = parse_model(model_text);
  const RationalInterval value = analytic::two_thread_disjoint_prob(model);

  JsonWriter json;
  json.begin_object();
  json.key("command").value("analytic two-thread");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("model").value(to_string(model.name()));
  json.end_object();
  json.key("seed").null();
  write_exact(json, value);
  json.end_object();
  emit(json);
  return kExitOk;
}

int run_analytic_sc_pr_a(int threads) {
  const Rational value = analytic::sc_disjoint_prob(threads);

  JsonWriter json;
  json.begin_object();
  json.key("command").value("analytic sc-pr-a");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("threads").value(threads);
  json.end_object();
  json.key("seed").null();
  json.key("value").value(to_fraction_string(value));
  json.key("float").value(to_double(value));
  json.end_object();
  emit(json);
  return kExitOk;
}

int run_analytic_exponent(const std::string& threads_range) {
  const auto [lo, hi] = parse_range(threads_range);
  if (lo < 2) throw UsageError("--threads must be >= 2");

  JsonWriter json;
  json.begin_object();
  json.key("command").value("analytic exponent");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("threads").value(threads_range);
  json.end_object();
  json.key("seed").null();
  json.key("rows").begin_array();
  for (long n = lo; n <= hi; ++n) {
    json.begin_object();
    json.key("n").value(n);
    json.key("ratio").value(
        analytic::sc_disjoint_exponent_ratio(static_cast<int>(n)));
    json.end_object();
  }
  json.end_array();
  json.end_object();
  emit(json);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

int run_oracle_window(const std::string& model_text, int program_len) {
  const MemoryModel& model = parse_model(model_text);
  if (program_len < 0) throw UsageError("--program-len must be >= 0");
  ModelParams params;
  params.m = program_len;
  const auto pmf = oracle::exact_window_pmf(model, params);

  JsonWriter json;
  json.begin_object();
  json.key("command").value("oracle window");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("model").value(to_string(model.name()));
  json.key("program_len").value(program_len);
  json.end_object();
  json.key("seed").null();
  json.key("rows").begin_array();
  for (const auto& [gamma, mass] : pmf) {
    json.begin_object();
    json.key("gamma").value(gamma);
    json.key("value").value(to_fraction_string(mass));
    json.key("float").value(to_double(mass));
    json.end_object();
  }
  json.end_array();
  json.end_object();
  emit(json);
  return kExitOk;
}

int run_oracle_disjoint(const std::string& lengths_text, int cap) {
  const SegmentLengths lengths{parse_lengths(lengths_text)};
  const RationalInterval value = oracle::exact_disjoint(lengths, cap);

  JsonWriter json;
  json.begin_object();
  json.key("command").value("oracle disjoint");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("lengths").begin_array();
  for (long len : lengths.lengths) json.value(len);
  json.end_array();
  json.key("cap").value(cap);
  json.end_object();
  json.key("seed").null();
  json.key("lower").value(to_fraction_string(value.lower));
  json.key("upper").value(to_fraction_string(value.upper));
  json.key("lower_float").value(to_double(value.lower));
  json.key("upper_float").value(to_double(value.upper));
  json.end_object();
  emit(json);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string models = "sc,tso,pso,wo";
  std::string threads = "2..4";
  int program_len = 64;
  uint64_t samples = 1000000;
  uint64_t seed = 0;
  int workers = 0;
  std::string format = "csv";
};

int run_sweep(const SweepArgs& args) {
  if (args.samples == 0) throw UsageError("--samples must be >= 1");
  if (args.program_len < 0) throw UsageError("--program-len must be >= 0");
  if (args.format != "csv" && args.format != "json")
    throw UsageError("--format must be csv or json");
  const auto [n_lo, n_hi] = parse_range(args.threads);
  if (n_lo < 2) throw UsageError("--threads must be >= 2");

  std::vector<ModelName> models;
  std::size_t pos = 0;
  while (pos <= args.models.size()) {
    const std::size_t next = args.models.find(',', pos);
    models.push_back(parse_model_name(args.models.substr(
        pos, next == std::string::npos ? next : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }

  ModelParams params;
  params.m = args.program_len;
  montecarlo::SimulateOptions opts;
  opts.workers = resolve_cli_workers(args.workers);

  struct Row {
    ModelName model;
    long n;
    montecarlo::Estimate est;
  };
  std::vector<Row> rows;
  for (ModelName name : models)
    for (long n = n_lo; n <= n_hi; ++n)
      rows.push_back({name, n,
                      montecarlo::estimate_pr_disjoint(
                          preset_model(name), static_cast<int>(n), params,
                          args.samples, args.seed, opts)});

  if (args.format == "csv") {
    std::cout << "model,n,m,samples,seed,pr_a_mean,pr_a_lo95,pr_a_hi95\n";
    for (const Row& row : rows)
      std::cout << csv_field(to_string(row.model)) << ',' << row.n << ','
                << args.program_len << ',' << args.samples << ',' << args.seed
                << ',' << format_float(row.est.mean) << ','
                << format_float(row.est.ci95_lo) << ','
                << format_float(row.est.ci95_hi) << "\n";
    return kExitOk;
  }

  JsonWriter json;
  json.begin_object();
  json.key("command").value("sweep");
  json.key("version").value(kVersion);
  json.key("params").begin_object();
  json.key("models").value(args.models);
  json.key("threads").value(args.threads);
  json.key("program_len").value(args.program_len);
  json.key("samples").value(args.samples);
  json.end_object();
  json.key("seed").value(args.seed);
  json.key("rows").begin_array();
  for (const Row& row : rows) {
    json.begin_object();
    json.key("model").value(to_string(row.model));
    json.key("n").value(row.n);
    json.key("m").value(args.program_len);
    json.key("samples").value(args.samples);
    json.key("seed").value(args.seed);
    json.key("pr_a_mean").value(row.est.mean);
    json.key("pr_a_lo95").value(row.est.ci95_lo);
    json.key("pr_a_hi95").value(row.est.ci95_hi);
    json.end_object();
  }
  json.end_array();
  json.end_object();
  emit(json);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: cross-checks analytic <-> oracle <-> Monte Carlo.

int run_verify() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok,
                   const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  // Preset relaxation matrices.
  {
    const bool ok =
        !MemoryModel::sc().relaxed(InstructionType::Store, InstructionType::Load) &&
        MemoryModel::tso().relaxed(InstructionType::Store, InstructionType::Load) &&
        !MemoryModel::tso().relaxed(InstructionType::Store, InstructionType::Store) &&
        MemoryModel::pso().relaxed(InstructionType::Store, InstructionType::Store) &&
        !MemoryModel::pso().relaxed(InstructionType::Load, InstructionType::Load) &&
        MemoryModel::wo().relaxed(InstructionType::Load, InstructionType::Load);
    check("preset relaxation matrices", ok);
  }

  // Exact two-thread values.
  {
    const auto sc = analytic::two_thread_disjoint_prob(MemoryModel::sc());
    const auto wo = analytic::two_thread_disjoint_prob(MemoryModel::wo());
    const auto tso = analytic::two_thread_disjoint_prob(MemoryModel::tso());
    check("two-thread disjointness constants",
          sc.exact() && sc.lower == Rational(1, 6) && wo.exact() &&
              wo.lower == Rational(7, 54) && tso.lower == Rational(58, 441) &&
              tso.upper == Rational(58, 441) + Rational(1, 189) &&
              sc.lower > tso.upper && tso.lower > wo.lower);
  }

  // Permutation formula against the all-2 closed form.
  {
    bool ok = analytic::disjoint_probability(SegmentLengths{{2, 2}}) ==
                  Rational(1, 6) &&
              analytic::disjoint_probability(SegmentLengths{{2, 2, 2}}) ==
                  Rational(1, 224);
    for (int n = 2; n <= 7 && ok; ++n)
      ok = analytic::sc_disjoint_prob(n) ==
           analytic::disjoint_probability(
               SegmentLengths{std::vector<long>(n, 2)});
    check("disjointness formula vs closed form", ok);
  }

  // Partition counting DP against enumeration.
  {
    bool ok = true;
    for (long x = 0; x <= 20 && ok; ++x)
      for (long y = 0; y <= 8 && ok; ++y)
        for (long z = 0; z <= 10 && ok; ++z)
          ok = analytic::partition_count(x, y, z) ==
               oracle::brute_partition_count(x, y, z);
    check("partition DP vs enumeration", ok);
  }

  // Load-clearing bound below the exact sum.
  {
    bool ok = true;
    for (long mu = 1; mu <= 8 && ok; ++mu)
      for (long q = 1; q <= 8 && ok; ++q) {
        const Rational exact = analytic::loads_settle_out_prob(mu, q);
        const Rational lower = analytic::loads_settle_out_lower(mu, q);
        ok = exact >= lower && (mu != 1 || exact == lower);
      }
    check("load-clearing lower bound", ok);
  }

  // Store-run helper identities.
  {
    bool ok = analytic::store_run_factor(1) == Rational(4, 7) &&
              analytic::missing_mass() == Rational(2, 21) &&
              Rational(1, 3) + Rational(4, 7) + Rational(2, 21) == 1;
    for (long mu = 1; mu < 20 && ok; ++mu)
      ok = analytic::store_run_factor(mu + 1) >= analytic::store_run_factor(mu);
    check("store-run factor identities", ok);
  }

  // Oracle window pmfs: normalization and agreement with closed forms.
  {
    bool ok = true;
    for (ModelName name :
         {ModelName::SC, ModelName::TSO, ModelName::PSO, ModelName::WO}) {
      ModelParams params;
      params.m = 8;
      Rational total = 0;
      for (const auto& [gamma, mass] :
           oracle::exact_window_pmf(preset_model(name), params))
        total += mass;
      ok = ok && total == 1;
    }
    ModelParams params;
    params.m = 10;
    const Rational slack = pow2(-8);
    const auto wo = oracle::exact_window_pmf(MemoryModel::wo(), params);
    for (const auto& [gamma, mass] : wo) {
      const Rational ref = analytic::window_pmf(MemoryModel::wo(), gamma);
      ok = ok && mass - ref <= slack && ref - mass <= slack;
    }
    const auto tso = oracle::exact_window_pmf(MemoryModel::tso(), params);
    for (const auto& [gamma, mass] : tso) {
      const auto bounds = analytic::window_pmf_bounds(gamma);
      ok = ok && mass >= bounds.lower - slack && mass <= bounds.upper + slack;
    }
    const auto sc = oracle::exact_window_pmf(MemoryModel::sc(), params);
    ok = ok && sc.size() == 1 && sc.at(0) == 1;
    check("oracle window pmf vs closed forms", ok);
  }

  // Truncated shift enumeration brackets the exact formula.
  {
    bool ok = true;
    RandomStream rng(20240611);
    for (int trial = 0; trial < 6 && ok; ++trial) {
      RandomStream sub = rng.child(0, static_cast<uint64_t>(trial));
      const int n = 2 + static_cast<int>(sub.next_u64() % 3);
      std::vector<long> lengths;
      for (int k = 0; k < n; ++k)
        lengths.push_back(static_cast<long>(sub.next_u64() % 5));
      const SegmentLengths segs{lengths};
      const auto bracket = oracle::exact_disjoint(segs, 24);
      ok = bracket.contains(analytic::disjoint_probability(segs));
    }
    check("oracle disjoint brackets analytic", ok);
  }

  // Monte Carlo against analytic values (fixed seeds, 4 sigma tolerances).
  {
    ModelParams params;
    params.m = 32;
    const uint64_t samples = 200000;
    const auto sc = montecarlo::estimate_pr_disjoint(MemoryModel::sc(), 2,
                                                     params, samples, 2024);
    const auto wo = montecarlo::estimate_pr_disjoint(MemoryModel::wo(), 2,
                                                     params, samples, 2024);
    const double tol_sc = 4.0 * std::sqrt((1.0 / 6) * (5.0 / 6) / samples);
    const double wo_ref = to_double(Rational(7, 54));
    const double tol_wo = 4.0 * std::sqrt(wo_ref * (1 - wo_ref) / samples);
    check("simulator vs two-thread constants",
          std::abs(sc.mean - 1.0 / 6) <= tol_sc &&
              std::abs(wo.mean - wo_ref) <= tol_wo,
          "sc=" + format_float(sc.mean) + " wo=" + format_float(wo.mean));

    const SegmentLengths segs{{2, 3, 4}};
    const auto shift = montecarlo::estimate_shift_disjoint(segs, samples, 7);
    const double ref = to_double(analytic::disjoint_probability(segs));
    check("shift-only simulator vs formula",
          std::abs(shift.mean - ref) <=
              4.0 * std::sqrt(ref * (1 - ref) / samples),
          format_float(shift.mean) + " vs " + format_float(ref));

    ModelParams small;
    small.m = 4;
    const auto bottom = montecarlo::estimate_bottom_store(small, samples, 11);
    const double bref = to_double(analytic::bottom_store_prob(4));
    check("bottom-store simulator vs recurrence",
          std::abs(bottom.mean - bref) <=
              4.0 * std::sqrt(bref * (1 - bref) / samples),
          format_float(bottom.mean) + " vs " + format_float(bref));
  }

  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: " + std::to_string(failures) +
                                    " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memory consistency model vulnerability toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimate of the disjointness probability");
  simulate->add_option("--model", sim.model, "sc|tso|pso|wo")->required();
  simulate->add_option("--threads", sim.threads, "thread count (>= 2)");
  simulate->add_option("--program-len", sim.program_len, "body length m");
  simulate->add_option("--samples", sim.samples, "sample count");
  simulate->add_option("--seed", sim.seed, "64-bit seed");
  simulate->add_option("--workers", sim.workers,
                       "worker threads (0 = hardware)");
  simulate->add_option("--overlap", sim.overlap, "closed|index-set");
  simulate->add_flag("--independent-programs", sim.independent_programs,
                     "regenerate the program per thread copy");
  simulate->callback([&] { action = [&] { return run_simulate(sim); }; });

  // analytic
  auto* analytic_cmd =
      app.add_subcommand("analytic", "exact closed-form queries");
  analytic_cmd->require_subcommand(1);

  std::string win_model, win_gamma = "0..8";
  auto* window = analytic_cmd->add_subcommand("window", "window growth pmf");
  window->add_option("--model", win_model, "sc|wo|tso")->required();
  window->add_option("--gamma", win_gamma, "gamma range A..B");
  window->callback(
      [&] { action = [&] { return run_analytic_window(win_model, win_gamma); }; });

  std::string dis_lengths;
  auto* dis = analytic_cmd->add_subcommand("disjoint",
                                           "exact disjointness probability");
  dis->add_option("--lengths", dis_lengths, "comma-separated lengths")
      ->required();
  dis->callback(
      [&] { action = [&] { return run_analytic_disjoint(dis_lengths); }; });

  std::string tt_model;
  auto* two = analytic_cmd->add_subcommand("two-thread",
                                           "two-thread disjointness value");
  two->add_option("--model", tt_model, "sc|wo|tso")->required();
  two->callback(
      [&] { action = [&] { return run_analytic_two_thread(tt_model); }; });

  int scpa_threads = 2;
  auto* scpa = analytic_cmd->add_subcommand(
      "sc-pr-a", "closed-form SC disjointness for n threads");
  scpa->add_option("--threads", scpa_threads, "thread count")->required();
  scpa->callback(
      [&] { action = [&] { return run_analytic_sc_pr_a(scpa_threads); }; });

  std::string exp_threads;
  auto* exponent = analytic_cmd->add_subcommand(
      "exponent", "log2(Pr)/n^2 ratios for SC disjointness");
  exponent->add_option("--threads", exp_threads, "range A..B")->required();
  exponent->callback(
      [&] { action = [&] { return run_analytic_exponent(exp_threads); }; });

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exact brute-force cross-checks");
  oracle_cmd->require_subcommand(1);

  std::string ow_model;
  int ow_len = 10;
  auto* ow = oracle_cmd->add_subcommand("window",
                                        "exact finite-m window pmf");
  ow->add_option("--model", ow_model, "sc|tso|pso|wo")->required();
  ow->add_option("--program-len", ow_len, "body length m (<= 14)");
  ow->callback(
      [&] { action = [&] { return run_oracle_window(ow_model, ow_len); }; });

  std::string od_lengths;
  int od_cap = 24;
  auto* od = oracle_cmd->add_subcommand(
      "disjoint", "bracket disjointness by shift enumeration");
  od->add_option("--lengths", od_lengths, "comma-separated lengths")
      ->required();
  od->add_option("--cap", od_cap, "largest enumerated shift (<= 40)");
  od->callback(
      [&] { action = [&] { return run_oracle_disjoint(od_lengths, od_cap); }; });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run the analytic/oracle/Monte Carlo cross-check suite");
  verify->callback([&] { action = [] { return run_verify(); }; });

  // sweep
  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "estimate over a (model, threads) grid");
  sweep_cmd->add_option("--models", sweep.models, "comma-separated models");
  sweep_cmd->add_option("--threads", sweep.threads, "range A..B");
  sweep_cmd->add_option("--program-len", sweep.program_len, "body length m");
  sweep_cmd->add_option("--samples", sweep.samples, "samples per cell");
  sweep_cmd->add_option("--seed", sweep.seed, "64-bit seed");
  sweep_cmd->add_option("--workers", sweep.workers,
                        "worker threads (0 = hardware)");
  sweep_cmd->add_option("--format", sweep.format, "csv|json");
  sweep_cmd->callback([&] { action = [&] { return run_sweep(sweep); }; });

  try {
    app.parse(argc, argv);
    return action ? action() : kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
