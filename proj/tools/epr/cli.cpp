#include "epr/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epr/errors.hpp"
#include "epr/fractional_matching.hpp"
#include "epr/oracle.hpp"
#include "epr/quantum.hpp"
#include "epr/rounding.hpp"

namespace epr::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::filesystem::path data_dir_of(const RunConfig& cfg) {
  return cfg.data_dir.empty() ? CycleStateLibrary::default_data_dir() : std::filesystem::path(cfg.data_dir);
}

const CycleStateLibrary& library_of(const RunConfig& cfg) {
  if (cfg.data_dir.empty()) return CycleStateLibrary::shared();
  static std::optional<CycleStateLibrary> custom;
  static std::string custom_dir;
  if (!custom || custom_dir != cfg.data_dir) {
    custom.emplace(CycleStateLibrary::load_or_synthesize(cfg.data_dir));
    custom_dir = cfg.data_dir;
  }
  return *custom;
}

WeightedGraph load(const RunConfig& cfg) {
  std::optional<InstanceFormat> format;
  if (!cfg.format.empty()) format = parse_instance_format(cfg.format);
  return load_instance(cfg.instance_path, format);
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw InputError("cannot write " + cfg.output_path);
  file << doc.dump(2) << '\n';
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_checks(const VerificationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << fmt(c.measured)
        << " threshold=" << fmt(c.threshold) << " margin=" << fmt(c.margin) << '\n';
  }
  out << (report.pass() ? "all checks passed" : "some checks FAILED") << '\n';
}

// |measured - expected| <= tolerance.
Check closeness(std::string name, double measured, double expected, double tolerance) {
  const double dev = std::abs(measured - expected);
  return {std::move(name), measured, expected, tolerance - dev, 0.0, dev <= tolerance};
}

// measured > threshold by at least required.
Check strict(std::string name, double measured, double threshold, double required) {
  const double margin = measured - threshold;
  return {std::move(name), measured, threshold, margin, required, margin >= required && margin > 0.0};
}

// measured <= threshold.
Check upper(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, threshold - measured, 0.0, measured <= threshold};
}

void append(VerificationReport& into, const VerificationReport& from, const std::string& prefix) {
  for (auto c : from.checks) {
    c.name = prefix + "." + c.name;
    into.checks.push_back(std::move(c));
  }
}

WeightedGraph unit_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) list.push_back({u, v, 1.0, Rational(1)});
  return WeightedGraph(n, list);
}

double max_star_sum_of(const DensityBlock& block) {
  const int q = block.num_qubits();
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) table(i, j) = table(j, i) = pair_energy(block, i, j);
  return max_star_sum(table);
}

// ---------------------------------------------------------------------------

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  GeneratorParams params;
  params.size = cfg.sizes.empty() ? 0 : cfg.sizes.front();
  params.size_b = cfg.size_b;
  params.p = cfg.p;
  params.weights = WeightSpec::parse(cfg.weights);
  params.seed = cfg.seed;
  const auto g = generate(parse_family(cfg.family), params);
  const auto format = cfg.format.empty() ? InstanceFormat::edgelist : parse_instance_format(cfg.format);
  if (!cfg.output_path.empty()) {
    save_instance(cfg.output_path, g, format);
  } else if (format == InstanceFormat::json) {
    write_instance_json(out, g);
  } else {
    write_edgelist(out, g);
  }
  return kSuccess;
}

int cmd_lp(const RunConfig& cfg, std::ostream& out) {
  const auto g = load(cfg);
  const auto s = solve_lp(g, cfg.exact ? Arithmetic::exact : Arithmetic::floating);
  json doc = s.to_json();
  doc["schema_version"] = kSchemaVersion;
  doc["constants"] = AlgorithmConstants::get().to_json();
  doc["n"] = g.num_vertices();
  doc["edges"] = g.num_edges();
  doc["total_weight"] = g.total_weight();
  doc["upper_bound"] = upper_bound(g, s);
  if (const auto exact = exact_upper_bound(g, s)) doc["exact_upper_bound"] = to_string(*exact);
  emit(cfg, doc, out);
  return kSuccess;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  auto g = load(cfg);
  std::optional<QubitFrame> frame;
  if (cfg.qmc) {
    const auto bipartition = detect_bipartition(g);
    if (!bipartition) throw InputError("--qmc requires a bipartite instance");
    auto reduction = qmc_to_epr(g, *bipartition);
    g = std::move(reduction.graph);
    frame = std::move(reduction.frame);
  }
  const auto s = solve_lp(g);

  std::optional<RoundedState> state;
  Certificate cert;
  if (cfg.algorithm == "main") {
    state.emplace(round(g, s, library_of(cfg)));
    if (frame) state.emplace(state->with_frame(*frame));
    cert = certify(g, s, *state, AlgorithmConstants::get().alpha, cfg.tolerance);
  } else if (cfg.algorithm == "baseline34") {
    auto baseline = baseline_34(g, s);
    state.emplace(frame ? baseline.state.with_frame(*frame) : baseline.state);
    cert = certify(g, s, *state, baseline.certificate.alpha, cfg.tolerance);
    cert.algorithm = "baseline34";
  } else {
    throw InputError("unknown algorithm '" + cfg.algorithm + "'");
  }

  json doc = cert.to_json();
  doc["n"] = g.num_vertices();
  doc["lp"] = s.to_json();
  bool pass = cert.pass;
  if (cfg.audit_all_pairs) {
    const auto audit = audit_all_pairs(s, *state, cfg.tolerance);
    doc["audit_all_pairs"] = {{"u", audit.u < 0 ? json(nullptr) : json(audit.u)},
                              {"v", audit.v < 0 ? json(nullptr) : json(audit.v)},
                              {"min_ratio", audit.u < 0 ? json(nullptr) : json(audit.min_ratio)},
                              {"pass", audit.pass}};
    pass = pass && audit.pass;
  }
  doc["pass"] = pass;
  emit(cfg, doc, out);
  if (!cfg.output_path.empty()) {
    out << (pass ? "PASS" : "FAIL") << " achieved=" << fmt(cert.achieved_total)
        << " upper_bound=" << fmt(cert.upper_bound) << " ratio=" << fmt(cert.total_ratio)
        << " min_edge_ratio=" << (cert.edges.empty() ? std::string("n/a") : fmt(cert.min_ratio)) << '\n';
  }
  return pass ? kSuccess : kCheckFailed;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  DensityBlock state = [&] {
    if (cfg.synth_kind == "3") return synth_small_cycle(3);
    if (cfg.synth_kind == "5") return synth_small_cycle(5);
    if (cfg.synth_kind == "psi") return synth_psi();
    throw InputError("--k must be 3, 5 or psi");
  }();
  const std::string kind = cfg.synth_kind == "psi" ? "psi" : "rho" + cfg.synth_kind;
  const auto report = kind == "psi" ? verify_psi(state) : verify_lemma5(state, state.num_qubits());
  const std::filesystem::path path =
      cfg.output_path.empty() ? cycle_state_file(data_dir_of(cfg), kind) : std::filesystem::path(cfg.output_path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path.string());
  file << cycle_state_document(kind, state, report).dump(2) << '\n';
  print_checks(report, out);
  out << "wrote " << path.string() << '\n';
  return report.pass() ? kSuccess : kCheckFailed;
}

int cmd_verify_lemma5(const RunConfig& cfg, std::ostream& out) {
  if (cfg.ks.size() != 1) throw InputError("verify-lemma5 takes exactly one --k");
  const int k = cfg.ks.front();
  if (k < 3 || k % 2 == 0) throw InputError("--k must be odd and >= 3");
  const auto state = library_of(cfg).cycle_state(k);
  const auto report = verify_lemma5(*state, k);
  if (cfg.json) {
    emit(cfg, report.to_json(), out);
  } else {
    print_checks(report, out);
  }
  return report.pass() ? kSuccess : kCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<int> ks = cfg.ks;
  if (ks.empty()) ks = {3, 5, 7, 9, 11, 13, 15};
  for (int k : ks)
    if (k < 3 || k % 2 == 0) throw InputError("--k values must be odd and >= 3");
  const auto report = verification_suite(data_dir_of(cfg), ks, cfg.seed, &err);
  if (cfg.json || !cfg.output_path.empty()) {
    json doc = report.to_json();
    doc["schema_version"] = kSchemaVersion;
    doc["constants"] = AlgorithmConstants::get().to_json();
    emit(cfg, doc, out);
  }
  if (!cfg.json) print_checks(report, out);
  return report.pass() ? kSuccess : kCheckFailed;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto g = load(cfg);
  if (g.num_vertices() > kMaxOracleQubits)
    throw InputError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
  const auto report = measure_ratio(g, library_of(cfg));
  emit(cfg, report.to_json(), out);
  return report.pass ? kSuccess : kCheckFailed;
}

std::vector<BenchRow> bench_instances(const RunConfig& cfg) {
  std::vector<BenchRow> rows;
  if (!cfg.corpus_dir.empty()) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(cfg.corpus_dir, ec))
      if (entry.is_regular_file()) files.push_back(entry.path());
    if (ec) throw InputError("cannot read corpus " + cfg.corpus_dir + ": " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        rows.push_back({f.filename().string(), load_instance(f), {}});
      } catch (const InputError& e) {
        rows.push_back({f.filename().string(), std::nullopt, e.what()});
      }
    }
    return rows;
  }
  if (cfg.family.empty()) throw InputError("bench needs --corpus or --family");
  if (cfg.sizes.empty()) throw InputError("bench needs at least one --size");
  const Family family = parse_family(cfg.family);
  for (int size : cfg.sizes) {
    for (int i = 0; i < cfg.count; ++i) {
      GeneratorParams params;
      params.size = size;
      params.size_b = cfg.size_b > 0 ? cfg.size_b : size;
      params.p = cfg.p;
      params.weights = WeightSpec::parse(cfg.weights);
      params.seed = cfg.seed + static_cast<std::uint64_t>(i);
      rows.push_back({to_string(family) + "-n" + std::to_string(size) + "-s" + std::to_string(params.seed),
                      generate(family, params), {}});
    }
  }
  return rows;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  if (cfg.jobs < 1) throw InputError("--jobs must be positive");
  const auto rows = bench_instances(cfg);
  const auto& library = library_of(cfg);
  if (cfg.output_path.empty()) {
    write_bench_csv(out, rows, library, cfg.jobs);
  } else {
    std::ofstream file(cfg.output_path);
    if (!file) throw InputError("cannot write " + cfg.output_path);
    write_bench_csv(file, rows, library, cfg.jobs);
  }
  return kSuccess;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c == '\n' ? ' ' : c;
  }
  return quoted + '"';
}

}  // namespace

// ---------------------------------------------------------------------------

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, const CycleStateLibrary& library,
                     int jobs, bool with_timing) {
  std::vector<std::string> lines(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const auto& row = rows[i];
      const auto start = std::chrono::steady_clock::now();
      std::ostringstream line;
      line << kSchemaVersion << ',' << csv_field(row.instance) << ',';
      if (!row.graph) {
        line << ",,,,,,,,,false,," << csv_field(row.load_error);
        lines[i] = line.str();
        continue;
      }
      line << row.graph->num_vertices() << ',' << row.graph->num_edges() << ',';
      try {
        const auto r = measure_ratio(*row.graph, library);
        const auto ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        line << fmt(r.lp_value) << ',' << fmt(r.upper_bound) << ',' << fmt(r.achieved) << ','
             << (r.lambda_max ? fmt(*r.lambda_max) : "") << ',' << fmt(r.lp_ratio) << ','
             << (r.exact_ratio ? fmt(*r.exact_ratio) : "") << ',' << fmt(r.min_edge_ratio) << ','
             << (r.pass ? "true" : "false") << ',' << (with_timing ? fmt(ms) : "") << ',';
      } catch (const std::exception& e) {
        line << ",,,,,,,false,," << csv_field(e.what());
      }
      lines[i] = line.str();
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << "schema_version,instance,n,edges,lp_value,upper_bound,achieved,lambda_max,ratio_lp,ratio_exact,"
         "min_edge_ratio,pass,wall_ms,error\n";
  for (const auto& line : lines) out << line << '\n';
}

VerificationReport verification_suite(const std::filesystem::path& data_dir, const std::vector<int>& ks,
                                      std::uint64_t seed, std::ostream* log) {
  const auto& c = AlgorithmConstants::get();
  const double sqrt5 = std::sqrt(5.0);
  VerificationReport report{"verify", {}};
  auto& checks = report.checks;

  checks.push_back(closeness("constants.alpha", c.alpha, (1.0 + sqrt5) / 4.0, 1e-15));
  checks.push_back(closeness("constants.gamma", c.gamma, (sqrt5 - 1.0) / 4.0, 1e-15));
  checks.push_back(closeness("constants.theta_gamma", std::sqrt(c.theta * (1.0 - c.theta)), c.gamma, 1e-14));
  checks.push_back(strict("constants.cycle_slack", 4.0 * kPsiPathEnergy + (1.0 + sqrt5) / 8.0,
                          5.0 * 0.75 * c.alpha, kRequiredMargin));

  // Tilted EPR pair.
  const Ket tilted = tilted_epr(c.theta);
  const double overlap = std::norm(epr_ket().amplitudes().dot(tilted.amplitudes()));
  checks.push_back(closeness("tilted_pair.epr_overlap", overlap, 0.5 + c.gamma, 1e-12));
  const auto pair = DensityBlock::from_ket({0, 1}, tilted);
  const int first[] = {0};
  const int second[] = {1};
  const double marginal_dev =
      std::max((partial_trace(pair, first).matrix() - diagonal_marginal(c.theta)).cwiseAbs().maxCoeff(),
               (partial_trace(pair, second).matrix() - diagonal_marginal(c.theta)).cwiseAbs().maxCoeff());
  checks.push_back(upper("tilted_pair.marginal_deviation", marginal_dev, 1e-12));
  const double product_energy = epr_energy(kron(diagonal_marginal(c.theta), diagonal_marginal(c.theta)));
  checks.push_back(closeness("tilted_pair.product_energy", product_energy, 0.5 - c.gamma * c.gamma, 1e-12));
  checks.push_back(closeness("tilted_pair.product_energy_half_alpha", product_energy, c.alpha / 2.0, 1e-12));

  // The data cache; a broken file is reported and replaced by a fresh synthesis.
  std::optional<CycleStateLibrary> library;
  try {
    library.emplace(CycleStateLibrary::load(data_dir));
    checks.push_back({"data_cache.load", 1.0, 1.0, 0.0, 0.0, true});
  } catch (const std::exception& e) {
    if (log) *log << "data cache in " << data_dir.string() << " unusable: " << e.what() << '\n';
    checks.push_back({"data_cache.load", 0.0, 1.0, -1.0, 0.0, false});
    library.emplace(CycleStateLibrary::synthesize());
  }

  // Single matched edge and the 3/4 baseline on a path.
  {
    const auto g = unit_graph(2, {{0, 1}});
    const auto s = solve_lp(g);
    const auto rs = round(g, s, *library);
    checks.push_back(closeness("rounding.matched_edge", edge_energy(rs, 0, 1), c.alpha, 1e-12));
  }
  {
    const auto g = unit_graph(3, {{0, 1}, {1, 2}});
    const auto s = solve_lp(g);
    const auto base = baseline_34(g, s);
    const int m = s.in_matching(0, 1) ? 0 : 2;  // the matched edge is {m, 1}
    const int u = 2 - m;
    checks.push_back(closeness("baseline.matched_edge", edge_energy(base.state, m, 1), 0.75, 1e-12));
    checks.push_back(closeness("baseline.unmatched_edge", edge_energy(base.state, 1, u), 0.375, 1e-12));
    checks.push_back(closeness("baseline.min_ratio", base.certificate.min_ratio, 0.75, 1e-12));
  }

  // Star bound on random states.
  {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int q = 2 + i % 4;
      const int rank = i % 2 == 0 ? 1 : 0;
      worst = std::max(worst, max_star_sum_of(random_density_block(q, rng, rank)));
    }
    checks.push_back(upper("star_bound.random_states", worst, 1.0 + 1e-9));
  }

  append(report, verify_psi(library->psi()), "psi");

  for (int k : ks) {
    const auto state = library->cycle_state(k);
    append(report, verify_lemma5(*state, k), "cycle_k" + std::to_string(k));
    if (k >= 7 && k < 11) {
      // Pairs within a block contribute EPR_theta or psi energies, the rest alpha/2.
      const auto psi_report = verify_psi(library->psi());
      const double path = psi_report.find("path_energy")->measured;
      const double pairs = (k - 5) / 2.0;
      const double expected =
          ((pairs * (0.5 + c.gamma) + 4.0 * path + (k - pairs - 4.0) * (c.alpha / 2.0)) / k);
      double mean = 0.0;
      for (int i = 0; i < k; ++i) mean += state->pair_energy(i, (i + 1) % k);
      mean /= k;
      checks.push_back(closeness("cycle_k" + std::to_string(k) + ".edge_formula", mean, expected, 1e-9));
    }
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-state approximation for the EPR Hamiltonian", "epr"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> ks_text;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance_path, "Instance file (edge list or JSON)")->required();
    sub->add_option("--format", cfg.format, "Instance format: edgelist or json");
  };
  auto add_data_dir = [&](CLI::App* sub) {
    sub->add_option("--data-dir", cfg.data_dir, "Cycle-state cache directory");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("family", cfg.family, "random_gnp, cycle, complete, bipartite_random or star")->required();
  gen->add_option("--size", cfg.sizes, "Vertices (cycle length, star leaves, bipartite side A)")
      ->required()
      ->expected(1);
  gen->add_option("--size-b", cfg.size_b, "Bipartite side B");
  gen->add_option("--p", cfg.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--weights", cfg.weights, "unit, uniform:LO:HI or int:W");
  gen->add_option("--seed", cfg.seed, "RNG seed");
  gen->add_option("--out", cfg.output_path, "Output file");
  gen->add_option("--format", cfg.format, "edgelist or json");

  auto* lp = app.add_subcommand("lp", "Solve the fractional matching LP");
  add_instance(lp);
  lp->add_flag("--exact", cfg.exact, "Exact rational arithmetic");
  lp->add_option("--out", cfg.output_path, "Write JSON here instead of stdout");

  auto* solve = app.add_subcommand("solve", "Round the LP solution and certify the ratio");
  add_instance(solve);
  add_data_dir(solve);
  solve->add_option("--algorithm", cfg.algorithm, "main or baseline34")
      ->check(CLI::IsMember({"main", "baseline34"}));
  solve->add_option("--out", cfg.output_path, "Write the certificate here");
  solve->add_flag("--audit-all-pairs", cfg.audit_all_pairs, "Also check every vertex pair");
  solve->add_flag("--qmc", cfg.qmc, "Treat weights as a bipartite QMC instance");
  solve->add_option("--tolerance", cfg.tolerance, "Ratio tolerance")->check(CLI::NonNegativeNumber);

  auto* synth = app.add_subcommand("synth", "Synthesize and verify a cycle seed state");
  synth->add_option("--k", cfg.synth_kind, "3, 5 or psi")->required();
  synth->add_option("--out", cfg.output_path, "Output file (default: the data directory)");
  add_data_dir(synth);

  auto* lemma5 = app.add_subcommand("verify-lemma5", "Verify the cycle state for one odd k");
  lemma5->add_option("--k", cfg.ks, "Odd cycle length")->required()->expected(1);
  lemma5->add_flag("--json", cfg.json, "JSON output");
  lemma5->add_option("--out", cfg.output_path, "Write JSON here");
  add_data_dir(lemma5);

  auto* verify = app.add_subcommand("verify", "Run every analytic and numeric check");
  verify->add_option("--k", cfg.ks, "Odd cycle lengths to check (default 3..15)");
  verify->add_option("--seed", cfg.seed, "RNG seed for random-state checks");
  verify->add_flag("--json", cfg.json, "JSON output");
  verify->add_option("--out", cfg.output_path, "Write JSON here");
  add_data_dir(verify);

  auto* oracle = app.add_subcommand("oracle", "Compare against the exact ground energy (n <= 14)");
  add_instance(oracle);
  add_data_dir(oracle);
  oracle->add_option("--out", cfg.output_path, "Write JSON here");

  auto* bench = app.add_subcommand("bench", "Measure ratios over a corpus or generated family");
  bench->add_option("--corpus", cfg.corpus_dir, "Directory of instance files");
  bench->add_option("--family", cfg.family, "Generator family");
  bench->add_option("--size", cfg.sizes, "Sizes (repeatable)");
  bench->add_option("--size-b", cfg.size_b, "Bipartite side B (default: same as size)");
  bench->add_option("--p", cfg.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--weights", cfg.weights, "unit, uniform:LO:HI or int:W");
  bench->add_option("--count", cfg.count, "Instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "First seed");
  bench->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", cfg.output_path, "CSV output file");
  add_data_dir(bench);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*lp) return cmd_lp(cfg, out);
    if (*solve) return cmd_solve(cfg, out);
    if (*synth) return cmd_synth(cfg, out);
    if (*lemma5) return cmd_verify_lemma5(cfg, out);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*oracle) return cmd_oracle(cfg, out);
    if (*bench) return cmd_bench(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SynthesisFailed& e) {
    err << "synthesis failed: " << e.what() << '\n';
    return kSynthesisError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace epr::cli
