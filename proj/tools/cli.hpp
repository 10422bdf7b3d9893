#pragma once

// xxring command-line front end. Sites are 1-based on this surface and
// 0-based inside the library.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <xxring/xxring.hpp>

#include "report.hpp"

namespace xxring::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string n_text;
  double j = -1.0;
  double b = 0.0;
  std::vector<int> pair;  // 1-based, empty when unset
  int distance = 0;       // 0 when unset
  double tol = 1e-9;
  std::string format = "table";
  std::string output;
  unsigned threads = 1;
  std::string regime = "ferro";
  std::string parity;
  std::string input;
  bool both_signs = true;  // verify: J = -1 and +1 unless --j is given
  bool timing = true;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

inline IntRange parse_range(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty())
      throw usage_error("invalid ring length '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  IntRange r{to_int(std::string_view(text).substr(0, dots)), to_int(std::string_view(text).substr(dots + 2))};
  if (r.hi < r.lo) throw usage_error("empty ring-length range '" + text + "'");
  return r;
}

inline int single_n(const RunConfig& cfg) {
  const auto r = parse_range(cfg.n_text);
  if (r.lo != r.hi) throw usage_error("command '" + cfg.command + "' takes a single --n");
  return r.lo;
}

inline Regime parse_regime(const std::string& s) {
  if (s == "ferro" || s == "f") return Regime::ferromagnetic;
  if (s == "antiferro" || s == "af" || s == "a-f") return Regime::antiferromagnetic;
  throw usage_error("regime must be 'ferro' or 'antiferro'");
}

inline Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  if (s == "all" || s.empty()) return Parity::all;
  throw usage_error("parity must be even, odd or all");
}

inline Json config_json(const RunConfig& cfg) {
  Json c;
  c["n"] = cfg.n_text;
  c["j"] = number(cfg.j);
  c["b"] = number(cfg.b);
  if (!cfg.pair.empty()) c["pair"] = cfg.pair;
  if (cfg.distance) c["distance"] = cfg.distance;
  c["tol"] = number(cfg.tol);
  c["regime"] = cfg.regime;
  if (!cfg.parity.empty()) c["parity"] = cfg.parity;
  c["threads"] = cfg.threads;
  return c;
}

inline Json sweep_row_json(const SweepRow& r, bool timing) {
  Json row;
  row["n"] = r.n;
  row["regime"] = to_string(r.regime);
  row["distance"] = r.distance;
  row["concurrence"] = number(r.concurrence);
  row["degeneracy"] = r.degeneracy;
  row["ground_energy"] = number(r.ground_energy);
  row["wall_ms"] = number(timing ? r.wall_ms : 0.0);
  return row;
}

inline std::vector<SweepRow> sweep_rows_from_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto recs = parse_csv(ss.str());
  if (recs.empty()) throw usage_error("input CSV is empty");
  const auto& head = recs.front();
  auto col = [&](const std::string& name) {
    const auto it = std::find(head.begin(), head.end(), name);
    if (it == head.end()) throw usage_error("input CSV lacks column '" + name + "'");
    return static_cast<std::size_t>(it - head.begin());
  };
  const auto cn = col("n"), cr = col("regime"), cd = col("distance"), cc = col("concurrence");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    SweepRow r;
    r.n = static_cast<int>(parse_double(recs[i].at(cn)));
    r.regime = parse_regime(recs[i].at(cr));
    r.distance = static_cast<int>(parse_double(recs[i].at(cd)));
    r.concurrence = parse_double(recs[i].at(cc));
    rows.push_back(r);
  }
  return rows;
}

/// Runs one command; returns the report and whether verification passed.
inline std::pair<Report, bool> execute(const RunConfig& cfg) {
  Report rep;
  rep.command = cfg.command;
  rep.config = config_json(cfg);
  bool ok = true;
  const FieldSetting field{cfg.b};
  auto coupling = [&] {
    if (cfg.j == 0.0) throw usage_error("--j must be nonzero");
    return Coupling(cfg.j);
  };

  if (cfg.command == "spectrum") {
    const int n = single_n(cfg);
    for (const auto& blk : block_spectra(n, coupling(), field, cfg.threads))
      for (std::size_t i = 0; i < blk.values.size(); ++i)
        rep.rows.push_back({{"k", blk.label.k}, {"m", blk.label.m}, {"index", i}, {"energy", number(blk.values[i])}});
  } else if (cfg.command == "ground") {
    const int n = single_n(cfg);
    const auto gm = ground_manifold(n, coupling(), field, cfg.tol, cfg.threads);
    for (const auto& s : gm.states)
      rep.rows.push_back({{"k", s.label.k},
                          {"m", s.label.m},
                          {"energy", number(s.energy)},
                          {"degeneracy", gm.degeneracy()}});
  } else if (cfg.command == "concurrence") {
    const int n = single_n(cfg);
    SitePair pair{0, 1};
    if (!cfg.pair.empty() && cfg.distance) throw usage_error("give either --pair or --distance, not both");
    if (!cfg.pair.empty()) {
      if (cfg.pair.size() != 2) throw usage_error("--pair takes two site labels");
      pair = {std::min(cfg.pair[0], cfg.pair[1]) - 1, std::max(cfg.pair[0], cfg.pair[1]) - 1};
    } else if (cfg.distance) {
      pair = {0, cfg.distance};
    }
    if (n < 2) throw usage_error("concurrence needs n >= 2");
    check_pair(n, pair);
    const auto gm = ground_manifold(n, coupling(), field, cfg.tol, cfg.threads);
    rep.rows.push_back({{"n", n},
                        {"p", pair.p + 1},
                        {"q", pair.q + 1},
                        {"distance", ring_distance(n, pair.p, pair.q)},
                        {"concurrence", number(ground_concurrence(gm, pair))},
                        {"degeneracy", gm.degeneracy()}});
  } else if (cfg.command == "lp") {
    const int n = single_n(cfg);
    const auto r = lp_table(n, coupling(), field, cfg.tol, cfg.threads);
    for (const auto& row : r.rows)
      rep.rows.push_back({{"pattern", row.pattern},
                          {"sites", site_label(row.representative)},
                          {"k", r.k},
                          {"multiplicity", row.multiplicity},
                          {"member_probability", number(row.member_probability)},
                          {"total_probability", number(row.total_probability)},
                          {"clustering", number(row.clustering)},
                          {"dihedral_class", row.dihedral_class}});
    rep.config["rank_correlation"] = number(r.rank_correlation);
    rep.config["sector_weight"] = number(r.sector_weight);
  } else if (cfg.command == "sweep") {
    const auto r = parse_range(cfg.n_text);
    for (const auto& row : sweep(r.lo, r.hi, parse_parity(cfg.parity), parse_regime(cfg.regime),
                                 cfg.distance ? cfg.distance : 1, cfg.threads, cfg.tol))
      rep.rows.push_back(sweep_row_json(row, cfg.timing));
  } else if (cfg.command == "extrapolate") {
    std::vector<SweepRow> rows;
    if (!cfg.input.empty()) {
      rows = sweep_rows_from_csv(cfg.input);
    } else {
      const auto r = parse_range(cfg.n_text);
      rows = sweep(r.lo, r.hi, parse_parity(cfg.parity.empty() ? "even" : cfg.parity), parse_regime(cfg.regime),
                   cfg.distance ? cfg.distance : 1, cfg.threads, cfg.tol);
    }
    const auto fit = extrapolate(rows);
    rep.rows.push_back({{"c_inf", number(fit.c_inf)},
                        {"a", number(fit.a)},
                        {"b", number(fit.b)},
                        {"residual_norm", number(fit.residual_norm)},
                        {"points", fit.points}});
  } else if (cfg.command == "verify") {
    const auto r = parse_range(cfg.n_text);
    if (r.lo < 1 || r.hi > oracle::kMaxFullDenseSites) throw usage_error("verify supports 1 <= n <= 10");
    std::vector<double> signs;
    if (cfg.both_signs)
      signs = {-1.0, 1.0};
    else
      signs = {cfg.j};
    for (int n = r.lo; n <= r.hi; ++n)
      for (double j : signs) {
        const auto cmp = compare_with_oracle(n, Coupling(j), cfg.tol, cfg.threads);
        const bool pass = cmp.agrees(1e-10);
        ok = ok && pass;
        rep.rows.push_back({{"n", n},
                            {"j", number(j)},
                            {"energy", number(cmp.pipeline_energy)},
                            {"energy_diff", number(cmp.energy_diff())},
                            {"degeneracy", cmp.pipeline_degeneracy},
                            {"oracle_degeneracy", cmp.oracle_degeneracy},
                            {"concurrence", number(cmp.pipeline_concurrence)},
                            {"concurrence_diff", number(cmp.concurrence_diff())},
                            {"probability_diff", number(std::max(cmp.max_configuration_probability_diff,
                                                                 cmp.max_orbit_probability_diff))},
                            {"pass", pass}});
      }
  } else {
    throw usage_error("unknown command '" + cfg.command + "'");
  }
  return {std::move(rep), ok};
}

inline std::string render(const Report& rep, const std::string& format) {
  if (format == "json") return to_json(rep);
  if (format == "csv") return to_csv(rep);
  return to_table(rep);
}

inline unsigned env_threads(unsigned fallback) {
  if (const char* env = std::getenv("XXRING_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return fallback;
}

inline constexpr const char* kDescription =
    "Exact diagonalization of the spin-1/2 XX ring: spectra, ground manifold, pair concurrence,\n"
    "micro-state probabilities and finite-size sweeps. Site labels are 1-based (sites 1..n).\n"
    "Ring lengths accept a single value (--n 8) or an inclusive range (--n 2..9).\n"
    "Environment: XXRING_THREADS overrides --threads.";

/// Entry point shared by the executable and the tests. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{kDescription, "xxring"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool no_timing = false;

  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_option("--n", cfg.n_text, "Ring length or range lo..hi");
    sub->add_option("--j", cfg.j, "Exchange constant J (J<0 ferromagnetic, J>0 antiferromagnetic)");
    if (with_field) sub->add_option("--b", cfg.b, "Uniform field b, adds -b * sum Sz");
    sub->add_option("--tol", cfg.tol, "Degeneracy threshold relative to the spectral range")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output,-o", cfg.output, "Write the report to this file instead of stdout");
    sub->add_option("--threads", cfg.threads, "Worker threads for block diagonalization")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", no_timing, "Zero wall-clock fields so output is byte-reproducible");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of every (k, m) block");
  add_common(spectrum, true);
  auto* ground = app.add_subcommand("ground", "Ground manifold summary");
  add_common(ground, true);
  auto* conc = app.add_subcommand("concurrence", "Ground-state pair concurrence");
  add_common(conc, true);
  conc->add_option("--pair", cfg.pair, "Two 1-based site labels, default 1 2")->expected(2);
  conc->add_option("--distance", cfg.distance, "Ring distance d, uses sites 1 and 1+d")->check(CLI::PositiveNumber);
  auto* lp = app.add_subcommand("lp", "Micro-state (translation orbit) probabilities and clustering scores");
  add_common(lp, true);
  auto* sw = app.add_subcommand("sweep", "Concurrence versus ring length");
  add_common(sw, false);
  sw->add_option("--regime", cfg.regime, "ferro or antiferro");
  sw->add_option("--parity", cfg.parity, "even, odd or all");
  sw->add_option("--distance", cfg.distance, "Pair distance (default 1)")->check(CLI::PositiveNumber);
  auto* ex = app.add_subcommand("extrapolate", "Fit C(n) = C_inf + a/n + b/n^2");
  add_common(ex, false);
  ex->add_option("--regime", cfg.regime, "ferro or antiferro");
  ex->add_option("--parity", cfg.parity, "even or odd (default even)");
  ex->add_option("--distance", cfg.distance, "Pair distance (default 1)")->check(CLI::PositiveNumber);
  ex->add_option("--input", cfg.input, "Fit rows from a CSV written by 'sweep' instead of computing them");
  auto* ver = app.add_subcommand("verify", "Cross-check the sector pipeline against full 2^n diagonalization");
  add_common(ver, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  cfg.timing = !no_timing;
  if (chosen->count("--n") == 0) {
    if (cfg.command == "verify") cfg.n_text = "2..9";
    else if (cfg.command == "sweep") cfg.n_text = "2..8";
    else if (cfg.command == "extrapolate") cfg.n_text = "6..14";
    else {
      err << "error: --n is required for '" << cfg.command << "'\n";
      return kUsage;
    }
  }
  if (cfg.command == "verify") cfg.both_signs = chosen->count("--j") == 0;
  if ((cfg.command == "sweep" || cfg.command == "extrapolate") && chosen->count("--j") > 0 &&
      chosen->count("--regime") == 0)
    cfg.regime = cfg.j < 0 ? "ferro" : "antiferro";
  cfg.threads = env_threads(cfg.threads);

  const auto t0 = std::chrono::steady_clock::now();
  std::pair<Report, bool> result;
  try {
    result = execute(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  auto& [rep, ok] = result;
  rep.runtime_ms = cfg.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() : 0.0;

  const auto text = render(rep, cfg.format);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kUsage;
    }
    f << text;
  }
  if (!ok) err << "verification mismatch\n";
  return ok ? kOk : kMismatch;
}

}  // namespace xxring::cli
