#include "chh/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chh/error.hpp"
#include "chh/eval.hpp"
#include "chh/exact.hpp"
#include "chh/params.hpp"
#include "chh/sketch.hpp"
#include "chh/snapshot.hpp"
#include "chh/tuple_source.hpp"
#include "chh/zipf.hpp"

namespace chh {

namespace {

// Thrown for bad flag combinations that CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::optional<Fraction> optional_fraction(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return Fraction::parse(text);
}

void warn_constraints(const ChhParams& params, std::ostream& err) {
  const auto status = check_constraints(params);
  if (status.satisfied()) return;
  err << "warning: table sizes s1=" << params.s1 << " s2=" << params.s2
      << " do not satisfy the accuracy constraints (primary " << (status.primary_ok ? "ok" : "violated")
      << ", secondary " << (status.secondary_ok ? "ok" : "violated") << ", tolerances "
      << (status.tolerances_in_range ? "in range" : "out of range")
      << "); the no-false-positive guarantees do not apply\n";
}

template <typename Sketch>
SketchState build_sketch(TupleSource& source, const ChhParams& params) {
  Sketch sketch(params);
  TupleRecord t;
  while (source.next(t)) sketch.update(t.x, t.y);
  return sketch.state();
}

void print_report_text(const ChhReport& report, std::ostream& out) {
  for (const auto& p : report.primaries) {
    out << p.primary << ' ' << p.est_count << '\n';
    for (const auto& s : p.pairs) out << p.primary << ' ' << s.secondary << ' ' << s.est_count << '\n';
  }
}

void print_report_csv(const ChhReport& report, std::ostream& out) {
  out << "kind,d,s,est_count\n";
  for (const auto& p : report.primaries) {
    out << "primary," << csv_field(p.primary) << ",," << p.est_count << '\n';
    for (const auto& s : p.pairs) {
      out << "pair," << csv_field(p.primary) << ',' << csv_field(s.secondary) << ',' << s.est_count << '\n';
    }
  }
}

void print_exact(const ExactChhSet& chh, std::ostream& out) {
  for (const auto& p : chh.primaries) {
    out << p.primary << ' ' << p.count << '\n';
    for (const auto& s : p.pairs) out << '(' << p.primary << ',' << s.secondary << ") " << s.count << '\n';
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlated heavy-hitter sketches for two-dimensional tuple streams", "chh"};
  app.require_subcommand(1);

  // solve-params
  std::string sp_phi1, sp_phi2, sp_eps1, sp_eps2;
  auto* solve_cmd = app.add_subcommand("solve-params", "Compute space-minimal table sizes");
  solve_cmd->add_option("--phi1", sp_phi1, "Primary threshold")->required();
  solve_cmd->add_option("--phi2", sp_phi2, "Secondary threshold")->required();
  solve_cmd->add_option("--eps1", sp_eps1, "Primary tolerance")->required();
  solve_cmd->add_option("--eps2", sp_eps2, "Secondary tolerance")->required();

  // generate
  ZipfWorkloadSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded Zipf tuple stream");
  gen_cmd->add_option("--n", gen.tuple_count, "Number of tuples")->required();
  gen_cmd->add_option("--primary-domain", gen.primary_domain, "Distinct primary values")->required();
  gen_cmd->add_option("--secondary-domain", gen.secondary_domain, "Distinct secondary values")->required();
  gen_cmd->add_option("--skew1", gen.primary_skew, "Primary Zipf exponent")->capture_default_str();
  gen_cmd->add_option("--skew2", gen.secondary_skew, "Secondary Zipf exponent")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output path, '-' for stdout")->required();

  // build
  std::string b_in, b_out, b_phi1, b_phi2, b_eps1, b_eps2, b_inner = "eager";
  std::uint64_t b_s1 = 0, b_s2 = 0;
  bool b_strict = false;
  auto* build_cmd = app.add_subcommand("build", "Build a sketch from a tuple stream");
  build_cmd->add_option("--in", b_in, "Tab-separated tuples (default: stdin)");
  build_cmd->add_option("--phi1", b_phi1, "Primary threshold")->required();
  build_cmd->add_option("--phi2", b_phi2, "Secondary threshold")->required();
  build_cmd->add_option("--eps1", b_eps1, "Primary tolerance");
  build_cmd->add_option("--eps2", b_eps2, "Secondary tolerance");
  auto* s1_opt = build_cmd->add_option("--s1", b_s1, "Outer table size");
  auto* s2_opt = build_cmd->add_option("--s2", b_s2, "Inner table size");
  s1_opt->needs(s2_opt);
  s2_opt->needs(s1_opt);
  build_cmd->add_option("--out", b_out, "Snapshot path")->required();
  build_cmd->add_flag("--strict", b_strict, "Fail on the first malformed line");
  build_cmd->add_option("--inner", b_inner, "Inner table implementation")
      ->check(CLI::IsMember({"eager", "offset"}))
      ->capture_default_str();

  // report
  std::string r_sketch, r_format = "text";
  auto* report_cmd = app.add_subcommand("report", "Report correlated heavy hitters from a snapshot");
  report_cmd->add_option("--sketch", r_sketch, "Snapshot path")->required();
  report_cmd->add_option("--format", r_format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  // exact
  std::string e_in, e_phi1, e_phi2, e_method = "multipass";
  std::uint64_t e_cap = kDefaultTupleCap;
  auto* exact_cmd = app.add_subcommand("exact", "Exact correlated heavy hitters");
  exact_cmd->add_option("--in", e_in, "Tab-separated tuples")->required();
  exact_cmd->add_option("--phi1", e_phi1, "Primary threshold")->required();
  exact_cmd->add_option("--phi2", e_phi2, "Secondary threshold")->required();
  exact_cmd->add_option("--method", e_method, "Oracle")
      ->check(CLI::IsMember({"multipass", "naive"}))
      ->capture_default_str();
  exact_cmd->add_option("--max-tuples", e_cap, "Tuple cap for the naive method")->capture_default_str();

  // evaluate
  std::string v_in, v_out, v_phi1, v_phi2, v_eps1, v_eps2, v_theory = "phi1-eps1";
  std::vector<std::uint64_t> v_s1, v_s2;
  bool v_timing = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Sweep table sizes and measure error statistics");
  eval_cmd->add_option("--in", v_in, "Tab-separated tuples")->required();
  eval_cmd->add_option("--phi1", v_phi1, "Primary threshold")->required();
  eval_cmd->add_option("--phi2", v_phi2, "Secondary threshold")->required();
  eval_cmd->add_option("--eps1", v_eps1, "Primary tolerance");
  eval_cmd->add_option("--eps2", v_eps2, "Secondary tolerance");
  eval_cmd->add_option("--s1-list", v_s1, "Outer table sizes")->required()->delimiter(',');
  eval_cmd->add_option("--s2-list", v_s2, "Inner table sizes")->required()->delimiter(',');
  eval_cmd->add_option("--out", v_out, "CSV path, '-' for stdout")->required();
  eval_cmd->add_option("--theory", v_theory, "Denominator of the secondary theoretical maximum")
      ->check(CLI::IsMember({"phi1", "phi1-eps1"}))
      ->capture_default_str();
  eval_cmd->add_flag("--timing", v_timing, "Also time naive counting against the first configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      const auto p = solve_params(Fraction::parse(sp_phi1), Fraction::parse(sp_phi2), Fraction::parse(sp_eps1),
                                  Fraction::parse(sp_eps2));
      out << "s1=" << p.s1 << " s2=" << p.s2 << " case=" << to_string(*p.sizing_case) << '\n';
      out << "alpha=" << format_double(alpha(p.phi1, p.phi2, p.eps1->to_rational()).convert_to<double>()) << '\n';
    } else if (gen_cmd->parsed()) {
      auto source = generate_zipf(gen);
      if (gen_out == "-") {
        write_tuples(source, out);
      } else {
        auto file = open_output(gen_out);
        write_tuples(source, file);
        if (!file.flush()) throw std::runtime_error("write failed: " + gen_out);
      }
    } else if (build_cmd->parsed()) {
      const Fraction phi1 = Fraction::parse(b_phi1);
      const Fraction phi2 = Fraction::parse(b_phi2);
      const auto eps1 = optional_fraction(b_eps1);
      const auto eps2 = optional_fraction(b_eps2);
      if (eps1.has_value() != eps2.has_value()) throw UsageError("--eps1 and --eps2 must be given together");

      ChhParams params;
      if (s1_opt->count() > 0) {
        params = raw_params(phi1, phi2, b_s1, b_s2, eps1, eps2);
      } else {
        if (!eps1) throw UsageError("build needs either --s1/--s2 or --eps1/--eps2");
        params = solve_params(phi1, phi2, *eps1, *eps2);
      }
      warn_constraints(params, err);

      const LinePolicy policy = b_strict ? LinePolicy::kStrict : LinePolicy::kSkip;
      std::unique_ptr<StreamTupleSource> source;
      if (b_in.empty() || b_in == "-") {
        source = std::make_unique<StreamTupleSource>(in, policy);
      } else {
        source = std::make_unique<FileTupleSource>(b_in, policy);
      }
      const SketchState state = b_inner == "offset" ? build_sketch<OffsetChhSketch>(*source, params)
                                                    : build_sketch<ChhSketch>(*source, params);
      if (source->skipped() > 0) err << "skipped " << source->skipped() << " malformed line(s)\n";
      save_snapshot(b_out, state);
    } else if (report_cmd->parsed()) {
      const auto sketch = ChhSketch::from_state(load_snapshot(r_sketch));
      warn_constraints(sketch.params(), err);
      const ChhReport report = sketch.report();
      if (r_format == "csv") {
        print_report_csv(report, out);
      } else {
        print_report_text(report, out);
      }
    } else if (exact_cmd->parsed()) {
      const Fraction phi1 = Fraction::parse(e_phi1);
      const Fraction phi2 = Fraction::parse(e_phi2);
      FileTupleSource source(e_in, LinePolicy::kStrict);
      if (e_method == "naive") {
        print_exact(exact_chh_from_counts(exact_counts_naive(source, e_cap), phi1, phi2), out);
      } else {
        print_exact(exact_chh_multipass(source, phi1, phi2).chh, out);
      }
    } else if (eval_cmd->parsed()) {
      SweepConfig config;
      config.phi1 = Fraction::parse(v_phi1);
      config.phi2 = Fraction::parse(v_phi2);
      config.eps1 = optional_fraction(v_eps1);
      config.eps2 = optional_fraction(v_eps2);
      if (config.eps1.has_value() != config.eps2.has_value()) {
        throw UsageError("--eps1 and --eps2 must be given together");
      }
      config.s1_list = v_s1;
      config.s2_list = v_s2;
      config.denominator = v_theory == "phi1" ? TheoryDenominator::kPhi1 : TheoryDenominator::kPhi1MinusEps1;

      FileTupleSource source(v_in, LinePolicy::kStrict);
      const auto rows = sweep(source, config);
      for (const auto& row : rows) {
        if (!row.constraints_ok) {
          err << "note: s1=" << row.params.s1 << " s2=" << row.params.s2 << " violates the accuracy constraints\n";
        }
      }
      if (v_out == "-") {
        write_sweep_csv(out, rows);
      } else {
        auto file = open_output(v_out);
        write_sweep_csv(file, rows);
        if (!file.flush()) throw std::runtime_error("write failed: " + v_out);
      }

      if (v_timing) {
        const auto t = compare_naive_and_sketch(source, rows.front().params);
        err << "timing n=" << t.n << " naive_seconds=" << format_double(t.naive_seconds)
            << " sketch_seconds=" << format_double(t.sketch_seconds) << " naive_pairs=" << t.naive_pairs_stored
            << " sketch_pairs=" << t.sketch_pairs_stored << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace chh
