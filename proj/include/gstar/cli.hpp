#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gstar/constructions.hpp"
#include "gstar/errors.hpp"
#include "gstar/grid.hpp"
#include "gstar/profile.hpp"
#include "gstar/search.hpp"

namespace gstar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitBudget = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Writes to `path`, or to `out` when path is empty or "-".
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

/// GSTAR_BUDGET when set, otherwise the default.
inline std::uint64_t budget_from_env() {
  const char* raw = std::getenv("GSTAR_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultBudget;
  const std::string text(raw);
  if (text.size() > 19 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DomainError("GSTAR_BUDGET must be a nonnegative integer, got '" + text + "'");
  return std::stoull(text);
}

inline void require_positive(long long v, const char* name) {
  if (v < 1) throw DomainError(std::string(name) + " must be >= 1, got " + std::to_string(v));
}

inline void print_profile_report(const SolutionProfile& p, std::ostream& out) {
  const auto report = validate(p);
  out << "valid=" << (report.ok() ? "true" : "false") << "\n";
  for (const auto& v : report.violations) out << "violation: " << v.message << "\n";
  const auto m = marginals_unchecked(p);
  out << "color,a_i,b_i,a_i+b_i\n";
  for (int i = 1; i <= p.r(); ++i) out << i << ',' << m.a[i - 1] << ',' << m.b[i - 1] << ',' << m.touch(i) << "\n";
  out << "objective=" << m.objective << "\n";
  const auto [area, area_ok] = area_check(p);
  out << "area=" << area << " area_at_least_1=" << (area_ok ? "true" : "false") << "\n";
  out << "weight_identity=" << (weight_identity(p) ? "true" : "false") << "\n";
}

/// Runs one command line (without the program name). Returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation and verification of monochromatic touch constants for K_{n,n} colorings", "gstar"};
  app.require_subcommand(1);

  int r = 0;
  bool exact = false;
  int jobs = 1;
  std::string out_path;
  auto* compute = app.add_subcommand("compute", "g*(r) with a certificate");
  compute->add_option("--r", r, "number of colors")->required();
  compute->add_flag("--exact", exact, "fail with status 2 unless the value is certified exact");
  compute->add_option("--jobs", jobs, "parallel LP workers");
  compute->add_option("--out", out_path, "write the certificate to FILE ('-' for stdout)");

  std::string family = "auto";
  auto* construct_cmd = app.add_subcommand("construct", "emit a construction profile");
  construct_cmd->add_option("--r", r, "number of colors")->required();
  construct_cmd->add_option("--family", family, "auto|square|square-minus-one|universal|catalog");
  construct_cmd->add_option("--out", out_path, "output file");

  std::string profile_path;
  int t = 0;
  auto* discretize = app.add_subcommand("discretize", "profile to coloring square");
  discretize->add_option("--profile", profile_path, "profile file")->required();
  discretize->add_option("--t", t, "multiple of the grain N")->required();
  discretize->add_option("--out", out_path, "output file");

  std::string square_path;
  int n = 0;
  auto* extend = app.add_subcommand("extend", "grow a square by copying its last column and row");
  extend->add_option("--square", square_path, "square file")->required();
  extend->add_option("--n", n, "target side")->required();
  extend->add_option("--out", out_path, "output file");

  auto* verify = app.add_subcommand("verify", "validation, marginals and area checks");
  auto* vp = verify->add_option("--profile", profile_path, "profile file");
  auto* vs = verify->add_option("--square", square_path, "square file");
  vp->excludes(vs);
  vs->excludes(vp);

  bool no_symmetry = false;
  auto* oracle = app.add_subcommand("oracle", "exact g(n,r) by exhaustive search");
  oracle->add_option("--n", n, "side")->required();
  oracle->add_option("--r", r, "number of colors")->required();
  oracle->add_flag("--no-symmetry", no_symmetry, "disable color-relabeling pruning");

  long long through = 0;
  std::string format = "csv";
  long long rb = 0;
  auto* bounds = app.add_subcommand("bounds", "lower/upper/exact table");
  bounds->add_option("--r", rb, "first r")->required();
  bounds->add_option("--through", through, "last r (inclusive)");
  bounds->add_option("--format", format, "csv|text");

  std::string cert_path;
  auto* certify_cmd = app.add_subcommand("certify", "re-check a certificate");
  certify_cmd->add_option("--certificate", cert_path, "certificate file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (compute->parsed()) {
      require_positive(r, "--r");
      require_positive(jobs, "--jobs");
      SearchOptions opt;
      opt.budget = budget_from_env();
      opt.jobs = jobs;
      opt.enumerate_large = exact;
      const auto cert = enumerate_gstar(r, opt);
      if (out_path.empty())
        out << "value=" << cert.value << " mode=" << mode_name(cert.mode) << "\n";
      else
        emit(to_text(cert), out_path, out);
      if (exact && cert.mode != CertificateMode::Exact) {
        err << "budget exhausted: r=" << r << " could not be certified exact within " << opt.budget
            << " support pairs; reporting an upper bound\n";
        return kExitBudget;
      }
      return kExitOk;
    }
    if (construct_cmd->parsed()) {
      require_positive(r, "--r");
      emit(to_text(construct(r, parse_family(family))), out_path, out);
      return kExitOk;
    }
    if (discretize->parsed()) {
      if (t < 0) throw DomainError("--t must be >= 0, got " + std::to_string(t));
      const auto p = parse_profile(read_file(profile_path));
      emit(to_csv(profile_to_square(p, t)), out_path, out);
      return kExitOk;
    }
    if (extend->parsed()) {
      const auto sq = parse_square(read_file(square_path));
      if (n < sq.n()) throw DomainError("--n must be >= the square side " + std::to_string(sq.n()) + ", got " + std::to_string(n));
      emit(to_csv(extend_square(sq, n)), out_path, out);
      return kExitOk;
    }
    if (verify->parsed()) {
      if (profile_path.empty() == square_path.empty()) throw DomainError("verify needs exactly one of --profile or --square");
      if (!profile_path.empty()) {
        const auto p = parse_profile(read_file(profile_path));
        print_profile_report(p, out);
        return validate(p).ok() ? kExitOk : kExitDomain;
      }
      const auto sq = parse_square(read_file(square_path));
      const auto touch = touched_counts(sq);
      out << "n=" << sq.n() << " r=" << sq.r() << "\n";
      out << "color,columns,rows,touched\n";
      for (int i = 1; i <= sq.r(); ++i)
        out << i << ',' << touch.columns_containing[i - 1] << ',' << touch.rows_containing[i - 1] << ',' << touch.touched[i - 1] << "\n";
      out << "max_touched=" << touch.max_touched << "\n";
      print_profile_report(square_to_profile(sq), out);
      return kExitOk;
    }
    if (oracle->parsed()) {
      require_positive(n, "--n");
      require_positive(r, "--r");
      BruteForceOptions opt;
      opt.budget = budget_from_env();
      opt.symmetry = !no_symmetry;
      out << brute_force_g(n, r, opt) << "\n";
      return kExitOk;
    }
    if (bounds->parsed()) {
      require_positive(rb, "--r");
      const long long last = through == 0 ? rb : through;
      if (last < rb) throw DomainError("--through must be >= --r");
      if (format != "csv" && format != "text") throw DomainError("--format must be csv or text");
      std::vector<BoundTable> rows;
      for (long long x = rb; x <= last; ++x) rows.push_back(bound_table(x));
      out << (format == "csv" ? bound_table_csv(rows) : bound_table_text(rows));
      return kExitOk;
    }
    if (certify_cmd->parsed()) {
      const bool ok = certify(parse_certificate(read_file(cert_path)));
      out << (ok ? "true" : "false") << "\n";
      return ok ? kExitOk : kExitDomain;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}

}  // namespace gstar::cli
