#include "q8curves/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "q8curves/errors.hpp"

namespace q8curves::cli {

namespace {

const char* b2s(bool b) { return b ? "true" : "false"; }

struct SweepItem {
  EnumerationRecord record;
  u64 nonresidue = 0;
  std::vector<std::string> failures;
};

SweepItem sweep_one(u64 p, const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const CartierContext cctx(p);
  const GcdAllResult g = gcdall_poly(cctx);
  SweepItem item{classify(cctx, g, cfg.seed), cctx.field().nonresidue().v, {}};
  item.record.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (cfg.verify == VerifyLevel::Spot) item.failures = verify_spot(cctx, g, cfg.seed);
  if (cfg.verify == VerifyLevel::Full) item.failures = verify_full(cctx, g, item.record);
  return item;
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << ms;
  return os.str();
}

std::string format_set(const PrimeContext& F, const std::vector<Fp2>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += F.format(xs[i]);
  }
  return s;
}

}  // namespace

std::string csv_header() {
  return "p,p_mod8,p_mod16,p_mod24,deg_gcdall,star_ok,q8_count,g24_superspecial,g32_superspecial,"
         "matches_q8_formula,matches_g24_rule,matches_g32_rule,elapsed_ms";
}

std::string csv_row(const EnumerationRecord& r, bool timing) {
  std::ostringstream os;
  os << r.p << ',' << r.p_mod8 << ',' << r.p_mod16 << ',' << r.p_mod24 << ',' << r.deg_gcdall << ','
     << b2s(r.star_ok) << ',';
  if (r.q8_count) os << *r.q8_count;
  os << ',' << b2s(r.g24_superspecial) << ',' << b2s(r.g32_superspecial) << ',' << b2s(r.matches_q8_formula)
     << ',' << b2s(r.matches_g24_rule) << ',' << b2s(r.matches_g32_rule) << ',';
  if (timing) os << format_ms(r.elapsed_ms);
  return os.str();
}

std::string json_record(const EnumerationRecord& r, u64 nonresidue, bool timing) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["p_mod8"] = r.p_mod8;
  j["p_mod16"] = r.p_mod16;
  j["p_mod24"] = r.p_mod24;
  j["deg_gcdall"] = r.deg_gcdall;
  j["star_ok"] = r.star_ok;
  j["q8_count"] = r.q8_count ? nlohmann::ordered_json(*r.q8_count) : nlohmann::ordered_json(nullptr);
  j["g24_superspecial"] = r.g24_superspecial;
  j["g32_superspecial"] = r.g32_superspecial;
  j["matches_q8_formula"] = r.matches_q8_formula;
  j["matches_g24_rule"] = r.matches_g24_rule;
  j["matches_g32_rule"] = r.matches_g32_rule;
  j["elapsed_ms"] = timing ? nlohmann::ordered_json(r.elapsed_ms) : nlohmann::ordered_json(nullptr);
  j["star_diagnostics"] = r.star.describe();
  j["seed"] = r.seed;
  j["nonresidue"] = nonresidue;
  return j.dump();
}

void validate(const SweepConfig& cfg) {
  if (cfg.from < 7) throw ParseError("--from must be at least 7");
  if (cfg.from >= cfg.to) throw ParseError("--from must be smaller than --to");
  if (cfg.to > PrimeContext::kMaxModulus) throw ParseError("--to must not exceed 2^62");
  if (cfg.verify == VerifyLevel::Full && cfg.to > 200 && !cfg.allow_full_above_200) {
    throw ParseError("--verify full is limited to --to <= 200 (use --allow-full-above-200)");
  }
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << " for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }

  const std::vector<u64> primes = primes_in_range(cfg.from, cfg.to);
  bool all_ok = true;
  bool io_failed = false;

  if (cfg.format == Format::Csv) *sink << csv_header() << '\n';
  else *sink << '[';

  const std::function<SweepItem(u64)> work = [&cfg](u64 p) { return sweep_one(p, cfg); };
  const std::function<bool(std::size_t, SweepItem&)> emit = [&](std::size_t i, SweepItem& item) {
    const EnumerationRecord& r = item.record;
    if (cfg.format == Format::Csv) {
      *sink << csv_row(r, cfg.timing) << '\n';
    } else {
      *sink << (i ? ",\n  " : "\n  ") << json_record(r, item.nonresidue, cfg.timing);
    }
    sink->flush();
    if (!*sink) {
      io_failed = true;
      return false;
    }
    if (!r.star_ok) err << "p=" << r.p << ": star condition fails (" << r.star.describe() << ")\n";
    else if (!r.all_match()) err << "p=" << r.p << ": mismatch with closed-form prediction\n";
    for (const auto& f : item.failures) err << "verify: " << f << '\n';
    all_ok = all_ok && r.all_match() && item.failures.empty();
    if (!cfg.quiet) err << "sweep: " << (i + 1) << '/' << primes.size() << " p=" << r.p << '\n';
    return true;
  };

  try {
    ordered_parallel_map<SweepItem>(primes, cfg.threads, work, emit);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  if (io_failed) {
    err << "error: write failed\n";
    return kExitUsage;
  }
  if (cfg.format == Format::Json) *sink << (primes.empty() ? "]\n" : "\n]\n");
  sink->flush();
  if (!*sink) {
    err << "error: write failed\n";
    return kExitUsage;
  }
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_verify(u64 p, const std::string& a_text, std::ostream& out, std::ostream& err) {
  try {
    const CartierContext cctx(p);
    const PrimeContext& F = cctx.field();
    const Fp2 a = F.parse(a_text);
    const CartierManinMatrix M = cartier_matrix(cctx, a);
    const Orbit o = orbit(F, a);
    out << "p = " << p << ", nonresidue w^2 = " << F.nonresidue().v << ", a = " << F.format(a) << '\n';
    out << "Cartier-Manin matrix:\n";
    for (const auto& row : M.m) {
      out << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << F.format(row[j]);
      out << "]\n";
    }
    out << "superspecial: " << b2s(M.is_zero()) << ", aut: " << to_string(aut_class(F, a)) << ", orbit: {"
        << format_set(F, o.members, ", ") << "}\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_orbit(u64 p, const std::string& a_text, std::ostream& out, std::ostream& err) {
  try {
    const PrimeContext F(p);
    const Orbit o = orbit(F, F.parse(a_text));
    out << format_set(F, o.members, " ") << " (size " << o.size() << ")\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_factor(u64 p, u64 seed, std::ostream& out, std::ostream& err) {
  try {
    const CartierContext cctx(p);
    const PrimeContext& F = cctx.field();
    const GcdAllResult g = gcdall_poly(cctx);
    out << "p = " << p << ", nonresidue w^2 = " << F.nonresidue().v << ", seed = " << seed << '\n';
    out << "gcdall = " << to_string(g.poly) << ", degree " << *g.poly.degree() << '\n';
    out << "coefficients (ascending):";
    for (Fp c : g.poly.coeffs()) out << ' ' << c.v;
    out << '\n';
    out << "star: " << g.star.describe() << '\n';

    const FactorList fl = factor(F, g.poly, seed);
    out << "factors: " << fl.factors.size() << '\n';
    for (const auto& [h, mult] : fl.factors) {
      out << "  (" << to_string(h) << ")";
      if (mult > 1) out << "^" << mult;
      if (h.degree() <= 2) {
        const Fp2Roots r = roots_in_fp2(F, h, seed);
        out << "  roots: " << format_set(F, r.roots, ", ");
      } else {
        out << "  roots: none in F_p^2";
      }
      out << '\n';
    }
    if (g.star_ok) {
      const RepresentativeSet rs = representatives(cctx, g, seed);
      out << "classes: " << rs.classes.size() << '\n';
      for (const auto& c : rs.classes) {
        out << "  " << to_string(c.aut) << " size " << c.orbit.size() << ": {"
            << format_set(F, c.orbit.members, ", ") << "}\n";
      }
      if (!rs.residual_degrees.empty()) {
        out << "residual factor degrees:";
        for (auto d : rs.residual_degrees) out << ' ' << d;
        out << '\n';
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superspecial genus-4 hyperelliptic curves with quaternion automorphisms", "q8enum"};
  app.require_subcommand(1);

  SweepConfig cfg;
  std::string format = "csv", verify = "none";
  auto* sweep = app.add_subcommand("sweep", "Enumerate every prime in [from, to)");
  sweep->add_option("--from", cfg.from, "First prime candidate (>= 7)")->required();
  sweep->add_option("--to", cfg.to, "Exclusive upper bound")->required();
  sweep->add_option("-j,--threads", cfg.threads, "Worker threads, 0 = auto")->envname("Q8ENUM_THREADS");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--verify", verify, "none, spot or full")->check(CLI::IsMember({"none", "spot", "full"}));
  sweep->add_option("--seed", cfg.seed, "Factorization randomness seed")->envname("Q8ENUM_SEED");
  sweep->add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");
  sweep->add_flag("--allow-full-above-200", cfg.allow_full_above_200, "Permit --verify full beyond 200");
  sweep->add_flag("--timing", cfg.timing, "Fill the elapsed_ms column");
  sweep->add_flag("-q,--quiet", cfg.quiet, "No progress on stderr");

  u64 p = 0;
  std::string a;
  u64 factor_seed = kDefaultSeed;
  auto* verify_cmd = app.add_subcommand("verify", "Cartier-Manin matrix, automorphism class and orbit of H_a");
  verify_cmd->add_option("-p", p, "Prime")->required();
  verify_cmd->add_option("-a", a, "Parameter: c0 or c0+c1*w")->required();
  auto* orbit_cmd = app.add_subcommand("orbit", "Isomorphism orbit of the parameter a");
  orbit_cmd->add_option("-p", p, "Prime")->required();
  orbit_cmd->add_option("-a", a, "Parameter: c0 or c0+c1*w")->required();
  auto* factor_cmd = app.add_subcommand("factor", "gcdall, its factorization and its roots");
  factor_cmd->add_option("-p", p, "Prime")->required();
  factor_cmd->add_option("--seed", factor_seed, "Factorization randomness seed")->envname("Q8ENUM_SEED");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*sweep) {
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    cfg.verify = verify == "spot" ? VerifyLevel::Spot : verify == "full" ? VerifyLevel::Full : VerifyLevel::None;
    return cmd_sweep(cfg, out, err);
  }
  if (*verify_cmd) return cmd_verify(p, a, out, err);
  if (*orbit_cmd) return cmd_orbit(p, a, out, err);
  if (*factor_cmd) return cmd_factor(p, factor_seed, out, err);
  return kExitUsage;
}

}  // namespace q8curves::cli
