#include "licrit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "licrit/certify.hpp"
#include "licrit/kernel.hpp"
#include "licrit/li.hpp"
#include "licrit/special_functions.hpp"
#include "licrit/zeros.hpp"

#ifndef LICRIT_DEFAULT_ZEROS
#define LICRIT_DEFAULT_ZEROS "data/zeros_2000.txt"
#endif

namespace licrit::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

BallReal parse_real(std::string_view text, Precision bits) {
  std::string t = trim(text);
  if (t.empty()) throw UsageError("empty number");
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw UsageError("not a decimal number: " + t);
  return BallReal::from_string(t, bits);
}

Precision env_default_bits() {
  const char* v = std::getenv("LICRIT_DEFAULT_BITS");
  if (!v || !*v) return kDefaultWorkingBits;
  char* end = nullptr;
  long bits = std::strtol(v, &end, 10);
  if (*end != '\0' || bits < kMinWorkingBits)
    throw UsageError("LICRIT_DEFAULT_BITS must be an integer >= " + std::to_string(kMinWorkingBits));
  return bits;
}

struct Session {
  RunConfig config;
  PrecisionContext ctx;
  report::Options options;

  zeros::ZeroTable load_table(bool required) const {
    if (config.scan_height) return zeros::scan_zeros(*config.scan_height, zeros::kDefaultScanStep, ctx);
    std::string path = config.zeros_path.value_or(default_zeros_path());
    if (!config.zeros_path && !std::filesystem::exists(path)) {
      if (required) throw UsageError("no zero table: pass --zeros PATH or --scan-height T");
      return {};
    }
    return report::read_zero_cache(path, ctx);
  }
};

report::Report run_eval(const Session& s, const std::string& function, const std::string& route,
                        const std::string& arg) {
  const PrecisionContext& ctx = s.ctx;
  report::Json input = {{"s", arg}};
  auto complex_at = [&](const PrecisionContext& pc) { return parse_complex(arg, pc.working_bits); };
  auto real_at = [&](const PrecisionContext& pc) {
    BallComplex z = complex_at(pc);
    if (!z.imag().is_exact() || !z.imag().contains(0.0)) throw UsageError(function + " takes a real argument");
    return z.real();
  };
  auto bad_route = [&]() { return UsageError("route '" + route + "' is not available for " + function); };

  if (function == "zeta") {
    if (route != "direct") throw bad_route();
    auto v = certify([&](const PrecisionContext& pc) { return sf::zeta(complex_at(pc), pc); }, ctx);
    return report::value_report(function, route, input, v, s.options);
  }
  if (function == "xi") {
    if (route == "direct") {
      auto v = certify([&](const PrecisionContext& pc) { return sf::xi(complex_at(pc), pc); }, ctx);
      return report::value_report(function, route, input, v, s.options);
    }
    if (route == "integral") {
      auto v = certify([&](const PrecisionContext& pc) { return sf::xi_via_integral(complex_at(pc), pc); }, ctx);
      return report::value_report(function, route, input, v, s.options);
    }
    throw bad_route();
  }
  if (function == "bigxi") {
    if (route == "direct") {
      auto v = certify([&](const PrecisionContext& pc) { return sf::big_xi(complex_at(pc), pc); }, ctx);
      return report::value_report(function, route, input, v, s.options);
    }
    if (route == "fourier") {
      auto v = certify([&](const PrecisionContext& pc) { return sf::big_xi_fourier(real_at(pc), pc); }, ctx);
      return report::value_report(function, route, input, v, s.options);
    }
    throw bad_route();
  }
  if (function == "phi") {
    if (route != "direct") throw bad_route();
    auto v = certify([&](const PrecisionContext& pc) { return sf::phi(real_at(pc), pc); }, ctx);
    return report::value_report(function, route, input, v, s.options);
  }
  if (function == "moment") {
    if (route != "direct") throw bad_route();
    std::string t = trim(arg);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw UsageError("moment takes a nonnegative integer index n (m_2n)");
    unsigned n = static_cast<unsigned>(std::stoul(t));
    auto v = certify([&](const PrecisionContext& pc) { return sf::moment(n, pc); }, ctx);
    return report::value_report(function, route, input, v, s.options);
  }
  throw UsageError("unknown function " + function);
}

report::Report summary(const Session& s) {
  zeros::ZeroTable table = s.load_table(true);
  std::vector<report::Report> parts;
  parts.push_back(report::li_report(li::li_positivity_report(10, s.ctx, &table), s.options));

  report::Report g;
  g.kind = "kernel-agreement";
  report::Json rows = report::Json::array();
  report::Table t{"kernel route agreement", {"w", "route_a", "route_b_partial", "route_b_tail", "agree"}, {}};
  for (const char* w : {"0", "0.25", "1", "4", "16", "100"}) {
    kernel::KernelEvaluation ev = kernel::evaluate(BallReal::from_string(w, s.ctx.working_bits), s.ctx, &table);
    report::Report one = report::kernel_evaluation_report(ev, s.options);
    rows.push_back(one.data);
    t.rows.push_back(one.tables.front().rows.front());
  }
  g.data["evaluations"] = std::move(rows);
  g.tables.push_back(std::move(t));
  parts.push_back(std::move(g));

  parts.push_back(report::experiment_report(kernel::paper_experiment(s.ctx, table), s.options));
  return report::combine("summary", parts);
}

}  // namespace

PrecisionContext RunConfig::context() const {
  PrecisionContext ctx(precision_bits, Mag::from_string(target_radius), max_bits);
  ctx.validate();
  return ctx;
}

std::string default_zeros_path() { return LICRIT_DEFAULT_ZEROS; }

BallComplex parse_complex(std::string_view text, Precision bits) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw UsageError("empty complex number");
  if (t.back() != 'i') return BallComplex(parse_real(t, bits), BallReal(bits));
  t.pop_back();
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (im.empty() || im == "+" || im == "-") im += "1";
  return BallComplex(parse_real(re, bits), parse_real(im, bits));
}

std::vector<BallReal> parse_list(std::string_view text, Precision bits) {
  std::vector<BallReal> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    out.push_back(parse_real(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos),
                             bits));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config.precision_bits = env_default_bits();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Certified computations around Li's criterion and the xi kernel", "licrit"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format_name = "json";
  std::string zeros_path, out_path;
  double scan_height = -1;
  app.add_option("--bits", config.precision_bits, "working precision in bits (env LICRIT_DEFAULT_BITS)");
  app.add_option("--target", config.target_radius, "target enclosure radius");
  app.add_option("--max-bits", config.max_bits, "precision cap for escalation");
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  app.add_option("--out", out_path, "also write the report to this file");
  app.add_flag("--raw-hex", config.raw_hex, "include exact hexadecimal midpoints and radii");
  app.add_option("--zeros", zeros_path, "zero table file");
  app.add_option("--scan-height", scan_height, "compute the zero table by scanning up to this height");

  // eval
  std::string eval_fn, eval_s, eval_route = "direct";
  CLI::App* eval = app.add_subcommand("eval", "evaluate a special function");
  eval->add_option("function", eval_fn, "zeta | xi | bigxi | phi | moment")
      ->required()
      ->check(CLI::IsMember({"zeta", "xi", "bigxi", "phi", "moment"}));
  eval->add_option("--s", eval_s, "argument (complex, e.g. 0.5+14.1i)")->required();
  eval->add_option("--route", eval_route, "direct | integral | fourier")
      ->check(CLI::IsMember({"direct", "integral", "fourier"}));

  // zeros
  CLI::App* zeros_cmd = app.add_subcommand("zeros", "zero tables");
  zeros_cmd->require_subcommand(1);
  double scan_to = 0, scan_step = zeros::kDefaultScanStep;
  CLI::App* scan = zeros_cmd->add_subcommand("scan", "sign-change scan of Xi on [0, height]");
  scan->add_option("--height", scan_to, "scan height")->required();
  scan->add_option("--step", scan_step, "grid step");
  std::string refine_lo, refine_hi;
  CLI::App* refine = zeros_cmd->add_subcommand("refine", "refine a bracketed zero");
  refine->add_option("--lo", refine_lo)->required();
  refine->add_option("--hi", refine_hi)->required();
  std::string import_file, export_file;
  CLI::App* import_cmd = zeros_cmd->add_subcommand("import", "read and validate a zero table");
  import_cmd->add_option("--file", import_file)->required();
  CLI::App* export_cmd = zeros_cmd->add_subcommand("export", "write the active zero table as a cache file");
  export_cmd->add_option("--file", export_file)->required();

  // li
  unsigned li_n = 0;
  CLI::App* li_cmd = app.add_subcommand("li", "Li coefficients lambda_1..lambda_n");
  li_cmd->add_option("--n", li_n)->required()->check(CLI::Range(1u, 100000u));

  // kernel
  CLI::App* kernel_cmd = app.add_subcommand("kernel", "the kernel g and its Gram matrices");
  kernel_cmd->require_subcommand(1);
  std::string g_z;
  CLI::App* g_cmd = kernel_cmd->add_subcommand("g", "g(z) by both routes");
  g_cmd->add_option("--z", g_z)->required();
  unsigned cm_kmax = 0;
  std::string cm_grid;
  CLI::App* cm_cmd = kernel_cmd->add_subcommand("cm-scan", "complete monotonicity scan");
  cm_cmd->add_option("--kmax", cm_kmax)->required()->check(CLI::Range(0u, 64u));
  cm_cmd->add_option("--grid", cm_grid, "comma-separated points")->required();
  std::string gram_points, gram_route = "a";
  CLI::App* gram_cmd = kernel_cmd->add_subcommand("gram", "Gram matrix and PSD check");
  gram_cmd->add_option("--points", gram_points)->required();
  gram_cmd->add_option("--route", gram_route)->check(CLI::IsMember({"a", "b"}));
  std::string det_points;
  CLI::App* det_cmd = kernel_cmd->add_subcommand("det", "certified determinant sign (route a)");
  det_cmd->add_option("--points", det_points)->required();
  CLI::App* exp_cmd = kernel_cmd->add_subcommand("experiment", "adjudicate the claimed negative determinants");

  CLI::App* report_cmd = app.add_subcommand("report", "combined Li / kernel / experiment report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Session session;
  try {
    config.output_format = report::parse_format(format_name);
    if (!zeros_path.empty()) config.zeros_path = zeros_path;
    if (!out_path.empty()) config.out_path = out_path;
    if (app.count("--scan-height")) {
      if (!(scan_height > 0)) throw UsageError("--scan-height must be positive");
      config.scan_height = scan_height;
    }
    session.config = config;
    session.ctx = config.context();
    session.options.raw_hex = config.raw_hex;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const PrecisionContext& ctx = session.ctx;
  const report::Options& opts = session.options;
  try {
    report::Report rep;
    if (*eval) {
      rep = run_eval(session, eval_fn, eval_route, eval_s);
    } else if (*zeros_cmd) {
      if (*scan) {
        if (!(scan_to > 0)) throw UsageError("--height must be positive");
        rep = report::zero_table_report(zeros::scan_zeros(scan_to, scan_step, ctx), opts);
      } else if (*refine) {
        BallReal lo = parse_real(refine_lo, ctx.working_bits);
        BallReal hi = parse_real(refine_hi, ctx.working_bits);
        rep = report::refine_report(lo, hi, zeros::refine_zero(lo, hi, ctx), opts);
      } else if (*import_cmd) {
        rep = report::zero_table_report(report::read_zero_cache(import_file, ctx), opts);
      } else {
        zeros::ZeroTable table = session.load_table(true);
        report::write_zero_cache(table, export_file);
        rep = report::zero_table_report(table, opts);
        rep.kind = "zeros-export";
        rep.data["file"] = export_file;
      }
    } else if (*li_cmd) {
      zeros::ZeroTable table = session.load_table(false);
      rep = report::li_report(li::li_positivity_report(li_n, ctx, table.empty() ? nullptr : &table), opts);
    } else if (*kernel_cmd) {
      if (*g_cmd) {
        zeros::ZeroTable table = session.load_table(false);
        BallReal w = parse_real(g_z, ctx.working_bits);
        rep = report::kernel_evaluation_report(kernel::evaluate(w, ctx, table.empty() ? nullptr : &table), opts);
      } else if (*cm_cmd) {
        zeros::ZeroTable table = session.load_table(true);
        rep = report::monotonicity_report(
            kernel::complete_monotonicity_scan(cm_kmax, parse_list(cm_grid, ctx.working_bits), table, ctx), opts);
      } else if (*gram_cmd) {
        std::vector<BallReal> pts = parse_list(gram_points, ctx.working_bits);
        kernel::Route route = gram_route == "a" ? kernel::Route::a : kernel::Route::b;
        zeros::ZeroTable table;
        if (route == kernel::Route::b) table = session.load_table(true);
        kernel::KernelGram gram = kernel::gram_matrix(pts, ctx, route, route == kernel::Route::b ? &table : nullptr);
        rep = report::gram_report(gram, kernel::psd_check(gram.matrix), opts);
      } else if (*det_cmd) {
        std::vector<BallReal> pts = parse_list(det_points, ctx.working_bits);
        const std::string text = det_points;
        kernel::Determinant det = kernel::certified_determinant(
            [&text](const PrecisionContext& pc) {
              return kernel::gram_matrix(parse_list(text, pc.working_bits), pc, kernel::Route::a).matrix;
            },
            ctx);
        rep = report::determinant_report(pts, det, opts);
      } else if (*exp_cmd) {
        zeros::ZeroTable table = session.load_table(true);
        rep = report::experiment_report(kernel::paper_experiment(ctx, table), opts);
      }
    } else if (*report_cmd) {
      rep = summary(session);
    }
    rep.data["config"] = report::config_json(ctx);
    rep.data["config"]["target_radius"] = config.target_radius;

    const std::string text = report::render(rep, config.output_format);
    out << text;
    if (config.out_path) {
      std::ofstream f(*config.out_path, std::ios::binary | std::ios::trunc);
      if (!f || !(f << text) || !f.flush()) throw report::IOError("cannot write " + *config.out_path);
    }
    return rep.undecided ? kExitUndecided : kExitOk;
  } catch (const PrecisionExhausted& e) {
    err << "undecided: " << e.what() << '\n';
    return kExitUndecided;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const zeros::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const zeros::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const zeros::BracketError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const report::IOError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sf::PoleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainErrorBall& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace licrit::cli
