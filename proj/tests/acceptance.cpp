// Acceptance run: prints one line per criterion and exits nonzero if any fails.
// Criteria 1-9 each produce a canonical JSON record; criterion 10 repeats them
// in a separate process and compares the records byte for byte.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "licrit/certify.hpp"
#include "licrit/cli.hpp"
#include "licrit/kernel.hpp"
#include "licrit/li.hpp"
#include "licrit/report.hpp"
#include "licrit/special_functions.hpp"
#include "licrit/zeros.hpp"

using namespace licrit;
using report::Json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  Json data;  // canonical record, no timings
};

struct Env {
  PrecisionContext ctx;
  zeros::ZeroTable table;
};

struct Criterion {
  int number;
  double time_limit_s;
  std::function<Outcome(const Env&)> run;
};

BallReal ball_from_json(const Json& j, Precision bits) {
  BallReal b = BallReal::from_string(j.at("mid").get<std::string>(), bits);
  b.add_error(Mag::from_string(j.at("rad").get<std::string>()));
  return b;
}

Json run_cli(const std::vector<std::string>& args, int& status) {
  std::ostringstream out, err;
  status = cli::run(args, out, err);
  if (status != cli::kExitOk && status != cli::kExitUndecided) return Json{{"error", err.str()}};
  return Json::parse(out.str());
}

BallReal endpoint(const BallReal& x, bool upper) {
  mpfr_t e;
  mpfr_init2(e, x.precision() + 64);
  upper ? x.upper(e) : x.lower(e);
  BallReal b = BallReal::with_radius(e, Mag(), x.precision() + 64);
  mpfr_clear(e);
  return b;
}

// --- criteria ---------------------------------------------------------------

Outcome fixed_values(const Env&) {
  Outcome o{true, "", Json::object()};
  for (const char* s : {"0", "1"}) {
    auto start = std::chrono::steady_clock::now();
    int status = 0;
    Json j = run_cli({"eval", "xi", "--s", s}, status);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = status == 0 && j.at("config").at("bits") == 256;
    if (ok) {
      BallReal re = ball_from_json(j.at("value").at("re"), 256);
      BallReal im = ball_from_json(j.at("value").at("im"), 256);
      ok = re.contains(0.5) && im.contains(0.0) && re.rad() <= Mag::from_string("1e-20") && secs < 5.0;
    }
    o.pass = o.pass && ok;
    o.data[s] = j;
    o.detail += std::string(" xi(") + s + ")=" + (status == 0 ? report::ball_cell(ball_from_json(j.at("value").at("re"), 256)) : "error");
  }
  return o;
}

Outcome functional_equation(const Env& env) {
  PrecisionContext c = env.ctx;
  c.target_radius = Mag::from_string("1e-15");
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  Outcome o{true, "", Json::array()};
  int failures = 0;
  Mag widest;
  for (int i = 0; i < 100; ++i) {
    double re, im;
    do {
      re = u(rng);
      im = u(rng);
    } while (std::hypot(re, im) > 20.0);
    BallComplex s(re, im, c.working_bits);
    auto a = certify([&](const PrecisionContext& p) { return sf::xi(BallComplex(re, im, p.working_bits), p); }, c);
    auto b = certify([&](const PrecisionContext& p) {
      return sf::xi(BallComplex(1, 0, p.working_bits) - BallComplex(re, im, p.working_bits), p);
    }, c);
    bool ok = !a.exhausted && !b.exhausted && a.value.overlaps(b.value);
    if (!ok) ++failures;
    widest = std::max(widest, std::max(a.value.rad(), b.value.rad()));
    o.data.push_back({{"s", report::ball_json(s)}, {"xi_s", report::ball_json(a.value)},
                      {"xi_1ms", report::ball_json(b.value)}});
  }
  o.pass = failures == 0;
  o.detail = " 100 points, " + std::to_string(failures) + " failures, widest radius " + report::mag_text(widest);
  return o;
}

Outcome cross_routes(const Env& env) {
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> re_d(-1.0, 2.0), im_d(-20.0, 20.0), z_d(0.0, 30.0);
  Outcome o{true, "", Json::object()};
  int bad_xi = 0, bad_big = 0;
  Json xs = Json::array(), bs = Json::array();
  for (int i = 0; i < 20; ++i) {
    BallComplex s(re_d(rng), im_d(rng), env.ctx.working_bits);
    BallComplex a = sf::xi(s, env.ctx), b = sf::xi_via_integral(s, env.ctx);
    if (!a.overlaps(b)) ++bad_xi;
    xs.push_back({{"s", report::ball_json(s)}, {"direct", report::ball_json(a)}, {"integral", report::ball_json(b)}});
  }
  for (int i = 0; i < 20; ++i) {
    BallReal z(z_d(rng), env.ctx.working_bits);
    BallReal a = sf::big_xi(BallComplex(z), env.ctx).real(), b = sf::big_xi_fourier(z, env.ctx);
    if (!a.overlaps(b)) ++bad_big;
    bs.push_back({{"z", report::ball_json(z)}, {"direct", report::ball_json(a)}, {"fourier", report::ball_json(b)}});
  }
  o.data["xi"] = std::move(xs);
  o.data["big_xi"] = std::move(bs);
  o.pass = bad_xi == 0 && bad_big == 0;
  o.detail = " xi/integral mismatches " + std::to_string(bad_xi) + ", Xi/fourier mismatches " + std::to_string(bad_big);
  return o;
}

Outcome zero_scan(const Env& env) {
  zeros::ZeroTable t = zeros::scan_zeros(50, zeros::kDefaultScanStep, env.ctx);
  Outcome o{true, "", report::zero_table_report(t).data};
  // ten zeros lie below height 50; the bundled table is an independent check
  bool count_ok = t.count() == 10;
  bool first_ok = !t.empty() && t.zeros[0].rad() <= Mag::from_string("1e-8") &&
                  abs(t.zeros[0] - BallReal::from_string("14.1347251417", 256)).abs_upper() <= Mag(1e-10);
  int sign_failures = 0, table_mismatches = 0;
  for (std::size_t i = 0; i < t.count(); ++i) {
    BallReal w = t.zeros[i];
    w.add_error(Mag(1e-12));
    auto sign_at = [&](const BallReal& x) {
      auto r = certify_until([&](const PrecisionContext& p) { return sf::big_xi_real(x, p); }, env.ctx,
                             [](const BallReal& v) { return !v.contains_zero(); });
      return r.exhausted ? 0 : (r.value.is_positive() ? 1 : -1);
    };
    if (sign_at(endpoint(w, false)) * sign_at(endpoint(w, true)) != -1) ++sign_failures;
    if (i >= env.table.count() || !t.zeros[i].overlaps(env.table.zeros[i])) ++table_mismatches;
  }
  o.pass = count_ok && first_ok && sign_failures == 0 && table_mismatches == 0;
  o.detail = " " + std::to_string(t.count()) + " zeros (expected 10), first " +
             (t.empty() ? std::string("-") : report::ball_cell(t.zeros[0])) + ", endpoint sign failures " +
             std::to_string(sign_failures) + ", table mismatches " + std::to_string(table_mismatches);
  return o;
}

BallReal log_xi_512(const BallReal& s) {
  PrecisionContext hi(512, Mag(), 4096);
  return log(sf::xi(BallComplex(s), hi).real());
}

Outcome li_coefficients(const Env& env) {
  li::LiSequence seq = li::li_positivity_report(10, env.ctx, &env.table);
  Outcome o{true, "", report::li_report(seq).data};
  BallReal h(std::ldexp(1.0, -50), 512), one(1L, 512);
  BallReal fd = (log_xi_512(one + h) - log_xi_512(one - h)) / (h + h);
  bool fd_ok = !seq.entries.empty() && abs(seq.entries[0].derivative_route - fd).abs_upper() <= Mag(1e-10);
  int positive = 0, agree = 0;
  for (const li::LiEntry& e : seq.entries) {
    positive += e.verdict == li::Verdict::positive_certified;
    agree += e.routes_agree && e.zero_sum_route.has_value();
  }
  o.pass = seq.entries.size() == 10 && fd_ok && positive == 10 && agree == 10;
  o.detail = " lambda_1=" + (seq.entries.empty() ? std::string("-") : report::ball_cell(seq.entries[0].derivative_route)) +
             ", positive " + std::to_string(positive) + "/10, routes agree " + std::to_string(agree) + "/10";
  return o;
}

Outcome kernel_agreement(const Env& env) {
  Outcome o{true, "", Json::array()};
  int agree = 0;
  for (const char* w : {"0", "0.25", "1", "4", "16", "100"}) {
    kernel::KernelEvaluation ev = kernel::evaluate(BallReal::from_string(w, env.ctx.working_bits), env.ctx, &env.table);
    agree += ev.agree && ev.route_b.has_value();
    o.data.push_back(report::kernel_evaluation_report(ev).data);
  }
  o.pass = agree == 6;
  o.detail = " " + std::to_string(agree) + "/6 points agree";
  return o;
}

Outcome gram_psd(const Env& env) {
  std::mt19937_64 rng(3003);
  std::uniform_int_distribution<int> size_d(1, 6);
  std::uniform_real_distribution<double> point_d(0.0, 10.0);
  Outcome o{true, "", Json::array()};
  int violations = 0;
  double least = INFINITY;
  for (int i = 0; i < 200; ++i) {
    std::vector<BallReal> pts;
    int n = size_d(rng);
    for (int k = 0; k < n; ++k) pts.emplace_back(point_d(rng), env.ctx.working_bits);
    kernel::KernelGram g = kernel::gram_matrix(pts, env.ctx, kernel::Route::b, &env.table);
    kernel::PsdResult psd = kernel::psd_check(g.matrix);
    Mag slack = kernel::radius_sum(g.matrix);
    if (g.tail) slack = slack + g.tail->value * Mag(static_cast<double>(n));
    // lower endpoint of the eigenvalue bound against -slack
    mpfr_t lo, neg;
    mpfr_init2(lo, env.ctx.working_bits);
    mpfr_init2(neg, Mag::kBits);
    psd.min_eig_lower.lower(lo);
    mpfr_neg(neg, slack.get(), MPFR_RNDN);
    if (mpfr_less_p(lo, neg)) ++violations;
    mpfr_clear(lo);
    mpfr_clear(neg);
    least = std::min(least, psd.min_eig_lower.mid_double());
    o.data.push_back({{"n", n}, {"min_eig_lower", report::ball_json(psd.min_eig_lower)},
                      {"verdict", std::string(kernel::to_string(psd.verdict))}, {"slack", report::mag_json(slack)}});
  }
  o.pass = violations == 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", least);
  o.detail = " 200 matrices, " + std::to_string(violations) + " violations, least eigenvalue bound " + buf;
  return o;
}

Outcome experiment(const Env&) {
  int status = 0;
  Json j = run_cli({"kernel", "experiment"}, status);
  Outcome o{status == 0, "", j};
  if (!j.contains("claims")) {
    o.pass = false;
    o.detail = " command failed with status " + std::to_string(status);
    return o;
  }
  for (const Json& c : j.at("claims")) {
    const Json& a = c.at("route_a");
    BallReal det = ball_from_json(a.at("value"), 256);
    bool certified = a.at("verdict") != "zero-straddling" && det.rad() <= Mag::from_string("1e-12");
    bool status_ok = c.at("status") == "reproduced" || c.at("status") == "refuted";
    bool consistent = c.at("route_b_consistent").get<bool>() || c.at("discrepancy").get<bool>();
    o.pass = o.pass && certified && status_ok && consistent;
    o.detail += " [" + c.at("paper_value").get<std::string>() + ": " + a.at("verdict").get<std::string>() + ", " +
                c.at("status").get<std::string>() + (c.at("discrepancy").get<bool>() ? ", DISCREPANCY" : "") +
                (c.at("route_b_consistent").get<bool>() ? ", route b consistent" : "") + "]";
  }
  return o;
}

Outcome complete_monotonicity(const Env& env) {
  std::vector<BallReal> grid;
  for (long z = 0; z <= 20; ++z) grid.emplace_back(z, env.ctx.working_bits);
  kernel::MonotonicityReport scan = kernel::complete_monotonicity_scan(6, grid, env.table, env.ctx);
  Outcome o{true, "", report::monotonicity_report(scan).data};
  o.pass = scan.points.size() == 7 * 21 && scan.disagreements == 0 && scan.nonpositive == 0;
  o.detail = " " + std::to_string(scan.points.size()) + " points, " + std::to_string(scan.disagreements) +
             " disagreements, " + std::to_string(scan.nonpositive) + " nonpositive";
  return o;
}

zeros::ZeroTable load_table(const PrecisionContext& ctx) {
  return report::read_zero_cache(LICRIT_ZEROS_2000, ctx);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Outcome> run_all(const std::vector<Criterion>& criteria, bool print) {
  auto start = std::chrono::steady_clock::now();
  Env env{PrecisionContext(), load_table(PrecisionContext())};
  if (print) std::printf("loaded %zu zeros in %.1f s\n", env.table.count(), seconds_since(start));
  std::vector<Outcome> results;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(env);
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what(), Json()};
    }
    double secs = seconds_since(t0);
    if (secs > c.time_limit_s) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    if (print) {
      std::printf("criterion %d: %s%s (%.1f s)\n", c.number, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
      std::fflush(stdout);
    }
    results.push_back(std::move(o));
  }
  return results;
}

// Runs the criteria in a child process with cold caches and writes one
// canonical JSON line per criterion to `path`.
bool independent_run(const std::vector<Criterion>& criteria, const std::string& path) {
  pid_t pid = fork();
  if (pid < 0) return false;
  if (pid == 0) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    for (const Outcome& o : run_all(criteria, false)) f << (o.data.is_null() ? "null" : o.data.dump()) << '\n';
    f.flush();
    _exit(f ? 0 : 1);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, 10.0, fixed_values},           {2, 120.0, functional_equation}, {3, 300.0, cross_routes},
      {4, 600.0, zero_scan},             {5, 600.0, li_coefficients},     {6, 300.0, kernel_agreement},
      {7, 900.0, gram_psd},              {8, 1800.0, experiment},         {9, 600.0, complete_monotonicity},
  };
  // The rerun goes first so that neither run sees caches filled by the other.
  auto t0 = std::chrono::steady_clock::now();
  const std::string path = "acceptance_rerun_" + std::to_string(getpid()) + ".jsonl";
  bool rerun_ok = independent_run(criteria, path);
  double rerun_secs = seconds_since(t0);

  std::vector<Outcome> first = run_all(criteria, true);
  bool all = true;
  for (const Outcome& o : first) all = all && o.pass;

  std::size_t identical = 0;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  for (std::size_t i = 0; i < first.size() && std::getline(in, line); ++i)
    identical += !first[i].data.is_null() && first[i].data.dump() == line;
  std::remove(path.c_str());
  bool det = rerun_ok && identical == first.size();
  std::printf("criterion 10: %s %zu/%zu reports byte-identical across two independent runs (rerun %.1f s)\n",
              det ? "PASS" : "FAIL", identical, first.size(), rerun_secs);
  return all && det ? 0 : 1;
}
