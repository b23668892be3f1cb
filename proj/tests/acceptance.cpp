// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exits 0 when every criterion ran; with --strict, any FAIL exits 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dacfir/curve_fit.hpp"
#include "dacfir/error.hpp"
#include "dacfir/minimax_design.hpp"
#include "dacfir/order_estimate.hpp"
#include "dacfir/order_search.hpp"
#include "problems.hpp"

using namespace dacfir;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::vector<std::string> details;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string name(PulseKind k, int nb, LinearPhaseType t) {
  return std::string(to_string(k)) + "/" + std::to_string(nb) + "/" + std::string(to_string(t));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Desk-scale sweeps shared by criteria 2, 6 and 7.
struct DeskRow {
  PulseKind kind;
  int nb;
  LinearPhaseType type;
  SweepGrid grid;
  double seconds;
};

const SweepAxes kDeskAxes{0.04 * pi, 0.96 * pi, 15, 1e-5, 1e-1, 10};

std::vector<DeskRow>& desk_rows() {
  static std::vector<DeskRow> rows = [] {
    std::vector<DeskRow> out;
    for (auto [k, nb, t] : {std::tuple{PulseKind::NRTZ, 1, LinearPhaseType::I},
                            std::tuple{PulseKind::RTZ, 2, LinearPhaseType::II},
                            std::tuple{PulseKind::RTC, 3, LinearPhaseType::IV},
                            std::tuple{PulseKind::RTCZ, 4, LinearPhaseType::III}}) {
      const auto t0 = std::chrono::steady_clock::now();
      SweepGrid g = sweep(k, nb, t, kDeskAxes);
      out.push_back({k, nb, t, std::move(g), seconds_since(t0)});
    }
    return out;
  }();
  return rows;
}

// Designs produced along the way, reused by criterion 5.
std::vector<std::pair<DesignProblem, DesignResult>>& design_pool() {
  static std::vector<std::pair<DesignProblem, DesignResult>> pool;
  return pool;
}

Outcome criterion1() {
  Outcome o{true, {}};
  const auto t0 = std::chrono::steady_clock::now();
  auto n_of = [](PulseKind k, LinearPhaseType t) {
    const MinimalOrder m = minimal_order({k, 2, t, 0.8 * pi, 1e-3});
    design_pool().push_back({{k, {2, 0.8 * pi}, t, m.n_min}, m.design});
    return m.n_min;
  };
  const int n1 = n_of(PulseKind::RTZ, LinearPhaseType::I);
  const int n2 = n_of(PulseKind::RTZ, LinearPhaseType::II);
  const int rtc3 = n_of(PulseKind::RTC, LinearPhaseType::III);
  const int rtcz3 = n_of(PulseKind::RTCZ, LinearPhaseType::III);
  const int rtc4 = n_of(PulseKind::RTC, LinearPhaseType::IV);
  const int rtcz4 = n_of(PulseKind::RTCZ, LinearPhaseType::IV);
  const double secs = seconds_since(t0);
  auto near = [](int n, int target) { return std::abs(n - target) <= 2; };
  const bool ok3 = near(rtc3, 38) || near(rtcz3, 38);
  const bool ok4 = near(rtc4, 37) || near(rtcz4, 37);
  o.pass = n1 == 12 && n2 == 37 && ok3 && ok4 && secs < 60.0;
  o.details.push_back(fmt("RTZ/2/I N_min=%d (want 12), RTZ/2/II N_min=%d (want 37)", n1, n2));
  o.details.push_back(fmt("Type III: RTC %d, RTCZ %d (want 38 +-2); Type IV: RTC %d, RTCZ %d (want 37 +-2)",
                          rtc3, rtcz3, rtc4, rtcz4));
  std::string match;
  if (rtc3 == 38 && rtc4 == 37) match += " RTC";
  if (rtcz3 == 38 && rtcz4 == 37) match += " RTCZ";
  o.details.push_back("pulses matching 38/37 exactly:" + (match.empty() ? std::string(" none") : match));
  o.details.push_back(fmt("runtime %.2f s (limit 60 s)", secs));
  return o;
}

Outcome criterion2() {
  Outcome o{true, {}};
  for (const DeskRow& r : desk_rows()) {
    const BuiltinRow row = builtin_params(r.kind, r.nb, r.type);
    const EstimationError e = max_estimation_error(row.params, r.grid);
    int failed = 0;
    for (const auto& line : r.grid.cells)
      for (const auto& c : line) failed += c.n_min < 0;
    const bool ok = e.eps <= row.eps_max + 2.0 && failed == 0;
    o.pass = o.pass && ok;
    o.details.push_back(fmt("%-12s eps=%.3f limit=%.2f (eps_max %.2f) worst at B=%.3fpi delta=%.2e N_min=%d  sweep %.1f s  %s",
                            name(r.kind, r.nb, r.type).c_str(), e.eps, row.eps_max + 2.0, row.eps_max,
                            r.grid.B_values[e.i] / pi, r.grid.delta_values[e.j], r.grid.n_min(e.i, e.j),
                            r.seconds, ok ? "ok" : "over"));
  }
  return o;
}

Outcome criterion3() {
  Outcome o{true, {}};
  std::mt19937_64 rng(20240917);
  int accepted = 0, skipped = 0, unconverged = 0, worst_alt_margin = 1 << 30;
  double worst_rel = 0.0;
  std::string worst_case;
  while (accepted < 48) {
    const DesignProblem p = testing::random_problem(rng, 60);
    const FrequencyGrid g = design_grid(p);
    const DesignResult rz = design_remez(p, g);
    // Below 1e-8 the exchange often stops on its iteration limit with level
    // differences at rounding size; the accuracies of interest are >= 1e-5.
    if (rz.delta_N < 1e-8) {
      ++skipped;
      continue;
    }
    const DesignResult lp = design_lp(p, g);
    const double rel = std::abs(rz.delta_N - lp.delta_N) / lp.delta_N;
    const int alt = testing::equiripple_alternations(p, rz.filter, g);
    const int need = ChebyshevReduction(p).free_parameters() + 1;
    worst_alt_margin = std::min(worst_alt_margin, alt - need);
    if (rel > worst_rel) {
      worst_rel = rel;
      worst_case = name(p.kind, p.band.nb, p.type) + fmt(" N=%d B=%.3fpi", p.order, p.band.bandwidth / pi);
    }
    const bool ok = rel <= 1e-5 && alt >= need;
    unconverged += !rz.converged;
    if (!ok) {
      o.details.push_back(fmt("mismatch: %s N=%d B=%.3fpi remez=%.9g lp=%.9g alt=%d need=%d conv=%d",
                              name(p.kind, p.band.nb, p.type).c_str(), p.order, p.band.bandwidth / pi,
                              rz.delta_N, lp.delta_N, alt, need, rz.converged));
    }
    o.pass = o.pass && ok;
    design_pool().push_back({p, rz});
    ++accepted;
  }
  o.details.push_back(fmt("%d problems (N <= 60), %d skipped with delta < 1e-8, %d hit the exchange tolerance limit",
                          accepted, skipped, unconverged));
  o.details.push_back(fmt("max relative delta difference %.2e at %s (limit 1e-5)", worst_rel, worst_case.c_str()));
  o.details.push_back(fmt("min alternation surplus over n_free+1: %d", worst_alt_margin));
  return o;
}

Outcome criterion4() {
  const DesignProblem p{PulseKind::NRTZ, {1, 0.04 * pi}, LinearPhaseType::I, 0};
  const double amin = pulse_amplitude(PulseKind::NRTZ, 0.04 * pi);
  const double a0 = 2.0 / (1.0 + amin);
  const double delta = (1.0 - amin) / (1.0 + amin);
  const FrequencyGrid g = design_grid(p);
  const DesignResult rz = design_remez(p, g);
  const DesignResult lp = design_lp(p, g);
  const double ea = std::max(std::abs(rz.filter.coefficients()[0] - a0), std::abs(lp.filter.coefficients()[0] - a0));
  const double ed = std::max(std::abs(rz.delta_N - delta), std::abs(lp.delta_N - delta));
  return {ea <= 1e-9 && ed <= 1e-9,
          {fmt("closed form a0=%.12f delta=%.12e", a0, delta),
           fmt("max |a0 error| %.2e, max |delta error| %.2e (limit 1e-9)", ea, ed)}};
}

Outcome criterion5() {
  Outcome o{true, {}};
  int zero_checks = 0, phase_checks = 0;
  double worst_zero = 0.0, worst_phase_ratio = 0.0;
  for (const auto& [p, r] : design_pool()) {
    for (double z : structural_zeros(p.type)) {
      const double h = std::abs(frequency_response(r.filter, z));
      worst_zero = std::max(worst_zero, h);
      ++zero_checks;
      if (h >= 1e-10) o.pass = false;
    }
    if (r.delta_N > 0.01) continue;
    ++phase_checks;
    const double K = delay_K(p.type, p.order, p.kind).value();
    const double bound = std::asin(r.delta_N / (1.0 - r.delta_N));
    const Interval band = band_interval(p.band);
    for (double w : linspace(band.lo, band.hi, 4096)) {
      const std::complex<double> G = frequency_response(r.filter, w) * pulse_frequency_response(p.kind, w);
      const double dev = std::abs(std::arg(G * std::polar(1.0, w * K)));
      worst_phase_ratio = std::max(worst_phase_ratio, dev / bound);
    }
  }
  if (worst_phase_ratio > 1.0) o.pass = false;
  o.details.push_back(fmt("%d structural-zero checks, max |H| = %.2e (limit 1e-10)", zero_checks, worst_zero));
  o.details.push_back(fmt("%d designs with delta_N <= 0.01, max phase deviation / bound = %.2e (4096 points per band)",
                          phase_checks, worst_phase_ratio));
  return o;
}

Outcome criterion6() {
  Outcome o{true, {}};
  int delta_pairs = 0, delta_bad = 0, mono_bad = 0, parity_bad = 0, cells = 0;
  for (const DeskRow& r : desk_rows()) {
    const SweepGrid& g = r.grid;
    for (std::size_t i = 0; i < g.B_values.size(); ++i) {
      for (std::size_t j = 0; j < g.delta_values.size(); ++j) {
        const int n = g.n_min(i, j);
        ++cells;
        if (!parity_matches(r.type, n)) ++parity_bad;
        if (i > 0 && n < g.n_min(i - 1, j)) ++mono_bad;
        if (j > 0 && n > g.n_min(i, j - 1)) ++mono_bad;
      }
      // delta_N along N in steps of 2 up to the largest order in this column
      int top = 0;
      for (std::size_t j = 0; j < g.delta_values.size(); ++j) top = std::max(top, g.n_min(i, j));
      double previous = INFINITY;
      for (int n = smallest_valid_order(r.type); n <= top + 2; n += 2) {
        const double d = design({r.kind, {r.nb, g.B_values[i]}, r.type, n}).delta_N;
        if (d > previous + 1e-12) ++delta_bad;
        ++delta_pairs;
        previous = d;
      }
    }
  }
  o.pass = delta_bad == 0 && mono_bad == 0 && parity_bad == 0;
  o.details.push_back(fmt("delta_N(N+2) <= delta_N(N): %d orders checked, %d violations", delta_pairs, delta_bad));
  o.details.push_back(fmt("N_min monotone in B and delta: %d cells, %d violations", cells, mono_bad));
  o.details.push_back(fmt("parity: %d violations", parity_bad));
  return o;
}

Outcome criterion7() {
  Outcome o{true, {}};
  // synthetic: known parameters, orders rounded to integers
  EstimateParams truth;
  truth.a1 = -2.3;
  truth.a2 = 0.4;
  truth.a3 = 1.1;
  truth.a4 = 1.02;
  truth.b1 = 0.6;
  truth.b2 = 0.02;
  truth.b3 = 0.8;
  truth.b4 = 1.65;
  truth.c = 1.2;
  SweepGrid syn = desk_rows().front().grid;
  for (std::size_t i = 0; i < syn.B_values.size(); ++i)
    for (std::size_t j = 0; j < syn.delta_values.size(); ++j)
      syn.cells[i][j].n_min = static_cast<int>(std::lround(evaluate_estimate(truth, syn.B_values[i], syn.delta_values[j])));
  const BasicCoefficients sb = fit_initial_coefficients(syn);
  const FitResult fs = fit({syn, default_init(PulseKind::NRTZ, 1, LinearPhaseType::I, sb.a, sb.b, sb.c)});
  const bool syn_ok = fs.eps <= 0.5;
  o.details.push_back(fmt("synthetic grid: fit eps %.3f (limit 0.5)", fs.eps));

  const SweepGrid& real = desk_rows().front().grid;
  const double builtin = max_estimation_error(builtin_params(PulseKind::NRTZ, 1, LinearPhaseType::I).params, real).eps;
  const BasicCoefficients rb = fit_initial_coefficients(real);
  const FitResult fr = fit({real, default_init(PulseKind::NRTZ, 1, LinearPhaseType::I, rb.a, rb.b, rb.c)});
  const bool real_ok = std::abs(fr.eps - builtin) <= 2.0;
  o.details.push_back(fmt("NRTZ/1/I desk grid: fit eps %.3f, built-in eps %.3f, |difference| %.3f (limit 2.0)",
                          fr.eps, builtin, std::abs(fr.eps - builtin)));
  o.details.push_back(fmt("fitted a1=%.4f a2=%.4f a3=%.4f a4=%.4f b1=%.4f b2=%.4g b3=%.4f b4=%.4f c=%.4f", fr.params.a1,
                          fr.params.a2, fr.params.a3, fr.params.a4, fr.params.b1, fr.params.b2, fr.params.b3,
                          fr.params.b4, fr.params.c));
  o.pass = syn_ok && real_ok;
  return o;
}

Outcome criterion8() {
  Outcome o{true, {}};
  // RTZ is the only pulse defined both in the first band and above it, so the
  // matched comparison is RTZ/1/t against RTZ/nb/t for nb = 2, 3.
  const std::vector<double> Bs = linspace(0.3 * pi, 0.8 * pi, 6);
  std::map<std::tuple<int, LinearPhaseType, int>, int> n;
  for (LinearPhaseType t : {LinearPhaseType::I, LinearPhaseType::II})
    for (int nb = 1; nb <= 3; ++nb)
      for (std::size_t b = 0; b < Bs.size(); ++b)
        n[{nb, t, static_cast<int>(b)}] = minimal_order({PulseKind::RTZ, nb, t, Bs[b], 1e-3}).n_min;

  for (LinearPhaseType t : {LinearPhaseType::I, LinearPhaseType::II}) {
    for (int nb = 2; nb <= 3; ++nb) {
      std::string line = fmt("RTZ Type %s NB1/NB%d:", std::string(to_string(t)).c_str(), nb);
      int outside = 0;
      for (std::size_t b = 0; b < Bs.size(); ++b) {
        const int lo = n[{1, t, static_cast<int>(b)}];
        const int hi = n[{nb, t, static_cast<int>(b)}];
        const double ratio = static_cast<double>(lo) / hi;
        const bool in = ratio >= 0.35 && ratio <= 0.65;
        outside += !in;
        line += fmt(" %.1fpi %d/%d=%.2f%s", Bs[b] / pi, lo, hi, ratio, in ? "" : "*");
      }
      if (outside) o.pass = false;
      o.details.push_back(line);
    }
  }
  o.details.push_back("(* = ratio outside [0.35, 0.65])");

  const int t1 = minimal_order({PulseKind::RTZ, 2, LinearPhaseType::I, 0.8 * pi, 1e-3}).n_min;
  const int t2 = minimal_order({PulseKind::RTZ, 2, LinearPhaseType::II, 0.8 * pi, 1e-3}).n_min;
  int t34 = 1 << 30;
  for (PulseKind k : {PulseKind::RTC, PulseKind::RTCZ})
    for (LinearPhaseType t : {LinearPhaseType::III, LinearPhaseType::IV})
      t34 = std::min(t34, minimal_order({k, 2, t, 0.8 * pi, 1e-3}).n_min);
  const bool type1_lowest = t1 < t2 && t1 < t34;
  o.details.push_back(fmt("NB2 at 0.8pi: Type I %d < Type II %d and < min Type III/IV %d: %s", t1, t2, t34,
                          type1_lowest ? "yes" : "no"));
  o.pass = o.pass && type1_lowest;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"order reproduction, NB2 at 0.8pi, delta 1e-3", criterion1},
      {"desk-scale estimate error within built-in eps_max + 2", criterion2},
      {"exchange vs LP agreement and alternation", criterion3},
      {"single-coefficient closed form", criterion4},
      {"structural zeros and equalized phase", criterion5},
      {"monotonicity and parity", criterion6},
      {"curve fit sanity", criterion7},
      {"first-band orders and Type I advantage", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, {std::string("exception: ") + e.what()}};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0));
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria pass\n", criteria.size() - failed, criteria.size());
  return strict && failed ? 1 : 0;
}
