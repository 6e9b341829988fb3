// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are exact
// unless stated on the criterion's line.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "codedensity/cli.hpp"
#include "codedensity/combinat.hpp"
#include "codedensity/density_bounds.hpp"
#include "codedensity/estimator.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace codedensity;
using Json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  Clock::time_point start = Clock::now();
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }

  void finish() {
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", elapsed, budget_seconds);
    if (elapsed > budget_seconds) expect(false, "runtime budget exceeded");
    std::printf("[%s] criterion %d: %s (%s; %s)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), detail.c_str(),
                timing, ok ? "" : " first failure: ", ok ? "" : first_failure.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string str(const Rational& r) { return r.get_str(); }

Rational ratio(const Count& a, const Count& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "codedensity");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::vector<Json> jsonl(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(Json::parse(line));
  return out;
}

Rational json_rational(const Json& j) {
  Rational r(Count(j["num"].get<std::string>()), Count(j["den"].get<std::string>()));
  r.canonicalize();
  return r;
}

// Brute-force Hamming ball around `center`.
std::uint64_t oracle_hamming_ball(unsigned q, unsigned n, std::uint64_t center, unsigned r) {
  const auto c = oracle::digits_of(center, q, n);
  std::uint64_t count = 0;
  for (std::uint64_t y = 0; y < oracle::ipow(q, n); ++y)
    if (oracle::hamming(c, oracle::digits_of(y, q, n)) <= r) ++count;
  return count;
}

unsigned oracle_injection_distance(const oracle::PointSet& x, const oracle::PointSet& y, unsigned k, unsigned p) {
  return k - oracle::intersection_dimension(x, y, p);
}

// S-subsets of the given subspaces with pairwise injection distance >= d.
std::uint64_t oracle_good_subspace_codes(const std::vector<oracle::PointSet>& g, unsigned k, unsigned p, unsigned d,
                                         unsigned S) {
  const auto m = static_cast<unsigned>(g.size());
  std::vector<std::uint8_t> far(static_cast<size_t>(m) * m, 0);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) far[i * m + j] = oracle_injection_distance(g[i], g[j], k, p) >= d;
  std::uint64_t good = 0;
  oracle::for_each_subset(m, S, [&](const std::vector<unsigned>& c) {
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        if (!far[c[i] * m + c[j]]) return;
    ++good;
  });
  return good;
}

void criterion1() {
  Criterion c{1, "S=2 exactness, q in {2,3,4}, 2 <= d <= n <= 4", 5};
  int cases = 0;
  for (unsigned q : {2U, 3U, 4U})
    for (unsigned n = 2; n <= 4; ++n)
      for (unsigned d = 2; d <= n; ++d) {
        const auto p = HammingParams::make(q, n, d, 2);
        const std::string tag = "(" + std::to_string(q) + "," + std::to_string(n) + "," + std::to_string(d) + ")";
        const Count b = oracle_hamming_ball(q, n, 0, d - 1);
        const Rational closed = 1 - ratio(b - 1, Count(oracle::ipow(q, n) - 1));
        const auto exact = exact_density_hamming(p);
        const auto bounds = density_bounds_hamming(p);
        c.expect(exact.density == closed, tag + " exact " + str(exact.density) + " != " + str(closed));
        c.expect(bounds.lower == closed, tag + " lower " + str(bounds.lower));
        c.expect(bounds.upper == closed, tag + " upper " + str(bounds.upper));
        ++cases;
      }
  c.detail = std::to_string(cases) + " instances, zero tolerance";
  c.finish();
}

void criterion2() {
  Criterion c{2, "Hamming sandwich, q in {2,3}, n <= 4, d in {2,3}, S in {2,3,4}", 120};
  int cases = 0, cross = 0;
  for (unsigned q : {2U, 3U})
    for (unsigned n = 2; n <= 4; ++n)
      for (unsigned d : {2U, 3U}) {
        if (d > n) continue;
        for (unsigned S : {2U, 3U, 4U}) {
          if (S > oracle::ipow(q, n)) continue;
          const auto p = HammingParams::make(q, n, d, S);
          const std::string tag = "(" + std::to_string(q) + "," + std::to_string(n) + "," + std::to_string(d) + "," +
                                  std::to_string(S) + ")";
          const auto exact = exact_density_hamming(p);
          const auto bounds = density_bounds_hamming(p);
          c.expect(bounds.lower <= exact.density && exact.density <= bounds.upper,
                   tag + " " + str(exact.density) + " outside [" + str(bounds.lower) + ", " + str(bounds.upper) + "]");
          // Independent enumeration where it stays cheap.
          if (oracle::binom64(static_cast<unsigned>(oracle::ipow(q, n)), static_cast<int>(S)) <= 200'000) {
            const Count good(oracle::count_good_codes(q, n, d, S));
            c.expect(exact.favourable == good, tag + " favourable " + exact.favourable.get_str() + " vs oracle " +
                                                   good.get_str());
            ++cross;
          }
          ++cases;
        }
      }
  const auto worked = HammingParams::make(2, 3, 2, 3);
  const auto e = exact_density_hamming(worked);
  const auto b = density_bounds_hamming(worked);
  c.expect(e.density == Rational(1, 7), "(2,3,2,3) exact " + str(e.density));
  c.expect(b.lower == 0 && b.upper == Rational(8, 35), "(2,3,2,3) bounds");
  c.detail = std::to_string(cases) + " instances, " + std::to_string(cross) +
             " cross-checked by oracle enumeration; (2,3,2,3): " + str(e.density) + " in [" + str(b.lower) + ", " +
             str(b.upper) + "]";
  c.finish();
}

void criterion3() {
  Criterion c{3, "injection sandwich, q=2, (n,k) in {(4,2),(4,1),(5,2)}, d <= k, S in {2,3}", 120};
  int cases = 0;
  for (auto [n, k] : {std::pair{4U, 2U}, std::pair{4U, 1U}, std::pair{5U, 2U}}) {
    const auto g = oracle::grassmannian(2, k, n);
    for (unsigned d = 1; d <= k; ++d)
      for (unsigned S : {2U, 3U}) {
        const auto p = SubspaceParams::make(2, n, k, d, S);
        const std::string tag = "(2," + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + "," +
                                std::to_string(S) + ")";
        const auto exact = exact_density_injection(p);
        const auto bounds = density_bounds_injection(p);
        c.expect(bounds.lower <= exact.density && exact.density <= bounds.upper,
                 tag + " " + str(exact.density) + " outside [" + str(bounds.lower) + ", " + str(bounds.upper) + "]");
        const Count good(oracle_good_subspace_codes(g, k, 2, d, S));
        c.expect(exact.favourable == good,
                 tag + " favourable " + exact.favourable.get_str() + " vs oracle " + good.get_str());
        ++cases;
      }
  }
  const auto worked = SubspaceParams::make(2, 4, 2, 2, 2);
  const auto e = exact_density_injection(worked);
  const auto b = density_bounds_injection(worked);
  const Rational target(8, 17);
  c.expect(e.density == target && b.lower == target && b.upper == target, "(2,4,2,2,2) is not 8/17 throughout");
  c.detail = std::to_string(cases) + " instances, each cross-checked by oracle enumeration; (2,4,2,2,2): exact " +
             str(e.density) + ", bounds [" + str(b.lower) + ", " + str(b.upper) + "]";
  c.finish();
}

void criterion4() {
  Criterion c{4, "verify claim-a and verify w-formula report zero mismatches", 60};
  std::string detail;
  for (const std::string suite : {"claim-a", "w-formula"}) {
    const auto r = cli({"verify", suite});
    c.expect(r.code == cli::kExitOk, suite + " exit " + std::to_string(r.code));
    const auto recs = jsonl(r.out);
    if (recs.empty() || !recs.back().contains("summary")) {
      c.expect(false, suite + " printed no summary");
      continue;
    }
    const auto& s = recs.back()["summary"];
    c.expect(s["mismatches"] == 0, suite + " mismatches " + s["mismatches"].dump());
    c.expect(s["checks"].get<int>() > 0, suite + " ran no checks");
    if (!detail.empty()) detail += ", ";
    detail += suite + ": " + s["checks"].dump() + " checks, " + s["mismatches"].dump() + " mismatches";
  }
  c.detail = detail;
  c.finish();
}

void criterion5() {
  Criterion c{5, "ball sizes match brute force around 3 random centres", 30};
  std::mt19937_64 rng(20261014);
  int checks = 0;
  for (unsigned q : {2U, 3U})
    for (unsigned n = 1; n <= 4; ++n) {
      const std::uint64_t m = oracle::ipow(q, n);
      for (int i = 0; i < 3; ++i) {
        const std::uint64_t center = rng() % m;
        for (unsigned r = 0; r <= n; ++r) {
          const Count brute(oracle_hamming_ball(q, n, center, r));
          c.expect(hamming_ball_size(q, n, static_cast<int>(r)) == brute,
                   "hamming q=" + std::to_string(q) + " n=" + std::to_string(n) + " r=" + std::to_string(r));
          ++checks;
        }
      }
    }
  for (auto [n, k] : {std::pair{4U, 2U}, std::pair{4U, 1U}, std::pair{5U, 2U}}) {
    const auto g = oracle::grassmannian(2, k, n);
    for (int i = 0; i < 3; ++i) {
      const auto& center = g[rng() % g.size()];
      for (unsigned r = 0; r <= k; ++r) {
        std::uint64_t brute = 0;
        for (const auto& y : g)
          if (oracle_injection_distance(center, y, k, 2) <= r) ++brute;
        c.expect(injection_ball_size(2, n, k, static_cast<int>(r)) == Count(brute),
                 "injection n=" + std::to_string(n) + " k=" + std::to_string(k) + " r=" + std::to_string(r));
        ++checks;
      }
    }
  }
  c.detail = std::to_string(checks) + " centre/radius comparisons";
  c.finish();
}

void criterion6() {
  Criterion c{6, "99% Clopper-Pearson intervals cover the exact value in >= 18 of 20 seeds at 1e5 trials", 120};
  const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  int hamming_hits = 0, injection_hits = 0;
  const Rational third(1, 3), eight17(8, 17);
  const auto hp = HammingParams::make(2, 2, 2, 2);
  const auto sp = SubspaceParams::make(2, 4, 2, 2, 2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MonteCarloConfig cfg;
    cfg.trials = 100'000;
    cfg.base_seed = seed;
    cfg.workers = workers;
    const auto h = mc_density_hamming(hp, cfg);
    if (h.ci_low <= third && third <= h.ci_high) ++hamming_hits;
    const auto s = mc_density_injection(sp, cfg);
    if (s.ci_low <= eight17 && eight17 <= s.ci_high) ++injection_hits;
  }
  c.expect(hamming_hits >= 18, "hamming covered " + std::to_string(hamming_hits));
  c.expect(injection_hits >= 18, "injection covered " + std::to_string(injection_hits));
  c.detail = "1/3 covered " + std::to_string(hamming_hits) + "/20, 8/17 covered " + std::to_string(injection_hits) +
             "/20";
  c.finish();
}

void criterion7() {
  Criterion c{7, "estimate JSON is byte-identical at --workers 1 and --workers 8", 120};
  const std::vector<std::vector<std::string>> cases = {
      {"estimate", "--metric", "hamming", "-q", "2", "-n", "2", "-d", "2", "-S", "2"},
      {"estimate", "--metric", "injection", "-q", "2", "-n", "4", "-k", "2", "-d", "2", "-S", "3"},
      {"estimate", "--metric", "hamming", "-q", "3", "-n", "4", "-d", "3", "-S", "5"},
  };
  int identical = 0;
  for (auto args : cases) {
    args.insert(args.end(), {"--trials", "100000", "--seed", "424242"});
    auto one = args, eight = args;
    one.insert(one.end(), {"--workers", "1"});
    eight.insert(eight.end(), {"--workers", "8"});
    const auto a = cli(one);
    const auto b = cli(eight);
    c.expect(a.code == 0 && b.code == 0, "estimate failed for " + args[2]);
    c.expect(!a.out.empty() && a.out == b.out, "outputs differ for " + args[2] + " q=" + args[4]);
    if (a.code == 0 && a.out == b.out) ++identical;
  }
  c.detail = std::to_string(identical) + "/" + std::to_string(cases.size()) + " parameter sets identical";
  c.finish();
}

const std::string kSweepQ = "2,3,4,5,7,8,9,11,13,16,25,32,64,128";

struct Column {
  std::vector<std::uint64_t> q;
  std::vector<Rational> values;
};

Column sweep_column(const std::vector<std::string>& args, const std::string& field, Criterion& c) {
  const auto r = cli(args);
  c.expect(r.code == 0, "sweep exit " + std::to_string(r.code));
  Column col;
  for (const auto& rec : jsonl(r.out)) {
    if (rec.contains("summary")) continue;
    col.q.push_back(rec["q"].get<std::uint64_t>());
    col.values.push_back(json_rational(rec[field]));
  }
  return col;
}

// Index from which the column is strictly increasing (or decreasing) to the end.
size_t monotone_from(const std::vector<Rational>& v, bool increasing) {
  size_t i = v.size() - 1;
  while (i > 0 && (increasing ? v[i - 1] < v[i] : v[i - 1] > v[i])) --i;
  return i;
}

std::string approx(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r.get_d());
  return buf;
}

void criterion8() {
  Criterion c{8, "Hamming threshold trends, n=4, d=3, S = ceil(gamma^t) for t = 1/2 and t = 2", 10};
  const auto below = sweep_column({"sweep", "--metric", "hamming", "-n", "4", "-d", "3", "--q-list", kSweepQ,
                                   "--s-rule", "gamma:1/2"},
                                  "lower", c);
  const auto above = sweep_column({"sweep", "--metric", "hamming", "-n", "4", "-d", "3", "--q-list", kSweepQ,
                                   "--s-rule", "gamma:2"},
                                  "upper", c);
  const Rational hi(99, 100), lo(1, 100);
  std::string detail;
  if (below.values.size() == 14 && above.values.size() == 14) {
    // Eventually monotone: the strictly increasing tail must cover at least the last five sweep points.
    const size_t start = monotone_from(below.values, true);
    c.expect(start + 5 <= below.values.size(), "lower is not increasing over the tail");
    c.expect(below.values.back() > hi, "lower at q=128 is " + approx(below.values.back()) + ", not > 0.99");
    c.expect(above.values.back() < lo, "upper at q=128 is " + approx(above.values.back()) + ", not < 0.01");
    std::string first_hi = "none", first_lo = "none";
    for (size_t i = 0; i < 14; ++i) {
      if (first_hi == "none" && below.values[i] > hi) first_hi = std::to_string(below.q[i]);
      if (first_lo == "none" && above.values[i] < lo) first_lo = std::to_string(above.q[i]);
    }
    detail = "lower increasing from q=" + std::to_string(below.q[start]) + ", lower(128)=" +
             approx(below.values.back()) + ", first q with lower > 0.99: " + first_hi +
             "; upper(128)=" + approx(above.values.back()) + ", first q with upper < 0.01: " + first_lo;
  } else {
    c.expect(false, "sweep returned the wrong number of records");
  }
  c.detail = detail;
  c.finish();
}

void criterion9() {
  Criterion c{9, "spread rarity, injection n=4, k=2, d=2, S = q^2 + 1; 56 partial spreads via two searches", 300};
  const auto col = sweep_column({"sweep", "--metric", "injection", "-n", "4", "-k", "2", "-d", "2", "--q-list",
                                 "2,3,4,5,7,8,9,11,13", "--s-rule", "spread"},
                                "upper", c);
  std::string detail;
  if (col.values.size() == 9) {
    c.expect(monotone_from(col.values, false) == 0, "upper is not strictly decreasing");
    c.expect(col.values.back() < Rational(1, 100), "upper at q=13 is " + approx(col.values.back()));
    detail = "upper(2)=" + approx(col.values.front()) + ", upper(13)=" + approx(col.values.back());
  } else {
    c.expect(false, "sweep returned the wrong number of records");
  }
  const auto search = exact_density_injection(SubspaceParams::make(2, 4, 2, 2, 5));
  const auto backtrack = oracle::count_partial_spreads(oracle::grassmannian(2, 2, 4), 5);
  c.expect(search.favourable == Count(backtrack), "library found " + search.favourable.get_str() +
                                                      " spreads, oracle " + std::to_string(backtrack));
  detail += "; spreads of size 5 in G_2(2,4): library " + search.favourable.get_str() + ", oracle " +
            std::to_string(backtrack);
  c.detail = detail;
  c.finish();
}

void criterion10() {
  Criterion c{10, "ball-size asymptotics: |B_2| / 6q^2 in (0.8, 1.2) for q in [16,128], injection ball / q^3 decreasing", 5};
  const Rational lo(4, 5), hi(6, 5);
  std::vector<Rational> gaps;
  Rational first, last;
  std::uint64_t qmin = 0, qmax = 0;
  for (std::uint64_t q = 16; q <= 128; ++q) {
    if (!is_prime_power(q)) continue;
    const Rational r = ratio(hamming_ball_size(q, 4, 2), Count(6) * Count(q) * Count(q));
    c.expect(lo < r && r < hi, "ratio at q=" + std::to_string(q) + " is " + approx(r));
    const Rational gap = abs(r - 1);
    c.expect(gaps.empty() || gap < gaps.back(), "ratio does not approach 1 at q=" + std::to_string(q));
    gaps.push_back(gap);
    if (!qmin) {
      qmin = q;
      first = r;
    }
    qmax = q;
    last = r;
  }
  Rational prev;
  int points = 0;
  for (std::uint64_t q = 2; q <= 64; ++q) {
    if (!is_prime_power(q)) continue;
    const Rational r = ratio(injection_ball_size(q, 4, 2, 1), Count(q) * Count(q) * Count(q));
    c.expect(points == 0 || r < prev, "injection ratio not decreasing at q=" + std::to_string(q));
    prev = r;
    ++points;
  }
  c.detail = std::to_string(gaps.size()) + " prime powers, ratio " + approx(first) + " at q=" + std::to_string(qmin) +
             " to " + approx(last) + " at q=" + std::to_string(qmax) + "; injection ratio over " +
             std::to_string(points) + " prime powers ends at " + approx(prev);
  c.finish();
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
