#include "codedensity/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "codedensity/combinat.hpp"
#include "codedensity/density_bounds.hpp"
#include "codedensity/errors.hpp"
#include "codedensity/estimator.hpp"
#include "json.hpp"

namespace codedensity::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string metric = "hamming";
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned k = 0;
  unsigned d = 0;
  std::uint64_t S = 0;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string format = "jsonl";
  std::string out;
  std::optional<std::uint64_t> work_limit;
  std::optional<std::uint64_t> max_objects;
  std::string confidence;
  std::string config;
  std::string q_list;
  std::string s_rule;
  std::string dump;
  std::uint64_t dump_count = 10;
  std::string suite = "all";
  unsigned centers = 3;
  bool naive = false;
};

struct Settings {
  EstimatorLimits limits;
  Rational confidence{99, 100};
  unsigned workers = 1;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || value.front() == '-') {
    throw ParameterError(key + " is a non-negative integer", "got '" + value + "'");
  }
  return v;
}

Rational parse_confidence(const std::string& text) {
  Rational c;
  try {
    c = parse_rational(text);
  } catch (const std::exception&) {
    throw ParameterError("0 < confidence < 1", "got '" + text + "'");
  }
  if (c <= 0 || c >= 1) throw ParameterError("0 < confidence < 1", "got '" + text + "'");
  return c;
}

/// key=value lines; '#' starts a comment.
void apply_config_file(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw ParameterError("readable config file", path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("key=value config lines", path + ":" + std::to_string(lineno) + ": '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "work_limit") {
      s.limits.max_pair_evaluations = parse_u64(key, value);
    } else if (key == "max_objects") {
      s.limits.max_objects = parse_u64(key, value);
    } else if (key == "confidence") {
      s.confidence = parse_confidence(value);
    } else if (key == "workers") {
      s.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_u64(key, value)));
    } else {
      throw ParameterError("known config key", path + ":" + std::to_string(lineno) + ": '" + key + "'");
    }
  }
}

Settings resolve_settings(const Options& o, bool workers_given) {
  Settings s;
  s.workers = std::max(1U, std::thread::hardware_concurrency());
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  if (!path.empty()) apply_config_file(path, s);
  if (o.work_limit) s.limits.max_pair_evaluations = *o.work_limit;
  if (o.max_objects) s.limits.max_objects = *o.max_objects;
  if (!o.confidence.empty()) s.confidence = parse_confidence(o.confidence);
  if (workers_given) s.workers = std::max(1U, o.workers);
  return s;
}

// ---- rendering ------------------------------------------------------------

Json rational_json(const Rational& r) {
  Json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  j["approx"] = to_decimal(r, 15);
  return j;
}

std::string rational_text(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

const std::vector<std::string> kRecordColumns = {
    "command",  "metric",     "q",           "n",        "k",         "d",           "S",
    "s_rule",   "lower",      "upper",       "lower_raw", "upper_raw", "lower_approx", "upper_approx",
    "gamma",    "gamma_approx", "regime",    "exact",    "exact_approx", "sandwich", "estimate",
    "estimate_approx", "ci_low", "ci_high",  "ci_low_approx", "ci_high_approx", "confidence", "trials",
    "successes", "seed"};

const std::vector<std::string> kVerifyColumns = {"suite", "quantity", "formula", "brute_force", "match"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_object() && j.contains("num")) {
    return j["num"].get<std::string>() + "/" + j["den"].get<std::string>();
  }
  return j.dump();
}

std::string approx_text(const Json& j) {
  if (j.is_object() && j.contains("approx")) return j["approx"].get<std::string>();
  return "";
}

// Flattened view of a record for the CSV columns.
std::string record_cell(const Json& rec, const std::string& col) {
  auto get = [&](const char* key) -> Json { return rec.contains(key) ? rec[key] : Json(); };
  auto est = [&](const char* key) -> Json {
    return rec.contains("estimate") && rec["estimate"].contains(key) ? rec["estimate"][key] : Json();
  };
  if (col.size() > 7 && col.ends_with("_approx") && col != "gamma_approx") {
    const std::string base = col.substr(0, col.size() - 7);
    if (base == "exact") return rec.contains("exact") ? approx_text(rec["exact"]["density"]) : "";
    if (base == "estimate") return approx_text(est("point"));
    if (base == "ci_low" || base == "ci_high") return approx_text(est(base.c_str()));
    return approx_text(get(base.c_str()));
  }
  if (col == "gamma") {
    const Json g = get("gamma");
    return g.is_null() ? "" : std::to_string(g["base"].get<std::uint64_t>()) + "^(" + scalar_text(g["exponent"]) + ")";
  }
  if (col == "gamma_approx") {
    const Json g = get("gamma");
    return g.is_null() ? "" : g["approx"].get<std::string>();
  }
  if (col == "exact") return rec.contains("exact") ? scalar_text(rec["exact"]["density"]) : "";
  if (col == "estimate") return scalar_text(est("point"));
  if (col == "ci_low" || col == "ci_high" || col == "confidence" || col == "trials" || col == "successes" ||
      col == "seed") {
    return scalar_text(est(col.c_str()));
  }
  return scalar_text(get(col.c_str()));
}

class Emitter {
 public:
  Emitter(std::string format, const std::vector<std::string>& columns) : format_(std::move(format)), columns_(columns) {
    if (format_ == "csv") {
      for (size_t i = 0; i < columns_.size(); ++i) buf_ << (i ? "," : "") << columns_[i];
      buf_ << '\n';
    }
  }

  void record(const Json& rec) {
    if (format_ == "jsonl") {
      buf_ << rec.dump() << '\n';
      return;
    }
    for (size_t i = 0; i < columns_.size(); ++i) buf_ << (i ? "," : "") << csv_escape(record_cell(rec, columns_[i]));
    buf_ << '\n';
  }

  /// Summary: a final {"summary": ...} line, or trailing '# key=value' lines in CSV.
  void summary(const Json& s) {
    if (format_ == "jsonl") {
      Json wrap;
      wrap["summary"] = s;
      buf_ << wrap.dump() << '\n';
      return;
    }
    for (const auto& [key, value] : s.items()) buf_ << "# " << key << "=" << scalar_text(value) << '\n';
  }

  std::string text() const { return buf_.str(); }

 private:
  std::string format_;
  const std::vector<std::string>& columns_;
  std::ostringstream buf_;
};

/// Writes everything at once so a failed run leaves no partial file behind.
void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ParameterError("writable output path", path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ParameterError("writable output path", path);
  }
}

// ---- parameter plumbing ---------------------------------------------------

struct Problem {
  bool injection = false;
  HammingParams hamming;
  SubspaceParams subspace;
};

Problem make_problem(const Options& o, std::uint64_t q, std::uint64_t S) {
  Problem p;
  p.injection = o.metric == "injection";
  if (p.injection) {
    if (o.k == 0) throw ParameterError("-k given for the injection metric", "missing -k");
    p.subspace = SubspaceParams::make(q, o.n, o.k, o.d, S);
  } else {
    p.hamming = HammingParams::make(q, o.n, o.d, S);
  }
  return p;
}

DensityInterval bounds_of(const Problem& p) {
  return p.injection ? density_bounds_injection(p.subspace) : density_bounds_hamming(p.hamming);
}

std::optional<PowerDescriptor> gamma_of(const Problem& p) {
  if (p.injection) {
    if (p.subspace.d < 2) return std::nullopt;
    return gamma_injection(p.subspace.q, p.subspace.n, p.subspace.k, p.subspace.d);
  }
  if (p.hamming.d < 2) return std::nullopt;
  return gamma_hamming(p.hamming.q, p.hamming.n, p.hamming.d);
}

Json base_record(const std::string& command, const Problem& p, const std::string& regime,
                 const std::string& s_rule = "") {
  Json rec;
  rec["command"] = command;
  if (p.injection) {
    const auto& s = p.subspace;
    rec["metric"] = "injection";
    rec["q"] = s.q;
    rec["n"] = s.n;
    rec["k"] = s.original_k;
    rec["k_canonical"] = s.k;
    rec["d"] = s.d;
    rec["S"] = s.S;
  } else {
    const auto& h = p.hamming;
    rec["metric"] = "hamming";
    rec["q"] = h.q;
    rec["n"] = h.n;
    rec["d"] = h.d;
    rec["S"] = h.S;
  }
  if (!s_rule.empty()) rec["s_rule"] = s_rule;
  const DensityInterval iv = bounds_of(p);
  rec["lower"] = rational_json(iv.lower);
  rec["upper"] = rational_json(iv.upper);
  rec["lower_raw"] = rational_json(iv.lower_raw);
  rec["upper_raw"] = rational_json(iv.upper_raw);
  if (auto g = gamma_of(p)) {
    Json gj;
    gj["base"] = g->base;
    gj["exponent"] = rational_json(g->exponent());
    gj["approx"] = g->approx(15);
    rec["gamma"] = gj;
  } else {
    rec["gamma"] = nullptr;
  }
  rec["regime"] = regime;
  return rec;
}

// ---- commands -------------------------------------------------------------

std::string cmd_bounds(const Options& o) {
  const Problem p = make_problem(o, o.q, o.S);
  Emitter em(o.format, kRecordColumns);
  em.record(base_record("bounds", p, "undetermined"));
  return em.text();
}

std::string cmd_exact(const Options& o, const Settings& s, bool& sandwich_ok) {
  const Problem p = make_problem(o, o.q, o.S);
  const auto mode = o.naive ? EnumerationMode::Naive : EnumerationMode::Pruned;
  const ExactDensity ex = p.injection ? exact_density_injection(p.subspace, s.limits, mode, s.workers)
                                      : exact_density_hamming(p.hamming, s.limits, mode, s.workers);
  const DensityInterval iv = bounds_of(p);
  sandwich_ok = iv.contains(ex.density);
  Json rec = base_record("exact", p, "undetermined");
  Json exact;
  exact["favourable"] = ex.favourable.get_str();
  exact["total"] = ex.total.get_str();
  exact["density"] = rational_json(ex.density);
  exact["pair_evaluations"] = ex.pair_evaluations;
  rec["exact"] = exact;
  rec["sandwich"] = sandwich_ok;
  Emitter em(o.format, kRecordColumns);
  em.record(rec);
  return em.text();
}

void write_dump(const Options& o, const Problem& p) {
  std::ostringstream buf;
  const std::uint64_t count = std::min(o.dump_count, o.trials);
  for (std::uint64_t i = 0; i < count; ++i) {
    // Same stream as trial i of the estimator.
    RandomEngine rng(stream_seed(o.seed, i));
    if (i) buf << '\n';
    if (p.injection) {
      const auto& s = p.subspace;
      buf << sample_subspace_code_uniform(static_cast<std::uint32_t>(s.q), s.original_k, s.n, s.S, rng).to_string();
    } else {
      const auto& h = p.hamming;
      buf << sample_code_uniform(static_cast<std::uint32_t>(h.q), h.n, h.S, rng).to_string();
    }
    buf << '\n';
  }
  std::ostringstream sink;
  deliver(buf.str(), o.dump, sink);
}

std::string cmd_estimate(const Options& o, const Settings& s) {
  if (o.trials == 0) throw ParameterError("trials >= 1", "--trials 0");
  const Problem p = make_problem(o, o.q, o.S);
  MonteCarloConfig cfg;
  cfg.trials = o.trials;
  cfg.base_seed = o.seed;
  cfg.workers = s.workers;
  cfg.confidence_level = s.confidence;
  const EstimateResult r = p.injection ? mc_density_injection(p.subspace, cfg) : mc_density_hamming(p.hamming, cfg);
  Json rec = base_record("estimate", p, "undetermined");
  Json est;
  est["point"] = rational_json(r.point_estimate);
  est["ci_low"] = rational_json(r.ci_low);
  est["ci_high"] = rational_json(r.ci_high);
  est["confidence"] = rational_json(r.confidence_level);
  est["one_sided"] = r.one_sided;
  est["trials"] = r.trials;
  est["successes"] = r.successes;
  est["seed"] = r.base_seed;
  rec["estimate"] = est;
  if (!o.dump.empty()) write_dump(o, p);
  Emitter em(o.format, kRecordColumns);
  em.record(rec);
  return em.text();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) parts.push_back(trim(cur));
  return parts;
}

struct SRule {
  enum Kind { Gamma, Constant, List, Spread } kind = Gamma;
  Rational t;
  std::uint64_t constant = 0;
  std::vector<std::uint64_t> list;
  std::string text;
};

SRule parse_s_rule(const std::string& text) {
  SRule r;
  r.text = text;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "gamma" && !tail.empty()) {
      r.kind = SRule::Gamma;
      r.t = parse_rational(tail);
      if (r.t < 0) throw ParameterError("t >= 0", "S-rule exponent " + tail);
      return r;
    }
    if (head == "const" && !tail.empty()) {
      r.kind = SRule::Constant;
      r.constant = parse_u64("S-rule constant", tail);
      return r;
    }
    if (head == "list" && !tail.empty()) {
      r.kind = SRule::List;
      for (const auto& part : split_list(tail)) r.list.push_back(parse_u64("S-rule list entry", part));
      return r;
    }
    if (head == "spread" && colon == std::string::npos) {
      r.kind = SRule::Spread;
      return r;
    }
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw ParameterError("S-rule is gamma:t, const:c, list:S1,S2,... or spread", "got '" + text + "'");
}

// Exponent e with gamma_q = q^e for the fixed (n, k, d) of the sweep.
Rational gamma_exponent(const Options& o) {
  if (o.metric == "injection") {
    const unsigned k = std::min(o.k, o.n - o.k);
    return gamma_injection(2, o.n, k, o.d).exponent();
  }
  return gamma_hamming(2, o.n, o.d).exponent();
}

std::string regime_of(const SRule& rule, const Options& o) {
  auto compare = [](const Rational& t) -> std::string {
    if (t < 1) return "below-threshold";
    if (t > 1) return "above-threshold";
    return "undetermined";
  };
  switch (rule.kind) {
    case SRule::Gamma:
      return compare(rule.t);
    case SRule::Constant:
      return "below-threshold";
    case SRule::List:
      return "undetermined";
    case SRule::Spread: {
      // Spread size grows like q^(n - k).
      const unsigned k = std::min(o.k, o.n - o.k);
      return compare(Rational(o.n - k) / gamma_exponent(o));
    }
  }
  return "undetermined";
}

std::string cmd_sweep(const Options& o) {
  if (o.q_list.empty()) throw ParameterError("--q-list given", "missing --q-list");
  if (o.s_rule.empty()) throw ParameterError("--s-rule given", "missing --s-rule");
  std::vector<std::uint64_t> qs;
  for (const auto& part : split_list(o.q_list)) qs.push_back(parse_u64("q-list entry", part));
  if (qs.empty()) throw ParameterError("non-empty q-list", o.q_list);
  const SRule rule = parse_s_rule(o.s_rule);
  const bool injection = o.metric == "injection";
  if (injection && o.k == 0) throw ParameterError("-k given for the injection metric", "missing -k");
  if (rule.kind == SRule::List && rule.list.size() != qs.size()) {
    throw ParameterError("S-rule list matches the q-list length",
                         std::to_string(rule.list.size()) + " vs " + std::to_string(qs.size()));
  }
  if (rule.kind == SRule::Spread) {
    if (!injection) throw ParameterError("spread S-rule uses the injection metric", "metric " + o.metric);
    if (o.k == 0 || o.k >= o.n || o.n % o.k != 0) {
      throw ParameterError("k divides n for the spread S-rule", "k = " + std::to_string(o.k));
    }
    if (o.d != std::min(o.k, o.n - o.k)) {
      throw ParameterError("d = k for the spread S-rule", "d = " + std::to_string(o.d));
    }
  }
  if ((rule.kind == SRule::Gamma || rule.kind == SRule::Spread) && o.d < 2) {
    throw ParameterError("d >= 2 for a gamma-based S-rule", "d = " + std::to_string(o.d));
  }
  const std::string regime = o.d >= 2 ? regime_of(rule, o) : "undetermined";

  Emitter em(o.format, kRecordColumns);
  std::optional<std::uint64_t> first_lower, first_upper;
  std::vector<Rational> lowers, uppers;
  for (size_t i = 0; i < qs.size(); ++i) {
    const std::uint64_t q = qs[i];
    Count S;
    switch (rule.kind) {
      case SRule::Gamma:
        if (injection) require_prime_power(q);
        S = ceil_power(q, gamma_exponent(o) * rule.t);
        if (S < 2) S = 2;
        break;
      case SRule::Constant:
        S = static_cast<unsigned long>(rule.constant);
        break;
      case SRule::List:
        S = static_cast<unsigned long>(rule.list[i]);
        break;
      case SRule::Spread:
        require_prime_power(q);
        S = spread_size(q, o.n, o.k);
        break;
    }
    if (!S.fits_ulong_p()) throw ParameterError("S fits in 64 bits", "S = " + S.get_str());
    const Problem p = make_problem(o, q, S.get_ui());
    Json rec = base_record("sweep", p, regime, rule.text);
    const DensityInterval iv = bounds_of(p);
    lowers.push_back(iv.lower);
    uppers.push_back(iv.upper);
    if (!first_lower && iv.lower > Rational(99, 100)) first_lower = q;
    if (!first_upper && iv.upper < Rational(1, 100)) first_upper = q;
    em.record(rec);
  }

  // Index from which the column is strictly monotone through the last entry.
  auto monotone_from = [&](const std::vector<Rational>& v, bool increasing) {
    size_t start = v.size() - 1;
    while (start > 0 && (increasing ? v[start - 1] < v[start] : v[start - 1] > v[start])) --start;
    return start;
  };
  Json summary;
  summary["metric"] = o.metric;
  summary["s_rule"] = rule.text;
  summary["regime"] = regime;
  summary["records"] = qs.size();
  summary["first_q_lower_above_0.99"] = first_lower ? Json(*first_lower) : Json();
  summary["first_q_upper_below_0.01"] = first_upper ? Json(*first_upper) : Json();
  summary["lower_increasing_from_q"] = qs[monotone_from(lowers, true)];
  summary["upper_decreasing_from_q"] = qs[monotone_from(uppers, false)];
  em.summary(summary);
  return em.text();
}

// ---- verify ---------------------------------------------------------------

struct SuiteResult {
  std::string suite;
  std::vector<VerificationReport> reports;
};

std::vector<VerificationReport> lemma_reports(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S,
                                              const EstimatorLimits& limits) {
  const NonisolatedCheck check = verify_nonisolated_bounds(q, n, d, S, limits);
  auto out = check.regularity;
  // Non-isolated codes against both bounds; the lower bound is rendered in the quantity.
  out.push_back({"lemmas q=" + std::to_string(q) + " n=" + std::to_string(n) + " d=" + std::to_string(d) +
                     " S=" + std::to_string(S) + " non-isolated within [" + rational_text(check.lower) + ", " +
                     check.upper.get_str() + "]",
                 check.upper, check.nonisolated, check.within_bounds});
  return out;
}

std::vector<SuiteResult> run_suites(const std::string& which, const Options& o, const Settings& s) {
  const auto& lim = s.limits;
  auto append = [](std::vector<VerificationReport>& dst, std::vector<VerificationReport> src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
  };
  std::vector<SuiteResult> results;
  auto want = [&](const char* name) { return which == "all" || which == name; };

  if (want("claim-a")) {
    SuiteResult r{"claim-a", {}};
    for (std::uint64_t q : {2, 3})
      for (unsigned n = 2; n <= 4; ++n)
        for (unsigned d = 2; d <= std::min(3U, n); ++d) append(r.reports, verify_claim_a(q, n, d, lim));
    results.push_back(std::move(r));
  }
  if (want("w-formula")) {
    SuiteResult r{"w-formula", {}};
    for (std::uint64_t q : {2, 3})
      for (unsigned n = 2; n <= 4; ++n)
        for (unsigned d = 2; d <= std::min(3U, n); ++d)
          for (std::uint64_t S = 2; S <= 4; ++S) append(r.reports, verify_w_formula(q, n, d, S, lim));
    results.push_back(std::move(r));
  }
  if (want("injection-claims")) {
    SuiteResult r{"injection-claims", {}};
    append(r.reports, verify_injection_claims(2, 4, 2, 2, lim));
    append(r.reports, verify_injection_claims(2, 5, 2, 2, lim));
    append(r.reports, verify_injection_claims(2, 5, 3, 2, lim));
    append(r.reports, verify_injection_claims(3, 4, 2, 2, lim));
    results.push_back(std::move(r));
  }
  if (want("ball-sizes")) {
    SuiteResult r{"ball-sizes", {}};
    for (std::uint64_t q : {2, 3, 4})
      for (unsigned n = 1; n <= 5; ++n) append(r.reports, verify_hamming_balls(q, n, o.centers, o.seed, lim));
    for (unsigned n = 2; n <= 6; ++n)
      for (unsigned k = 1; 2 * k <= n; ++k) append(r.reports, verify_injection_balls(2, n, k, o.centers, o.seed, lim));
    append(r.reports, verify_injection_balls(2, 4, 2, 0, o.seed, lim));
    results.push_back(std::move(r));
  }
  if (want("lemmas")) {
    SuiteResult r{"lemmas", {}};
    for (unsigned n = 2; n <= 4; ++n)
      for (unsigned d = 2; d <= std::min(3U, n); ++d)
        for (std::uint64_t S = 2; S <= 4; ++S) append(r.reports, lemma_reports(2, n, d, S, lim));
    results.push_back(std::move(r));
  }
  return results;
}

std::string cmd_verify(const Options& o, const Settings& s, std::ostream& err, bool& all_match) {
  const auto results = run_suites(o.suite, o, s);
  Emitter em(o.format, kVerifyColumns);
  std::size_t checks = 0, mismatches = 0;
  const VerificationReport* first_failure = nullptr;
  for (const auto& suite : results) {
    for (const auto& r : suite.reports) {
      Json rec;
      rec["suite"] = suite.suite;
      rec["quantity"] = r.quantity;
      rec["formula"] = r.formula_value.get_str();
      rec["brute_force"] = r.brute_force_value.get_str();
      rec["match"] = r.match;
      em.record(rec);
      ++checks;
      if (!r.match) {
        ++mismatches;
        if (!first_failure) first_failure = &r;
      }
    }
  }
  Json summary;
  summary["suite"] = o.suite;
  summary["checks"] = checks;
  summary["mismatches"] = mismatches;
  em.summary(summary);
  all_match = mismatches == 0;
  if (first_failure) {
    err << "verification failed: " << first_failure->quantity << ": formula " << first_failure->formula_value.get_str()
        << ", brute force " << first_failure->brute_force_value.get_str() << "\n";
  }
  return em.text();
}

// ---- argument parsing -----------------------------------------------------

void add_problem_options(CLI::App* cmd, Options& o, bool with_q_and_S) {
  cmd->add_option("--metric", o.metric, "Distance: hamming or injection")
      ->check(CLI::IsMember({"hamming", "injection"}))
      ->capture_default_str();
  if (with_q_and_S) cmd->add_option("-q", o.q, "Alphabet size / field order")->required();
  cmd->add_option("-n", o.n, "Length / ambient dimension")->required();
  cmd->add_option("-k", o.k, "Subspace dimension (injection metric)");
  cmd->add_option("-d", o.d, "Minimum distance")->required();
  if (with_q_and_S) cmd->add_option("-S", o.S, "Code cardinality")->required();
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write output to PATH instead of stdout");
}

void add_budget_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--work-limit", o.work_limit, "Pair-evaluation budget (default 100000000)");
  cmd->add_option("--max-objects", o.max_objects, "Cap on enumerated vectors/subspaces (default 10000000)");
}

}  // namespace

const std::vector<std::string>& record_columns() { return kRecordColumns; }
const std::vector<std::string>& verify_columns() { return kVerifyColumns; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact density bounds, exhaustive counts and Monte Carlo estimates for block and subspace codes.",
               "codedensity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(std::string("Configuration: --config PATH or the ") + kConfigEnv +
             " environment variable names a key=value file\n"
             "(keys: work_limit, max_objects, confidence, workers). Flags override the file.\n"
             "Exit codes: 0 success, 1 verification failure, 2 usage or parameter error, 3 work limit exceeded.");
  app.add_option("--config", o.config, std::string("key=value configuration file (default: $") + kConfigEnv + ")");

  auto* bounds = app.add_subcommand("bounds", "Exact lower/upper density bounds");
  add_problem_options(bounds, o, true);
  add_output_options(bounds, o);

  auto* exact = app.add_subcommand("exact", "Exact density by exhaustive enumeration, with a sandwich check");
  add_problem_options(exact, o, true);
  add_output_options(exact, o);
  add_budget_options(exact, o);
  exact->add_option("--workers", o.workers, "Worker threads (default: available parallelism)");
  exact->add_flag("--naive", o.naive, "Enumerate every subset without pruning");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo density estimate with a Clopper-Pearson interval");
  add_problem_options(estimate, o, true);
  add_output_options(estimate, o);
  estimate->add_option("--trials", o.trials, "Number of sampled codes")->capture_default_str();
  estimate->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  estimate->add_option("--workers", o.workers, "Worker threads (default: available parallelism)");
  estimate->add_option("--confidence", o.confidence, "Confidence level, e.g. 0.99 or 99/100");
  estimate->add_option("--dump", o.dump, "Write the first sampled codes to PATH");
  estimate->add_option("--dump-count", o.dump_count, "Number of codes written by --dump")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Bounds over a list of q with S chosen by a rule");
  add_problem_options(sweep, o, false);
  add_output_options(sweep, o);
  sweep->add_option("--q-list", o.q_list, "Comma-separated alphabet sizes")->required();
  sweep->add_option("--s-rule", o.s_rule, "gamma:t (S = ceil(gamma^t)), const:c, list:S1,S2,..., or spread")
      ->required();

  auto* verify = app.add_subcommand("verify", "Brute-force checks of the counting formulas");
  verify->add_option("suite", o.suite, "claim-a, w-formula, injection-claims, ball-sizes, lemmas or all")
      ->check(CLI::IsMember({"claim-a", "w-formula", "injection-claims", "ball-sizes", "lemmas", "all"}))
      ->capture_default_str();
  add_output_options(verify, o);
  add_budget_options(verify, o);
  verify->add_option("--seed", o.seed, "Seed for random ball centres")->capture_default_str();
  verify->add_option("--centers", o.centers, "Random centres per ball grid point")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    bool workers_given = false;
    for (auto* cmd : {exact, estimate})
      if (cmd->parsed() && cmd->count("--workers") > 0) workers_given = true;
    const Settings s = resolve_settings(o, workers_given);
    std::string text;
    int code = kExitOk;
    if (bounds->parsed()) {
      text = cmd_bounds(o);
    } else if (exact->parsed()) {
      bool ok = false;
      text = cmd_exact(o, s, ok);
      if (!ok) {
        err << "sandwich check failed: exact density outside the bounds\n";
        code = kExitVerificationFailed;
      }
    } else if (estimate->parsed()) {
      text = cmd_estimate(o, s);
    } else if (sweep->parsed()) {
      text = cmd_sweep(o);
    } else if (verify->parsed()) {
      bool ok = false;
      text = cmd_verify(o, s, err, ok);
      if (!ok) code = kExitVerificationFailed;
    }
    deliver(text, o.out, out);
    return code;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const WorkLimitExceeded& e) {
    err << "error: work limit exceeded: " << e.what()
        << "\nhint: raise --work-limit or use `codedensity estimate` for a Monte Carlo estimate\n";
    return kExitWorkLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace codedensity::cli
