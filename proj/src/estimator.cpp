#include "codedensity/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "codedensity/combinat.hpp"
#include "codedensity/errors.hpp"

namespace codedensity {

namespace {

using Index = std::uint32_t;

struct ClosePair {
  Index a;
  Index b;
};

unsigned shared_elements(const ClosePair& x, const ClosePair& y) {
  return static_cast<unsigned>((x.a == y.a) + (x.a == y.b) + (x.b == y.a) + (x.b == y.b));
}

void require_budget(const Count& needed, std::uint64_t budget, const std::string& what) {
  if (needed > Count(static_cast<unsigned long>(budget))) {
    throw WorkLimitExceeded(what + " needs " + needed.get_str() + " pair evaluations, budget is " +
                            std::to_string(budget));
  }
}

// Runs body(worker) on `workers` threads and rethrows the first failure.
template <typename Body>
void run_workers(unsigned workers, Body body) {
  workers = std::max(1U, workers);
  if (workers == 1) {
    body(0U);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Next S-combination of {0..m-1} in lexicographic order.
bool next_combination(std::vector<Index>& c, Index m) {
  const size_t s = c.size();
  size_t i = s;
  while (i > 0 && c[i - 1] == m - s + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (size_t j = i; j < s; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::vector<Index> first_combination(std::uint64_t S) {
  std::vector<Index> c(S);
  for (Index i = 0; i < S; ++i) c[i] = i;
  return c;
}

class PrunedCounter {
 public:
  PrunedCounter(const std::vector<std::uint8_t>& compatible, std::uint64_t size, std::uint64_t budget,
                std::atomic<std::uint64_t>& shared_evaluations)
      : compatible_(compatible), size_(size), budget_(budget), shared_(shared_evaluations) {}

  // Counts compatible S-subsets whose smallest element is `first`.
  void count_from(Index first, std::uint64_t S) {
    std::vector<Index> candidates;
    for (Index u = first + 1; u < size_; ++u) {
      tick();
      if (compatible_[first * size_ + u]) candidates.push_back(u);
    }
    extend(candidates, S - 1);
  }

  std::uint64_t found() const { return found_; }
  std::uint64_t evaluations() const { return total_; }
  void flush() {
    shared_ += pending_;
    pending_ = 0;
  }

 private:
  void tick() {
    ++total_;
    if (++pending_ == 4096) {
      flush();
      if (shared_.load(std::memory_order_relaxed) > budget_) {
        throw WorkLimitExceeded("subset search exceeded the budget of " + std::to_string(budget_) +
                                " pair evaluations");
      }
    }
  }

  void extend(const std::vector<Index>& candidates, std::uint64_t need) {
    if (need == 0) {
      ++found_;
      return;
    }
    if (candidates.size() < need) return;
    if (need == 1) {
      found_ += candidates.size();
      return;
    }
    std::vector<Index> next;
    for (size_t i = 0; i + need <= candidates.size(); ++i) {
      next.clear();
      const Index v = candidates[i];
      for (size_t j = i + 1; j < candidates.size(); ++j) {
        tick();
        if (compatible_[v * size_ + candidates[j]]) next.push_back(candidates[j]);
      }
      extend(next, need - 1);
    }
  }

  const std::vector<std::uint8_t>& compatible_;
  std::uint64_t size_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& shared_;
  std::uint64_t found_ = 0;
  std::uint64_t total_ = 0;
  std::uint64_t pending_ = 0;
};

template <typename Item, typename Distance>
std::vector<std::uint8_t> compatibility_table(const std::vector<Item>& items, unsigned d, Distance distance) {
  const size_t m = items.size();
  std::vector<std::uint8_t> table(m * m, 0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const std::uint8_t ok = distance(items[i], items[j]) >= d ? 1 : 0;
      table[i * m + j] = table[j * m + i] = ok;
    }
  }
  return table;
}

template <typename Item, typename Distance>
std::vector<ClosePair> close_pairs(const std::vector<Item>& items, unsigned d, Distance distance) {
  std::vector<ClosePair> pairs;
  for (Index i = 0; i < items.size(); ++i)
    for (Index j = i + 1; j < items.size(); ++j)
      if (distance(items[i], items[j]) <= d - 1) pairs.push_back({i, j});
  return pairs;
}

std::vector<VerificationReport> class_size_reports(const std::vector<ClosePair>& pairs,
                                                   const AssociationProfile& profile,
                                                   const EstimatorLimits& limits) {
  const Count v(static_cast<unsigned long>(pairs.size()));
  require_budget(v * v, limits.max_pair_evaluations, "association class count");
  std::uint64_t classes[3] = {0, 0, 0};
  for (const auto& x : pairs)
    for (const auto& y : pairs) ++classes[shared_elements(x, y)];

  std::vector<VerificationReport> out;
  auto add = [&](std::string name, const Count& formula, const Count& brute) {
    out.push_back({std::move(name), formula, brute, formula == brute});
  };
  add("|V|", profile.v_size, v);
  for (unsigned l = 0; l <= 2; ++l) {
    add("|alpha^-1(" + std::to_string(l) + ")|", profile.class_sizes[l],
        Count(static_cast<unsigned long>(classes[l])));
  }
  return out;
}

std::string params_tag(std::uint64_t q, unsigned n, unsigned d) {
  return "q=" + std::to_string(q) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t trial) { return splitmix64(splitmix64(base_seed) + trial); }

EstimateResult clopper_pearson(std::uint64_t successes, std::uint64_t trials, const Rational& confidence_level) {
  if (trials == 0) throw ParameterError("trials >= 1", "trials = 0");
  if (successes > trials) throw ParameterError("successes <= trials", std::to_string(successes));
  if (confidence_level <= 0 || confidence_level >= 1) {
    throw ParameterError("0 < confidence < 1", confidence_level.get_str());
  }
  using boost::math::binomial_distribution;
  const double alpha = Rational(1 - confidence_level).get_d();
  const auto n = static_cast<double>(trials);
  const auto k = static_cast<double>(successes);

  EstimateResult r;
  r.trials = trials;
  r.successes = successes;
  r.confidence_level = confidence_level;
  r.point_estimate = Rational(Count(static_cast<unsigned long>(successes)), Count(static_cast<unsigned long>(trials)));
  r.point_estimate.canonicalize();
  if (successes == 0) {
    r.one_sided = true;
    r.ci_low = 0;
    r.ci_high = from_double(binomial_distribution<>::find_upper_bound_on_p(n, 0, alpha));
  } else if (successes == trials) {
    r.one_sided = true;
    r.ci_low = from_double(binomial_distribution<>::find_lower_bound_on_p(n, n, alpha));
    r.ci_high = 1;
  } else {
    r.ci_low = from_double(binomial_distribution<>::find_lower_bound_on_p(n, k, alpha / 2));
    r.ci_high = from_double(binomial_distribution<>::find_upper_bound_on_p(n, k, alpha / 2));
  }
  if (r.ci_low > r.point_estimate) r.ci_low = r.point_estimate;
  if (r.ci_high < r.point_estimate) r.ci_high = r.point_estimate;
  return r;
}

ExactDensity count_compatible_subsets(const std::vector<std::uint8_t>& compatible, std::uint64_t size,
                                      std::uint64_t S, const EstimatorLimits& limits, EnumerationMode mode,
                                      unsigned workers) {
  if (S < 2 || S > size) throw ParameterError("2 <= S <= M", "S = " + std::to_string(S));
  ExactDensity out;
  out.total = binom(static_cast<unsigned long long>(size), static_cast<long long>(S));

  if (mode == EnumerationMode::Naive) {
    require_budget(out.total, limits.max_pair_evaluations, "naive subset enumeration");
    std::uint64_t found = 0;
    std::uint64_t evaluations = 0;
    auto c = first_combination(S);
    do {
      bool ok = true;
      for (size_t i = 0; i < S && ok; ++i) {
        for (size_t j = i + 1; j < S; ++j) {
          ++evaluations;
          if (!compatible[c[i] * size + c[j]]) {
            ok = false;
            break;
          }
        }
      }
      found += ok ? 1 : 0;
    } while (next_combination(c, static_cast<Index>(size)));
    out.favourable = Count(static_cast<unsigned long>(found));
    out.pair_evaluations = evaluations;
  } else {
    std::atomic<std::uint64_t> shared{0};
    workers = std::max(1U, workers);
    std::vector<std::uint64_t> found(workers, 0);
    std::vector<std::uint64_t> evaluations(workers, 0);
    run_workers(workers, [&](unsigned w) {
      PrunedCounter counter(compatible, size, limits.max_pair_evaluations, shared);
      for (Index first = w; first < size; first += workers) counter.count_from(first, S);
      counter.flush();
      found[w] = counter.found();
      evaluations[w] = counter.evaluations();
    });
    std::uint64_t f = 0;
    std::uint64_t e = 0;
    for (unsigned w = 0; w < workers; ++w) {
      f += found[w];
      e += evaluations[w];
    }
    if (e > limits.max_pair_evaluations) {
      throw WorkLimitExceeded("subset search exceeded the budget of " + std::to_string(limits.max_pair_evaluations) +
                              " pair evaluations");
    }
    out.favourable = Count(static_cast<unsigned long>(f));
    out.pair_evaluations = e;
  }
  out.density = Rational(out.favourable, out.total);
  out.density.canonicalize();
  return out;
}

ExactDensity exact_density_hamming(const HammingParams& p, const EstimatorLimits& limits, EnumerationMode mode,
                                   unsigned workers) {
  const Count M = p.ambient_size();
  if (p.d == 1) {
    Count total = binom(M, static_cast<long long>(p.S));
    return {total, total, Rational(1), 0};
  }
  if (p.q > 256) throw ParameterError("q <= 256", "exhaustive enumeration supports alphabets up to 256");
  const auto vectors = enumerate_vectors(static_cast<std::uint32_t>(p.q), p.n, limits.object_limits());
  const Count table_cost = M * (M - 1) / 2;
  require_budget(table_cost, limits.max_pair_evaluations, "distance table");
  const auto table = compatibility_table(vectors, p.d, [](const Vector& x, const Vector& y) { return hamming_distance(x, y); });
  ExactDensity out = count_compatible_subsets(table, vectors.size(), p.S, limits, mode, workers);
  out.pair_evaluations += to_u64(table_cost);
  return out;
}

ExactDensity exact_density_injection(const SubspaceParams& p, const EstimatorLimits& limits, EnumerationMode mode,
                                     unsigned workers) {
  const Count M = p.ambient_size();
  if (p.d == 1) {
    Count total = binom(M, static_cast<long long>(p.S));
    return {total, total, Rational(1), 0};
  }
  if (p.q > 256) throw ParameterError("q <= 256", "exhaustive enumeration supports fields up to 256");
  const auto subspaces =
      enumerate_grassmannian(static_cast<std::uint32_t>(p.q), p.original_k, p.n, limits.object_limits());
  const Count table_cost = M * (M - 1) / 2;
  require_budget(table_cost, limits.max_pair_evaluations, "distance table");
  const auto table =
      compatibility_table(subspaces, p.d, [](const Subspace& x, const Subspace& y) { return injection_distance(x, y); });
  ExactDensity out = count_compatible_subsets(table, subspaces.size(), p.S, limits, mode, workers);
  out.pair_evaluations += to_u64(table_cost);
  return out;
}

namespace {

template <typename Trial>
EstimateResult run_monte_carlo(const MonteCarloConfig& config, Trial trial) {
  if (config.trials == 0) throw ParameterError("trials >= 1", "trials = 0");
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(config.workers, 1, config.trials));
  std::vector<std::uint64_t> successes(workers, 0);
  run_workers(workers, [&](unsigned w) {
    // Contiguous trial ranges; the stream of trial i depends only on (seed, i).
    const std::uint64_t begin = config.trials * w / workers;
    const std::uint64_t end = config.trials * (w + 1) / workers;
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      RandomEngine rng(stream_seed(config.base_seed, i));
      local += trial(rng) ? 1 : 0;
    }
    successes[w] = local;
  });
  std::uint64_t total = 0;
  for (auto s : successes) total += s;
  EstimateResult r = clopper_pearson(total, config.trials, config.confidence_level);
  r.base_seed = config.base_seed;
  return r;
}

}  // namespace

EstimateResult mc_density_hamming(const HammingParams& p, const MonteCarloConfig& config) {
  if (p.q > 256) throw ParameterError("q <= 256", "sampling supports alphabets up to 256");
  if (p.d == 1) {
    EstimateResult r = clopper_pearson(config.trials, config.trials, config.confidence_level);
    r.base_seed = config.base_seed;
    return r;
  }
  const auto q = static_cast<std::uint32_t>(p.q);
  return run_monte_carlo(config, [&](RandomEngine& rng) {
    return has_min_distance_at_least(sample_code_uniform(q, p.n, p.S, rng), p.d);
  });
}

EstimateResult mc_density_injection(const SubspaceParams& p, const MonteCarloConfig& config) {
  if (p.q > 256) throw ParameterError("q <= 256", "sampling supports fields up to 256");
  if (p.d == 1) {
    EstimateResult r = clopper_pearson(config.trials, config.trials, config.confidence_level);
    r.base_seed = config.base_seed;
    return r;
  }
  const auto q = static_cast<std::uint32_t>(p.q);
  return run_monte_carlo(config, [&](RandomEngine& rng) {
    return has_min_distance_at_least(sample_subspace_code_uniform(q, p.original_k, p.n, p.S, rng), p.d);
  });
}

std::vector<VerificationReport> verify_claim_a(std::uint64_t q, unsigned n, unsigned d, const EstimatorLimits& limits) {
  HammingParams p = HammingParams::make(q, n, d, 2);
  const auto profile = hamming_profile(p);
  const auto vectors = enumerate_vectors(static_cast<std::uint32_t>(q), n, limits.object_limits());
  const auto pairs = close_pairs(vectors, d, [](const Vector& x, const Vector& y) { return hamming_distance(x, y); });
  auto reports = class_size_reports(pairs, profile, limits);
  for (auto& r : reports) r.quantity = "claim-a " + params_tag(q, n, d) + " " + r.quantity;
  return reports;
}

std::vector<VerificationReport> verify_w_formula(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S,
                                                 const EstimatorLimits& limits) {
  HammingParams p = HammingParams::make(q, n, d, S);
  const auto profile = hamming_profile(p);
  const auto vectors = enumerate_vectors(static_cast<std::uint32_t>(q), n, limits.object_limits());
  const auto pairs = close_pairs(vectors, d, [](const Vector& x, const Vector& y) { return hamming_distance(x, y); });
  const Count total = binom(static_cast<unsigned long long>(vectors.size()), static_cast<long long>(S));
  require_budget(total, limits.max_pair_evaluations, "co-neighbourhood count");

  // Representatives: first and last pair-of-pairs met in each class.
  struct Rep {
    unsigned cls;
    std::vector<Index> unite;
  };
  std::vector<Rep> reps;
  for (unsigned cls = 0; cls <= 2; ++cls) {
    const ClosePair* first[2] = {nullptr, nullptr};
    const ClosePair* last[2] = {nullptr, nullptr};
    for (const auto& x : pairs) {
      for (const auto& y : pairs) {
        if (shared_elements(x, y) != cls) continue;
        if (!first[0]) {
          first[0] = &x;
          first[1] = &y;
        }
        last[0] = &x;
        last[1] = &y;
      }
    }
    if (!first[0]) continue;
    for (auto* rep : {first, last}) {
      std::vector<Index> u = {rep[0]->a, rep[0]->b, rep[1]->a, rep[1]->b};
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      reps.push_back({cls, std::move(u)});
    }
  }

  std::vector<std::uint64_t> counts(reps.size(), 0);
  auto c = first_combination(S);
  do {
    for (size_t r = 0; r < reps.size(); ++r) {
      if (std::includes(c.begin(), c.end(), reps[r].unite.begin(), reps[r].unite.end())) ++counts[r];
    }
  } while (next_combination(c, static_cast<Index>(vectors.size())));

  std::vector<VerificationReport> out;
  for (size_t r = 0; r < reps.size(); ++r) {
    std::string members;
    for (Index i : reps[r].unite) members += (members.empty() ? "" : ",") + vectors[i].to_string();
    const Count formula = profile.w_values[reps[r].cls];
    const Count brute(static_cast<unsigned long>(counts[r]));
    out.push_back({"w-formula " + params_tag(q, n, d) + " S=" + std::to_string(S) + " l=" +
                       std::to_string(reps[r].cls) + " union={" + members + "}",
                   formula, brute, formula == brute});
  }
  return out;
}

std::vector<VerificationReport> verify_injection_claims(std::uint64_t q, unsigned n, unsigned k, unsigned d,
                                                        const EstimatorLimits& limits) {
  SubspaceParams p = SubspaceParams::make(q, n, k, d, 2);
  if (d < 2) throw ParameterError("d >= 2", "pair graph is empty for d = " + std::to_string(d));
  const auto profile = injection_profile(p);
  const auto subspaces = enumerate_grassmannian(static_cast<std::uint32_t>(q), k, n, limits.object_limits());
  const auto pairs =
      close_pairs(subspaces, d, [](const Subspace& x, const Subspace& y) { return injection_distance(x, y); });
  auto reports = class_size_reports(pairs, profile, limits);
  for (auto& r : reports) r.quantity = "injection q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" +
                                       std::to_string(k) + " d=" + std::to_string(d) + " " + r.quantity;
  return reports;
}

std::vector<VerificationReport> verify_hamming_balls(std::uint64_t q, unsigned n, unsigned centers, std::uint64_t seed,
                                                     const EstimatorLimits& limits) {
  const auto vectors = enumerate_vectors(static_cast<std::uint32_t>(q), n, limits.object_limits());
  RandomEngine rng(seed);
  std::uniform_int_distribution<size_t> pick(0, vectors.size() - 1);
  std::vector<VerificationReport> out;
  for (unsigned c = 0; c < centers; ++c) {
    const Vector& centre = vectors[pick(rng)];
    std::vector<std::uint64_t> at(n + 1, 0);
    for (const auto& v : vectors) ++at[hamming_distance(centre, v)];
    std::uint64_t within = 0;
    for (unsigned r = 0; r <= n; ++r) {
      within += at[r];
      const Count formula = hamming_ball_size(q, n, static_cast<int>(r));
      const Count brute(static_cast<unsigned long>(within));
      out.push_back({"hamming ball q=" + std::to_string(q) + " n=" + std::to_string(n) + " r=" + std::to_string(r) +
                         " centre=" + centre.to_string(),
                     formula, brute, formula == brute});
    }
  }
  return out;
}

std::vector<VerificationReport> verify_injection_balls(std::uint64_t q, unsigned n, unsigned k, unsigned centers,
                                                       std::uint64_t seed, const EstimatorLimits& limits) {
  const auto subspaces = enumerate_grassmannian(static_cast<std::uint32_t>(q), k, n, limits.object_limits());
  const unsigned kc = std::min(k, n - k);
  std::vector<size_t> chosen;
  if (centers == 0) {
    for (size_t i = 0; i < subspaces.size(); ++i) chosen.push_back(i);
  } else {
    RandomEngine rng(seed);
    std::uniform_int_distribution<size_t> pick(0, subspaces.size() - 1);
    for (unsigned c = 0; c < centers; ++c) chosen.push_back(pick(rng));
  }
  require_budget(Count(static_cast<unsigned long>(chosen.size())) * static_cast<unsigned long>(subspaces.size()),
                 limits.max_pair_evaluations, "injection ball count");
  std::vector<VerificationReport> out;
  for (size_t idx : chosen) {
    const Subspace& centre = subspaces[idx];
    std::vector<std::uint64_t> at(kc + 1, 0);
    for (const auto& s : subspaces) ++at[injection_distance(centre, s)];
    std::uint64_t within = 0;
    for (unsigned r = 0; r <= kc; ++r) {
      within += at[r];
      const Count formula = injection_ball_size(q, n, kc, static_cast<int>(r));
      const Count brute(static_cast<unsigned long>(within));
      out.push_back({"injection ball q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                         " r=" + std::to_string(r) + " centre=" + centre.to_string(),
                     formula, brute, formula == brute});
    }
  }
  return out;
}

bool NonisolatedCheck::ok() const {
  return within_bounds &&
         std::all_of(regularity.begin(), regularity.end(), [](const VerificationReport& r) { return r.match; });
}

NonisolatedCheck verify_nonisolated_bounds(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S,
                                           const EstimatorLimits& limits) {
  HammingParams p = HammingParams::make(q, n, d, S);
  const auto profile = hamming_profile(p);
  const auto vectors = enumerate_vectors(static_cast<std::uint32_t>(q), n, limits.object_limits());
  const auto pairs = close_pairs(vectors, d, [](const Vector& x, const Vector& y) { return hamming_distance(x, y); });
  const Count codes = binom(static_cast<unsigned long long>(vectors.size()), static_cast<long long>(S));
  require_budget(codes * static_cast<unsigned long>(S * S), limits.max_pair_evaluations, "bipartite graph");

  std::map<std::pair<Index, Index>, size_t> pair_id;
  for (size_t i = 0; i < pairs.size(); ++i) pair_id[{pairs[i].a, pairs[i].b}] = i;

  const size_t v = pairs.size();
  std::vector<std::uint64_t> co(v * v, 0);  // common right neighbours of (P, Q)
  std::uint64_t nonisolated = 0;
  std::vector<size_t> inside;
  auto c = first_combination(S);
  do {
    inside.clear();
    for (size_t i = 0; i < S; ++i)
      for (size_t j = i + 1; j < S; ++j) {
        auto it = pair_id.find({c[i], c[j]});
        if (it != pair_id.end()) inside.push_back(it->second);
      }
    if (!inside.empty()) ++nonisolated;
    for (size_t a : inside)
      for (size_t b : inside) ++co[a * v + b];
  } while (next_combination(c, static_cast<Index>(vectors.size())));

  NonisolatedCheck check;
  // Collapse each class to the set of observed values; regular iff a single value per class.
  for (unsigned cls = 0; cls <= 2; ++cls) {
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    for (size_t a = 0; a < v; ++a)
      for (size_t b = 0; b < v; ++b) {
        if (shared_elements(pairs[a], pairs[b]) != cls) continue;
        lo = std::min(lo, co[a * v + b]);
        hi = std::max(hi, co[a * v + b]);
      }
    if (lo == UINT64_MAX) continue;  // empty class
    const std::string tag = (cls == 2 ? "left degree W_2" : "W_" + std::to_string(cls));
    const Count formula = profile.w_values[cls];
    // A spread of values is reported through the extreme that disagrees.
    const Count brute(static_cast<unsigned long>(Count(static_cast<unsigned long>(lo)) != formula ? lo : hi));
    check.regularity.push_back({"graph " + params_tag(q, n, d) + " S=" + std::to_string(S) + " " + tag, formula, brute,
                                lo == hi && formula == brute});
  }
  check.nonisolated = Count(static_cast<unsigned long>(nonisolated));
  check.upper = upper_bound_nonisolated(profile.v_size, profile.degree());
  check.lower = lower_bound_nonisolated(profile);
  check.within_bounds = check.lower <= Rational(check.nonisolated) && check.nonisolated <= check.upper;
  return check;
}

}  // namespace codedensity
