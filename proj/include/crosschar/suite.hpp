#pragma once

// The full acceptance sweep as a list of criteria, each a list of independent
// tasks. Tasks may run on several threads; results are always assembled in
// list order, so the combined report does not depend on scheduling.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "crosschar/experiments.hpp"
#include "crosschar/probes.hpp"
#include "crosschar/report.hpp"

namespace crosschar {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  std::size_t lemma_trials = 50;
  std::size_t mplus_trials = 20;
  std::size_t phi_trials = 500;
  std::size_t eq31_trials = 100;
  std::size_t rank_trials = 200;
  std::uint64_t set_x_bound = 60;

  /// Reads `key value` lines; blank lines and lines starting with '#' are skipped.
  static SuiteConfig parse(std::istream& in) {
    SuiteConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key) || key[0] == '#') continue;
      std::uint64_t v = 0;
      require(static_cast<bool>(ls >> v), "config line " + std::to_string(lineno) + ": expected `key value`");
      if (key == "seed") c.seed = v;
      else if (key == "threads") c.threads = v;
      else if (key == "lemma_trials") c.lemma_trials = v;
      else if (key == "mplus_trials") c.mplus_trials = v;
      else if (key == "phi_trials") c.phi_trials = v;
      else if (key == "eq31_trials") c.eq31_trials = v;
      else if (key == "rank_trials") c.rank_trials = v;
      else if (key == "set_x_bound") c.set_x_bound = v;
      else throw PreconditionError("config line " + std::to_string(lineno) + ": unknown key `" + key + "`");
    }
    return c;
  }
};

struct SuiteTask {
  std::string label;
  std::function<Report()> run;
};

struct Criterion {
  int id = 0;  // 0 for the supplementary checks
  std::string title;
  double budget_seconds = 0;
  std::vector<SuiteTask> tasks;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  double budget_seconds = 0;
  double seconds = 0;  // summed task time
  Report report;
  bool passed() const { return report.passed(); }
};

namespace detail {

inline Report wrap(const ProbeReport& p) {
  Report r;
  r.add(p);
  return r;
}

inline const std::vector<std::uint64_t>& coefficient_primes() {
  static const std::vector<std::uint64_t> rs{3, 5, 7, 11, 13};
  return rs;
}

}  // namespace detail

/// Criteria 1-13 followed by the supplementary checks.
inline std::vector<Criterion> acceptance_suite(const SuiteConfig& cfg) {
  using detail::wrap;
  std::vector<Criterion> out;
  const std::uint64_t seed = cfg.seed;
  const std::vector<std::pair<std::uint64_t, unsigned>> char_fields{{2, 2}, {5, 1}, {7, 1}, {3, 2}, {13, 1}, {5, 2}};

  Criterion c1{1, "orthogonality", 5, {}};
  for (auto [p, m] : char_fields)
    for (auto r : detail::coefficient_primes())
      if (r != p)
        c1.tasks.push_back({"orthogonality p=" + std::to_string(p) + " m=" + std::to_string(m) + " r=" + std::to_string(r),
                            [p = p, m = m, r] { return orthogonality_experiment(p, m, r); }});
  out.push_back(std::move(c1));

  Criterion c2{2, "translate independence", 30, {}};
  for (auto [p, m] : char_fields) {
    const std::uint64_t q = checked_pow(p, m, field_bound());
    for (auto r : detail::coefficient_primes()) {
      if (r == p) continue;
      TranslateRankOptions opt;
      opt.seed = seed;
      opt.random_trials = (q == 9 || q == 13 || q == 25) ? cfg.rank_trials : 0;
      c2.tasks.push_back({"translate-rank q=" + std::to_string(q) + " r=" + std::to_string(r),
                          [p = p, m = m, r, opt] { return translate_rank_experiment(p, m, r, opt); }});
    }
  }
  out.push_back(std::move(c2));

  Criterion c3{3, "characteristic-p counterexample", 5, {}};
  for (std::uint64_t p : {3, 5})
    c3.tasks.push_back({"counterexample p=" + std::to_string(p), [p] { return counterexample_experiment(p, 1); }});
  out.push_back(std::move(c3));

  Criterion c4{4, "translate-sum inversion", 10, {}};
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {13, 1}})
    c4.tasks.push_back({"eq31 p=" + std::to_string(p) + " m=" + std::to_string(m), [p = p, m = m, seed, cfg] {
                          return eq31_experiment(p, m, detail::coefficient_primes(), seed, cfg.eq31_trials);
                        }});
  out.push_back(std::move(c4));

  Criterion c5{5, "the set X", 1, {}};
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 3}, {2, 5}, {2, 7}, {3, 5}, {3, 7}, {5, 3}, {5, 7}, {7, 5}, {2, 11}, {3, 11}})
    c5.tasks.push_back({"set-x p=" + std::to_string(p) + " r=" + std::to_string(r),
                        [p = p, r = r, cfg] { return set_x_experiment(p, r, cfg.set_x_bound); }});
  out.push_back(std::move(c5));

  Criterion c6{6, "group identities", 5, {}};
  for (std::uint64_t q : {3, 4, 5, 7, 9, 13})
    c6.tasks.push_back({"group-identities q=" + std::to_string(q), [q] { return wrap(group_identities(q)); }});
  out.push_back(std::move(c6));

  Criterion c7{7, "Lambda identities", 60, {}};
  for (std::uint64_t q : {3, 5, 7, 9})
    for (std::uint64_t r : {7, 11, 13})
      if (r != field_of_order(q)->p())
        c7.tasks.push_back({"lambda-identities q=" + std::to_string(q) + " r=" + std::to_string(r),
                            [q, r] { return wrap(lambda_identities(q, r)); }});
  out.push_back(std::move(c7));

  Criterion c8{8, "e+/e- decomposition", 60, {}};
  for (std::uint64_t q : {3, 5, 7, 9})
    for (std::uint64_t r : {5, 7, 11, 13})
      if (r != field_of_order(q)->p())
        c8.tasks.push_back({"decompose q=" + std::to_string(q) + " r=" + std::to_string(r),
                            [q, r] { return wrap(decomposition_check(q, r)); }});
  out.push_back(std::move(c8));

  Criterion c9{9, "Jordan structure", 120, {}};
  for (auto [q, r, a] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::optional<std::uint64_t>>>{
           {7, 3, std::nullopt}, {13, 3, std::nullopt}, {5, 13, std::nullopt}, {7, 3, 1}})
    c9.tasks.push_back({"jordan q=" + std::to_string(q) + " r=" + std::to_string(r),
                        [q = q, r = r, a = a] { return wrap(jordan_on_V(q, r, a)); }});
  out.push_back(std::move(c9));

  Criterion c10{10, "composition structure", 60, {}};
  c10.tasks.push_back({"chop q=5 r=7", [seed] { return wrap(chop_probe(5, 7, seed)); }});
  c10.tasks.push_back({"simple q=5 r=7", [seed] { return wrap(simple_probe(5, 7, seed)); }});
  out.push_back(std::move(c10));

  Criterion c11{11, "spinning xi", 600, {}};
  for (std::uint64_t q : {3, 5})
    c11.tasks.push_back({"lemma21 q=" + std::to_string(q) + " r=7",
                         [q, seed, cfg] { return wrap(lemma21_probe(q, 7, seed, cfg.lemma_trials)); }});
  out.push_back(std::move(c11));

  Criterion c12{12, "spinning zeta", 600, {}};
  c12.tasks.push_back({"lemma41 q=5 r=7 a=1", [seed, cfg] { return wrap(lemma41_probe(5, 7, 1, seed, cfg.lemma_trials)); }});
  out.push_back(std::move(c12));

  Criterion c13{13, "M+ and M-", 300, {}};
  for (std::uint64_t q : {3, 5, 7})
    c13.tasks.push_back({"mplus q=" + std::to_string(q) + " r=11",
                         [q, seed, cfg] { return wrap(mplus_probe(q, 11, seed, cfg.mplus_trials)); }});
  out.push_back(std::move(c13));

  Criterion c0{0, "supplementary", 60, {}};
  c0.tasks.push_back({"phi q=5 r=7 a=1", [seed, cfg] { return wrap(phi_check(5, 7, 1, seed, cfg.phi_trials)); }});
  c0.tasks.push_back({"phi q=7 r=5 a=1", [seed, cfg] { return wrap(phi_check(7, 5, 1, seed, cfg.phi_trials)); }});
  c0.tasks.push_back({"spin q=5 r=7", [] { return wrap(spin_probe(5, 7)); }});
  for (auto [p, m, r] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{
           {2, 2, 5}, {3, 1, 13}, {3, 1, 5}, {5, 1, 13}, {7, 1, 5}})
    c0.tasks.push_back({"census p=" + std::to_string(p) + " m=" + std::to_string(m) + " r=" + std::to_string(r),
                        [p = p, m = m, r = r, seed] { return census_experiment(p, m, r, seed); }});
  out.push_back(std::move(c0));
  return out;
}

/// Runs every task of every criterion on up to `threads` workers.
inline std::vector<CriterionResult> run_suite(const std::vector<Criterion>& criteria, std::size_t threads = 1) {
  struct Slot {
    const SuiteTask* task;
    std::size_t criterion;
    Report report;
    double seconds = 0;
    std::exception_ptr error;
  };
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < criteria.size(); ++c)
    for (const auto& t : criteria[c].tasks) slots.push_back({&t, c, {}, 0, nullptr});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < slots.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        slots[i].report = slots[i].task->run();
      } catch (...) {
        slots[i].error = std::current_exception();
      }
      slots[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, slots.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CriterionResult> out;
  for (const auto& c : criteria) out.push_back({c.id, c.title, c.budget_seconds, 0, {}});
  for (auto& s : slots) {
    if (s.error) std::rethrow_exception(s.error);
    out[s.criterion].report.append(s.report);
    out[s.criterion].seconds += s.seconds;
  }
  return out;
}

}  // namespace crosschar
