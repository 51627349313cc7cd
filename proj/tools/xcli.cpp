// xcli: command-line runner for the crosschar checks.
//
// Exit status: 0 all assertions pass, 1 an assertion failed, 2 usage or
// precondition error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crosschar/crosschar.hpp"

namespace {

using namespace crosschar;

struct Options {
  std::optional<std::uint64_t> p, n, r, char_exp, trials, bound, j, seed;
  std::optional<std::size_t> threads;
  std::string out, format = "json", config;
};

std::uint64_t need(const std::optional<std::uint64_t>& v, const char* flag, const std::string& cmd) {
  require(v.has_value(), cmd + ": missing required flag " + flag);
  return *v;
}

/// q = p^n from the flags.
std::uint64_t level_of(const Options& o, const std::string& cmd) {
  const std::uint64_t p = need(o.p, "--p", cmd);
  const std::uint64_t n = o.n.value_or(1);
  require(is_prime(p), cmd + ": --p " + std::to_string(p) + " is not prime");
  require(n >= 1, cmd + ": --n must be >= 1");
  const std::uint64_t q = checked_pow(p, static_cast<unsigned>(n), field_bound());
  require(q != 0, cmd + ": p^n exceeds the field bound");
  return q;
}

Report single(const ProbeReport& pr) {
  Report r;
  r.add(pr);
  return r;
}

Report run_command(const std::string& cmd, const Options& o) {
  const std::uint64_t seed = o.seed.value_or(42);
  const auto unsigned_n = [&] { return static_cast<unsigned>(o.n.value_or(1)); };
  if (cmd == "orthogonality") {
    level_of(o, cmd);
    return orthogonality_experiment(*o.p, unsigned_n(), need(o.r, "--r", cmd));
  }
  if (cmd == "translate-rank") {
    const std::uint64_t q = level_of(o, cmd);
    TranslateRankOptions opt;
    opt.seed = seed;
    opt.random_trials = o.trials.value_or(q > 13 ? 200 : 0);
    return translate_rank_experiment(*o.p, unsigned_n(), need(o.r, "--r", cmd), opt);
  }
  if (cmd == "counterexample")
    return counterexample_experiment(need(o.p, "--p", cmd), static_cast<unsigned>(o.j.value_or(1)));
  if (cmd == "eq31") {
    level_of(o, cmd);
    const std::vector<std::uint64_t> rs = o.r ? std::vector<std::uint64_t>{*o.r} : std::vector<std::uint64_t>{3, 5, 7, 11, 13};
    return eq31_experiment(*o.p, unsigned_n(), rs, seed, o.trials.value_or(100));
  }
  if (cmd == "set-x") return set_x_experiment(need(o.p, "--p", cmd), need(o.r, "--r", cmd), o.bound.value_or(60));
  if (cmd == "census") {
    level_of(o, cmd);
    return census_experiment(*o.p, unsigned_n(), need(o.r, "--r", cmd), seed);
  }
  if (cmd == "group-identities") return single(group_identities(level_of(o, cmd)));
  const std::uint64_t q = level_of(o, cmd);
  const std::uint64_t r = need(o.r, "--r", cmd);
  if (cmd == "lambda-identities") return single(lambda_identities(q, r));
  if (cmd == "decompose") return single(decomposition_check(q, r));
  if (cmd == "jordan") return single(jordan_on_V(q, r, o.char_exp));
  if (cmd == "spin") return single(spin_probe(q, r));
  if (cmd == "chop") return single(chop_probe(q, r, seed));
  if (cmd == "simple") return single(simple_probe(q, r, seed));
  if (cmd == "lemma21") return single(lemma21_probe(q, r, seed, o.trials.value_or(50)));
  if (cmd == "lemma41") return single(lemma41_probe(q, r, o.char_exp.value_or(1), seed, o.trials.value_or(50)));
  if (cmd == "mplus") return single(mplus_probe(q, r, seed, o.trials.value_or(20)));
  if (cmd == "phi") return single(phi_check(q, r, o.char_exp.value_or(1), seed, o.trials.value_or(500)));
  throw PreconditionError("unknown subcommand " + cmd);
}

Report run_all(const Options& o) {
  SuiteConfig cfg;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    require(static_cast<bool>(in), "cannot read config file " + o.config);
    cfg = SuiteConfig::parse(in);
  }
  // explicit flags win over the config file
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (o.trials) cfg.lemma_trials = *o.trials;
  const auto results = run_suite(acceptance_suite(cfg), cfg.threads);
  Report all;
  for (const auto& c : results) {
    std::cerr << (c.passed() ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.title << "): "
              << c.report.size() << " records\n";
    all.append(c.report);
  }
  return all;
}

const char* kCsvHelp =
    "Output: --format json (default) writes a JSON array, one record per line.\n"
    "--format csv writes the columns\n"
    "  kind,name,p_or_q,m,r,k,theta_exponent,seed,check,expected,got,pass\n"
    "with one row per character check (kind=chars; check=params, expected=rhs,\n"
    "got=lhs) and one row per probe assertion (kind=probe).\n"
    "Exit status: 0 all assertions pass, 1 an assertion failed, 2 usage or precondition error.\n"
    "CROSSCHAR_BOUND overrides the field-size bound (default 1048576).";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-level checks for characters and SL2 modules in cross characteristic"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--p", o.p, "defining characteristic p");
  app.add_option("--n", o.n, "extension degree n (q = p^n), default 1");
  app.add_option("--r", o.r, "coefficient characteristic r");
  app.add_option("--char-exp", o.char_exp, "character exponent a (theta(w^j) = zeta^(a j))");
  app.add_option("--seed", o.seed, "random seed (default 42)");
  app.add_option("--trials", o.trials, "trial count (per probe)");
  app.add_option("--bound", o.bound, "upper bound for set-x");
  app.add_option("--j", o.j, "exponent j of q = p^j for counterexample, default 1");
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads for `all` (default 1)")->check(CLI::Range(1, 256));

  const std::vector<std::pair<std::string, std::string>> commands{
      {"orthogonality", "sum phi(z) psi(1/z) = (q-1) delta over all character pairs (--p --n --r)"},
      {"translate-rank", "rank of (psi(x+u_i)) for every nontrivial psi (--p --n --r [--trials --seed])"},
      {"counterexample", "characteristic-p family with zero column sums (--p [--j])"},
      {"eq31", "translate-sum inversion on random instances (--p --n [--r --trials --seed])"},
      {"set-x", "X = {m : r does not divide p^m - 1} (--p --r [--bound])"},
      {"census", "nonvanishing census along a tower (--p --n --r [--seed])"},
      {"group-identities", "torus conjugation and s eps(x) s (--p --n)"},
      {"lambda-identities", "Lambda(z) identities in Ind_N k_- (--p --n --r)"},
      {"decompose", "e+/e- splitting of Ind_T tr (--p --n --r)"},
      {"jordan", "Jordan form of h(w^(1/2)) on V (--p --n --r [--char-exp])"},
      {"spin", "spin of eta_s in Ind_B tr (--p --n --r)"},
      {"chop", "composition factors of principal series and Ind_N (--p --n --r [--seed])"},
      {"simple", "is_simple against the brute-force oracle (--p --n --r [--seed])"},
      {"lemma21", "spinning xi in Ind_T tr at level q^2 (--p --n --r [--trials --seed])"},
      {"lemma41", "spinning zeta in Ind_T theta at level q^2 (--p --n --r [--char-exp --trials --seed])"},
      {"mplus", "M+ codimension, Steinberg quotient of M-, the 2C identity (--p --n --r [--trials --seed])"},
      {"phi", "phi_e and phi_s: closed form, equivariance, rank (--p --n --r [--char-exp --trials --seed])"},
      {"all", "the full acceptance suite ([--seed --threads --config FILE])"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) subs[name] = app.add_subcommand(name, help);
  subs["all"]->add_option("--config", o.config, "plain-text config, one `key value` per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string cmd;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cmd = name;

  Report report;
  try {
    report = cmd == "all" ? run_all(o) : run_command(cmd, o);
  } catch (const PreconditionError& e) {
    std::cerr << "xcli " << cmd << ": precondition violated: " << e.what() << '\n';
    return 2;
  }

  const std::string text = o.format == "csv" ? report.to_csv() : report.to_json_text();
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "xcli: cannot write " << o.out << '\n';
      return 2;
    }
    f << text;
  }
  if (!report.passed())
    for (const auto& name : report.failures()) std::cerr << "FAIL " << name << '\n';
  return report.passed() ? 0 : 1;
}
