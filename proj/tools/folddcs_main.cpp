// folddcs: run sumcheck protocols, reproduce the complexity tables and drive
// the soundness lab.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "folddcs/fold_dcs.hpp"
#include "folddcs/pcs.hpp"
#include "folddcs/report.hpp"
#include "folddcs/soundness_lab.hpp"
#include "folddcs/sumcheck_std.hpp"
#include "folddcs/tables.hpp"

using namespace folddcs;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainOpts {
  std::string points;
  std::size_t subgroup = 0;
  std::uint64_t shift = 0;
};

Domain make_domain(const PrimeField& F, const DomainOpts& o) {
  if (o.subgroup > 0) {
    if (!o.points.empty()) throw UsageError("give either --H or --subgroup, not both");
    const FieldElement g = find_subgroup_generator(F, o.subgroup);
    if (o.shift == 0) return Domain::subgroup(F, g, o.subgroup);
    return Domain::coset(F, g, o.subgroup, F.elem(o.shift));
  }
  if (o.points.empty()) throw UsageError("a summation set is required (--H or --subgroup)");
  std::vector<FieldElement> pts;
  std::stringstream ss(o.points);
  std::string item;
  while (std::getline(ss, item, ',')) pts.push_back(F.parse(item));
  return Domain::from_points(F, std::move(pts));
}

UniMode uni_or_throw(const std::string& s) {
  const auto m = parse_uni_mode(s);
  if (!m) throw UsageError("unknown univariate mode: " + s);
  return *m;
}

Strategy strategy_or_throw(const std::string& s) {
  const auto st = parse_strategy(s);
  if (!st) throw UsageError("unknown strategy: " + s);
  return *st;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

void print_metrics(const Metrics& m) {
  std::cout << "rounds: " << m.rounds << "\n"
            << "random elements: " << m.verifier_random_elements << "\n"
            << "queries: " << m.oracle_queries << " (batched " << m.batched_queries << ")\n"
            << "commitments: " << m.commitments << "\n"
            << "prover field ops: " << m.prover_field_ops() << " (summation "
            << m.prover_summation.total() << ")\n"
            << "verifier field ops: " << m.verifier_field_ops() << " (query phase "
            << m.verifier_query_phase.adds << " adds, " << m.verifier_query_phase.muls
            << " muls)\n";
}

struct RunOpts {
  std::string protocol = "fold";
  std::uint64_t p = 101;
  std::size_t mu = 2;
  std::uint32_t d = 1;
  std::uint32_t D = 0;
  DomainOpts H;
  std::string S = "honest";
  std::uint64_t seed = 1;
  std::string uni = "coefficient";
  std::string poly_file;
  std::size_t terms = 4;
  std::string strategy = "honest";
  bool shared = false;
  std::string out = "transcript.json";
};

int cmd_run(const RunOpts& o) {
  if (!is_prime_u64(o.p)) throw UsageError("--p must be prime");
  const PrimeField F(o.p);
  const Domain H = make_domain(F, o.H);
  const Seed seed = seed_from_u64(o.seed);
  SeededPrng poly_rng(derive_seed(seed, 0));
  MPoly f = MPoly(F, 1, 0, 0);
  if (!o.poly_file.empty()) {
    std::ifstream is(o.poly_file);
    if (!is) throw UsageError("cannot read " + o.poly_file);
    std::stringstream buf;
    buf << is.rdbuf();
    f = MPoly::from_text(buf.str());
    if (f.field() != F) throw UsageError("polynomial file uses a different modulus");
  } else {
    if (o.mu == 0) throw UsageError("--mu must be positive");
    const std::uint32_t D = o.D == 0 ? static_cast<std::uint32_t>(o.mu * o.d) : o.D;
    f = random_poly_terms(F, o.mu, o.d, D, o.terms, poly_rng);
  }
  if (o.protocol == "fold" || o.protocol == "fold-pcs") fold_rounds_for(f.arity());

  const FieldElement S = o.S == "honest" ? sum_over_cube(f, H) : F.parse(o.S);
  const UniMode uni = uni_or_throw(o.uni);
  Adversary adv(strategy_or_throw(o.strategy), derive_seed(seed, 2));
  SeededPrng coin_rng(derive_seed(seed, 1));
  PrngCoins coins(coin_rng);

  RunResult res;
  nlohmann::json extra;
  if (o.protocol == "std") {
    res = run_standard(StdInstance{f, H, S}, coins, uni, &adv);
  } else if (o.protocol == "dcs") {
    DcsResult r = dcs_run(f, H, S, coins, o.shared, &adv);
    res = std::move(r.run);
    extra["nodes_per_level"] = r.nodes_per_level;
  } else if (o.protocol == "fold") {
    res = run_fold_dcs(FoldInstance{f, H, S, uni}, coins, &adv);
  } else if (o.protocol == "fold-pcs") {
    const PcsParams pp = mock_setup(128, f.arity(), f.partial_bound(), f.total_bound());
    PcsRunResult r = fold_dcs_with_pcs(FoldInstance{f, H, S, uni}, pp, coins, &adv);
    res = std::move(r.run);
    extra["pcs"] = pcs_report_json(r.report);
  } else {
    throw UsageError("unknown protocol: " + o.protocol);
  }

  nlohmann::json j = run_json(res, f, seed, o.protocol);
  j["claimed_sum"] = S.value();
  j["strategy"] = o.strategy;
  j["uni_mode"] = to_string(uni);
  for (auto& [k, v] : extra.items()) j[k] = v;
  if (o.out == "-") {
    std::cout << j.dump(2) << "\n";
  } else if (!o.out.empty()) {
    write_file(o.out, j.dump(2) + "\n");
  }

  std::cout << "protocol: " << o.protocol << "\n"
            << "verdict: " << (res.accept ? "accept" : "reject");
  if (!res.accept) std::cout << " (" << to_string(res.reason) << ")";
  std::cout << "\n";
  print_metrics(res.transcript.metrics());
  return res.accept ? 0 : 1;
}

struct TablesOpts {
  std::string mus = "2,4,8,16";
  std::uint32_t d = 2;
  std::size_t h = 4;
  std::size_t terms = 0;
  std::uint64_t seed = 1;
  std::string json_out;
  std::string md_out;
};

int cmd_tables(const TablesOpts& o) {
  TableConfig cfg;
  cfg.mus.clear();
  for (const auto& s : split(o.mus)) cfg.mus.push_back(std::stoul(s));
  if (cfg.mus.empty()) throw UsageError("--mu needs at least one value");
  for (auto mu : cfg.mus) fold_rounds_for(mu);
  if (o.d + 1 > o.h) throw UsageError("need d < |H|");
  cfg.d = o.d;
  cfg.h = o.h;
  cfg.terms = o.terms;
  cfg.seed = seed_from_u64(o.seed);
  const auto cells = build_tables(cfg);
  const std::string md = tables_markdown(cells);
  std::cout << md;
  if (!o.md_out.empty()) write_file(o.md_out, md);
  if (!o.json_out.empty()) write_file(o.json_out, tables_json(cells).dump(2) + "\n");
  std::size_t mismatches = 0;
  for (const auto& c : cells) mismatches += c.ok() ? 0 : 1;
  std::cout << "\nmismatched cells: " << mismatches << "\n";
  return mismatches == 0 ? 0 : 1;
}

struct GridOpts {
  std::string protocols = "std,dcs,fold,fold-pcs";
  std::string strategies = "honest,honest-shape,greedy,tamper-final,tamper-round-1";
  std::uint64_t p = 7;
  std::size_t mu = 2;
  std::uint32_t d = 1;
  std::uint32_t D = 0;
  DomainOpts H;
  std::string S = "offset:1";
  std::size_t terms = 3;
  std::string uni = "coefficient";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
};

int cmd_grid(GridOpts o) {
  if (o.trials == 0) throw UsageError("--trials must be positive");
  if (!is_prime_u64(o.p)) throw UsageError("--p must be prime");
  const PrimeField F(o.p);
  if (o.H.points.empty() && o.H.subgroup == 0) o.H.points = "0,1";
  const Domain H = make_domain(F, o.H);
  SeededPrng rng(derive_seed(seed_from_u64(o.seed), 0));
  const std::uint32_t D = o.D == 0 ? static_cast<std::uint32_t>(o.mu * o.d) : o.D;
  const MPoly f = random_poly_terms(F, o.mu, o.d, D, o.terms, rng);
  FieldElement S;
  if (o.S.rfind("offset:", 0) == 0) {
    S = sum_over_cube(f, H) + F.parse(o.S.substr(7));
  } else {
    S = F.parse(o.S);
  }
  const LabInstance inst{f, H, S, uni_or_throw(o.uni)};

  std::vector<LabProtocol> protos;
  for (const auto& s : split(o.protocols)) {
    const auto p = parse_lab_protocol(s);
    if (!p) throw UsageError("unknown protocol: " + s);
    protos.push_back(*p);
  }
  std::vector<Strategy> strats;
  for (const auto& s : split(o.strategies)) strats.push_back(strategy_or_throw(s));
  if (!o.out.empty()) std::filesystem::create_directories(o.out);

  std::cout << "| protocol | strategy | trials | accepted | estimate | stderr | bound | ok |\n"
            << "|---|---|---|---|---|---|---|---|\n";
  bool all_ok = true;
  std::uint64_t cell = 0;
  for (auto proto : protos) {
    for (const auto& st : strats) {
      const SoundnessReport rep = monte_carlo(
          proto, st, inst, o.trials, derive_seed(seed_from_u64(o.seed), 1 + cell++), o.threads);
      all_ok = all_ok && rep.within_bound;
      std::cout << "| " << to_string(proto) << " | " << to_string(st) << " | " << rep.trials
                << " | " << rep.acceptances << " | " << rep.estimate << " | " << rep.stderr_
                << " | " << rep.bound << " | " << (rep.within_bound ? "yes" : "NO") << " |\n";
      if (!o.out.empty()) {
        write_file(o.out + "/" + to_string(proto) + "_" + to_string(st) + ".json",
                   soundness_json(rep).dump(2) + "\n");
      }
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_f3(bool verbose) {
  const F3Example ex = exhaustive_f3_example();
  if (verbose) {
    std::cout << "accepting alphas per message f0 = r x + t:\n";
    for (int r = 0; r < 3; ++r) {
      for (int t = 0; t < 3; ++t) {
        std::cout << "  r=" << r << " t=" << t << ": " << ex.accepted[r][t] << "/3\n";
      }
    }
  }
  std::cout << ex.best.num << "/" << ex.best.den << "\n";
  return 0;
}

int cmd_char2() {
  const Char2Report r = characteristic2_degeneracy_check();
  auto line = [](const char* name, bool v) {
    std::cout << name << ": " << (v ? "yes" : "no") << "\n";
  };
  line("symbolic identity", r.symbolic_identity);
  line("four-variable sums vanish", r.four_var_sums_vanish);
  line("two-variable messages vanish", r.two_var_messages_vanish);
  line("greedy blocked", r.greedy_blocked);
  line("zero polynomial sums to zero", r.zero_poly_sums_to_zero);
  const bool ok = r.symbolic_identity && r.four_var_sums_vanish && r.two_var_messages_vanish &&
                  r.greedy_blocked && r.zero_poly_sums_to_zero;
  return ok ? 0 : 1;
}

int cmd_selftest(const std::vector<int>& ids) {
  bool ok = true;
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id);
    std::cout << acceptance::format_line(r) << std::endl;
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

void add_domain_opts(CLI::App* app, DomainOpts& o) {
  app->add_option("--H", o.points, "summation set as a comma-separated list");
  app->add_option("--subgroup", o.subgroup, "summation set = multiplicative subgroup of this order");
  app->add_option("--shift", o.shift, "coset shift for --subgroup");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fold-DCS sumcheck toolkit"};
  app.require_subcommand(1);

  RunOpts run;
  auto* run_cmd = app.add_subcommand("run", "execute one protocol run");
  run_cmd->add_option("--protocol", run.protocol, "std | dcs | fold | fold-pcs");
  run_cmd->add_option("--p", run.p, "field modulus");
  run_cmd->add_option("--mu", run.mu, "number of variables");
  run_cmd->add_option("--d", run.d, "partial degree bound");
  run_cmd->add_option("--D", run.D, "total degree bound (default mu*d)");
  add_domain_opts(run_cmd, run.H);
  run_cmd->add_option("--S", run.S, "claimed sum, or 'honest'");
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--uni", run.uni, "naive | coefficient | coset");
  run_cmd->add_option("--poly", run.poly_file, "polynomial in canonical text form");
  run_cmd->add_option("--terms", run.terms, "terms of the random polynomial");
  run_cmd->add_option("--strategy", run.strategy, "prover strategy");
  run_cmd->add_flag("--shared-randomness", run.shared, "dcs: one alpha per tree level");
  run_cmd->add_option("--out", run.out, "transcript JSON path ('-' for stdout, '' to skip)");

  TablesOpts tables;
  auto* tables_cmd = app.add_subcommand("tables", "measured complexity tables");
  tables_cmd->add_option("--mu", tables.mus, "comma-separated powers of two");
  tables_cmd->add_option("--d", tables.d);
  tables_cmd->add_option("--hsize", tables.h, "|H|, a multiplicative subgroup order");
  tables_cmd->add_option("--terms", tables.terms, "terms of the test polynomial (0: max(1, mu/4))");
  tables_cmd->add_option("--seed", tables.seed);
  tables_cmd->add_option("--json", tables.json_out);
  tables_cmd->add_option("--md", tables.md_out);

  auto* sound_cmd = app.add_subcommand("soundness", "soundness lab");
  sound_cmd->require_subcommand(1);
  bool verbose = false;
  auto* f3_cmd = sound_cmd->add_subcommand("f3-example", "exhaustive F_3 example");
  f3_cmd->add_flag("--verbose", verbose);
  auto* char2_cmd = sound_cmd->add_subcommand("char2", "vanishing-sum degeneracy check");
  GridOpts grid;
  auto* grid_cmd = sound_cmd->add_subcommand("grid", "Monte Carlo over protocols x strategies");
  grid_cmd->add_option("--protocols", grid.protocols);
  grid_cmd->add_option("--strategies", grid.strategies);
  grid_cmd->add_option("--p", grid.p);
  grid_cmd->add_option("--mu", grid.mu);
  grid_cmd->add_option("--d", grid.d);
  grid_cmd->add_option("--D", grid.D);
  add_domain_opts(grid_cmd, grid.H);
  grid_cmd->add_option("--S", grid.S, "claimed sum, or offset:k for true sum + k");
  grid_cmd->add_option("--terms", grid.terms);
  grid_cmd->add_option("--uni", grid.uni);
  grid_cmd->add_option("--trials", grid.trials);
  grid_cmd->add_option("--seed", grid.seed);
  grid_cmd->add_option("--threads", grid.threads);
  grid_cmd->add_option("--out", grid.out, "directory for one JSON report per cell");

  std::vector<int> criteria;
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  self_cmd->add_option("--criterion", criteria, "criterion ids (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*tables_cmd) return cmd_tables(tables);
    if (*f3_cmd) return cmd_f3(verbose);
    if (*char2_cmd) return cmd_char2();
    if (*grid_cmd) return cmd_grid(grid);
    if (*self_cmd) {
      if (criteria.empty()) {
        for (int i = 1; i <= acceptance::kCriteria; ++i) criteria.push_back(i);
      }
      for (int id : criteria) {
        if (id < 1 || id > acceptance::kCriteria) throw UsageError("no such criterion");
      }
      return cmd_selftest(criteria);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return kUsage;
}
