// Command-line front door: loads problem files and runs checks, expansions,
// and comparisons.  Subcommands: check-bv, qme, graphs, partition, verify.
// Global flags: --seed, --jobs, --format text|json.  Exit codes: 0 pass,
// 1 mismatch/violation, 2 usage or input error.

#include "problem.hpp"

#include <cyclebv/amplitude.hpp>
#include <cyclebv/delta.hpp>
#include <cyclebv/ribbon_json.hpp>
#include <cyclebv/wick.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace cyclebv;
using cyclebv::cli::ModelBlock;
using cyclebv::cli::ProblemError;
using cyclebv::cli::ProblemFile;
using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 1;
  std::string format = "text";

  bool json_mode() const { return format == "json"; }
};

json config_json(const ProblemFile& p, const GlobalOptions& g) {
  json cfg;
  cfg["file"] = p.path;
  cfg["schema"] = p.schema;
  cfg["seed"] = g.seed;
  cfg["jobs"] = g.jobs;
  cfg["format"] = g.format;
  cfg["run"] = {{"order", p.run.order},
                {"degree", p.run.degree},
                {"max_excess", p.run.max_excess},
                {"theorem", p.run.theorem}};
  if (p.model) {
    json m;
    m["kind"] = p.model->kind == ModelKind::GeneralLinear ? "gl" : "q";
    m["size"] = p.model->size;
    if (p.model->lambda.empty()) {
      m["lambda"] = "symbolic";
    } else {
      json vals = json::array();
      for (const auto& v : p.model->lambda) vals.push_back(v.to_string());
      m["lambda"] = vals;
    }
    cfg["model"] = m;
  }
  return cfg;
}

void print_config_text(const ProblemFile& p, const GlobalOptions& g,
                       const std::string& command) {
  std::cout << "command: " << command << "\n";
  std::cout << "file: " << p.path << " (schema " << p.schema << ")\n";
  std::cout << "seed: " << g.seed << "  jobs: " << g.jobs << "\n";
}

// ---------------------------------------------------------------------------
// Randomized element generation for the check-bv suites (self-contained so
// the tool does not depend on test sources).

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(rng), den(rng));
}

BVElementQ random_element(const SuperBasis& basis, FormParity flavor,
                          std::mt19937_64& rng, int terms, int max_cycles,
                          int max_len, int homogeneous = -1) {
  BVElementQ e(flavor);
  std::uniform_int_distribution<int> cyc_d(1, max_cycles);
  std::uniform_int_distribution<int> len_d(1, max_len);
  std::uniform_int_distribution<int> letter_d(0, basis.dim() - 1);
  int guard = 0;
  while (terms > 0 && guard++ < 400) {
    std::vector<CyclicWord> cycles(cyc_d(rng));
    bool dead = false;
    for (auto& c : cycles) {
      std::vector<int> letters(len_d(rng));
      for (auto& l : letters) l = letter_d(rng);
      NormalizedWord nw = normalize_cyclic(letters, basis, flavor);
      if (nw.zero) {
        dead = true;
        break;
      }
      c = nw.word;
    }
    if (dead) continue;
    NormalizedMonomial nm = normalize_monomial(cycles, basis, flavor);
    if (nm.zero) continue;
    if (homogeneous >= 0 &&
        monomial_parity(nm.mono, basis, flavor) != homogeneous)
      continue;
    Rational c = random_rational(rng);
    if (c == 0) c = Rational(1);
    e.add_term(nm.mono, nm.sign * c);
    --terms;
  }
  return e;
}

// ---------------------------------------------------------------------------
// check-bv: pairing validity, the square of the operator, and the seven-term
// second-order identity, on randomized elements over the declared space.

int run_check_bv(const ProblemFile& p, const GlobalOptions& g) {
  json report;
  report["command"] = "check-bv";
  report["config"] = config_json(p, g);
  if (!g.json_mode()) print_config_text(p, g, "check-bv");

  const std::string violation = pairing_violation(p.basis, p.form);
  if (!violation.empty()) {
    report["pairing"] = {{"valid", false}, {"violation", violation}};
    if (g.json_mode())
      std::cout << report.dump(2) << "\n";
    else
      std::cout << "pairing: INVALID — " << violation << "\n"
                << "status: FAIL\n";
    return 1;
  }
  report["pairing"] = {{"valid", true}};
  if (!g.json_mode()) std::cout << "pairing: valid\n";

  const FormParity flavor = p.form.parity;
  std::mt19937_64 rng(g.seed);
  auto D = [&](const BVElementQ& x) {
    return second_order_operator(x, p.basis, p.form);
  };

  const int square_trials = 200;
  int square_failures = 0;
  for (int t = 0; t < square_trials; ++t) {
    BVElementQ e = random_element(p.basis, flavor, rng, 3, 3, 5);
    if (!D(D(e)).is_zero()) ++square_failures;
  }

  const int identity_trials = 100;
  int identity_failures = 0;
  int identity_checked = 0;
  std::uniform_int_distribution<int> par_d(0, 1);
  for (int t = 0; t < identity_trials; ++t) {
    const int pa = par_d(rng), pb = par_d(rng), pc = par_d(rng);
    BVElementQ a = random_element(p.basis, flavor, rng, 1, 2, 3, pa);
    BVElementQ b = random_element(p.basis, flavor, rng, 1, 2, 3, pb);
    BVElementQ c = random_element(p.basis, flavor, rng, 1, 2, 3, pc);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    ++identity_checked;
    BVElementQ ab = a.multiply(b, p.basis);
    BVElementQ bc = b.multiply(c, p.basis);
    BVElementQ abc = ab.multiply(c, p.basis);
    BVElementQ rhs = D(ab).multiply(c, p.basis);
    BVElementQ t2 = D(a.multiply(c, p.basis)).multiply(b, p.basis);
    if ((pb & pc) == 1) t2 = -t2;
    rhs = rhs + t2;
    BVElementQ t3 = a.multiply(D(bc), p.basis);
    if (pa == 1) t3 = -t3;
    rhs = rhs + t3;
    rhs = rhs - D(a).multiply(bc, p.basis);
    BVElementQ t5 = a.multiply(D(b), p.basis).multiply(c, p.basis);
    if (pa == 0)
      rhs = rhs - t5;
    else
      rhs = rhs + t5;
    BVElementQ t6 = ab.multiply(D(c), p.basis);
    if (((pa + pb) % 2) == 0)
      rhs = rhs - t6;
    else
      rhs = rhs + t6;
    if (!(D(abc) == rhs)) ++identity_failures;
  }

  report["square"] = {{"trials", square_trials},
                      {"failures", square_failures}};
  report["second_order_identity"] = {{"trials", identity_checked},
                                     {"failures", identity_failures}};
  const bool pass = square_failures == 0 && identity_failures == 0;
  report["status"] = pass ? "pass" : "fail";
  if (g.json_mode()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "square of the operator: " << square_trials << " trials, "
              << square_failures << " failures\n";
    std::cout << "second-order identity: " << identity_checked << " trials, "
              << identity_failures << " failures\n";
    std::cout << "status: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// qme: master-equation residual per h-order.

int run_qme(const ProblemFile& p, const GlobalOptions& g) {
  if (!p.action) throw ProblemError(p.path + ": qme needs an action block");
  json report;
  report["command"] = "qme";
  report["config"] = config_json(p, g);
  if (!g.json_mode()) print_config_text(p, g, "qme");

  const BVElement residual =
      qme_residual(*p.action, p.basis, p.form, p.run.order);

  std::map<int, std::vector<std::string>> by_order;
  for (const auto& [mono, series] : residual.terms())
    for (const auto& [key, val] : series.terms())
      by_order[key.hbar].push_back(key.to_string() + " * " + val.to_string() +
                                   " * " + monomial_to_string(mono, p.basis));

  json orders = json::array();
  if (!g.json_mode())
    std::cout << "residual through h-order " << p.run.order << ":\n";
  for (int k = -p.run.order; k <= p.run.order; ++k) {
    auto it = by_order.find(k);
    const bool zero = it == by_order.end();
    json entry;
    entry["hbar"] = k;
    entry["zero"] = zero;
    if (!zero) entry["terms"] = it->second;
    orders.push_back(entry);
    if (!g.json_mode()) {
      std::cout << "  h^" << k << ": " << (zero ? "0" : "NONZERO") << "\n";
      if (!zero)
        for (const auto& line : it->second) std::cout << "    " << line << "\n";
    }
  }
  report["orders"] = orders;
  const bool pass = residual.is_zero();
  report["status"] = pass ? "pass" : "fail";
  if (g.json_mode())
    std::cout << report.dump(2) << "\n";
  else
    std::cout << "status: " << (pass ? "PASS (residual = 0)" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// graphs: enumerate the inventory over the action's vertex menu.

std::vector<VertexType> menu_from_action(const ProblemFile& p) {
  if (!p.action)
    throw ProblemError(p.path + ": the vertex menu is derived from the action");
  std::vector<VertexType> menu;
  for (const auto& [key, comp] : p.action->components)
    menu.push_back(VertexType{key.g, key.i, key.n});
  return menu;
}

int run_graphs(const ProblemFile& p, const GlobalOptions& g, int max_excess) {
  json report;
  report["command"] = "graphs";
  report["config"] = config_json(p, g);
  report["max_excess"] = max_excess;
  if (!g.json_mode()) print_config_text(p, g, "graphs");

  const GraphInventory inventory =
      enumerate_graphs(menu_from_action(p), max_excess);
  report["inventory"] = inventory_to_json(inventory);
  if (g.json_mode()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "classes with -chi <= " << max_excess << ": "
              << inventory.entries.size() << "\n";
    for (const auto& e : inventory.entries)
      std::cout << "  " << e.encoding << "  (gamma,nu,chi)=(" << e.surface.gamma
                << "," << e.surface.nu << "," << e.surface.chi << ")  |Aut|="
                << e.aut << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// partition: the per-graph table and both partition-function expansions.

MatrixAlgebraModel require_model(const ProblemFile& p) {
  if (!p.model)
    throw ProblemError(p.path +
                       ": a model block (or --model/--size/--lambda) is "
                       "required");
  return cyclebv::cli::build_block_model(*p.model);
}

json series_json(const CouplingSeries& s) {
  json rows = json::array();
  for (const auto& [key, val] : s.terms())
    rows.push_back({{"hbar", key.hbar},
                    {"couplings", key.couplings},
                    {"value", val.to_string()}});
  return rows;
}

int run_partition(const ProblemFile& p, const GlobalOptions& g,
                  int max_excess) {
  if (!p.action)
    throw ProblemError(p.path + ": partition needs an action block");
  const MatrixAlgebraModel model = require_model(p);
  json report;
  report["command"] = "partition";
  report["config"] = config_json(p, g);
  report["max_excess"] = max_excess;
  if (!g.json_mode()) print_config_text(p, g, "partition");

  const std::vector<GraphTerm> terms =
      graph_terms(*p.action, p.basis, p.form, model, max_excess);
  json table = json::array();
  CouplingSeries total;
  bool first = true;
  for (const auto& t : terms) {
    table.push_back({{"encoding", t.encoding},
                     {"gamma", t.surface.gamma},
                     {"nu", t.surface.nu},
                     {"chi", t.surface.chi},
                     {"aut", t.aut},
                     {"action_side", t.action_side.to_string()},
                     {"trace_side", t.trace_side.to_string()},
                     {"weight", t.weight.to_string()}});
    total = first ? t.weight : total + t.weight;
    first = false;
  }
  report["graphs"] = table;
  report["graph_sum"] = series_json(graph_sum(*p.action, p.basis, p.form,
                                              model, max_excess));

  // The integral side over the same window: h up to max_excess, coupling
  // degree from the run block or matched to the graph bound.
  int max_coupling = 1;
  for (const auto& [key, comp] : p.action->components)
    for (const auto& [mono, coeff] : comp.terms())
      for (const auto& [skey, val] : coeff.terms())
        max_coupling = std::max(max_coupling, skey.coupling_degree());
  const int degree =
      p.run.degree >= 0 ? p.run.degree : 2 * max_excess * max_coupling;
  const CouplingSeries lp =
      log_partition(*p.action, p.basis, p.form, model, max_excess, degree);
  report["log_partition"] = series_json(lp);

  if (g.json_mode()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "graphs with -chi <= " << max_excess << ": " << terms.size()
              << "\n";
    for (const auto& t : terms)
      std::cout << "  " << t.encoding << "  (gamma,nu,chi)=(" << t.surface.gamma
                << "," << t.surface.nu << "," << t.surface.chi << ")  |Aut|="
                << t.aut << "\n    c_S = " << t.action_side.to_string()
                << "\n    c_Lambda = " << t.trace_side.to_string()
                << "\n    weight = " << t.weight.to_string() << "\n";
    std::cout << "graph sum:\n";
    for (const auto& [key, val] : graph_sum(*p.action, p.basis, p.form, model,
                                            max_excess)
                                      .terms())
      std::cout << "  " << key.to_string() << "  " << val.to_string() << "\n";
    std::cout << "log partition (h-order " << max_excess << ", degree "
              << degree << "):\n";
    for (const auto& [key, val] : lp.terms())
      std::cout << "  " << key.to_string() << "  " << val.to_string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify: both sides compared after one-constant calibration.

int run_verify(const ProblemFile& p, const GlobalOptions& g, int theorem,
               int max_excess) {
  if (!p.action) throw ProblemError(p.path + ": verify needs an action block");
  if (!p.model) throw ProblemError(p.path + ": verify needs a model block");
  if (theorem == 0) theorem = p.run.theorem;
  if (theorem == 0)
    theorem = p.model->kind == ModelKind::GeneralLinear ? 1 : 2;

  // Consistency before any computation.
  const bool wants_gl = theorem == 1;
  if (wants_gl != (p.model->kind == ModelKind::GeneralLinear))
    throw ProblemError(p.path + ": theorem " + std::to_string(theorem) +
                       " needs a " + (wants_gl ? "gl" : "q") + " model");
  if (wants_gl != (p.form.parity == FormParity::Odd))
    throw ProblemError(p.path + ": theorem " + std::to_string(theorem) +
                       " needs an " + (wants_gl ? "odd" : "even") +
                       " pairing form");

  const MatrixAlgebraModel model = require_model(p);
  json report;
  report["command"] = "verify";
  report["config"] = config_json(p, g);
  report["theorem"] = theorem;
  report["max_excess"] = max_excess;
  const std::string label =
      theorem == 3 ? "supersymmetric Kontsevich"
                   : (theorem == 1 ? "general linear model" : "queer model");
  report["label"] = label;
  if (!g.json_mode()) {
    print_config_text(p, g, "verify");
    std::cout << "theorem " << theorem << " (" << label << "), -chi <= "
              << max_excess << "\n";
  }

  const CompareReport rep =
      compare(*p.action, p.basis, p.form, model, max_excess);
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"hbar", row.key.hbar},
                    {"couplings", row.key.couplings},
                    {"lhs", row.lhs.to_string()},
                    {"rhs", row.rhs.to_string()},
                    {"const", rep.constant.to_string()},
                    {"status", row.matches ? "ok" : "mismatch"}});
  report["rows"] = rows;
  report["constant"] = rep.constant.to_string();
  report["trivially_equal"] = rep.trivially_equal;
  const bool pass = rep.all_match();
  report["status"] = pass ? "pass" : "fail";

  if (g.json_mode()) {
    std::cout << report.dump(2) << "\n";
  } else {
    if (rep.trivially_equal) {
      std::cout << "both sides vanish identically through this window\n";
    } else {
      std::cout << "constant = " << rep.constant.to_string() << "\n";
      for (const auto& row : rep.rows) {
        std::string degs;
        for (const auto& [sym, exp] : row.key.couplings) {
          if (!degs.empty()) degs += "*";
          degs += sym;
          if (exp != 1) degs += "^" + std::to_string(exp);
        }
        std::cout << "  hbar^" << row.key.hbar << "  " << (degs.empty() ? "1" : degs)
                  << "  lhs = " << row.lhs.to_string()
                  << "  rhs = " << row.rhs.to_string() << "  "
                  << (row.matches ? "ok" : "MISMATCH") << "\n";
      }
    }
    std::cout << "status: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact calculus of cyclic words: operator checks, master-equation "
      "residuals, graph inventories, and partition-function comparisons"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for randomized suites")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--jobs", g.jobs, "Worker count (reserved; runs are serial)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file;
  int theorem = 0;
  int max_excess = -1;
  ModelBlock flag_model;
  std::string flag_kind, flag_lambda;
  int flag_size = 0;
  int flag_order = -1, flag_degree = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "Problem file (JSON)")->required();
  };
  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--model", flag_kind, "Model kind: gl or q")
        ->check(CLI::IsMember({"gl", "q"}));
    cmd->add_option("--size", flag_size, "Model size (d or N)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", flag_lambda,
                    "\"symbolic\" or comma-separated scalars");
  };

  CLI::App* cmd_check = app.add_subcommand(
      "check-bv", "Operator square and second-order identity suites");
  add_common(cmd_check);
  CLI::App* cmd_qme =
      app.add_subcommand("qme", "Master-equation residual per h-order");
  add_common(cmd_qme);
  CLI::App* cmd_graphs =
      app.add_subcommand("graphs", "Enumerate the graph inventory");
  add_common(cmd_graphs);
  cmd_graphs->add_option("--max-excess", max_excess, "Bound on -chi");
  CLI::App* cmd_partition = app.add_subcommand(
      "partition", "Per-graph weights and both expansions");
  add_common(cmd_partition);
  cmd_partition->add_option("--max-excess", max_excess, "Bound on -chi");
  cmd_partition->add_option("--order", flag_order, "h-order for the integral");
  cmd_partition->add_option("--degree", flag_degree, "Coupling-degree cutoff");
  add_model_flags(cmd_partition);
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Compare the expansions after one-constant calibration");
  add_common(cmd_verify);
  cmd_verify->add_option("--theorem", theorem, "1, 2, or 3")
      ->check(CLI::Range(1, 3));
  cmd_verify->add_option("--max-excess", max_excess, "Bound on -chi");
  add_model_flags(cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!g.seed_given) g.seed = std::random_device{}();

  try {
    ProblemFile p = cyclebv::cli::load_problem(file);
    // Flag overrides for the model block and run parameters.
    if (!flag_kind.empty() || flag_size > 0 || !flag_lambda.empty()) {
      ModelBlock block = p.model ? *p.model : ModelBlock{};
      if (!flag_kind.empty())
        block.kind =
            flag_kind == "gl" ? ModelKind::GeneralLinear : ModelKind::Queer;
      if (flag_size > 0) block.size = flag_size;
      if (!flag_lambda.empty()) {
        block.lambda.clear();
        if (flag_lambda != "symbolic") {
          std::size_t start = 0;
          while (start <= flag_lambda.size()) {
            std::size_t comma = flag_lambda.find(',', start);
            const std::string tok =
                flag_lambda.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
            block.lambda.emplace_back(rational_from_string(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
          }
        }
      }
      p.model = block;
    }
    if (flag_order >= 0) p.run.order = flag_order;
    if (flag_degree >= 0) p.run.degree = flag_degree;
    const int excess = max_excess >= 0 ? max_excess : p.run.max_excess;

    if (cmd_check->parsed()) return run_check_bv(p, g);
    if (cmd_qme->parsed()) return run_qme(p, g);
    if (cmd_graphs->parsed()) return run_graphs(p, g, excess);
    if (cmd_partition->parsed()) return run_partition(p, g, excess);
    if (cmd_verify->parsed()) return run_verify(p, g, theorem, excess);
    return 2;
  } catch (const ProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
