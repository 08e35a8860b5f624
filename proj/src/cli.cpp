#include "lalg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lalg/canonical.hpp"
#include "lalg/enumerate.hpp"
#include "lalg/families.hpp"
#include "lalg/ideals.hpp"
#include "lalg/io.hpp"
#include "lalg/products.hpp"
#include "lalg/verify.hpp"
#include "lalg/words.hpp"

namespace lalg {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::size_t max_n = 0;
  std::size_t size = 0;
  std::size_t depth = default_context_depth;
  std::size_t word_budget = default_word_budget;
  std::uint64_t budget_nodes = 1'000'000'000;
  double budget_seconds = 600.0;
  std::string format = "text";
  unsigned workers = 1;
  std::string cls = "l";
  bool simple = false;
};

SearchBudget search_budget(const RunConfig& c) { return {c.budget_nodes, c.budget_seconds, c.workers}; }

bool as_json(const RunConfig& c) { return c.format == "json"; }

std::string flag_list(const ClassificationReport& r) {
  std::vector<std::string> on;
  if (r.is_l) on.push_back("L");
  if (r.is_kl) on.push_back("KL");
  if (r.is_ckl) on.push_back("CKL");
  if (r.is_hilbert) on.push_back("Hilbert");
  if (r.is_linear) on.push_back("linear");
  if (r.is_bounded) on.push_back("bounded");
  if (r.is_simple) on.push_back("simple");
  std::string s;
  for (const auto& f : on) s += (s.empty() ? "" : " ") + f;
  return s.empty() ? "(none)" : s;
}

json report_json(const ClassificationReport& r) {
  json w = json::object();
  for (const auto& [flag, witness] : r.witnesses) w[flag] = to_json(witness);
  return {{"is_l", r.is_l},           {"is_kl", r.is_kl},         {"is_ckl", r.is_ckl},
          {"is_hilbert", r.is_hilbert}, {"is_linear", r.is_linear}, {"is_bounded", r.is_bounded},
          {"is_simple", r.is_simple},   {"witnesses", w}};
}

std::string set_text(ElementSet s) {
  std::string out = "{";
  for (auto e : s) out += (out.size() > 1 ? " " : "") + std::to_string(e);
  return out + "}";
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  for (const auto& path : c.inputs) {
    const auto t = read_table_file(path);
    const auto r = validate(t);
    if (as_json(c)) {
      auto j = report_json(r);
      j["n"] = t.size();
      if (r.is_l) {
        const auto o = order_structure(t);
        j["hasse_edges"] = o.hasse_edges;
        j["minimal_elements"] = o.minimal_elements;
        j["invariant_elements"] = o.invariant_elements;
        j["prime_elements"] = o.prime_elements;
      }
      out << j.dump() << "\n";
    } else {
      out << path << ": n=" << t.size() << " flags: " << flag_list(r) << "\n";
      for (const auto& [flag, w] : r.witnesses) {
        out << "  not " << flag << ": " << to_string(w.identity) << " at";
        for (auto e : w.tuple) out << " " << e;
        out << "\n";
      }
    }
  }
  return exit_ok;
}

int cmd_ideals(const RunConfig& c, std::ostream& out) {
  for (const auto& path : c.inputs) {
    const auto lattice = all_ideals(read_table_file(path));
    if (as_json(c)) {
      out << ideal_report(lattice).dump() << "\n";
      continue;
    }
    out << path << ": " << lattice.size() << " ideals\n";
    for (std::size_t i = 0; i < lattice.size(); ++i) out << "  " << i << " " << set_text(lattice[i]) << "\n";
    out << "product:\n";
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      out << " ";
      for (std::size_t j = 0; j < lattice.size(); ++j) out << " " << lattice.product(i, j);
      out << "\n";
    }
  }
  return exit_ok;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  for (const auto& path : c.inputs) {
    const auto lattice = all_ideals(read_table_file(path));
    const auto spec = spectrum(lattice);
    if (as_json(c)) {
      json primes = json::array(), basis = json::array();
      for (const auto& p : spec.primes) primes.push_back(to_json(p));
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        basis.push_back({{"ideal", to_json(lattice[i])}, {"open", spec.basis[i]}});
      }
      out << json{{"primes", primes}, {"basis", basis}}.dump() << "\n";
      continue;
    }
    out << path << ": " << spec.primes.size() << " prime ideals\n";
    for (const auto& p : spec.primes) out << "  " << set_text(p) << "\n";
  }
  return exit_ok;
}

int cmd_semidirect(const RunConfig& c, std::ostream& out, bool symmetric) {
  for (const auto& path : c.inputs) {
    const auto action = read_action_file(path);
    if (symmetric) {
      const auto p = symmetric_semidirect(action);
      const auto b = symmetric_ideal_bijection(action);
      if (!b.holds) throw Falsified("symmetric ideal bijection fails: " + b.witness.dump());
      if (as_json(c)) {
        out << json{{"carrier", p.carrier},
                    {"table", table_to_json(p.algebra)},
                    {"class", to_string(action.cls)},
                    {"symmetric_ideals", b.symmetric_ideals},
                    {"semidirect_ideals", b.semidirect_ideals}}
                   .dump()
            << "\n";
      } else {
        out << "# symmetric product, operation class " << to_string(action.cls) << ", "
            << b.symmetric_ideals << " ideals\n"
            << format_table(p.algebra);
      }
      continue;
    }
    const ProductAnalysis an(action);
    const auto counts = ideal_count_formulas(an);
    const auto sd = spec_decomposition(an);
    const auto law = product_law_violations(an);
    if (!counts.holds()) throw Falsified("ideal count formulas fail");
    if (!sd.holds()) throw Falsified("spectrum decomposition fails: " + sd.witness.dump());
    if (!law.empty()) throw Falsified("product law fails: " + law.dump());
    if (as_json(c)) {
      json ideals = json::array();
      for (const auto& k : an.ideals_product.ideals()) {
        const auto s = project_ideal(an.product, k);
        ideals.push_back({{"ideal", to_json(k)}, {"kx", to_json(s.kx)}, {"ky", to_json(s.ky)}});
      }
      out << json{{"carrier", an.product.carrier},
                  {"table", table_to_json(an.product.algebra)},
                  {"class", to_string(action.cls)},
                  {"ideals", ideals},
                  {"ideal_counts",
                   {{"product", counts.product}, {"x", counts.x}, {"y", counts.y}, {"sum_formula", counts.sum_formula}}},
                  {"spectrum",
                   {{"product", sd.spec_product},
                    {"rho_spec_x", sd.rho_spec_x},
                    {"spec_y", sd.spec_y},
                    {"kernel_not_ideal", sd.kernel_not_ideal}}}}
                 .dump()
          << "\n";
    } else {
      out << "# semidirect product, operation class " << to_string(action.cls) << ", " << counts.product
          << " ideals, " << sd.spec_product << " primes\n"
          << format_table(an.product.algebra);
    }
  }
  return exit_ok;
}

int cmd_closure(const RunConfig& c, std::ostream& out) {
  const auto max_len = c.max_n ? c.max_n : 2;
  for (const auto& path : c.inputs) {
    const auto r = bounded_closure(read_table_file(path), max_len, c.depth, c.word_budget);
    if (as_json(c)) {
      out << r.to_json().dump() << "\n";
      continue;
    }
    out << path << ": self-similar " << (r.self_similar ? "yes" : "no") << ", " << r.classes.size()
        << " classes of words up to length " << max_len << " at depth " << c.depth;
    if (r.budget_exceeded) out << " (" << r.budget_exceeded << " over budget)";
    out << "\n";
    for (const auto& cls : r.classes) {
      out << " ";
      for (const auto& w : cls) {
        out << " [";
        for (std::size_t k = 0; k < w.size(); ++k) out << (k ? " " : "") << w[k];
        out << "]";
      }
      out << "\n";
    }
  }
  return exit_ok;
}

int cmd_enumerate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto filter = class_filter_from_string(c.cls);
  const std::size_t lo = c.size ? c.size : 1;
  const std::size_t hi = c.size ? c.size : (c.max_n ? c.max_n : 4);
  json sizes = json::array();
  bool partial = false;
  bool first = true;
  for (std::size_t n = lo; n <= hi && !partial; ++n) {
    EnumerationTask task;
    task.size = n;
    task.class_filter = filter;
    task.require_simple = c.simple;
    const auto r = enumerate(task, search_budget(c));
    partial = r.partial;
    err << "size " << n << ": " << r.tables.size() << " tables, " << r.nodes << " nodes, " << std::fixed
        << std::setprecision(3) << r.seconds << " s" << (r.partial ? " (partial)" : "") << "\n";
    if (as_json(c)) {
      json tables = json::array();
      for (const auto& t : r.tables) tables.push_back(table_to_json(t));
      sizes.push_back({{"n", n}, {"count", r.tables.size()}, {"partial", r.partial}, {"tables", tables}});
    } else {
      for (const auto& t : r.tables) {
        if (!first) out << "\n";
        out << format_table(t);
        first = false;
      }
    }
  }
  if (as_json(c)) out << json{{"class", c.cls}, {"simple", c.simple}, {"sizes", sizes}}.dump() << "\n";
  return partial ? exit_resource_bound : exit_ok;
}

int cmd_conjecture(const RunConfig& c, std::ostream& out) {
  const auto r = conjecture_search(c.max_n ? c.max_n : 5, search_budget(c));
  if (as_json(c)) {
    out << r.to_json().dump() << "\n";
  } else {
    for (std::size_t k = 0; k < r.simple_ckl.size(); ++k) {
      out << "n=" << k + 2 << ": " << r.simple_ckl[k] << " simple CKL, " << r.linear[k] << " linear\n";
    }
    out << r.counterexamples.size() << " nonlinear simple CKL algebras found";
    out << (r.partial ? " (search incomplete past n=" + std::to_string(r.complete_up_to) + ")" : "") << "\n";
    for (const auto& t : r.counterexamples) out << "\n" << format_table(t);
  }
  return r.partial ? exit_resource_bound : exit_ok;
}

int cmd_verify_all(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerifyConfig vc;
  vc.max_n = c.max_n;
  vc.depth = c.depth;
  vc.word_budget = c.word_budget;
  vc.budget = search_budget(c);
  if (const char* seed = std::getenv("LALG_SEED")) vc.seed = std::strtoull(seed, nullptr, 10);
  std::vector<CheckResult> results;
  const auto report = verify_all(vc, &results);
  for (const auto& r : results) {
    err << r.name << ": " << (r.holds ? "holds" : "FALSIFIED") << ", " << r.checked << " checks, " << std::fixed
        << std::setprecision(2) << r.seconds << " s\n";
  }
  if (as_json(c)) {
    out << report.dump() << "\n";
  } else {
    for (const auto& r : results) out << r.name << " " << (r.holds ? "holds" : "FALSIFIED") << " " << r.checked << "\n";
    out << "conjecture counterexamples " << report["conjecture"]["counterexamples"].size() << "\n";
  }
  return report["holds"].get<bool>() ? exit_ok : exit_falsified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite L-algebra toolkit", "lalg"};
  app.require_subcommand(1);
  RunConfig c;
  auto positive = CLI::PositiveNumber;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--workers", c.workers, "Worker threads")->check(positive);
  };
  auto add_budgets = [&](CLI::App* sub) {
    sub->add_option("--budget-nodes", c.budget_nodes, "Search node budget per size")->check(positive);
    sub->add_option("--budget-seconds", c.budget_seconds, "Search time budget per size")->check(positive);
  };
  auto with_inputs = [&](const char* name, const char* help) {
    auto sub = app.add_subcommand(name, help);
    sub->add_option("inputs", c.inputs, "Table or action files")->required()->check(CLI::ExistingFile);
    add_common(sub);
    return sub;
  };
  with_inputs("check", "Classify tables and report axiom witnesses");
  with_inputs("ideals", "Ideal lattice and ideal product");
  with_inputs("spectrum", "Prime ideals and the open-set basis");
  with_inputs("semidirect", "Semidirect product of an action file");
  with_inputs("symmetric", "Symmetric semidirect product of an action file");
  auto closure = with_inputs("closure", "Bounded word classes of the self-similar closure");
  closure->add_option("--max-n", c.max_n, "Longest word")->check(positive);
  closure->add_option("--depth", c.depth, "Context depth")->check(positive);
  closure->add_option("--word-budget", c.word_budget, "Longest intermediate word")->check(positive);

  auto en = app.add_subcommand("enumerate", "Isomorph-free enumeration");
  en->add_option("--max-n", c.max_n, "Largest size")->check(positive);
  en->add_option("--size", c.size, "Single size")->check(positive);
  en->add_option("--class", c.cls, "Class filter")->check(CLI::IsMember({"l", "kl", "ckl", "hilbert", "linear"}));
  en->add_flag("--simple", c.simple, "Only simple algebras");
  add_common(en);
  add_budgets(en);

  auto conj = app.add_subcommand("conjecture", "Search simple CKL algebras for nonlinear ones");
  conj->add_option("--max-n", c.max_n, "Largest size")->check(CLI::Range(2, 10));
  add_common(conj);
  add_budgets(conj);

  auto all = app.add_subcommand("verify-all", "Run every theorem check");
  all->add_option("--max-n", c.max_n, "Cap on enumerated sizes")->check(positive);
  all->add_option("--depth", c.depth, "Context depth")->check(positive);
  all->add_option("--word-budget", c.word_budget, "Longest intermediate word")->check(positive);
  add_common(all);
  add_budgets(all);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "lalg: " << e.what() << "\n";
    return exit_malformed;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    if (c.command == "check") return cmd_check(c, out);
    if (c.command == "ideals") return cmd_ideals(c, out);
    if (c.command == "spectrum") return cmd_spectrum(c, out);
    if (c.command == "semidirect") return cmd_semidirect(c, out, false);
    if (c.command == "symmetric") return cmd_semidirect(c, out, true);
    if (c.command == "closure") return cmd_closure(c, out);
    if (c.command == "enumerate") return cmd_enumerate(c, out, err);
    if (c.command == "conjecture") return cmd_conjecture(c, out);
    return cmd_verify_all(c, out, err);
  } catch (const Falsified& e) {
    err << "lalg: falsified: " << e.what() << "\n";
    return exit_falsified;
  } catch (const CongruenceUndefined& e) {
    err << "lalg: congruence undefined: " << e.what() << "\n";
    return exit_falsified;
  } catch (const ResourceBound& e) {
    err << "lalg: resource bound: " << e.what() << "\n";
    return exit_resource_bound;
  } catch (const Error& e) {
    err << "lalg: " << e.what() << "\n";
    return exit_malformed;
  } catch (const nlohmann::json::exception& e) {
    err << "lalg: bad JSON: " << e.what() << "\n";
    return exit_malformed;
  }
}

}  // namespace lalg
