// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lalg/verify.hpp"

using namespace lalg;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (s > limit_seconds) {
    o.ok = false;
    o.note += " over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit";
  }
  failures += !o.ok;
  std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, s, o.note.empty() ? "" : ": ",
              o.note.c_str());
  std::fflush(stdout);
}

Outcome from(const CheckResult& r) {
  Outcome o{r.holds, std::to_string(r.checked) + " checks"};
  if (!r.holds) o.note += ", witness " + r.witness.dump();
  return o;
}

Outcome all_of(std::initializer_list<CheckResult> rs) {
  Outcome o;
  for (const auto& r : rs) {
    const auto part = from(r);
    o.ok = o.ok && part.ok;
    o.note += (o.note.empty() ? "" : "; ") + r.name + " " + part.note;
  }
  return o;
}

}  // namespace

int main() {
  const VerifyConfig config;

  criterion(1, "worked examples", 1.0, [] { return from(verify_worked_examples()); });

  criterion(2, "A_n, LH_n and rho^(k) families", 10.0, [&] { return from(verify_families(config)); });

  criterion(3, "product theorem sweeps at n <= 4", 300.0, [&] {
    const auto r = verify_product_theorems(config);
    auto o = from(r);
    o.note += ", " + r.details["actions"].dump() + " actions, congruence undefined " +
              r.details["congruence_undefined"].dump();
    return o;
  });

  criterion(4, "ideal lattices at n <= 5", 600.0, [&] {
    const auto r = verify_ideal_lattices(config);
    auto o = from(r);
    o.note += ", join pairs " + r.details["join_pairs_verified"].dump() + " verified, " +
              r.details["join_pairs_congruence_undefined"].dump() + " undefined";
    return o;
  });

  criterion(5, "simple linear and simple CKL classification", 900.0, [&] {
    auto o = all_of({verify_simple_linear_classification(config), verify_tail_plus_theorem(config)});
    const auto c = conjecture_search(5, config.budget);
    if (c.partial || !c.counterexamples.empty()) o.ok = false;
    o.note += "; conjecture search to 5: " + std::to_string(c.counterexamples.size()) + " nonlinear simple CKL";
    return o;
  });

  criterion(6, "enumeration and endomorphism oracles", 900.0, [&] { return from(verify_enumeration_oracles(config)); });

  criterion(7, "word engine", 900.0, [&] {
    const auto r = verify_word_engine(config);
    auto o = from(r);
    const auto& d = r.details;
    o.note += ", budget exceeded: action pairs " + d["action_budget_exceeded"].dump() + "/" +
              d["action_word_pairs"].dump() + ", equivalence tests " + d["equivalence_budget_exceeded"].dump() + "/" +
              d["equivalence_tests"].dump();
    return o;
  });

  return failures ? 1 : 0;
}
