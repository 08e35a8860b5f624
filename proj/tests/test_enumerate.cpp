#include "doctest.h"
#include "lalg/canonical.hpp"
#include "lalg/enumerate.hpp"

using namespace lalg;

namespace {

std::size_t count(std::size_t n, ClassFilter f, bool simple = false) {
  EnumerationTask task;
  task.size = n;
  task.class_filter = f;
  task.require_simple = simple;
  return enumerate_or_throw(task).size();
}

}  // namespace

TEST_CASE("matches the naive oracle up to size 4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    EnumerationTask task;
    task.size = n;
    CHECK(enumerate_or_throw(task) == enumerate_naive(n));
  }
}

TEST_CASE("class counts") {
  const std::vector<std::size_t> l{1, 1, 5, 44, 632};
  const std::vector<std::size_t> kl{1, 1, 3, 13, 81};
  const std::vector<std::size_t> ckl{1, 1, 3, 10, 39};
  const std::vector<std::size_t> hilbert{1, 1, 2, 6, 21};
  const std::vector<std::size_t> linear{1, 1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(count(n, ClassFilter::l) == l[n - 1]);
    CHECK(count(n, ClassFilter::kl) == kl[n - 1]);
    CHECK(count(n, ClassFilter::ckl) == ckl[n - 1]);
    CHECK(count(n, ClassFilter::hilbert) == hilbert[n - 1]);
  }
  for (std::size_t n = 1; n <= 6; ++n) CHECK(count(n, ClassFilter::linear) == linear[n - 1]);
  for (std::size_t n = 2; n <= 6; ++n) CHECK(count(n, ClassFilter::ckl, true) == 1);
}

TEST_CASE("results are canonical, validated and sorted") {
  EnumerationTask task;
  task.size = 5;
  task.class_filter = ClassFilter::kl;
  const auto tables = enumerate_or_throw(task);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    CHECK(validate(tables[i]).is_kl);
    CHECK(canonical_form(tables[i]) == tables[i]);
    if (i) CHECK(tables[i - 1].entries() < tables[i].entries());
  }
}

TEST_CASE("worker count does not change the result") {
  EnumerationTask task;
  task.size = 5;
  SearchBudget one, three;
  three.workers = 3;
  CHECK(enumerate(task, one).tables == enumerate(task, three).tables);
}

TEST_CASE("budgets") {
  EnumerationTask task;
  task.size = 5;
  SearchBudget tiny;
  tiny.nodes = 50;
  const auto r = enumerate(task, tiny);
  CHECK(r.partial);
  CHECK(r.nodes <= 50);
  CHECK_THROWS_AS(enumerate_or_throw(task, tiny), ResourceBound);
  task.limit = 3;
  const auto limited = enumerate(task);
  CHECK(limited.truncated);
  CHECK(limited.tables.size() == 3);
}

TEST_CASE("argument errors") {
  EnumerationTask task;
  task.size = 0;
  CHECK_THROWS_AS(enumerate(task), MalformedTable);
  task.size = 11;
  CHECK_THROWS_AS(enumerate(task), TooLarge);
  CHECK_THROWS_AS(enumerate_naive(5), TooLarge);
  CHECK_THROWS_AS(class_filter_from_string("CKL"), MalformedTable);
  CHECK(class_filter_from_string("hilbert") == ClassFilter::hilbert);
}
