#include <doctest.h>

#include "phc/errors.hpp"
#include "phc/verify.hpp"

using namespace phc;

TEST_CASE("verify targets pass with default settings") {
  for (const char* target : {"ball2", "ball3", "square", "interval"}) {
    CAPTURE(target);
    const VerifyReport r = verify(target);
    CHECK_FALSE(r.rows.empty());
    for (const VerifyRow& row : r.rows) {
      CAPTURE(row.criterion);
      CAPTURE(row.note);
      CHECK(row.pass);
      CHECK(row.target == target);
    }
    CHECK(r.all_passed());
  }
}

TEST_CASE("verify all covers every target") {
  const VerifyReport r = verify("all");
  int counts[4] = {};
  for (const VerifyRow& row : r.rows) {
    if (row.target == "ball2") ++counts[0];
    if (row.target == "ball3") ++counts[1];
    if (row.target == "square") ++counts[2];
    if (row.target == "interval") ++counts[3];
  }
  for (int c : counts) CHECK(c > 0);
}

TEST_CASE("verify rejects unknown targets") {
  CHECK_THROWS_AS(verify("cube"), Error);
  CHECK_FALSE(VerifyReport{}.all_passed());
}

TEST_CASE("loose tolerances show up as failing rows") {
  const VerifyReport r = verify("ball2", QuadSpec{}.with_tolerance(1e-2, 1e-2));
  bool any_failed = false;
  for (const VerifyRow& row : r.rows) any_failed |= !row.pass;
  CHECK(any_failed);
}
