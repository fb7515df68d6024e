#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "lpdec/alist.hpp"
#include "lpdec/rng.hpp"
#include "lpdec/tanner_code.hpp"

using namespace lpdec;

namespace {

// H = [[1,1,0],[0,1,1]]
const char* kTinyAlist =
    "3 2\n"
    "2 2\n"
    "1 2 1\n"
    "2 2\n"
    "1 0\n"
    "1 2\n"
    "2 0\n"
    "1 2\n"
    "2 3\n";

TannerCode random_code(SplitRng& rng, int n, int m) {
  std::vector<std::vector<int>> checks(m);
  for (int i = 0; i < n; ++i) {
    int deg = 1 + static_cast<int>(rng.below(3));
    for (int c : rng.subset(m, deg)) checks[c].push_back(i);
  }
  for (int j = 0; j < m; ++j)
    if (checks[j].empty()) checks[j].push_back(static_cast<int>(rng.below(n)));
  return TannerCode::from_check_neighbors(n, std::move(checks));
}

}  // namespace

TEST_CASE("alist of a 2x3 parity check matrix") {
  TannerCode code = parse_alist(kTinyAlist);
  CHECK(code.num_vars() == 3);
  CHECK(code.num_checks() == 2);
  CHECK(code.check_neighbors(0) == std::vector<int>{0, 1});
  CHECK(code.check_neighbors(1) == std::vector<int>{1, 2});
  CHECK(code.var_neighbors(1) == std::vector<int>{0, 1});
  CHECK(gf2_rank(code) == 2);
}

TEST_CASE("canonical write then parse is the identity") {
  TannerCode code = parse_alist(kTinyAlist);
  std::string text = write_alist(code);
  CHECK(parse_alist(text) == code);
  CHECK(write_alist(parse_alist(text)) == text);
}

TEST_CASE("round trip on randomized codes") {
  SplitRng rng(1234);
  for (int t = 0; t < 50; ++t) {
    TannerCode code = random_code(rng, 8 + static_cast<int>(rng.below(20)),
                                  3 + static_cast<int>(rng.below(8)));
    CHECK(parse_alist(write_alist(code)) == code);
  }
}

TEST_CASE("padding zeros are accepted and ignored") {
  TannerCode padded = parse_alist(kTinyAlist);
  TannerCode bare = parse_alist(
      "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n");
  CHECK(padded == bare);
}

TEST_CASE("alist errors carry line numbers") {
  CHECK_THROWS_AS(parse_alist(""), AlistError);
  try {
    parse_alist("3\n");
    FAIL("header should be rejected");
  } catch (const AlistError& e) {
    CHECK(e.line() == 1);
  }
  try {  // variable 1 claims degree 2 but lists one check
    parse_alist("3 2\n2 2\n2 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
    FAIL("degree mismatch should be rejected");
  } catch (const AlistError& e) {
    CHECK(e.line() == 5);
  }
  try {  // check index out of range
    parse_alist("3 2\n2 2\n1 2 1\n2 2\n3 0\n1 2\n2 0\n1 2\n2 3\n");
    FAIL("out-of-range index should be rejected");
  } catch (const AlistError& e) {
    CHECK(e.line() == 5);
  }
  try {  // duplicate entry in a row
    parse_alist("3 2\n2 2\n2 2 1\n2 2\n1 1\n1 2\n2 0\n1 2\n2 3\n");
    FAIL("duplicate index should be rejected");
  } catch (const AlistError& e) {
    CHECK(e.line() == 5);
  }
  try {  // the two halves disagree
    parse_alist("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n");
    FAIL("transpose mismatch should be rejected");
  } catch (const AlistError& e) {
    CHECK(e.line() >= 8);
  }
}

TEST_CASE("trailing content is rejected") {
  std::string text(kTinyAlist);
  CHECK_THROWS_AS(parse_alist(text + "7\n"), AlistError);
}

TEST_CASE("qc identity block") {
  QcSpec spec{1, 1, 3, {{0}}};
  TannerCode code = build_qc_code(spec);
  CHECK(code.num_vars() == 3);
  CHECK(code.num_checks() == 3);
  for (int j = 0; j < 3; ++j) CHECK(code.check_neighbors(j) == std::vector<int>{j});
}

TEST_CASE("qc shifted block") {
  QcSpec spec{1, 2, 2, {{0, 1}}};
  TannerCode code = build_qc_code(spec);
  CHECK(code.num_vars() == 4);
  CHECK(code.num_checks() == 2);
  CHECK(code.check_neighbors(0) == std::vector<int>{0, 3});
  CHECK(code.check_neighbors(1) == std::vector<int>{1, 2});
}

TEST_CASE("qc block weights") {
  QcSpec spec{2, 3, 5, {{0, 1, 2}, {3, 4, 0}}};
  TannerCode code = build_qc_code(spec);
  CHECK(code.num_vars() == 15);
  CHECK(code.num_checks() == 10);
  for (int j = 0; j < code.num_checks(); ++j)
    CHECK(static_cast<int>(code.check_neighbors(j).size()) == 3);
  for (int i = 0; i < code.num_vars(); ++i)
    CHECK(static_cast<int>(code.var_neighbors(i).size()) == 2);
}

TEST_CASE("qc spec validation") {
  QcSpec bad{1, 1, 3, {{3}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  QcSpec wrong_shape{2, 1, 3, {{0}}};
  CHECK_THROWS_AS(wrong_shape.validate(), std::invalid_argument);
}

TEST_CASE("rank ignores duplicated rows") {
  TannerCode base = TannerCode::from_check_neighbors(3, {{0, 1}, {1, 2}});
  TannerCode dup = TannerCode::from_check_neighbors(3, {{0, 1}, {1, 2}, {0, 1}});
  CHECK(gf2_rank(base) == 2);
  CHECK(gf2_rank(dup) == 2);
}

TEST_CASE("the [155,64,20] code") {
  TannerCode code = tanner_155();
  CHECK(code.num_vars() == 155);
  CHECK(code.num_checks() == 93);
  for (int i = 0; i < 155; ++i)
    CHECK(static_cast<int>(code.var_neighbors(i).size()) == 3);
  for (int j = 0; j < 93; ++j)
    CHECK(static_cast<int>(code.check_neighbors(j).size()) == 5);
  CHECK(gf2_rank(code) == 91);
  CHECK(code.num_vars() - gf2_rank(code) == 64);

  // duplicate columns would mean weight-2 codewords
  std::set<std::vector<int>> columns;
  for (int i = 0; i < 155; ++i) columns.insert(code.var_neighbors(i));
  CHECK(columns.size() == 155);
}

TEST_CASE("golden alist file matches the construction") {
  TannerCode golden = parse_alist_file(std::string(LPDEC_DATA_DIR) + "/tanner_155_64_20.alist");
  CHECK(golden == tanner_155());
}

TEST_CASE("fingerprints distinguish codes") {
  TannerCode tanner = tanner_155();
  CHECK(code_fingerprint(tanner) == code_fingerprint(parse_alist(write_alist(tanner))));
  CHECK(code_fingerprint(tanner) != code_fingerprint(parse_alist(kTinyAlist)));
  CHECK(code_fingerprint(tanner).size() == 16);
}

TEST_CASE("from_check_neighbors validation") {
  CHECK_THROWS_AS(TannerCode::from_check_neighbors(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(TannerCode::from_check_neighbors(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(TannerCode::from_check_neighbors(3, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(TannerCode::from_check_neighbors(0, {}), std::invalid_argument);
}
