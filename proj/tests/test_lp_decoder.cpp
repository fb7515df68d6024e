#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <vector>

#include "lpdec/lclp.hpp"
#include "lpdec/projected.hpp"
#include "lpdec/rational_lu.hpp"
#include "lpdec/rng.hpp"
#include "lpdec/tanner_code.hpp"

using namespace lpdec;

namespace {

TannerCode chain_code() {
  // two overlapping degree-3 checks on 4 bits
  return TannerCode::from_check_neighbors(4, {{0, 1, 2}, {1, 2, 3}});
}

TannerCode single_check_code() { return TannerCode::from_check_neighbors(3, {{0, 1, 2}}); }

// All vertices of {Ax = b, 0 <= x <= 1} by brute force: every basis choice,
// every 0/1 assignment of the nonbasic variables, keep the feasible ones.
// Independent of the simplex path (rational LU only).
std::vector<std::vector<Rational>> enumerate_vertices(const LpProblem& lp) {
  const int rows = static_cast<int>(lp.constraints.size());
  const int cols = lp.num_vars;
  std::vector<std::vector<std::pair<int, Rational>>> col(cols);
  std::vector<Rational> b(rows);
  for (int r = 0; r < rows; ++r) {
    for (const auto& [v, c] : lp.constraints[r].coeffs) col[v].emplace_back(r, c);
    b[r] = lp.constraints[r].rhs;
  }

  std::vector<std::vector<Rational>> vertices;
  std::vector<int> comb(rows);
  for (int k = 0; k < rows; ++k) comb[k] = k;
  while (true) {
    std::vector<std::vector<std::pair<int, Rational>>> basis_cols(rows);
    for (int k = 0; k < rows; ++k) basis_cols[k] = col[comb[k]];
    bool singular = false;
    RationalLu lu;
    try {
      lu = RationalLu::factor(rows, basis_cols);
    } catch (const SolverError&) {
      singular = true;
    }
    if (!singular) {
      std::vector<char> in_basis(cols, 0);
      for (int k = 0; k < rows; ++k) in_basis[comb[k]] = 1;
      std::vector<int> nonbasic;
      for (int c = 0; c < cols; ++c)
        if (!in_basis[c]) nonbasic.push_back(c);
      for (unsigned assign = 0; assign < (1u << nonbasic.size()); ++assign) {
        std::vector<Rational> rhs = b;
        for (size_t q = 0; q < nonbasic.size(); ++q)
          if ((assign >> q) & 1u)
            for (const auto& [r, c] : col[nonbasic[q]]) rhs[r] -= c;
        std::vector<Rational> xb = lu.solve(rhs);
        bool feasible = true;
        for (const Rational& x : xb)
          if (x < 0 || x > 1) {
            feasible = false;
            break;
          }
        if (!feasible) continue;
        std::vector<Rational> x(cols, Rational(0));
        for (size_t q = 0; q < nonbasic.size(); ++q)
          if ((assign >> q) & 1u) x[nonbasic[q]] = 1;
        for (int k = 0; k < rows; ++k) x[comb[k]] = xb[k];
        if (std::find(vertices.begin(), vertices.end(), x) == vertices.end())
          vertices.push_back(x);
      }
    }
    // next lexicographic combination
    int k = rows - 1;
    while (k >= 0 && comb[k] == cols - rows + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int q = k + 1; q < rows; ++q) comb[q] = comb[q - 1] + 1;
  }
  return vertices;
}

Rational f_cost(const LlrVector& llr, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (size_t i = 0; i < llr.gamma.size(); ++i) acc += llr.gamma[i] * x[i];
  return acc;
}

bool f_part_is_vertex(const std::vector<std::vector<Rational>>& vertices, int n,
                      const std::vector<Rational>& f) {
  for (const auto& v : vertices)
    if (std::equal(f.begin(), f.end(), v.begin())) return true;
  return false;
}

// box bounds plus every odd-set inequality of every check
bool in_projected_polytope(const TannerCode& code, const std::vector<Rational>& f) {
  for (const Rational& x : f)
    if (x < 0 || x > 1) return false;
  for (int j = 0; j < code.num_checks(); ++j) {
    const int degree = static_cast<int>(code.check_neighbors(j).size());
    for (unsigned mask = 1; mask < (1u << degree); ++mask) {
      if (std::popcount(mask) % 2 == 0) continue;
      if (odd_set_lhs(code, OddSetCut{j, mask}, f) < 1) return false;
    }
  }
  return true;
}

FlipSupport flips_from_mask(int n, unsigned mask) {
  std::vector<int> positions;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1u) positions.push_back(i);
  return FlipSupport::make(n, std::move(positions));
}

void check_against_oracle(const TannerCode& code,
                          const std::vector<std::vector<Rational>>& vertices, unsigned mask,
                          DecodeBackend backend) {
  const int n = code.num_vars();
  const FlipSupport flips = flips_from_mask(n, mask);
  const LlrVector llr = llr_from_flips(flips);

  Rational best = 0;
  bool zero_cost_nonzero_vertex = false;
  for (const auto& v : vertices) {
    Rational c = f_cost(llr, v);
    if (c < best) best = c;
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      if (v[i] != 0) nonzero = true;
    if (nonzero && c == 0) zero_cost_nonzero_vertex = true;
  }

  DecodeOutcome outcome = decode(code, flips, backend);
  CHECK(outcome.cost == best);
  if (best < 0) {
    REQUIRE(outcome.pcw.has_value());
    CHECK(outcome.failure());
    CHECK(f_part_is_vertex(vertices, n, outcome.pcw->f));
    CHECK(cost(flips, *outcome.pcw) == best);
    CHECK(outcome.kind ==
          (outcome.pcw->is_integral() ? DecodeKind::NonzeroCodeword : DecodeKind::FractionalPcw));
  } else if (zero_cost_nonzero_vertex) {
    CHECK(outcome.kind == DecodeKind::ZeroCostTie);
    REQUIRE(outcome.pcw.has_value());
    CHECK_FALSE(outcome.pcw->is_zero());
    CHECK(cost(flips, *outcome.pcw) == 0);
    CHECK(in_projected_polytope(code, outcome.pcw->f));
  } else {
    CHECK(outcome.kind == DecodeKind::AllZero);
    CHECK_FALSE(outcome.pcw.has_value());
    CHECK_FALSE(outcome.failure());
  }
}

}  // namespace

TEST_CASE("flip support validation") {
  FlipSupport flips = FlipSupport::make(5, {3, 1});
  CHECK(flips.support == std::vector<int>{1, 3});
  CHECK(flips.size() == 2);
  CHECK(flips.contains(3));
  CHECK_FALSE(flips.contains(0));
  CHECK_THROWS_AS(FlipSupport::make(5, {5}), std::invalid_argument);
  CHECK_THROWS_AS(FlipSupport::make(5, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(FlipSupport::make(5, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FlipSupport::make(0, {}), std::invalid_argument);
}

TEST_CASE("llr from flips") {
  LlrVector llr = llr_from_flips(FlipSupport::make(5, {1, 3}));
  CHECK(llr.gamma == std::vector<int>{1, -1, 1, -1, 1});
}

TEST_CASE("pseudo-codeword predicates") {
  PseudoCodeword zero{{Rational(0), Rational(0)}};
  CHECK(zero.is_zero());
  CHECK(zero.is_integral());
  CHECK(zero.support().empty());

  PseudoCodeword codeword{{Rational(1), Rational(0), Rational(1)}};
  CHECK_FALSE(codeword.is_zero());
  CHECK(codeword.is_integral());
  CHECK(codeword.support() == std::vector<int>{0, 2});

  PseudoCodeword frac{{Rational(1, 2), Rational(0)}};
  CHECK_FALSE(frac.is_zero());
  CHECK_FALSE(frac.is_integral());
  CHECK(frac.support() == std::vector<int>{0});
}

TEST_CASE("even subset masks are ascending") {
  CHECK(even_subset_masks(1) == std::vector<unsigned>{0});
  CHECK(even_subset_masks(2) == std::vector<unsigned>{0, 3});
  CHECK(even_subset_masks(3) == std::vector<unsigned>{0, 3, 5, 6});
  CHECK(even_subset_masks(4) == std::vector<unsigned>{0, 3, 5, 6, 9, 10, 12, 15});
  CHECK(even_subset_masks(5).size() == 16);
}

TEST_CASE("decoding problem layout for one degree-3 check") {
  TannerCode code = single_check_code();
  LlrVector llr = llr_from_flips(FlipSupport::make(3, {0}));
  LpProblem lp = build_lclp(code, llr);

  REQUIRE(lp.num_vars == 3 + 4);
  REQUIRE(lp.constraints.size() == 1 + 3);
  CHECK(lp.objective == std::vector<Rational>{-1, 1, 1, 0, 0, 0, 0});
  for (const auto& [lo, hi] : lp.var_bounds) {
    CHECK(lo == 0);
    CHECK(hi == 1);
  }

  const LinearConstraint& norm = lp.constraints[0];
  CHECK(norm.rel == Relation::Eq);
  CHECK(norm.rhs == 1);
  REQUIRE(norm.coeffs.size() == 4);
  for (int idx = 0; idx < 4; ++idx) {
    CHECK(norm.coeffs[idx].first == 3 + idx);
    CHECK(norm.coeffs[idx].second == 1);
  }

  // even masks in order: {}, {0,1}, {0,2}, {1,2}; coupling of bit t picks
  // the masks containing t
  const LinearConstraint& c0 = lp.constraints[1];
  CHECK(c0.rhs == 0);
  REQUIRE(c0.coeffs.size() == 3);
  CHECK(c0.coeffs[0] == std::pair<int, Rational>{0, Rational(1)});
  CHECK(c0.coeffs[1] == std::pair<int, Rational>{4, Rational(-1)});
  CHECK(c0.coeffs[2] == std::pair<int, Rational>{5, Rational(-1)});

  const LinearConstraint& c1 = lp.constraints[2];
  CHECK(c1.coeffs[0] == std::pair<int, Rational>{1, Rational(1)});
  CHECK(c1.coeffs[1] == std::pair<int, Rational>{4, Rational(-1)});
  CHECK(c1.coeffs[2] == std::pair<int, Rational>{6, Rational(-1)});

  const LinearConstraint& c2 = lp.constraints[3];
  CHECK(c2.coeffs[0] == std::pair<int, Rational>{2, Rational(1)});
  CHECK(c2.coeffs[1] == std::pair<int, Rational>{5, Rational(-1)});
  CHECK(c2.coeffs[2] == std::pair<int, Rational>{6, Rational(-1)});

  lp.validate();
}

TEST_CASE("decoding problem size for the [155,64] code") {
  TannerCode code = tanner_155();
  LpProblem lp = build_lclp(code, llr_from_flips(FlipSupport::make(155, {})));
  CHECK(lp.num_vars == 155 + 93 * 16);
  CHECK(lp.constraints.size() == 93 + 465);
  lp.validate();
}

TEST_CASE("check degree cap") {
  std::vector<int> wide(17);
  for (int i = 0; i < 17; ++i) wide[i] = i;
  TannerCode code = TannerCode::from_check_neighbors(17, {wide});
  CHECK_THROWS_AS(build_lclp(code, llr_from_flips(FlipSupport::make(17, {}))),
                  std::invalid_argument);
}

TEST_CASE("crash hint pairs normalization rows with the empty-set columns") {
  TannerCode code = chain_code();
  auto hint = lclp_crash_hint(code);
  REQUIRE(hint.size() == 2);
  CHECK(hint[0] == std::pair<int, int>{0, 4});
  CHECK(hint[1] == std::pair<int, int>{1, 8});
}

TEST_CASE("cost splits on the flip support") {
  FlipSupport flips = FlipSupport::make(4, {1, 2});
  PseudoCodeword pcw{{Rational(1), Rational(1), Rational(1, 2), Rational(0)}};
  CHECK(cost(flips, pcw) == Rational(-1, 2));

  PseudoCodeword zero{{Rational(0), Rational(0), Rational(0), Rational(0)}};
  CHECK(cost(flips, zero) == 0);

  PseudoCodeword heavy{{Rational(0), Rational(1), Rational(1), Rational(1, 2)}};
  CHECK(cost(flips, heavy) == Rational(-3, 2));
}

TEST_CASE("separation picks the most violated odd set") {
  TannerCode code = single_check_code();

  std::vector<Rational> violated{1, 0, 0};
  auto cut = most_violated_odd_set(code, 0, violated);
  REQUIRE(cut.has_value());
  CHECK(cut->mask == 1u);
  CHECK(odd_set_lhs(code, *cut, violated) == 0);

  std::vector<Rational> half{{Rational(1, 2)}, {Rational(1, 2)}, {Rational(1, 2)}};
  CHECK_FALSE(most_violated_odd_set(code, 0, half).has_value());

  std::vector<Rational> codeword{1, 1, 0};
  CHECK_FALSE(most_violated_odd_set(code, 0, codeword).has_value());

  std::vector<Rational> deep{1, 1, 1};
  auto cut3 = most_violated_odd_set(code, 0, deep);
  REQUIRE(cut3.has_value());
  CHECK(cut3->mask == 0b111u);

  std::vector<double> violated_d{1.0, 0.0, 0.0};
  auto cut_d = most_violated_odd_set(code, 0, violated_d, 1e-7);
  REQUIRE(cut_d.has_value());
  CHECK(cut_d->mask == 1u);
  CHECK_FALSE(most_violated_odd_set(code, 0, {0.5, 0.5, 0.5}, 1e-7).has_value());
}

TEST_CASE("odd set row matches its inequality") {
  TannerCode code = chain_code();
  OddSetCut cut{1, 0b101u};  // neighbors of check 1 are {1,2,3}: S = {1,3}... bits 0,2
  auto [coeffs, rhs] = odd_set_row(code, cut);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[0] == std::pair<int, Rational>{1, Rational(-1)});
  CHECK(coeffs[1] == std::pair<int, Rational>{2, Rational(1)});
  CHECK(coeffs[2] == std::pair<int, Rational>{3, Rational(-1)});
  CHECK(rhs == -1);

  // row form and lhs form agree: lhs >= 1 iff row >= rhs
  std::vector<Rational> f{0, Rational(1, 3), Rational(1, 4), Rational(1)};
  Rational row_value = -f[1] + f[2] - f[3];
  CHECK(odd_set_lhs(code, cut, f) - 1 == row_value - rhs);
}

TEST_CASE("decode matches exhaustive vertex enumeration") {
  TannerCode code = chain_code();
  LpProblem lp = build_lclp(code, llr_from_flips(FlipSupport::make(4, {})));
  std::vector<std::vector<Rational>> vertices = enumerate_vertices(lp);
  REQUIRE(vertices.size() > 4);

  for (unsigned mask = 0; mask < 16; ++mask) {
    CAPTURE(mask);
    check_against_oracle(code, vertices, mask, DecodeBackend::Full);
    check_against_oracle(code, vertices, mask, DecodeBackend::Projected);
  }
}

TEST_CASE("single check decode matches enumeration") {
  TannerCode code = single_check_code();
  LpProblem lp = build_lclp(code, llr_from_flips(FlipSupport::make(3, {})));
  std::vector<std::vector<Rational>> vertices = enumerate_vertices(lp);
  // parity polytope of one degree-3 check: exactly the four even-weight words
  REQUIRE(vertices.size() == 4);

  for (unsigned mask = 0; mask < 8; ++mask) {
    CAPTURE(mask);
    check_against_oracle(code, vertices, mask, DecodeBackend::Full);
    check_against_oracle(code, vertices, mask, DecodeBackend::Projected);
  }
}

TEST_CASE("probe agrees with enumeration about zero-cost points") {
  TannerCode code = chain_code();
  LpProblem lp = build_lclp(code, llr_from_flips(FlipSupport::make(4, {})));
  std::vector<std::vector<Rational>> vertices = enumerate_vertices(lp);

  for (unsigned mask = 0; mask < 16; ++mask) {
    CAPTURE(mask);
    FlipSupport flips = flips_from_mask(4, mask);
    LlrVector llr = llr_from_flips(flips);
    bool exists = false;
    for (const auto& v : vertices) {
      bool nonzero = false;
      for (int i = 0; i < 4; ++i)
        if (v[i] != 0) nonzero = true;
      if (nonzero && f_cost(llr, v) <= 0) exists = true;
    }
    auto witness = probe_zero_cost(code, flips);
    CHECK(witness.has_value() == exists);
    if (witness) {
      CHECK_FALSE(witness->is_zero());
      CHECK(cost(flips, *witness) <= 0);
      CHECK(in_projected_polytope(code, witness->f));
    }
  }
}

TEST_CASE("two-bit repetition code ties at zero cost") {
  TannerCode code = TannerCode::from_check_neighbors(2, {{0, 1}});
  FlipSupport flips = FlipSupport::make(2, {0});

  for (DecodeBackend backend : {DecodeBackend::Full, DecodeBackend::Projected}) {
    DecodeOutcome outcome = decode(code, flips, backend);
    CHECK(outcome.kind == DecodeKind::ZeroCostTie);
    CHECK(outcome.failure());
    CHECK(outcome.cost == 0);
    REQUIRE(outcome.pcw.has_value());
    CHECK(outcome.pcw->f == std::vector<Rational>{1, 1});

    auto witness = probe_zero_cost(code, flips, backend);
    REQUIRE(witness.has_value());
    CHECK(witness->f == std::vector<Rational>{1, 1});
  }
}

TEST_CASE("probe stays silent when zero is the unique minimizer") {
  TannerCode code = chain_code();
  FlipSupport flips = FlipSupport::make(4, {});
  CHECK_FALSE(probe_zero_cost(code, flips, DecodeBackend::Full).has_value());
  CHECK_FALSE(probe_zero_cost(code, flips, DecodeBackend::Projected).has_value());
}

TEST_CASE("decode is deterministic") {
  TannerCode code = chain_code();
  FlipSupport flips = FlipSupport::make(4, {1, 2});
  DecodeOutcome a = decode(code, flips);
  DecodeOutcome b = decode(code, flips);
  CHECK(a.kind == b.kind);
  CHECK(a.cost == b.cost);
  CHECK(a.pcw == b.pcw);
}

TEST_CASE("[155,64] code: no flips decode to the zero word") {
  TannerCode code = tanner_155();
  DecodeOutcome outcome = decode(code, FlipSupport::make(155, {}));
  CHECK(outcome.kind == DecodeKind::AllZero);
  CHECK(outcome.cost == 0);
}

TEST_CASE("[155,64] code: small flip sets are corrected") {
  TannerCode code = tanner_155();
  SplitRng rng(0x5eed5u);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<int> positions = rng.fork(trial).subset(155, 4);
    FlipSupport flips = FlipSupport::make(155, positions);
    CAPTURE(trial);
    DecodeOutcome full = decode(code, flips, DecodeBackend::Full);
    CHECK(full.kind == DecodeKind::AllZero);
    DecodeOutcome projected = decode(code, flips, DecodeBackend::Projected);
    CHECK(projected.kind == DecodeKind::AllZero);
  }
}

TEST_CASE("[155,64] code: large flip sets fail onto the polytope") {
  TannerCode code = tanner_155();
  SplitRng rng(0xfa17u);
  int failures = 0;
  for (int trial = 0; trial < 12 && failures < 2; ++trial) {
    FlipSupport flips = FlipSupport::make(155, rng.fork(trial).subset(155, 24));
    DecodeOutcome full = decode(code, flips, DecodeBackend::Full);
    DecodeOutcome projected = decode(code, flips, DecodeBackend::Projected);
    CHECK(full.kind == projected.kind);
    CHECK(full.cost == projected.cost);
    if (!full.failure()) continue;
    ++failures;
    REQUIRE(full.pcw.has_value());
    CHECK(cost(flips, *full.pcw) == full.cost);
    CHECK(in_projected_polytope(code, full.pcw->f));
    REQUIRE(projected.pcw.has_value());
    CHECK(cost(flips, *projected.pcw) == projected.cost);
    CHECK(in_projected_polytope(code, projected.pcw->f));
    if (full.kind == DecodeKind::NonzeroCodeword) {
      // an integral optimum is a codeword
      for (int j = 0; j < code.num_checks(); ++j) {
        int parity = 0;
        for (int i : code.check_neighbors(j)) parity ^= full.pcw->f[i] == 1 ? 1 : 0;
        CHECK(parity == 0);
      }
    }
  }
  CHECK(failures >= 2);
}
