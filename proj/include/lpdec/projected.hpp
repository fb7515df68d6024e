#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lpdec/lclp.hpp"
#include "lpdec/simplex.hpp"
#include "lpdec/tanner_code.hpp"

namespace lpdec {

// Odd-size subset S of a check's neighborhood, as a bitmask over the
// check_neighbors order. Carries the parity inequality
//   sum_{i in S} (1 - f_i) + sum_{i in N(j)\S} f_i >= 1.
struct OddSetCut {
  int check = 0;
  unsigned mask = 0;

  auto operator<=>(const OddSetCut&) const = default;
};

// Most violated odd set of one check at the point f; none when every odd
// set is satisfied (within tol for the double overload, exactly for the
// rational one).
std::optional<OddSetCut> most_violated_odd_set(const TannerCode& code, int check,
                                               const std::vector<Rational>& f);
std::optional<OddSetCut> most_violated_odd_set(const TannerCode& code, int check,
                                               const std::vector<double>& f, double tol);

// Engine row form of the inequality: sum_{N(j)\S} f_i - sum_{S} f_i >= 1 - |S|.
std::pair<std::vector<std::pair<int, Rational>>, Rational> odd_set_row(const TannerCode& code,
                                                                       const OddSetCut& cut);

// Exact rational lhs of the inequality at f.
Rational odd_set_lhs(const TannerCode& code, const OddSetCut& cut,
                     const std::vector<Rational>& f);

// Minimizes linear objectives over the projection of the decoding polytope
// onto the f-variables: box bounds plus adaptively separated odd-set
// inequalities. The caller may add extra rows or tighten bounds through
// engine() before optimizing; cuts accumulate across reoptimizations.
// Termination: every round adds at least one new (check, subset) row and
// the pool is finite; the final vertex is certified exact and satisfies
// every odd-set inequality exactly.
class ProjectedLp {
 public:
  explicit ProjectedLp(const TannerCode& code);

  SimplexEngine& engine() { return engine_; }
  const SimplexEngine& engine() const { return engine_; }

  LpStatus optimize();                                // fresh solve
  LpStatus reoptimize(std::vector<Rational> costs);   // warm, new objective
  int cuts_added() const { return static_cast<int>(added_.size()); }

 private:
  LpStatus cut_loop();
  int add_violated_float();

  const TannerCode* code_;
  SimplexEngine engine_;
  std::set<OddSetCut> added_;
};

}  // namespace lpdec
