#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/intlaurent.hpp"
#include "skeinlab/morse.hpp"
#include "skeinlab/twobridge.hpp"

namespace skeinlab {

// Work guards for the colored Jones evaluators.  Callers that genuinely need
// deeper tables raise the limits explicitly; nothing is unbounded by default.
struct JonesLimits {
  int max_color = 16;       // strand-transfer route over the braid word
  int max_cable_color = 6;  // cabled-diagram route
  SweepLimits sweep;
};

// n-th colored Jones value J(n) of a two-bridge knot with zero framing,
// normalized so the unknot takes [n] = (t^{2n} - t^{-2n})/(t^2 - t^{-2}).
// J(0) = 0, J(1) = 1, J(-n) = -J(n), and every value lies in Z[t^{±2}].
// Evaluated over the four-plat braid word by the colored strand-transfer
// engine; the blackboard framing is cancelled by the curl eigenvalue.
IntLaurent colored_jones(const TwoBridgeSpec& spec, int n,
                         const JonesLimits& limits = {});

// Same invariant from an explicit diagram: the writhe is cancelled with
// curls, S_{n-1}(z) is expanded through the Chebyshev ladder, and each z^j
// maps to the j-cable bracket.  Cable brackets run by pairing sweep when the
// diagram has generic sweepable geometry, otherwise by state enumeration on
// the kink-normalized cable (with its own crossing-count guard).
IntLaurent colored_jones(const PlanarDiagram& d, int n,
                         const JonesLimits& limits = {});

// Bracket of the j-cable of d with blackboard framing.  Equals
// cable(d, j).bracket_bruteforce() exactly, but runs a bottom-to-top sweep
// whose states are planar pairings of the cabled frontier strands, so cost
// scales with diagram width rather than 2^(j^2 k).  j = 0 gives 1.
IntLaurent bracket_efficient(const PlanarDiagram& d, int j,
                             const SweepLimits& limits = {});

// Closed finite sum for the right-handed trefoil:
//   t^{2-2n}/(1-t^{-4}) * sum_{k=0}^{n-1} t^{-4nk} prod_{i=0}^{k} (1-t^{4i-4n}).
// Every product contains the i = 0 factor, which cancels the prefactor's
// denominator into a geometric sum, so the value is a Laurent polynomial.
IntLaurent trefoil_series(int n);

struct DegreeStats {
  int d_plus;
  int d_minus;
  int breadth;
};

// Extreme t-exponents and their difference.  Throws std::domain_error on the
// zero polynomial.
DegreeStats degree_stats(const IntLaurent& v);

// Quadratic bound on the degrees of the n-th value computed from a diagram
// with k crossings: d_+ <= k(n-1)^2 + 2(n-1)s_+ and the mirrored lower
// bound, where s_± count the circles of the all-positive / all-negative
// smoothings.  The bound holds for the blackboard-framed value of the
// diagram it is measured on, so the public entry points normalize the
// diagram to writhe zero first and bound the zero-framed invariant.
struct DegreeBoundReport {
  int n = 0;
  int crossings = 0;
  int s_plus = 0;
  int s_minus = 0;
  int d_plus = 0;
  int d_minus = 0;
  long long bound_plus = 0;
  long long bound_minus = 0;
  long long slack_plus = 0;   // bound_plus - d_plus, >= 0 when ok
  long long slack_minus = 0;  // d_minus - bound_minus, >= 0 when ok
  bool ok = false;
};

// Low-level form: jn must be the blackboard-framed value of d itself.
DegreeBoundReport degree_bound_report(const PlanarDiagram& d, int n,
                                      const IntLaurent& jn);
DegreeBoundReport check_degree_bounds(const PlanarDiagram& d, int n,
                                      const JonesLimits& limits = {});
DegreeBoundReport check_degree_bounds(const TwoBridgeSpec& spec, int n,
                                      const JonesLimits& limits = {});

// Exact breadth law for reduced alternating knot diagrams:
//   br J(n) = 2k(n-1)^2 + 2(n-1)(k+2).
// Breadth ignores the framing monomial, so the base diagram's k enters even
// though the compared value is zero-framed.
struct BreadthReport {
  int n = 0;
  int crossings = 0;
  int breadth = 0;
  long long expected = 0;
  bool ok = false;
};

BreadthReport breadth_report(const PlanarDiagram& d, int n,
                             const IntLaurent& jn);
BreadthReport check_alternating_breadth(const PlanarDiagram& d, int n,
                                        const JonesLimits& limits = {});
BreadthReport check_alternating_breadth(const TwoBridgeSpec& spec, int n,
                                        const JonesLimits& limits = {});

// Per-knot store of colored Jones values.  Only colors n >= 1 are kept;
// J(0) = 0 and J(-n) = -J(n) are served from the invariants, so a document
// can never hold contradictory rows.  Reads and writes are safe from
// multiple threads; duplicate computations of the same color are idempotent.
// Serialization is canonical: identical tables produce identical bytes.
class JonesTable {
 public:
  explicit JonesTable(TwoBridgeSpec spec, JonesLimits limits = {});

  const TwoBridgeSpec& spec() const { return spec_; }
  std::string id() const;

  // Every bundled construction follows the right-handed convention; the flag
  // travels with the document so mirrored data can never merge silently.
  static constexpr const char* kChirality = "right";

  // Cached value, computing on demand.
  IntLaurent get(int n);
  // Fills colors 1..n_max, optionally with a worker pool.
  void compute_range(int n_max, int threads = 1);
  std::vector<int> known_colors() const;

  std::string to_json() const;
  static JonesTable from_json(const std::string& text,
                              JonesLimits limits = {});

 private:
  JonesTable(TwoBridgeSpec spec, JonesLimits limits,
             std::map<int, IntLaurent> values);
  void put(int n, IntLaurent v);

  TwoBridgeSpec spec_;
  JonesLimits limits_;
  mutable std::mutex mu_;
  std::map<int, IntLaurent> values_;
};

}  // namespace skeinlab
