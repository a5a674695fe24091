#pragma once

#include <vector>

#include "skeinlab/intlaurent.hpp"
#include "skeinlab/morse.hpp"
#include "skeinlab/ratfn.hpp"

namespace skeinlab {

// Loop value of the width-n projector strand, (-1)^n [n+1].
IntLaurent projector_loop(int n);

// Closed two-vertex network with edge colors (a, b, c); zero denominator
// terms never arise for admissible triples.  Throws on inadmissible input.
RatFn theta_net(int a, int b, int c);

// Closed tetrahedral network with edge colors (A, B, E / C, D, F), vertices
// (A,B,E), (C,D,E), (A,D,F), (B,C,F).
RatFn tet_net(int A, int B, int E, int C, int D, int F);

// Exact transfer data for plat closures of four-strand words in which every
// strand carries the width-a projector.  The construction runs structural
// self-checks (change-of-basis involution, unknot closure) and throws
// std::logic_error if the tabulated network values are inconsistent.
class FusionContext {
 public:
  explicit FusionContext(int color);

  int color() const { return a_; }
  // Positive-curl factor of a projector strand.
  const IntLaurent& curl_factor() const { return twist_; }
  // Loop value of the projector strand.
  const IntLaurent& loop() const { return delta_a_; }

  // Bracket of the plat closure with the diagram's own framing (no writhe
  // correction); every strand carries the width-a projector.
  IntLaurent plat_bracket_framed(const PlatWord& word) const;

 private:
  std::vector<RatFn> mid_apply(const std::vector<RatFn>& v, int sign) const;

  int a_;
  std::vector<RatFn> lam_pos_, lam_neg_;       // fused-channel eigenvalues
  std::vector<std::vector<RatFn>> f_, finv_;   // pair-tree change of basis
  IntLaurent delta_a_;
  IntLaurent twist_;
};

}  // namespace skeinlab
