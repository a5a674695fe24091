#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skeinlab/intlaurent.hpp"
#include "skeinlab/jones.hpp"
#include "skeinlab/multipoly.hpp"
#include "skeinlab/qtorus.hpp"
#include "skeinlab/twobridge.hpp"

namespace skeinlab {

// Ansatz box and windows for reconstructing a linear q-difference operator
//
//   P = sum_{i=0}^{l_degree} c_i(t, M) L^i,   deg_M c_i <= m_degree,
//
// annihilating a sequence, where (M f)(n) = t^{2n} f(n) and
// (L f)(n) = f(n+1).  The fit window [fit_lo, fit_hi] must provide at
// least (l_degree+1)*(m_degree+1) rows; the confirmation window
// (fit_hi, confirm_hi] must reach at least 10 indices past the fit and
// is checked exactly, never numerically.
struct GuessConfig {
  int l_degree = 2;
  int m_degree = 10;
  int fit_lo = 1;
  int fit_hi = 45;
  int confirm_hi = 60;
};

// Operator in T_+ (integer Laurent coefficients in t, trivial common
// content).  Annihilation is verified exactly on every row of the fit
// and confirmation windows; certified_up_to records the largest sequence
// index entering a verified row.  minimal is set by minimize() when the
// next smaller L-degree provably admits no operator in the same box.
struct RecurrenceCandidate {
  QTPoly op;
  int certified_up_to = 0;
  bool minimal = false;
};

// Structural report for a certified operator: the commutative shadow
// (t -> 1) with its (L-1)-divisibility and degree facts, plus factor
// data.  M and L occupy variable slots 0 and 1.
struct AlphaChecks {
  MultiPoly epsilon;           // qt_epsilon of the operator
  MultiPoly epsilon_over_l1;   // epsilon / (L-1), valid iff divisible
  bool divisible_by_l_minus_one = false;
  int l_degree = 0;
  int m_degree = 0;
  bool only_even_t_powers = false;
  MultiPoly m_content;         // content of epsilon as a polynomial in L
  MultiPoly l_primitive;       // epsilon / m_content
  MultiPoly squarefree_l;      // squarefree part of l_primitive in L
  bool l_degree_lower_ok = false;  // >= 2 for alternating inputs
  bool l_degree_upper_ok = false;  // <= (p+1)/2
  bool passed = false;
};

// Evaluates (P J)(n) = sum_i c_i(t, t^{2n}) J(n+i) exactly.  Colors
// outside the table's reach surface as the table's own errors.
IntLaurent apply_operator(const QTPoly& op, JonesTable& table, int n);

// Same action on a plain sequence: vals[k] holds the value at index
// first_index + k; rows touching indices outside the stored range throw
// std::domain_error.
IntLaurent apply_operator(const QTPoly& op, const std::vector<IntLaurent>& vals,
                          int first_index, int n);

// Reconstructs an annihilating operator for the table inside the config
// box, or std::nullopt when none exists (emptiness is established by an
// exact rank certificate, not by sampling noise).  The linear system is
// solved by modular evaluation and interpolation; every candidate is
// then certified by exact application to all fit and confirmation rows,
// and a candidate failing certification is never returned.
//
// Throws std::invalid_argument when the fit window is too short for the
// box, and std::domain_error when the window is degenerate (all zeros,
// or a zero tail long enough to make every box operator vacuous).
std::optional<RecurrenceCandidate> guess_recurrence(JonesTable& table,
                                                    const GuessConfig& cfg);

// Sequence form used both by the table overload and by callers fitting
// auxiliary sequences; vals[k] is the value at index first_index + k.
std::optional<RecurrenceCandidate> guess_recurrence(
    const std::vector<IntLaurent>& vals, int first_index,
    const GuessConfig& cfg);

// Retries the guess with L-degree 1, 2, ..., cfg.l_degree and returns
// the first success.  minimal is true when every smaller L-degree was
// ruled out by a full-rank certificate rather than by reconstruction
// failure.
std::optional<RecurrenceCandidate> minimize(JonesTable& table,
                                            const GuessConfig& cfg);
std::optional<RecurrenceCandidate> minimize(const std::vector<IntLaurent>& vals,
                                            int first_index,
                                            const GuessConfig& cfg);

// Runs the structural checks for a certified candidate attached to the
// two-bridge knot b(p, m): (L-1) divides epsilon, L-degree >= 2 when the
// knot is alternating (p >= 3), L-degree <= (p+1)/2.
AlphaChecks alpha_structure_checks(const RecurrenceCandidate& cand,
                                   const TwoBridgeSpec& knot);

// JSON object with the operator text, windows, minimality flag, and the
// structure block when provided.
std::string recurrence_report_json(const RecurrenceCandidate& cand,
                                   const GuessConfig& cfg,
                                   const AlphaChecks* checks = nullptr);

}  // namespace skeinlab
