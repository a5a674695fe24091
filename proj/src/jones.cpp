#include "skeinlab/jones.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "skeinlab/fusion.hpp"
#include "skeinlab/qtorus.hpp"

namespace skeinlab {

namespace {

// Transfer data depends only on the color, so share contexts across calls
// (and across table worker threads; the context is immutable once built).
const FusionContext& fusion_context(int a) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FusionContext>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[a];
  if (!slot) slot = std::make_unique<FusionContext>(a);
  return *slot;
}

}  // namespace

IntLaurent colored_jones(const TwoBridgeSpec& spec, int n,
                         const JonesLimits& limits) {
  if (n == 0) return IntLaurent::zero();
  if (n < 0) return -colored_jones(spec, -n, limits);
  if (n > limits.max_color)
    throw std::domain_error("colored_jones: color " + std::to_string(n) +
                            " exceeds the configured limit " +
                            std::to_string(limits.max_color));
  const int a = n - 1;
  const PlatWord word = fourplat_word(spec);
  const int w = plat_writhe(word);
  const FusionContext& ctx = fusion_context(a);
  IntLaurent v = ctx.plat_bracket_framed(word);
  // curl_factor is a unit monomial; one inverse factor per writhe unit turns
  // the blackboard-framed plat value into the zero-framed one.
  const IntLaurent mu = ctx.curl_factor();
  const int e = mu.max_exp();
  const bool neg = mu.coeff(e) < 0 && w % 2 != 0;
  v *= IntLaurent::monomial(neg ? -1 : 1, -e * w);
  return a % 2 == 1 ? -v : v;
}

IntLaurent colored_jones(const PlanarDiagram& d, int n,
                         const JonesLimits& limits) {
  if (n == 0) return IntLaurent::zero();
  if (n < 0) return -colored_jones(d, -n, limits);
  if (n > limits.max_cable_color)
    throw std::domain_error("colored_jones: color " + std::to_string(n) +
                            " exceeds the cable-route limit " +
                            std::to_string(limits.max_cable_color));
  const int w = d.writhe();
  std::vector<MorseEvent> events;
  bool sweepable = true;
  try {
    events = morse_events(d);
    if (w != 0) append_curls(events, std::abs(w), w > 0 ? -1 : 1);
  } catch (const std::runtime_error&) {
    sweepable = false;
  }
  PlanarDiagram flat;  // kink-normalized stand-in for unsweepable geometry
  if (!sweepable) flat = w == 0 ? d : d.add_kinks(-w);

  IntLaurent total;
  const IntLaurent ladder = chebyshev_S(n - 1);
  for (const auto& [j, c] : ladder.terms()) {
    const IntLaurent br = j == 0 ? IntLaurent::one()
                      : sweepable ? sweep_bracket(events, j, limits.sweep)
                                  : flat.cable(j).bracket_bruteforce();
    total += br.mul_scalar(c);
  }
  return (n - 1) % 2 == 1 ? -total : total;
}

IntLaurent bracket_efficient(const PlanarDiagram& d, int j,
                             const SweepLimits& limits) {
  if (j < 0)
    throw std::invalid_argument("bracket_efficient: cable index must be >= 0");
  if (j == 0) return IntLaurent::one();
  return sweep_bracket(morse_events(d), j, limits);
}

IntLaurent trefoil_series(int n) {
  if (n == 0) return IntLaurent::zero();
  if (n < 0) return -trefoil_series(-n);
  // (1 - t^{-4n}) / (1 - t^{-4}), the i = 0 factor over the prefactor.
  IntLaurent geo;
  for (int j = 0; j < n; ++j) geo += IntLaurent::monomial(1, -4 * j);
  IntLaurent sum, prod = IntLaurent::one();
  for (int k = 0; k < n; ++k) {
    if (k > 0)
      prod *= IntLaurent::one() - IntLaurent::monomial(1, 4 * k - 4 * n);
    sum += prod.shifted(-4 * n * k);
  }
  return (geo * sum).shifted(2 - 2 * n);
}

DegreeStats degree_stats(const IntLaurent& v) {
  if (v.is_zero())
    throw std::domain_error("degree_stats of the zero polynomial");
  return {v.max_exp(), v.min_exp(), v.span()};
}

DegreeBoundReport degree_bound_report(const PlanarDiagram& d, int n,
                                      const IntLaurent& jn) {
  DegreeBoundReport r;
  r.n = n;
  r.crossings = d.crossing_count();
  const auto sc = d.smooth_and_count();
  r.s_plus = sc.s_plus;
  r.s_minus = sc.s_minus;
  const DegreeStats st = degree_stats(jn);
  r.d_plus = st.d_plus;
  r.d_minus = st.d_minus;
  const long long k = r.crossings, m = n - 1;
  r.bound_plus = k * m * m + 2 * m * r.s_plus;
  r.bound_minus = -k * m * m - 2 * m * r.s_minus;
  r.slack_plus = r.bound_plus - r.d_plus;
  r.slack_minus = r.d_minus - r.bound_minus;
  r.ok = r.slack_plus >= 0 && r.slack_minus >= 0;
  return r;
}

DegreeBoundReport check_degree_bounds(const PlanarDiagram& d, int n,
                                      const JonesLimits& limits) {
  const int w = d.writhe();
  const PlanarDiagram d0 = w == 0 ? d : d.add_kinks(-w);
  return degree_bound_report(d0, n, colored_jones(d0, n, limits));
}

DegreeBoundReport check_degree_bounds(const TwoBridgeSpec& spec, int n,
                                      const JonesLimits& limits) {
  const PlanarDiagram d = fourplat_diagram(spec);
  const int w = d.writhe();
  const PlanarDiagram d0 = w == 0 ? d : d.add_kinks(-w);
  return degree_bound_report(d0, n, colored_jones(spec, n, limits));
}

BreadthReport breadth_report(const PlanarDiagram& d, int n,
                             const IntLaurent& jn) {
  if (!d.is_alternating())
    throw std::invalid_argument("breadth law needs an alternating diagram");
  if (d.component_count() != 1 || d.free_loops() != 0 ||
      d.crossing_count() < 3)
    throw std::invalid_argument("breadth law needs a nontrivial knot diagram");
  BreadthReport r;
  r.n = n;
  r.crossings = d.crossing_count();
  r.breadth = degree_stats(jn).breadth;
  const long long k = r.crossings, m = n - 1;
  r.expected = 2 * k * m * m + 2 * m * (k + 2);
  r.ok = r.breadth == r.expected;
  return r;
}

BreadthReport check_alternating_breadth(const PlanarDiagram& d, int n,
                                        const JonesLimits& limits) {
  return breadth_report(d, n, colored_jones(d, n, limits));
}

BreadthReport check_alternating_breadth(const TwoBridgeSpec& spec, int n,
                                        const JonesLimits& limits) {
  return breadth_report(fourplat_diagram(spec), n,
                        colored_jones(spec, n, limits));
}

JonesTable::JonesTable(TwoBridgeSpec spec, JonesLimits limits)
    : spec_(spec), limits_(limits) {}

JonesTable::JonesTable(TwoBridgeSpec spec, JonesLimits limits,
                       std::map<int, IntLaurent> values)
    : spec_(spec), limits_(limits), values_(std::move(values)) {}

std::string JonesTable::id() const {
  return "b(" + std::to_string(spec_.p) + "," + std::to_string(spec_.m) + ")";
}

IntLaurent JonesTable::get(int n) {
  if (n == 0) return IntLaurent::zero();
  const int c = std::abs(n);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = values_.find(c);
    if (it != values_.end()) return n > 0 ? it->second : -it->second;
  }
  IntLaurent v = colored_jones(spec_, c, limits_);
  put(c, v);
  return n > 0 ? v : -v;
}

void JonesTable::put(int n, IntLaurent v) {
  std::lock_guard<std::mutex> lk(mu_);
  values_.emplace(n, std::move(v));  // same key recomputes the same value
}

void JonesTable::compute_range(int n_max, int threads) {
  std::vector<int> todo;
  {
    std::lock_guard<std::mutex> lk(mu_);
    for (int n = 1; n <= n_max; ++n)
      if (!values_.count(n)) todo.push_back(n);
  }
  if (todo.empty()) return;
  if (threads <= 1) {
    for (int n : todo) get(n);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < todo.size();) get(todo[i]);
  };
  std::vector<std::thread> pool;
  const size_t nt =
      std::min(static_cast<size_t>(threads), todo.size());
  pool.reserve(nt);
  for (size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::vector<int> JonesTable::known_colors() const {
  std::lock_guard<std::mutex> lk(mu_);
  std::vector<int> out;
  out.reserve(values_.size());
  for (const auto& [n, v] : values_) out.push_back(n);
  return out;
}

std::string JonesTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["knot"] = id();
  doc["p"] = spec_.p;
  doc["m"] = spec_.m;
  doc["chirality"] = kChirality;
  auto vals = nlohmann::ordered_json::array();
  {
    std::lock_guard<std::mutex> lk(mu_);
    for (const auto& [n, v] : values_)
      vals.push_back(nlohmann::ordered_json::array({n, v.to_string()}));
  }
  doc["values"] = std::move(vals);
  return doc.dump(2) + "\n";
}

JonesTable JonesTable::from_json(const std::string& text, JonesLimits limits) {
  const auto doc = nlohmann::json::parse(text);
  const TwoBridgeSpec spec(doc.at("p").get<int>(), doc.at("m").get<int>());
  if (doc.at("chirality").get<std::string>() != kChirality)
    throw std::invalid_argument(
        "jones table document carries a mirrored chirality flag");
  std::map<int, IntLaurent> values;
  for (const auto& row : doc.at("values")) {
    const int n = row.at(0).get<int>();
    if (n < 1)
      throw std::invalid_argument("jones table rows must have color >= 1");
    auto poly = IntLaurent::parse(row.at(1).get<std::string>());
    if (!poly)
      throw std::invalid_argument("unreadable polynomial in jones table");
    if (!poly->exponents_divisible_by(2))
      throw std::invalid_argument("jones table value with odd exponents");
    if (!values.emplace(n, *poly).second)
      throw std::invalid_argument("duplicate color in jones table");
  }
  if (values.count(1) && !values.at(1).is_one())
    throw std::invalid_argument("jones table value at color 1 must be 1");
  const std::string want =
      "b(" + std::to_string(spec.p) + "," + std::to_string(spec.m) + ")";
  if (doc.contains("knot") && doc.at("knot").get<std::string>() != want)
    throw std::invalid_argument("jones table id disagrees with parameters");
  return JonesTable(spec, limits, std::move(values));
}

}  // namespace skeinlab
