#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lebdyn/cover.hpp"
#include "lebdyn/dynamics.hpp"
#include "lebdyn/metric_space.hpp"
#include "lebdyn/solvers.hpp"

namespace lebdyn {

/// Inclusive 1-based index window [first, last].
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Growth-rate estimate of a sequence y_n over a window. With n0 the anchor
/// (by default the window start), the chords e_n = (y_n - y_n0) / (n - n0) for
/// n in the window, n > n0, give lower = min e_n and upper = max e_n; slope is
/// the least-squares line through (n0, y_n0) and therefore lies between them.
struct RateEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double slope = 0.0;
  Window window;
  std::size_t anchor = 0;
  std::string method;
};

/// Default window: second half of 1..usable, i.e. [usable/2 + 1, usable].
[[nodiscard]] Window default_window(std::size_t usable);

/// Rate of an increasing-ish sequence y (y[0] is y_1). Throws UsageError when
/// the window holds fewer than two indices or leaves 1..y.size().
/// anchor = 0 anchors the chords at the window start.
[[nodiscard]] RateEstimate growth_rate(const std::vector<double>& y, const Window& window, std::string method,
                                       std::size_t anchor = 0);

/// Decay rate of delta_n, i.e. growth rate of -ln delta_n, restricted to the usable prefix.
[[nodiscard]] RateEstimate rate_bounds(const RateSequence& seq, std::optional<Window> window = std::nullopt);

struct PrefixMaxCheck {
  double rate = 0.0;             // upper rate of the input sequence
  double prefix_max_rate = 0.0;  // upper rate of its running maximum
  Window window;
};

[[nodiscard]] PrefixMaxCheck prefix_max_rate_check(const std::vector<double>& values,
                                                   std::optional<Window> window = std::nullopt);

struct CountRow {
  std::size_t n = 0;
  std::size_t count = 0;
  bool exact = false;
  double per_n = 0.0;  // (1/n) ln count
};

struct CoverEntropy {
  std::vector<CountRow> rows;  // S(U_f^n), n = 1..N
  RateEstimate estimate;
  bool upper_bound = false;  // some S came from the greedy solver
};

struct EntropyOptions {
  SolveMode mode = SolveMode::greedy;
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t member_cap = kDefaultMemberCap;
  /// Exact solving is attempted only up to this many points (or members).
  std::size_t exact_limit = 25;
  std::optional<Window> window;
};

/// S(U_f^n) per n and the growth rate of ln S over the tail window, chords anchored at n = 1.
[[nodiscard]] CoverEntropy cover_entropy(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                                         std::size_t horizon, const EntropyOptions& options = {});

struct SeparatedEntropy {
  double eps = 0.0;
  std::vector<CountRow> rows;  // s_n(f, eps), n = 1..N
  RateEstimate estimate;
  bool lower_bound = false;  // some s_n came from the greedy solver
};

[[nodiscard]] std::vector<SeparatedEntropy> sep_entropy(const FiniteMetricSpace& space, const DynMap& map,
                                                        const std::vector<double>& eps_list, std::size_t horizon,
                                                        const EntropyOptions& options = {});

struct RadiusRate {
  double radius = 0.0;
  std::size_t members = 0;
  double diam = 0.0;
  RateSequence sequence;
  RateEstimate estimate;
};

struct HlEstimates {
  std::vector<RadiusRate> per_radius;  // in the order given
  double lower = 0.0;  // at the finest radius
  double upper = 0.0;
  double finest_radius = 0.0;
};

/// Lower/upper decay rates of delta_n for mesh covers of the given radii.
[[nodiscard]] HlEstimates hl_estimates(const FiniteMetricSpace& space, const DynMap& map,
                                       const std::vector<double>& radii, std::size_t horizon,
                                       std::optional<Window> window = std::nullopt);

struct HlDelta {
  RateSequence delta_min;   // Delta_n (minimum subcovers of U_f^n)
  RateSequence lebesgue;    // delta_n of the same iterated covers
  std::vector<std::size_t> min_sizes;  // S(U_f^n)
  RateEstimate estimate;          // decay rate of Delta_n
  RateEstimate lebesgue_estimate; // decay rate of delta_n over the same window
};

/// Decay rate of Delta_n = Delta(U_f^n). Throws NumericError if Delta_n > delta_n
/// at some n, BudgetError if an enumeration exceeds the budget.
[[nodiscard]] HlDelta hl_delta_estimate(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                                        std::size_t horizon, std::size_t node_budget = kDefaultNodeBudget,
                                        std::optional<Window> window = std::nullopt);

/// A reference value with its source, e.g. "example: doubling" or "analytic (classical fact)".
struct Cited {
  double value = 0.0;
  std::string citation;
};

struct KnownInvariants {
  std::optional<Cited> h;
  std::optional<Cited> dimb;
  std::optional<Cited> dimh;
  std::optional<Cited> h_L_lower;
  std::optional<Cited> h_L_upper;
  std::optional<Cited> l;
  std::optional<Cited> L;
};

/// A measured number with its provenance: "exact", "greedy-upper", "greedy-lower" or "estimate".
struct Measured {
  double value = 0.0;
  std::string source = "estimate";
};

struct Measurements {
  std::optional<Measured> dimb;
  std::optional<Measured> h_L_lower;
  std::optional<Measured> h_L_upper;
  std::optional<Measured> h_L_delta;     // for the cover below
  std::optional<Measured> h_cover;       // h(f, U) for the same cover
  std::optional<Measured> h_separated;   // finest eps
  std::optional<Measured> lipschitz;     // L(f)
  std::optional<Measured> l;             // iterate rate
};

struct VerifyConfig {
  double tolerance = 0.15;          // rows with a measured side
  double analytic_tolerance = 1e-9; // rows with analytic values only
};

struct InequalityRow {
  std::string name;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  std::string status;  // "pass" | "fail" | "inconclusive" | "skipped"
  std::string lhs_src;
  std::string rhs_src;
  std::string note;

  [[nodiscard]] bool passed() const { return status == "pass"; }
};

struct InequalityReport {
  std::vector<InequalityRow> rows;

  [[nodiscard]] bool any_failed() const;
  [[nodiscard]] std::vector<std::string> failed_rows() const;
};

/// One row per inequality (all of the form lhs >= rhs). Rows missing an input are
/// skipped; a failing row whose right side is only a greedy upper bound is
/// reported as inconclusive.
[[nodiscard]] InequalityReport verify_inequalities(const Measurements& measured, const KnownInvariants& known,
                                                   const VerifyConfig& config = {});

}  // namespace lebdyn
