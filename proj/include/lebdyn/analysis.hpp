#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lebdyn/dynamics.hpp"
#include "lebdyn/metric_core.hpp"
#include "lebdyn/rates.hpp"
#include "lebdyn/systems.hpp"

namespace lebdyn {

struct AnalysisOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t member_cap = kDefaultMemberCap;
  std::size_t exact_limit = 25;
  std::optional<Window> window;
  VerifyConfig verify;
  /// Join-based work (Delta_n, S(U_f^n), direct delta_n) runs only on spaces up to this size.
  std::size_t join_limit = 256;
};

/// delta table of one bundle cover with its decay-rate estimate.
struct CoverRates {
  std::string id;
  double radius = 0.0;
  std::size_t members = 0;
  double diam = 0.0;
  RateSequence sequence;
  std::optional<RateEstimate> estimate;
  std::string note;  // why the estimate is missing
};

[[nodiscard]] std::vector<CoverRates> cover_rates(const SystemBundle& bundle, const AnalysisOptions& options = {});

struct LipschitzRates {
  double lipschitz = 0.0;  // L(f)
  IterateRate iterate;
};

[[nodiscard]] LipschitzRates lipschitz_rates(const SystemBundle& bundle);

struct EntropyTables {
  std::optional<CoverEntropy> cover;
  std::string cover_id;
  std::string cover_note;
  std::vector<SeparatedEntropy> separated;
};

[[nodiscard]] EntropyTables entropy_tables(const SystemBundle& bundle, const AnalysisOptions& options = {});

[[nodiscard]] DimEstimate dimension_table(const SystemBundle& bundle, const AnalysisOptions& options = {});

/// One family of exact identities checked on the bundle's own covers.
struct IdentityCheck {
  std::string name;
  std::string statement;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double max_error = 0.0;  // largest relative deviation
  std::string status;      // "pass" | "fail" | "skipped"
  std::string note;
};

[[nodiscard]] std::vector<IdentityCheck> identity_checks(const SystemBundle& bundle, const AnalysisOptions& options = {});
/// Same, reusing an already computed L(f) and delta tables.
[[nodiscard]] std::vector<IdentityCheck> identity_checks(const SystemBundle& bundle, double lipschitz,
                                                         const std::vector<CoverRates>& covers,
                                                         const AnalysisOptions& options);

/// Everything `verify` and `report` emit for one bundle.
struct Analysis {
  std::vector<CoverRates> covers;
  std::optional<double> h_L_lower;
  std::optional<double> h_L_upper;
  std::optional<double> finest_radius;
  std::optional<HlDelta> hl_delta;
  std::string hl_delta_cover;
  std::string hl_delta_note;
  LipschitzRates lipschitz;
  EntropyTables entropy;
  DimEstimate dims;
  std::optional<PreimageBound> preimage;
  std::string preimage_note;
  std::vector<IdentityCheck> identities;
  Measurements measured;
  InequalityReport inequalities;

  /// True when an inequality row or an identity check failed.
  [[nodiscard]] bool failed() const;
};

/// Only the delta tables, h_L, Delta_n and iterate-rate parts.
[[nodiscard]] Analysis analyze_rates(const SystemBundle& bundle, const AnalysisOptions& options = {});
[[nodiscard]] Analysis analyze(const SystemBundle& bundle, const AnalysisOptions& options = {});

}  // namespace lebdyn
