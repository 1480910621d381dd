#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lebdyn/analysis.hpp"
#include "lebdyn/rates.hpp"
#include "lebdyn/systems.hpp"

namespace lebdyn {

inline constexpr int kSchemaVersion = 1;

/// Finite values as numbers, +-infinity as "inf" / "-inf", NaN as null.
[[nodiscard]] nlohmann::json number_json(double v);

[[nodiscard]] nlohmann::json to_json(const Window& w);
[[nodiscard]] nlohmann::json to_json(const RateEstimate& e);
[[nodiscard]] nlohmann::json to_json(const RateSequence& s);
[[nodiscard]] nlohmann::json to_json(const CoverRates& c);
[[nodiscard]] nlohmann::json to_json(const LipschitzRates& l);
[[nodiscard]] nlohmann::json to_json(const CoverEntropy& e);
[[nodiscard]] nlohmann::json to_json(const SeparatedEntropy& e);
[[nodiscard]] nlohmann::json to_json(const EntropyTables& e);
[[nodiscard]] nlohmann::json to_json(const DimEstimate& d);
[[nodiscard]] nlohmann::json to_json(const HlDelta& h);
[[nodiscard]] nlohmann::json to_json(const PreimageBound& p);
[[nodiscard]] nlohmann::json to_json(const IdentityCheck& c);
[[nodiscard]] nlohmann::json to_json(const InequalityRow& r);
[[nodiscard]] nlohmann::json to_json(const InequalityReport& r);
[[nodiscard]] nlohmann::json to_json(const KnownInvariants& k);
[[nodiscard]] nlohmann::json to_json(const Measurements& m);
[[nodiscard]] nlohmann::json to_json(const Analysis& a);

/// Family catalog as printed by `list --json`.
[[nodiscard]] nlohmann::json catalog_json();

/// Resolved spec plus the space size, diameter, resolution floor and reference values.
[[nodiscard]] nlohmann::json system_json(const SystemBundle& bundle);

/// %.17g, with inf, -inf and nan spelled out.
[[nodiscard]] std::string csv_number(double v);

/// Comma-joined line; fields containing a comma or quote are quoted.
[[nodiscard]] std::string csv_line(const std::vector<std::string>& fields);

// CSV tables; each starts with its header line.
[[nodiscard]] std::string delta_csv(const std::string& system, const std::vector<CoverRates>& covers);
[[nodiscard]] std::string rates_csv(const std::string& system, const std::vector<CoverRates>& covers,
                                    const std::optional<HlDelta>& hl_delta, const std::string& hl_delta_cover,
                                    const LipschitzRates& lipschitz);
[[nodiscard]] std::string entropy_csv(const std::string& system, const EntropyTables& tables);
[[nodiscard]] std::string dims_csv(const std::string& system, const DimEstimate& dims);
/// name, lhs, rhs, slack, tol, pass, lhs_src, rhs_src, status.
[[nodiscard]] std::string inequality_csv(const InequalityReport& report);

}  // namespace lebdyn
