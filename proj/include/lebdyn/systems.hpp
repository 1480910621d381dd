#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "lebdyn/cover.hpp"
#include "lebdyn/dynamics.hpp"
#include "lebdyn/metric_space.hpp"
#include "lebdyn/rates.hpp"

namespace lebdyn {

/// Which system to build and how to probe it. Empty lists and a zero horizon
/// mean "family default"; `known` may override analytic reference values
/// (each override is cited as "override").
struct SystemSpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::vector<double> mesh_radii;
  std::size_t horizon = 0;
  std::vector<double> eps;
  nlohmann::json known = nlohmann::json::object();
  std::vector<std::vector<std::vector<PointId>>> covers;  // explicit covers: lists of members, each a list of ids
};

[[nodiscard]] SystemSpec spec_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json spec_to_json(const SystemSpec& spec);

struct NamedCover {
  std::string id;
  double radius = 0.0;  // mesh radius; cover diameter for explicit covers
  Cover cover;
};

struct SystemBundle {
  SystemSpec spec;  // fully resolved: every parameter and default filled in
  FiniteMetricSpace space;
  DynMap map;
  std::vector<NamedCover> covers;  // one mesh cover per radius in spec order, then explicit covers
  std::vector<double> dim_scales;  // decreasing covering radii for box counting
  KnownInvariants known;
};

struct ParamDoc {
  std::string name;
  double default_value = 0.0;
  std::string doc;
};

struct FamilyInfo {
  std::string name;
  std::string citation;
  std::string summary;
  std::vector<ParamDoc> params;
};

[[nodiscard]] const std::vector<FamilyInfo>& list_families();

/// Fills defaults and checks family and parameter names and ranges.
/// Throws UsageError (naming the nearest family for unknown names) or
/// NumericError when a parameter would synthesize distances below 1e-300.
[[nodiscard]] SystemSpec resolve_spec(const SystemSpec& spec);

[[nodiscard]] SystemBundle generate_system(const SystemSpec& spec);

/// s_0..s_count of the oscillating family (s_0 unused): s_1 = 0, s_2 = a, then
/// increments of a for 2^(2^(2k-2)) <= n < 2^(2^(2k-1)) and of b for
/// 2^(2^(2k-1)) <= n < 2^(2^(2k)).
[[nodiscard]] std::vector<double> oscillating_exponents(double a, double b, std::size_t count);

/// Smallest synthesized distance allowed by the generators.
inline constexpr double kUnderflowGuard = 1e-300;

}  // namespace lebdyn
