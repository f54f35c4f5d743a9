// Copyright 2026 The greenvirt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREENVIRT_SCENARIO_HPP
#define GREENVIRT_SCENARIO_HPP

/// \file scenario.hpp
///
/// Scenario description and its JSON file format.
///
/// Field names carry their unit: `_km`, `_km2`, `_w`, `_wh`, `_dbm`, `_db`,
/// `_mu`, `_hours`. Base-station grids (`bs_grid`) are expanded into explicit
/// sites on load, so saving a loaded scenario always writes `bs_sites_km`.

#include <greenvirt/economics.hpp>
#include <greenvirt/geometry.hpp>
#include <greenvirt/power_energy.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenvirt {

/// Validation failure; `what()` starts with the offending field path.
class ScenarioError : public std::runtime_error
{
public:
	ScenarioError(const std::string& path, const std::string& msg)
		: std::runtime_error(path + ": " + msg), path_(path)
	{
	}

	const std::string& path() const { return path_; }

private:
	std::string path_;
};

/// Power model as written in a scenario file (dB units).
struct PowerModelSpec
{
	double a = 7.84;
	double b_w = 71.5;
	double p_max_dbm = 46.0;
	int k_max_users = 50;
	double path_loss_const_db = -128.1;
	double eta = 3.76;

	friend bool operator==(const PowerModelSpec&, const PowerModelSpec&) = default;
};

enum class DistanceUnit
{
	km,
	m
};

enum class PriceGate
{
	rollback,    ///< candidates need only power and capacity; profits are enforced by the rollback
	elimination  ///< candidates must also admit equilibrium prices
};

enum class PriceSolving
{
	per_candidate,  ///< equilibrium for every eligible candidate
	selected_only   ///< equilibrium only where a decision depends on it
};

/// Which state of the greedy trace the rollback returns.
enum class RollbackSelection
{
	best,  ///< lowest total energy among the states honouring the contract
	last   ///< the last such state, walking back from the end of the trace
};

enum class MergeCriterion
{
	pair_energy,    ///< smallest collaborative energy of the merged pair
	network_energy  ///< smallest energy of the whole network after the merge
};

/// Reference profits used by the all-sites-on pair screen of the grouping.
enum class PairReference
{
	optimized,  ///< each member's optimized standalone profit
	all_on      ///< each member's standalone profit with all of its sites on
};

struct AlgorithmOptions
{
	PriceGate price_gate = PriceGate::rollback;
	PriceSolving price_solving = PriceSolving::per_candidate;
	RollbackSelection rollback = RollbackSelection::best;
	bool grouping_resort = true;
	MergeCriterion merge_criterion = MergeCriterion::network_energy;
	PairReference pair_reference = PairReference::optimized;
	double equilibrium_tol = 1e-6;
	int equilibrium_max_iter = 200;
	unsigned threads = 1;

	friend bool operator==(const AlgorithmOptions&, const AlgorithmOptions&) = default;
};

struct ServiceSpec
{
	std::string name;
	double p_min_dbm = -90.0;
	double price_mu = 0.0;
	int users = 0;
	UserDistribution distribution{};

	friend bool operator==(const ServiceSpec& a, const ServiceSpec& b)
	{
		return a.name == b.name && a.p_min_dbm == b.p_min_dbm && a.price_mu == b.price_mu &&
		       a.users == b.users && a.distribution.kind == b.distribution.kind &&
		       a.distribution.mean == b.distribution.mean &&
		       a.distribution.variance == b.distribution.variance;
	}
};

struct OperatorSpec
{
	std::string name;
	std::vector<Point> sites;
	std::vector<ServiceSpec> services;
	double energy_price_mu_per_wh = 0.5;
	double fixed_revenue_mu = 0.0;
	double renewable_wh = 0.0;
	std::vector<double> renewable_allocation_wh;  ///< empty: equal split over sites
	std::optional<PowerModelSpec> power_model;

	friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

struct Scenario
{
	std::string name;
	std::string description;
	AreaSpec area{5.0, 5.0};
	double dt_hours = 1.0;
	double resolution_per_km = 50.0;
	ExpectationMode expectation = ExpectationMode::conditional;
	DistanceUnit distance_unit = DistanceUnit::km;
	PowerModelSpec power_model{};
	bool renewable_pooling = false;
	std::optional<double> shared_renewable_wh;
	double price_cap_mu = 1e6;
	AlgorithmOptions algorithm{};
	std::vector<OperatorSpec> operators;

	int num_operators() const { return static_cast<int>(operators.size()); }

	std::size_t num_sites() const
	{
		std::size_t n = 0;
		for (const auto& op : operators)
		{
			n += op.sites.size();
		}
		return n;
	}

	friend bool operator==(const Scenario& a, const Scenario& b)
	{
		return a.name == b.name && a.description == b.description &&
		       a.area.width == b.area.width && a.area.height == b.area.height &&
		       a.dt_hours == b.dt_hours && a.resolution_per_km == b.resolution_per_km &&
		       a.expectation == b.expectation && a.distance_unit == b.distance_unit &&
		       a.power_model == b.power_model && a.renewable_pooling == b.renewable_pooling &&
		       a.shared_renewable_wh == b.shared_renewable_wh &&
		       a.price_cap_mu == b.price_cap_mu && a.algorithm == b.algorithm &&
		       a.operators == b.operators;
	}
};

/// Linear-unit power model of operator `op`.
inline PowerModel power_model_for(const Scenario& sc, int op)
{
	const auto& spec = sc.operators.at(static_cast<std::size_t>(op)).power_model.value_or(sc.power_model);
	PowerModel m;
	m.a = spec.a;
	m.b_w = spec.b_w;
	m.p_max_w = dbm_to_watts(spec.p_max_dbm);
	m.k_max = spec.k_max_users;
	m.path_loss_const = db_to_linear(spec.path_loss_const_db);
	m.eta = sc.power_model.eta;
	m.distance_scale = sc.distance_unit == DistanceUnit::km ? 1.0 : 1000.0;
	return m;
}

inline Tariffs tariffs_of(const Scenario& sc)
{
	Tariffs t;
	for (const auto& op : sc.operators)
	{
		std::vector<double> prices;
		for (const auto& s : op.services)
		{
			prices.push_back(s.price_mu);
		}
		t.service_price.push_back(std::move(prices));
		t.energy_price.push_back(op.energy_price_mu_per_wh);
		t.fixed_revenue.push_back(op.fixed_revenue_mu);
	}
	return t;
}

/// Renewable energy allocated to each of an operator's sites.
inline std::vector<double> renewable_allocation(const OperatorSpec& op)
{
	if (!op.renewable_allocation_wh.empty())
	{
		return op.renewable_allocation_wh;
	}
	if (op.sites.empty())
	{
		return {};
	}
	return std::vector<double>(op.sites.size(), op.renewable_wh / static_cast<double>(op.sites.size()));
}

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& path)
{
	if (!j.is_object() || !j.contains(key))
	{
		throw ScenarioError(path + "." + key, "missing required field");
	}
	return j.at(key);
}

inline double number(const json& j, const std::string& path)
{
	if (!j.is_number())
	{
		throw ScenarioError(path, "expected a number");
	}
	const double v = j.get<double>();
	if (!std::isfinite(v))
	{
		throw ScenarioError(path, "must be finite");
	}
	return v;
}

inline double number_or(const json& j, const std::string& key, double fallback, const std::string& path)
{
	if (!j.contains(key))
	{
		return fallback;
	}
	return number(j.at(key), path + "." + key);
}

inline double nonnegative(double v, const std::string& path)
{
	if (v < 0.0)
	{
		throw ScenarioError(path, "must be nonnegative");
	}
	return v;
}

inline double positive(double v, const std::string& path)
{
	if (!(v > 0.0))
	{
		throw ScenarioError(path, "must be positive");
	}
	return v;
}

inline int integer(const json& j, const std::string& path)
{
	if (!j.is_number_integer() && !(j.is_number() && std::floor(j.get<double>()) == j.get<double>()))
	{
		throw ScenarioError(path, "expected an integer");
	}
	return static_cast<int>(j.get<double>());
}

inline std::string string_or(const json& j, const std::string& key, const std::string& fallback,
                             const std::string& path)
{
	if (!j.contains(key))
	{
		return fallback;
	}
	if (!j.at(key).is_string())
	{
		throw ScenarioError(path + "." + key, "expected a string");
	}
	return j.at(key).get<std::string>();
}

inline Point point(const json& j, const std::string& path)
{
	if (!j.is_array() || j.size() != 2)
	{
		throw ScenarioError(path, "expected [x, y]");
	}
	return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

inline PowerModelSpec parse_power(const json& j, const PowerModelSpec& base, const std::string& path)
{
	if (!j.is_object())
	{
		throw ScenarioError(path, "expected an object");
	}
	PowerModelSpec p = base;
	p.a = positive(number_or(j, "a", p.a, path), path + ".a");
	p.b_w = nonnegative(number_or(j, "b_w", p.b_w, path), path + ".b_w");
	p.p_max_dbm = number_or(j, "p_max_dbm", p.p_max_dbm, path);
	if (j.contains("k_max_users"))
	{
		p.k_max_users = integer(j.at("k_max_users"), path + ".k_max_users");
	}
	if (p.k_max_users < 1)
	{
		throw ScenarioError(path + ".k_max_users", "must be at least 1");
	}
	p.path_loss_const_db = number_or(j, "path_loss_const_db", p.path_loss_const_db, path);
	p.eta = number_or(j, "eta", p.eta, path);
	if (!(p.eta > 2.0))
	{
		throw ScenarioError(path + ".eta", "path-loss exponent must exceed 2");
	}
	return p;
}

inline json power_to_json(const PowerModelSpec& p)
{
	return {{"a", p.a},
	        {"b_w", p.b_w},
	        {"p_max_dbm", p.p_max_dbm},
	        {"k_max_users", p.k_max_users},
	        {"path_loss_const_db", p.path_loss_const_db},
	        {"eta", p.eta}};
}

inline UserDistribution parse_distribution(const json& j, const std::string& path)
{
	UserDistribution d;
	const std::string kind = string_or(j, "kind", "uniform", path);
	if (kind == "uniform")
	{
		d.kind = DistributionKind::uniform;
	}
	else if (kind == "gaussian")
	{
		d.kind = DistributionKind::gaussian;
		d.mean = point(require(j, "mean_km", path), path + ".mean_km");
		d.variance = positive(number(require(j, "variance_km2", path), path + ".variance_km2"),
		                      path + ".variance_km2");
	}
	else
	{
		throw ScenarioError(path + ".kind", "unknown distribution '" + kind + "'");
	}
	return d;
}

inline json distribution_to_json(const UserDistribution& d)
{
	if (d.kind == DistributionKind::uniform)
	{
		return {{"kind", "uniform"}};
	}
	return {{"kind", "gaussian"}, {"mean_km", {d.mean.x, d.mean.y}}, {"variance_km2", d.variance}};
}

template <class Enum>
struct EnumName
{
	Enum value;
	const char* name;
};

template <class Enum, std::size_t N>
Enum parse_enum(const json& j, const std::string& key, Enum fallback, const EnumName<Enum> (&names)[N],
                const std::string& path)
{
	if (!j.contains(key))
	{
		return fallback;
	}
	const std::string s = string_or(j, key, "", path);
	for (const auto& e : names)
	{
		if (s == e.name)
		{
			return e.value;
		}
	}
	throw ScenarioError(path + "." + key, "unknown value '" + s + "'");
}

template <class Enum, std::size_t N>
const char* enum_name(Enum v, const EnumName<Enum> (&names)[N])
{
	for (const auto& e : names)
	{
		if (e.value == v)
		{
			return e.name;
		}
	}
	return "?";
}

inline constexpr EnumName<ExpectationMode> kExpectationNames[] = {
    {ExpectationMode::conditional, "conditional"}, {ExpectationMode::literal, "literal"}};
inline constexpr EnumName<DistanceUnit> kUnitNames[] = {{DistanceUnit::km, "km"},
                                                        {DistanceUnit::m, "m"}};
inline constexpr EnumName<PriceGate> kGateNames[] = {{PriceGate::rollback, "rollback"},
                                                     {PriceGate::elimination, "elimination"}};
inline constexpr EnumName<PriceSolving> kSolvingNames[] = {
    {PriceSolving::per_candidate, "per_candidate"}, {PriceSolving::selected_only, "selected_only"}};
inline constexpr EnumName<RollbackSelection> kRollbackNames[] = {
    {RollbackSelection::best, "best"}, {RollbackSelection::last, "last"}};
inline constexpr EnumName<PairReference> kPairNames[] = {
    {PairReference::optimized, "optimized"}, {PairReference::all_on, "all_on"}};
inline constexpr EnumName<MergeCriterion> kMergeNames[] = {
    {MergeCriterion::pair_energy, "pair_energy"}, {MergeCriterion::network_energy, "network_energy"}};

} // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j)
{
	using detail::number;
	using detail::number_or;
	using detail::require;
	const std::string root = "$";
	if (!j.is_object())
	{
		throw ScenarioError(root, "scenario must be a JSON object");
	}

	Scenario sc;
	sc.name = detail::string_or(j, "name", "", root);
	sc.description = detail::string_or(j, "description", "", root);

	const auto& area = require(j, "area_km", root);
	sc.area.width = detail::positive(number(require(area, "width", root + ".area_km"), root + ".area_km.width"),
	                                 root + ".area_km.width");
	sc.area.height = detail::positive(number(require(area, "height", root + ".area_km"), root + ".area_km.height"),
	                                  root + ".area_km.height");
	sc.dt_hours = detail::positive(number_or(j, "dt_hours", sc.dt_hours, root), root + ".dt_hours");
	sc.resolution_per_km = number_or(j, "resolution_per_km", sc.resolution_per_km, root);
	if (sc.resolution_per_km < 1.0)
	{
		throw ScenarioError(root + ".resolution_per_km", "must be at least 1");
	}

	if (j.contains("path_loss"))
	{
		const auto& pl = j.at("path_loss");
		sc.expectation = detail::parse_enum(pl, "expectation", sc.expectation, detail::kExpectationNames,
		                                    root + ".path_loss");
		sc.distance_unit = detail::parse_enum(pl, "distance_unit", sc.distance_unit, detail::kUnitNames,
		                                      root + ".path_loss");
	}
	if (j.contains("power_model"))
	{
		sc.power_model = detail::parse_power(j.at("power_model"), sc.power_model, root + ".power_model");
	}
	if (j.contains("renewable_pooling"))
	{
		if (!j.at("renewable_pooling").is_boolean())
		{
			throw ScenarioError(root + ".renewable_pooling", "expected a boolean");
		}
		sc.renewable_pooling = j.at("renewable_pooling").get<bool>();
	}
	if (j.contains("shared_renewable_wh"))
	{
		sc.shared_renewable_wh = detail::nonnegative(number(j.at("shared_renewable_wh"), root + ".shared_renewable_wh"),
		                                             root + ".shared_renewable_wh");
	}
	sc.price_cap_mu = detail::positive(number_or(j, "price_cap_mu", sc.price_cap_mu, root), root + ".price_cap_mu");

	if (j.contains("algorithm"))
	{
		const auto& al = j.at("algorithm");
		const std::string p = root + ".algorithm";
		auto& o = sc.algorithm;
		o.price_gate = detail::parse_enum(al, "price_gate", o.price_gate, detail::kGateNames, p);
		o.price_solving = detail::parse_enum(al, "price_solving", o.price_solving, detail::kSolvingNames, p);
		o.rollback = detail::parse_enum(al, "rollback", o.rollback, detail::kRollbackNames, p);
		o.merge_criterion = detail::parse_enum(al, "merge_criterion", o.merge_criterion, detail::kMergeNames, p);
		o.pair_reference = detail::parse_enum(al, "pair_reference", o.pair_reference, detail::kPairNames, p);
		if (al.contains("grouping_resort"))
		{
			o.grouping_resort = al.at("grouping_resort").get<bool>();
		}
		o.equilibrium_tol = detail::positive(number_or(al, "equilibrium_tol", o.equilibrium_tol, p),
		                                     p + ".equilibrium_tol");
		if (al.contains("equilibrium_max_iter"))
		{
			o.equilibrium_max_iter = detail::integer(al.at("equilibrium_max_iter"), p + ".equilibrium_max_iter");
		}
		if (al.contains("threads"))
		{
			o.threads = static_cast<unsigned>(std::max(1, detail::integer(al.at("threads"), p + ".threads")));
		}
	}

	const auto& ops = require(j, "operators", root);
	if (!ops.is_array() || ops.empty())
	{
		throw ScenarioError(root + ".operators", "at least one operator is required");
	}
	for (std::size_t i = 0; i < ops.size(); ++i)
	{
		const std::string p = root + ".operators[" + std::to_string(i) + "]";
		const auto& oj = ops[i];
		if (!oj.is_object())
		{
			throw ScenarioError(p, "expected an object");
		}
		OperatorSpec op;
		op.name = detail::string_or(oj, "name", "Op" + std::to_string(i + 1), p);
		if (oj.contains("bs_sites_km"))
		{
			const auto& sites = oj.at("bs_sites_km");
			if (!sites.is_array())
			{
				throw ScenarioError(p + ".bs_sites_km", "expected an array of [x, y]");
			}
			for (std::size_t k = 0; k < sites.size(); ++k)
			{
				op.sites.push_back(detail::point(sites[k], p + ".bs_sites_km[" + std::to_string(k) + "]"));
			}
		}
		else if (oj.contains("bs_grid"))
		{
			const auto& g = oj.at("bs_grid");
			const int rows = detail::integer(require(g, "rows", p + ".bs_grid"), p + ".bs_grid.rows");
			const int cols = detail::integer(require(g, "cols", p + ".bs_grid"), p + ".bs_grid.cols");
			if (rows < 1 || cols < 1)
			{
				throw ScenarioError(p + ".bs_grid", "rows and cols must be positive");
			}
			op.sites = lattice_sites(sc.area, rows, cols);
		}
		else
		{
			throw ScenarioError(p, "one of bs_sites_km or bs_grid is required");
		}
		if (op.sites.empty())
		{
			throw ScenarioError(p + ".bs_sites_km", "operator has no base stations");
		}
		for (std::size_t k = 0; k < op.sites.size(); ++k)
		{
			if (!sc.area.contains(op.sites[k]))
			{
				throw ScenarioError(p + ".bs_sites_km[" + std::to_string(k) + "]", "base station outside the area");
			}
		}

		op.energy_price_mu_per_wh = detail::nonnegative(
		    number_or(oj, "energy_price_mu_per_wh", op.energy_price_mu_per_wh, p), p + ".energy_price_mu_per_wh");
		op.fixed_revenue_mu = number_or(oj, "fixed_revenue_mu", op.fixed_revenue_mu, p);
		op.renewable_wh = detail::nonnegative(number_or(oj, "renewable_wh", op.renewable_wh, p), p + ".renewable_wh");
		if (oj.contains("renewable_allocation_wh"))
		{
			const auto& al = oj.at("renewable_allocation_wh");
			if (!al.is_array() || al.size() != op.sites.size())
			{
				throw ScenarioError(p + ".renewable_allocation_wh", "expected one entry per base station");
			}
			double sum = 0.0;
			for (std::size_t k = 0; k < al.size(); ++k)
			{
				const std::string q = p + ".renewable_allocation_wh[" + std::to_string(k) + "]";
				op.renewable_allocation_wh.push_back(detail::nonnegative(number(al[k], q), q));
				sum += op.renewable_allocation_wh.back();
			}
			if (sum > op.renewable_wh * (1.0 + 1e-12) + 1e-9)
			{
				throw ScenarioError(p + ".renewable_allocation_wh", "allocation exceeds renewable_wh");
			}
		}
		if (oj.contains("power_model"))
		{
			op.power_model = detail::parse_power(oj.at("power_model"), sc.power_model, p + ".power_model");
			if (op.power_model->eta != sc.power_model.eta)
			{
				throw ScenarioError(p + ".power_model.eta", "path-loss exponent must match the scenario power model");
			}
		}

		const auto& services = require(oj, "services", p);
		if (!services.is_array() || services.empty())
		{
			throw ScenarioError(p + ".services", "at least one service is required");
		}
		for (std::size_t s = 0; s < services.size(); ++s)
		{
			const std::string q = p + ".services[" + std::to_string(s) + "]";
			const auto& sj = services[s];
			ServiceSpec svc;
			svc.name = detail::string_or(sj, "name", "service" + std::to_string(s + 1), q);
			svc.p_min_dbm = number_or(sj, "p_min_dbm", svc.p_min_dbm, q);
			svc.price_mu = detail::nonnegative(number(require(sj, "price_mu", q), q + ".price_mu"), q + ".price_mu");
			svc.users = detail::integer(require(sj, "users", q), q + ".users");
			if (svc.users < 0)
			{
				throw ScenarioError(q + ".users", "must be nonnegative");
			}
			if (sj.contains("distribution"))
			{
				svc.distribution = detail::parse_distribution(sj.at("distribution"), q + ".distribution");
			}
			op.services.push_back(std::move(svc));
		}
		sc.operators.push_back(std::move(op));
	}
	return sc;
}

inline nlohmann::json scenario_to_json(const Scenario& sc)
{
	using nlohmann::json;
	json j;
	j["name"] = sc.name;
	j["description"] = sc.description;
	j["area_km"] = {{"width", sc.area.width}, {"height", sc.area.height}};
	j["dt_hours"] = sc.dt_hours;
	j["resolution_per_km"] = sc.resolution_per_km;
	j["path_loss"] = {{"expectation", detail::enum_name(sc.expectation, detail::kExpectationNames)},
	                  {"distance_unit", detail::enum_name(sc.distance_unit, detail::kUnitNames)}};
	j["power_model"] = detail::power_to_json(sc.power_model);
	j["renewable_pooling"] = sc.renewable_pooling;
	if (sc.shared_renewable_wh)
	{
		j["shared_renewable_wh"] = *sc.shared_renewable_wh;
	}
	j["price_cap_mu"] = sc.price_cap_mu;
	const auto& o = sc.algorithm;
	j["algorithm"] = {{"price_gate", detail::enum_name(o.price_gate, detail::kGateNames)},
	                  {"price_solving", detail::enum_name(o.price_solving, detail::kSolvingNames)},
	                  {"rollback", detail::enum_name(o.rollback, detail::kRollbackNames)},
	                  {"merge_criterion", detail::enum_name(o.merge_criterion, detail::kMergeNames)},
	                  {"pair_reference", detail::enum_name(o.pair_reference, detail::kPairNames)},
	                  {"grouping_resort", o.grouping_resort},
	                  {"equilibrium_tol", o.equilibrium_tol},
	                  {"equilibrium_max_iter", o.equilibrium_max_iter},
	                  {"threads", o.threads}};
	json ops = json::array();
	for (const auto& op : sc.operators)
	{
		json oj;
		oj["name"] = op.name;
		json sites = json::array();
		for (const auto& s : op.sites)
		{
			sites.push_back({s.x, s.y});
		}
		oj["bs_sites_km"] = sites;
		oj["energy_price_mu_per_wh"] = op.energy_price_mu_per_wh;
		oj["fixed_revenue_mu"] = op.fixed_revenue_mu;
		oj["renewable_wh"] = op.renewable_wh;
		if (!op.renewable_allocation_wh.empty())
		{
			oj["renewable_allocation_wh"] = op.renewable_allocation_wh;
		}
		if (op.power_model)
		{
			oj["power_model"] = detail::power_to_json(*op.power_model);
		}
		json services = json::array();
		for (const auto& s : op.services)
		{
			services.push_back({{"name", s.name},
			                    {"p_min_dbm", s.p_min_dbm},
			                    {"price_mu", s.price_mu},
			                    {"users", s.users},
			                    {"distribution", detail::distribution_to_json(s.distribution)}});
		}
		oj["services"] = services;
		ops.push_back(std::move(oj));
	}
	j["operators"] = ops;
	return j;
}

inline Scenario load_scenario(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
	{
		throw std::runtime_error("cannot open scenario file '" + path + "'");
	}
	nlohmann::json j;
	try
	{
		j = nlohmann::json::parse(in, nullptr, true, true);
	}
	catch (const nlohmann::json::parse_error& e)
	{
		throw ScenarioError("$", std::string("malformed JSON: ") + e.what());
	}
	try
	{
		return scenario_from_json(j);
	}
	catch (const nlohmann::json::exception& e)
	{
		throw ScenarioError("$", e.what());
	}
}

inline void save_scenario(const Scenario& sc, const std::string& path)
{
	std::ofstream out(path);
	if (!out)
	{
		throw std::runtime_error("cannot write scenario file '" + path + "'");
	}
	out << scenario_to_json(sc).dump(2) << '\n';
}

} // namespace greenvirt

#endif // GREENVIRT_SCENARIO_HPP
