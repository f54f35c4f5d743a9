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

#ifndef GREENVIRT_POWER_ENERGY_HPP
#define GREENVIRT_POWER_ENERGY_HPP

/// \file power_energy.hpp
///
/// Base-station power model, per-cell transmit power and grid energy net of
/// locally generated renewables. Everything here is in linear units (W, Wh);
/// dB quantities are converted once when a scenario is loaded.

#include <greenvirt/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace greenvirt {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Linear-affine consumption model P = a * P_tx + b with a transmit budget
/// and a user capacity per site.
struct PowerModel
{
	double a = 7.84;
	double b_w = 71.5;
	double p_max_w = dbm_to_watts(46.0);
	int k_max = 50;
	double path_loss_const = db_to_linear(-128.1); ///< K, linear
	double eta = 3.76;
	/// Multiplier turning km into the distance unit that K is referenced to
	/// (1 for km, 1000 for m).
	double distance_scale = 1.0;

	void validate() const
	{
		if (!(a > 0.0))
		{
			throw std::invalid_argument("power model: a must be positive");
		}
		if (!(b_w >= 0.0))
		{
			throw std::invalid_argument("power model: b must be nonnegative");
		}
		if (!(p_max_w > 0.0))
		{
			throw std::invalid_argument("power model: maximum transmit power must be positive");
		}
		if (k_max < 1)
		{
			throw std::invalid_argument("power model: capacity must be at least one user");
		}
		if (!(eta > 2.0))
		{
			throw std::invalid_argument("power model: path-loss exponent must exceed 2");
		}
		if (!(path_loss_const > 0.0) || !(distance_scale > 0.0))
		{
			throw std::invalid_argument("power model: path-loss constant and distance scale must be positive");
		}
	}
};

/// Sum over services of N * (P_min / K) * E[r^eta]. `factors` are in
/// km^eta and are rescaled by distance_scale^eta.
inline double transmit_power(std::span<const int> counts, std::span<const double> factors,
                             std::span<const double> p_min_w, const PowerModel& model)
{
	if (counts.size() != factors.size() || counts.size() != p_min_w.size())
	{
		throw std::invalid_argument("transmit_power: per-service inputs differ in length");
	}
	const double unit = std::pow(model.distance_scale, model.eta);
	double p = 0.0;
	for (std::size_t s = 0; s < counts.size(); ++s)
	{
		if (counts[s] == 0)
		{
			continue;
		}
		p += counts[s] * (p_min_w[s] / model.path_loss_const) * factors[s] * unit;
	}
	return p;
}

inline double consumed_power(double p_tx, bool active, const PowerModel& model)
{
	return active ? model.a * p_tx + model.b_w : 0.0;
}

/// Grid energy q = max(P * dt - g, 0).
inline double grid_energy(double power_w, double dt_hours, double renewable_wh)
{
	return std::max(power_w * dt_hours - renewable_wh, 0.0);
}

/// Renewable energy available at each site for one period.
struct RenewablePlan
{
	std::vector<double> operator_total_wh;  ///< indexed by operator id
	std::vector<double> per_site_wh;        ///< indexed by site
	/// When set, an operator's budget is shared equally among its active
	/// sites instead of staying with the site it was allocated to.
	bool pooling = false;

	std::vector<double> effective(std::span<const BaseStation> sites,
	                              const ActivationVector& active) const
	{
		if (!pooling)
		{
			return per_site_wh;
		}
		std::vector<int> on(operator_total_wh.size(), 0);
		for (std::size_t j = 0; j < sites.size(); ++j)
		{
			if (active.is_on(j))
			{
				++on[static_cast<std::size_t>(sites[j].operator_id)];
			}
		}
		std::vector<double> g(sites.size(), 0.0);
		for (std::size_t j = 0; j < sites.size(); ++j)
		{
			const auto l = static_cast<std::size_t>(sites[j].operator_id);
			if (active.is_on(j) && on[l] > 0)
			{
				g[j] = operator_total_wh[l] / on[l];
			}
		}
		return g;
	}
};

/// Per-site and per-operator energy breakdown of one activation state.
struct EnergyLedger
{
	std::vector<double> transmit_w;
	std::vector<double> consumed_w;
	std::vector<double> grid_wh;
	std::vector<double> renewable_used_wh;
	std::vector<double> operator_wh;   ///< indexed by operator id

	double total_wh() const
	{
		double s = 0.0;
		for (double e : operator_wh)
		{
			s += e;
		}
		return s;
	}
};

/// Transmit power of site j under `assignment`.
inline double cell_transmit_power(const Assignment& assignment, std::size_t j,
                                  std::span<const double> p_min_w, const PowerModel& model)
{
	const auto& cell = assignment.cells.at(j);
	if (!cell.active)
	{
		return 0.0;
	}
	std::vector<int> counts;
	std::vector<double> factors;
	counts.reserve(cell.by_population.size());
	factors.reserve(cell.by_population.size());
	for (const auto& pc : cell.by_population)
	{
		counts.push_back(pc.degenerate ? 0 : pc.count);
		factors.push_back(pc.path_loss);
	}
	return transmit_power(counts, factors, p_min_w, model);
}

/// Composes transmit power, consumed power and grid energy for every site.
/// `models` holds one power model per site and `p_min_w` one threshold per
/// population.
inline EnergyLedger operator_energy(const Assignment& assignment, const ActivationVector& active,
                                    std::span<const BaseStation> sites, const RenewablePlan& plan,
                                    std::span<const PowerModel> models,
                                    std::span<const double> p_min_w, double dt_hours,
                                    int num_operators)
{
	if (sites.size() != active.size() || models.size() != sites.size())
	{
		throw std::invalid_argument("operator_energy: site, model and activation sizes differ");
	}
	EnergyLedger led;
	const std::size_t n = sites.size();
	led.transmit_w.assign(n, 0.0);
	led.consumed_w.assign(n, 0.0);
	led.grid_wh.assign(n, 0.0);
	led.renewable_used_wh.assign(n, 0.0);
	led.operator_wh.assign(static_cast<std::size_t>(num_operators), 0.0);
	if (active.active_count() == 0)
	{
		return led;
	}
	const auto g = plan.effective(sites, active);
	for (std::size_t j = 0; j < n; ++j)
	{
		if (!active.is_on(j))
		{
			continue;
		}
		led.transmit_w[j] = cell_transmit_power(assignment, j, p_min_w, models[j]);
		led.consumed_w[j] = consumed_power(led.transmit_w[j], true, models[j]);
		const double gj = j < g.size() ? g[j] : 0.0;
		led.grid_wh[j] = grid_energy(led.consumed_w[j], dt_hours, gj);
		led.renewable_used_wh[j] = led.consumed_w[j] * dt_hours - led.grid_wh[j];
		led.operator_wh[static_cast<std::size_t>(sites[j].operator_id)] += led.grid_wh[j];
	}
	return led;
}

enum class CellStatus
{
	ok,
	power_violation,
	capacity_violation
};

inline const char* to_string(CellStatus s)
{
	switch (s)
	{
		case CellStatus::ok:                 return "ok";
		case CellStatus::power_violation:    return "power_violation";
		case CellStatus::capacity_violation: return "capacity_violation";
	}
	return "unknown";
}

/// Flags active sites whose transmit power exceeds the budget or whose user
/// count exceeds the capacity. Capacity is reported first when both fail.
inline std::vector<CellStatus> check_feasibility(const Assignment& assignment,
                                                 const ActivationVector& active,
                                                 std::span<const PowerModel> models,
                                                 std::span<const double> p_min_w)
{
	std::vector<CellStatus> out(active.size(), CellStatus::ok);
	for (std::size_t j = 0; j < active.size(); ++j)
	{
		if (!active.is_on(j))
		{
			continue;
		}
		const auto& m = models[j];
		if (assignment.cells.at(j).total_users() > m.k_max)
		{
			out[j] = CellStatus::capacity_violation;
		}
		else if (cell_transmit_power(assignment, j, p_min_w, m) > m.p_max_w)
		{
			out[j] = CellStatus::power_violation;
		}
	}
	return out;
}

} // namespace greenvirt

#endif // GREENVIRT_POWER_ENERGY_HPP
