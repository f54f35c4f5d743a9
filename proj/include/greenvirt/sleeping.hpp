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

#ifndef GREENVIRT_SLEEPING_HPP
#define GREENVIRT_SLEEPING_HPP

/// \file sleeping.hpp
///
/// Greedy base-station sleeping. Starting with every site on, each step
/// switches off the site whose removal leaves the lowest total grid energy
/// while every remaining cell stays within its power budget and capacity.
/// For a group of operators the trace is then walked back until the state
/// saves energy and keeps every member at least as profitable as alone.

#include <greenvirt/economics.hpp>
#include <greenvirt/geometry.hpp>
#include <greenvirt/molpp.hpp>
#include <greenvirt/power_energy.hpp>
#include <greenvirt/scenario.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace greenvirt {

/// Raised when an operator cannot serve its own users with every site on.
class ScenarioInfeasible : public std::runtime_error
{
public:
	ScenarioInfeasible(int op, const std::string& msg)
		: std::runtime_error("operator " + std::to_string(op + 1) + ": " + msg), op_(op)
	{
	}

	int operator_id() const { return op_; }

private:
	int op_;
};

/// The sites, users and tariffs of a set of operators, in network order
/// (members in ascending id, each operator's sites in scenario order).
/// Operator ids stay global so assignments and tariffs index directly.
struct Network
{
	std::vector<int> members;
	int num_operators = 0;
	std::vector<BaseStation> sites;
	std::vector<std::size_t> global_site;  ///< index into the scenario-wide site list
	std::vector<PowerModel> models;        ///< per site
	std::vector<UserPopulation> populations;
	std::vector<std::vector<double>> weights;  ///< per population, on `grid`
	std::vector<double> p_min_w;               ///< per population
	std::shared_ptr<const QuadratureGrid> grid;
	RenewablePlan renewables;
	Tariffs tariffs;
	double dt_hours = 1.0;
	AssignOptions assign;

	std::size_t size() const { return sites.size(); }

	bool has_users() const
	{
		for (const auto& p : populations)
		{
			if (p.total > 0)
			{
				return true;
			}
		}
		return false;
	}

	/// Network positions of the sites belonging to operator `op`.
	std::vector<std::size_t> sites_of(int op) const
	{
		std::vector<std::size_t> out;
		for (std::size_t j = 0; j < sites.size(); ++j)
		{
			if (sites[j].operator_id == op)
			{
				out.push_back(j);
			}
		}
		return out;
	}
};

/// Precomputed quadrature shared by every network of one scenario.
struct World
{
	Scenario scenario;
	std::shared_ptr<const QuadratureGrid> grid;
	std::vector<std::vector<std::vector<double>>> weights;  ///< [operator][service]

	explicit World(Scenario sc) : scenario(std::move(sc))
	{
		grid = std::make_shared<const QuadratureGrid>(build_grid(scenario.area, scenario.resolution_per_km));
		for (const auto& op : scenario.operators)
		{
			std::vector<std::vector<double>> w;
			for (const auto& s : op.services)
			{
				w.push_back(grid->weights(s.distribution));
			}
			weights.push_back(std::move(w));
		}
	}

	int num_operators() const { return scenario.num_operators(); }

	/// Network restricted to `members` (any order; sorted internally).
	Network network(std::vector<int> members) const
	{
		std::sort(members.begin(), members.end());
		members.erase(std::unique(members.begin(), members.end()), members.end());
		const auto& sc = scenario;
		Network net;
		net.members = members;
		net.num_operators = sc.num_operators();
		net.grid = grid;
		net.tariffs = tariffs_of(sc);
		net.dt_hours = sc.dt_hours;
		net.assign.eta = sc.power_model.eta;
		net.assign.mode = sc.expectation;
		net.assign.threads = sc.algorithm.threads;
		net.renewables.pooling = sc.renewable_pooling;
		net.renewables.operator_total_wh.assign(static_cast<std::size_t>(sc.num_operators()), 0.0);

		std::vector<std::size_t> offset(sc.operators.size() + 1, 0);
		for (std::size_t l = 0; l < sc.operators.size(); ++l)
		{
			offset[l + 1] = offset[l] + sc.operators[l].sites.size();
		}
		for (int l : members)
		{
			if (l < 0 || l >= sc.num_operators())
			{
				throw std::out_of_range("network: operator id out of range");
			}
			const auto& op = sc.operators[static_cast<std::size_t>(l)];
			const auto model = power_model_for(sc, l);
			const auto alloc = renewable_allocation(op);
			net.renewables.operator_total_wh[static_cast<std::size_t>(l)] = op.renewable_wh;
			for (std::size_t k = 0; k < op.sites.size(); ++k)
			{
				net.sites.push_back({l, op.sites[k]});
				net.global_site.push_back(offset[static_cast<std::size_t>(l)] + k);
				net.models.push_back(model);
				net.renewables.per_site_wh.push_back(alloc[k]);
			}
			for (std::size_t s = 0; s < op.services.size(); ++s)
			{
				const auto& svc = op.services[s];
				net.populations.push_back({l, static_cast<int>(s), svc.distribution, svc.users});
				net.weights.push_back(weights[static_cast<std::size_t>(l)][s]);
				net.p_min_w.push_back(dbm_to_watts(svc.p_min_dbm));
			}
		}
		return net;
	}
};

enum class Verdict
{
	ok,
	power,
	capacity,
	price
};

inline const char* to_string(Verdict v)
{
	switch (v)
	{
		case Verdict::ok:       return "ok";
		case Verdict::power:    return "power";
		case Verdict::capacity: return "capacity";
		case Verdict::price:    return "price";
	}
	return "unknown";
}

/// Energies, profits and (for groups) equilibrium prices of one state.
struct StateEval
{
	ActivationVector activation;
	Verdict verdict = Verdict::ok;     ///< physical verdict, or price when priced and infeasible
	int violating_site = -1;
	std::vector<double> energy;        ///< per member, Wh
	double total_energy = 0.0;
	std::vector<int> active_per_member;
	std::vector<std::vector<int>> roamed;  ///< [member][member]
	std::vector<AffineProfit> affines;     ///< per member, groups only
	bool priced = false;
	std::optional<EquilibriumResult> equilibrium;
	std::vector<double> profits;       ///< per member; standalone profit for a single operator

	bool physical_ok() const { return verdict == Verdict::ok || verdict == Verdict::price; }
	bool price_ok() const { return priced && equilibrium && equilibrium->feasible; }
};

/// Standalone reference of one operator.
struct Baseline
{
	int op = 0;
	ActivationVector activation;  ///< over the operator's own sites
	double energy = 0.0;
	Profit profit;
	std::vector<StateEval> trace;
};

struct SleepOptions
{
	PriceGate gate = PriceGate::rollback;
	PriceSolving solving = PriceSolving::per_candidate;
	RollbackSelection selection = RollbackSelection::best;
	EquilibriumOptions equilibrium{};
	unsigned threads = 1;  ///< workers for candidate evaluation
};

inline SleepOptions sleep_options(const Scenario& sc)
{
	SleepOptions o;
	o.gate = sc.algorithm.price_gate;
	o.solving = sc.algorithm.price_solving;
	o.selection = sc.algorithm.rollback;
	o.equilibrium.tol = sc.algorithm.equilibrium_tol;
	o.equilibrium.max_iter = sc.algorithm.equilibrium_max_iter;
	o.equilibrium.price_cap = sc.price_cap_mu;
	o.threads = sc.algorithm.threads;
	return o;
}

/// One row of the per-step candidate table.
struct Candidate
{
	std::size_t site = 0;
	Verdict verdict = Verdict::ok;
	double total_energy = 0.0;
	bool eligible = false;
};

struct SleepStep
{
	int eliminated = -1;  ///< network index, -1 for the initial all-on state
	StateEval state;
	std::vector<Candidate> candidates;  ///< the table the elimination was chosen from
};

struct CollaborationOutcome
{
	std::vector<int> members;
	bool collaborating = false;
	std::string status = "no_collaboration";
	std::string diagnostic;
	ActivationVector activation;       ///< network order
	std::vector<std::size_t> global_site;
	std::vector<int> site_operator;
	PricePairs pairs;
	std::vector<double> prices;
	std::vector<double> energy;        ///< per member, Wh
	std::vector<double> profits;       ///< per member, MU
	std::vector<double> baseline_energy;
	std::vector<double> baseline_profit;
	std::vector<int> active_per_member;
	double lambda_hat = 0.0;
	std::vector<std::vector<int>> roamed;
	std::vector<SleepStep> trace;
	int selected_step = -1;            ///< T after the rollback, -1 without collaboration

	double total_energy() const
	{
		double s = 0.0;
		for (double e : energy)
		{
			s += e;
		}
		return s;
	}

	double total_baseline_energy() const
	{
		double s = 0.0;
		for (double e : baseline_energy)
		{
			s += e;
		}
		return s;
	}
};

namespace detail {

inline std::size_t member_slot(const Network& net, int op)
{
	const auto it = std::find(net.members.begin(), net.members.end(), op);
	if (it == net.members.end())
	{
		throw std::out_of_range("operator is not a member of the network");
	}
	return static_cast<std::size_t>(it - net.members.begin());
}

inline std::vector<Profit> baseline_profits(const Network& net, const std::vector<Baseline>& baselines)
{
	std::vector<Profit> out;
	for (int l : net.members)
	{
		const auto it = std::find_if(baselines.begin(), baselines.end(), [l](const Baseline& b) { return b.op == l; });
		if (it == baselines.end())
		{
			throw std::invalid_argument("missing standalone baseline for operator " + std::to_string(l + 1));
		}
		out.push_back(it->profit);
	}
	return out;
}

inline double baseline_total_energy(const Network& net, const std::vector<Baseline>& baselines)
{
	double s = 0.0;
	for (int l : net.members)
	{
		for (const auto& b : baselines)
		{
			if (b.op == l)
			{
				s += b.energy;
			}
		}
	}
	return s;
}

} // namespace detail

/// Evaluates one activation state: association, per-cell limits, energy and
/// profits. Group states (two or more members) also get equilibrium prices
/// when `solve_prices` is set and the state is physically feasible.
inline StateEval evaluate_state(const Network& net, const ActivationVector& activation,
                                const std::vector<Profit>& baseline_profit, bool solve_prices,
                                const EquilibriumOptions& eq = {})
{
	StateEval ev;
	ev.activation = activation;
	const std::size_t m = net.members.size();
	ev.energy.assign(m, 0.0);
	ev.active_per_member.assign(m, 0);
	ev.roamed.assign(m, std::vector<int>(m, 0));
	for (std::size_t j = 0; j < net.size(); ++j)
	{
		if (activation.is_on(j))
		{
			++ev.active_per_member[detail::member_slot(net, net.sites[j].operator_id)];
		}
	}

	if (activation.active_count() == 0)
	{
		if (net.has_users())
		{
			ev.verdict = Verdict::capacity;
			return ev;
		}
		// Nobody to serve: zero energy, revenue only.
		for (std::size_t i = 0; i < m; ++i)
		{
			const auto l = static_cast<std::size_t>(net.members[i]);
			ev.profits.push_back(net.tariffs.fixed_revenue.at(l));
		}
		ev.priced = m >= 2 && solve_prices;
		if (m >= 2)
		{
			const PricePairs pairs(net.members);
			for (std::size_t i = 0; i < m; ++i)
			{
				AffineProfit ap;
				ap.fixed = net.tariffs.fixed_revenue.at(static_cast<std::size_t>(net.members[i]));
				ap.coef.assign(pairs.size(), 0.0);
				ev.affines.push_back(ap);
			}
			if (solve_prices)
			{
				ev.equilibrium = solve_equilibrium(ev.affines, baseline_profit, eq);
				if (!ev.equilibrium->feasible)
				{
					ev.verdict = Verdict::price;
				}
				else
				{
					ev.profits = ev.equilibrium->profits;
				}
			}
		}
		return ev;
	}

	const auto a = assign_users(net.sites, activation, *net.grid, net.populations, net.weights,
	                            net.num_operators, net.assign);
	const auto status = check_feasibility(a, activation, net.models, net.p_min_w);
	for (std::size_t j = 0; j < status.size(); ++j)
	{
		if (status[j] != CellStatus::ok)
		{
			ev.verdict = status[j] == CellStatus::capacity_violation ? Verdict::capacity : Verdict::power;
			ev.violating_site = static_cast<int>(j);
			return ev;
		}
	}

	const auto ledger = operator_energy(a, activation, net.sites, net.renewables, net.models, net.p_min_w,
	                                    net.dt_hours, net.num_operators);
	for (std::size_t i = 0; i < m; ++i)
	{
		const auto l = static_cast<std::size_t>(net.members[i]);
		ev.energy[i] = ledger.operator_wh[l];
		ev.total_energy += ev.energy[i];
		for (std::size_t k = 0; k < m; ++k)
		{
			ev.roamed[i][k] = a.roamed[l][static_cast<std::size_t>(net.members[k])];
		}
	}

	if (m == 1)
	{
		ev.profits.push_back(profit_noncollab(net.members[0], a, ledger, net.tariffs).total());
		return ev;
	}
	const PricePairs pairs(net.members);
	for (int l : net.members)
	{
		ev.affines.push_back(profit_collab_affine(l, a, ledger, net.tariffs, pairs));
	}
	if (solve_prices)
	{
		ev.priced = true;
		ev.equilibrium = solve_equilibrium(ev.affines, baseline_profit, eq);
		if (!ev.equilibrium->feasible)
		{
			ev.verdict = Verdict::price;
		}
		else
		{
			ev.profits = ev.equilibrium->profits;
		}
	}
	return ev;
}

/// Prices a state evaluated without them.
inline void price_state(StateEval& ev, const std::vector<Profit>& baseline_profit, const EquilibriumOptions& eq)
{
	if (ev.priced || !ev.physical_ok() || ev.affines.size() < 2)
	{
		return;
	}
	ev.priced = true;
	ev.equilibrium = solve_equilibrium(ev.affines, baseline_profit, eq);
	if (ev.equilibrium->feasible)
	{
		ev.profits = ev.equilibrium->profits;
	}
	else
	{
		ev.verdict = Verdict::price;
	}
}

/// Tentatively switches off site `j` of a state and evaluates the result.
inline StateEval evaluate_candidate(const Network& net, const ActivationVector& activation, std::size_t j,
                                    const std::vector<Profit>& baseline_profit, bool solve_prices,
                                    const EquilibriumOptions& eq = {})
{
	if (!activation.is_on(j))
	{
		throw std::invalid_argument("evaluate_candidate: site is already off");
	}
	return evaluate_state(net, activation.with_off(j), baseline_profit, solve_prices, eq);
}

namespace detail {

/// The greedy descent shared by the standalone and group variants.
inline std::vector<SleepStep> greedy_descent(const Network& net, const std::vector<Profit>& baseline_profit,
                                             const SleepOptions& opt)
{
	const bool group = net.members.size() >= 2;
	const bool gate_on_price = group && opt.gate == PriceGate::elimination;
	const bool price_everything = group && opt.solving == PriceSolving::per_candidate;

	std::vector<SleepStep> trace;
	SleepStep first;
	first.state = evaluate_state(net, ActivationVector(net.size(), true), baseline_profit, price_everything,
	                             opt.equilibrium);
	if (gate_on_price)
	{
		price_state(first.state, baseline_profit, opt.equilibrium);
	}
	const bool start_ok = first.state.physical_ok() && (!gate_on_price || first.state.price_ok());
	trace.push_back(std::move(first));
	if (!start_ok)
	{
		return trace;
	}

	for (;;)
	{
		const auto& current = trace.back().state.activation;
		std::vector<std::size_t> on;
		for (std::size_t j = 0; j < current.size(); ++j)
		{
			if (current.is_on(j))
			{
				on.push_back(j);
			}
		}
		if (on.empty())
		{
			break;
		}

		std::vector<StateEval> evals(on.size());
		auto work = [&](std::size_t begin, std::size_t end) {
			for (std::size_t k = begin; k < end; ++k)
			{
				evals[k] = evaluate_candidate(net, current, on[k], baseline_profit, price_everything,
				                              opt.equilibrium);
			}
		};
		const std::size_t workers = std::min<std::size_t>(std::max(1u, opt.threads), on.size());
		if (workers <= 1)
		{
			work(0, on.size());
		}
		else
		{
			std::vector<std::jthread> pool;
			const std::size_t chunk = (on.size() + workers - 1) / workers;
			for (std::size_t w = 0; w < workers; ++w)
			{
				const std::size_t b = w * chunk;
				const std::size_t e = std::min(on.size(), b + chunk);
				if (b < e)
				{
					pool.emplace_back(work, b, e);
				}
			}
		}

		// Candidates in ascending energy, lowest index first on ties. With
		// price gating and lazy pricing the first one that prices wins,
		// which is the same choice as pricing every candidate up front.
		std::vector<std::size_t> order;
		for (std::size_t k = 0; k < on.size(); ++k)
		{
			if (evals[k].physical_ok())
			{
				order.push_back(k);
			}
		}
		std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
			return evals[x].total_energy < evals[y].total_energy;
		});
		std::optional<std::size_t> pick;
		for (std::size_t k : order)
		{
			if (gate_on_price)
			{
				price_state(evals[k], baseline_profit, opt.equilibrium);
				if (!evals[k].price_ok())
				{
					continue;
				}
			}
			pick = k;
			break;
		}

		std::vector<Candidate> table;
		for (std::size_t k = 0; k < on.size(); ++k)
		{
			const bool eligible = evals[k].physical_ok() && (!gate_on_price || !evals[k].priced || evals[k].price_ok());
			table.push_back({on[k], evals[k].verdict, evals[k].total_energy, eligible});
		}
		if (!pick)
		{
			trace.back().candidates = std::move(table);
			break;
		}
		SleepStep step;
		step.eliminated = static_cast<int>(on[*pick]);
		step.state = std::move(evals[*pick]);
		trace.back().candidates = std::move(table);
		trace.push_back(std::move(step));
	}
	return trace;
}

} // namespace detail

/// Standalone minimum-energy state of operator `op`. The best state met
/// along the greedy path is kept.
inline Baseline optimize_noncollab(const World& world, int op, const SleepOptions& opt = {})
{
	const Network net = world.network({op});
	const auto trace = detail::greedy_descent(net, {}, opt);
	if (!trace.front().state.physical_ok())
	{
		const auto& s = trace.front().state;
		throw ScenarioInfeasible(op, std::string("users cannot be served with every site on (") +
		                                 to_string(s.verdict) + " limit at site " +
		                                 std::to_string(s.violating_site + 1) + ")");
	}
	std::size_t best = 0;
	for (std::size_t t = 1; t < trace.size(); ++t)
	{
		if (trace[t].state.total_energy < trace[best].state.total_energy)
		{
			best = t;
		}
	}
	Baseline b;
	b.op = op;
	b.activation = trace[best].state.activation;
	b.energy = trace[best].state.total_energy;
	const auto& s = trace[best].state;
	// Rebuild the profit split for the chosen state.
	const auto a = s.activation.active_count() == 0
	                   ? Assignment{}
	                   : assign_users(net.sites, s.activation, *net.grid, net.populations, net.weights,
	                                  net.num_operators, net.assign);
	if (s.activation.active_count() == 0)
	{
		b.profit = {0.0, net.tariffs.fixed_revenue.at(static_cast<std::size_t>(op))};
	}
	else
	{
		const auto ledger = operator_energy(a, s.activation, net.sites, net.renewables, net.models, net.p_min_w,
		                                    net.dt_hours, net.num_operators);
		b.profit = profit_noncollab(op, a, ledger, net.tariffs);
	}
	for (const auto& step : trace)
	{
		b.trace.push_back(step.state);
	}
	return b;
}

inline std::vector<Baseline> all_baselines(const World& world, const SleepOptions& opt = {})
{
	std::vector<Baseline> out;
	for (int l = 0; l < world.num_operators(); ++l)
	{
		out.push_back(optimize_noncollab(world, l, opt));
	}
	return out;
}

namespace detail {

inline CollaborationOutcome standalone_outcome(const Network& net, const std::vector<Baseline>& baselines)
{
	CollaborationOutcome out;
	out.members = net.members;
	out.pairs = PricePairs(net.members);
	out.global_site = net.global_site;
	out.activation = ActivationVector(net.size(), false);
	for (const auto& site : net.sites)
	{
		out.site_operator.push_back(site.operator_id);
	}
	for (int l : net.members)
	{
		const auto it = std::find_if(baselines.begin(), baselines.end(), [l](const Baseline& b) { return b.op == l; });
		const auto own = net.sites_of(l);
		int active = 0;
		for (std::size_t k = 0; k < own.size(); ++k)
		{
			if (it->activation.is_on(k))
			{
				out.activation.set(own[k], true);
				++active;
			}
		}
		out.energy.push_back(it->energy);
		out.profits.push_back(it->profit.total());
		out.baseline_energy.push_back(it->energy);
		out.baseline_profit.push_back(it->profit.total());
		out.active_per_member.push_back(active);
	}
	out.prices.assign(out.pairs.size(), 0.0);
	out.roamed.assign(net.members.size(), std::vector<int>(net.members.size(), 0));
	return out;
}

/// True when a priced state honours the collaboration contract.
inline bool contract_holds(const StateEval& s, double baseline_energy, const std::vector<Profit>& baseline_profit,
                           double tol)
{
	if (!s.physical_ok() || !s.price_ok() || !(s.total_energy < baseline_energy))
	{
		return false;
	}
	for (std::size_t i = 0; i < baseline_profit.size(); ++i)
	{
		const double b = baseline_profit[i].total();
		if (s.profits[i] < b - tol * std::max(1.0, std::abs(b)))
		{
			return false;
		}
	}
	return true;
}

inline void adopt_state(CollaborationOutcome& out, const StateEval& s)
{
	out.collaborating = true;
	out.status = "collaborating";
	out.activation = s.activation;
	out.prices = s.equilibrium->prices;
	out.energy = s.energy;
	out.profits = s.profits;
	out.active_per_member = s.active_per_member;
	out.lambda_hat = s.equilibrium->lambda_hat;
	out.roamed = s.roamed;
}

} // namespace detail

/// Greedy sleeping for a group followed by the rollback. Without a state
/// that saves energy and keeps every member profitable, the outcome is
/// labelled no_collaboration and carries the standalone results.
inline CollaborationOutcome optimize_collab(const Network& net, const std::vector<Baseline>& baselines,
                                            const SleepOptions& opt = {})
{
	if (net.members.size() < 2)
	{
		throw std::invalid_argument("optimize_collab: a group needs at least two operators");
	}
	const auto base_profit = detail::baseline_profits(net, baselines);
	const double base_energy = detail::baseline_total_energy(net, baselines);

	auto out = detail::standalone_outcome(net, baselines);
	out.trace = detail::greedy_descent(net, base_profit, opt);

	// Walk back from the last state; T stops at the all-on state.
	const double tol = 1e-9;
	int chosen = -1;
	for (int t = static_cast<int>(out.trace.size()) - 1; t >= 0; --t)
	{
		auto& s = out.trace[static_cast<std::size_t>(t)].state;
		if (!s.physical_ok() || !(s.total_energy < base_energy))
		{
			continue;
		}
		if (chosen >= 0 && !(s.total_energy < out.trace[static_cast<std::size_t>(chosen)].state.total_energy))
		{
			continue;
		}
		price_state(s, base_profit, opt.equilibrium);
		if (detail::contract_holds(s, base_energy, base_profit, tol))
		{
			chosen = t;
			if (opt.selection == RollbackSelection::last)
			{
				break;
			}
		}
	}
	if (chosen >= 0)
	{
		detail::adopt_state(out, out.trace[static_cast<std::size_t>(chosen)].state);
		out.selected_step = chosen;
		return out;
	}
	out.diagnostic = "no state on the greedy path saves energy while keeping every member profitable";
	return out;
}

inline CollaborationOutcome optimize_collab(const World& world, const std::vector<int>& members,
                                            const std::vector<Baseline>& baselines, const SleepOptions& opt = {})
{
	return optimize_collab(world.network(members), baselines, opt);
}

/// Every activation state of the network, keeping the lowest-energy one
/// that honours the collaboration contract. Test oracle; at most 16 sites.
inline CollaborationOutcome exhaustive_search(const Network& net, const std::vector<Baseline>& baselines,
                                              const SleepOptions& opt = {})
{
	const std::size_t n = net.size();
	if (n > 16)
	{
		throw std::invalid_argument("exhaustive_search: at most 16 sites are supported");
	}
	const bool group = net.members.size() >= 2;
	const auto base_profit = group ? detail::baseline_profits(net, baselines) : std::vector<Profit>{};

	std::vector<StateEval> feasible;
	for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
	{
		ActivationVector v(n, false);
		for (std::size_t j = 0; j < n; ++j)
		{
			v.set(j, ((mask >> j) & 1u) != 0);
		}
		auto s = evaluate_state(net, v, base_profit, false, opt.equilibrium);
		if (s.physical_ok())
		{
			feasible.push_back(std::move(s));
		}
	}
	std::stable_sort(feasible.begin(), feasible.end(),
	                 [](const StateEval& a, const StateEval& b) { return a.total_energy < b.total_energy; });

	CollaborationOutcome out;
	if (!group)
	{
		out.members = net.members;
		out.global_site = net.global_site;
		if (!feasible.empty())
		{
			out.collaborating = false;
			out.status = "standalone";
			out.activation = feasible.front().activation;
			out.energy = feasible.front().energy;
			out.profits = feasible.front().profits;
			out.active_per_member = feasible.front().active_per_member;
		}
		return out;
	}

	out = detail::standalone_outcome(net, baselines);
	const double base_energy = detail::baseline_total_energy(net, baselines);
	for (auto& s : feasible)
	{
		if (!(s.total_energy < base_energy))
		{
			break;
		}
		price_state(s, base_profit, opt.equilibrium);
		if (detail::contract_holds(s, base_energy, base_profit, 1e-9))
		{
			detail::adopt_state(out, s);
			return out;
		}
	}
	out.diagnostic = "no activation state saves energy while keeping every member profitable";
	return out;
}

} // namespace greenvirt

#endif // GREENVIRT_SLEEPING_HPP
