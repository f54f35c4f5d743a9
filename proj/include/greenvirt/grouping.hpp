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

#ifndef GREENVIRT_GROUPING_HPP
#define GREENVIRT_GROUPING_HPP

/// \file grouping.hpp
///
/// Splits the operators into disjoint collaborating groups. The pool starts
/// with every operator on its own; the element with the largest energy
/// tries every other element as a partner and merges with the one giving
/// the best collaborative result, or is closed when nobody fits. A merged
/// element keeps the standalone baselines of all its members.

#include <greenvirt/molpp.hpp>
#include <greenvirt/sleeping.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace greenvirt {

struct GroupingOptions
{
	bool resort = true;
	MergeCriterion criterion = MergeCriterion::network_energy;
	PairReference reference = PairReference::optimized;
	SleepOptions sleep{};
};

inline GroupingOptions grouping_options(const Scenario& sc)
{
	GroupingOptions o;
	o.resort = sc.algorithm.grouping_resort;
	o.criterion = sc.algorithm.merge_criterion;
	o.reference = sc.algorithm.pair_reference;
	o.sleep = sleep_options(sc);
	return o;
}

/// One partner evaluation, kept for reporting.
struct PairRecord
{
	std::vector<int> members;
	bool prices_exist = false;     ///< with every site of the union on
	bool collaborating = false;    ///< after greedy sleeping and rollback
	double energy_before = 0.0;    ///< sum of the two elements' energies
	double energy_after = 0.0;
	bool merged = false;
};

struct GroupingResult
{
	std::vector<CollaborationOutcome> groups;  ///< sorted by lowest member id
	std::vector<PairRecord> log;
	int outer_steps = 0;
};

/// Standalone profit of operator `op` with every one of its sites on.
inline Profit all_on_profit(const World& world, int op)
{
	const Network net = world.network({op});
	const ActivationVector on(net.size(), true);
	const auto a = assign_users(net.sites, on, *net.grid, net.populations, net.weights, net.num_operators,
	                            net.assign);
	const auto ledger = operator_energy(a, on, net.sites, net.renewables, net.models, net.p_min_w, net.dt_hours,
	                                    net.num_operators);
	return profit_noncollab(op, a, ledger, net.tariffs);
}

/// Whether the union of `a` and `b` admits profitable prices with every
/// site on. All original members keep their own profitability rows,
/// measured against `reference` profits.
inline bool pair_feasibility(const World& world, const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<Baseline>& baselines, double price_cap = 1e6,
                             PairReference reference = PairReference::optimized)
{
	std::vector<int> members = a;
	members.insert(members.end(), b.begin(), b.end());
	const Network net = world.network(members);
	if (net.members.size() < 2)
	{
		return false;
	}
	std::vector<Profit> base;
	if (reference == PairReference::optimized)
	{
		base = detail::baseline_profits(net, baselines);
	}
	else
	{
		for (int l : net.members)
		{
			base.push_back(all_on_profit(world, l));
		}
	}
	const auto s = evaluate_state(net, ActivationVector(net.size(), true), base, false);
	if (!s.physical_ok())
	{
		return false;
	}
	return prices_exist(s.affines, base, price_cap);
}

inline GroupingResult identify_groups(const World& world, const std::vector<Baseline>& baselines,
                                      const GroupingOptions& opt = {})
{
	struct Element
	{
		std::vector<int> members;
		double energy = 0.0;
		std::optional<CollaborationOutcome> outcome;  ///< empty for a single operator
	};

	std::vector<Element> pool;
	for (const auto& b : baselines)
	{
		pool.push_back({{b.op}, b.energy, std::nullopt});
	}
	std::vector<Element> closed;
	GroupingResult res;

	auto by_energy = [](const Element& x, const Element& y) {
		if (x.energy != y.energy)
		{
			return x.energy > y.energy;
		}
		return x.members.front() < y.members.front();
	};
	std::stable_sort(pool.begin(), pool.end(), by_energy);

	while (!pool.empty())
	{
		++res.outer_steps;
		if (opt.resort)
		{
			std::stable_sort(pool.begin(), pool.end(), by_energy);
		}
		const Element head = pool.front();

		std::optional<std::size_t> best;
		double best_score = std::numeric_limits<double>::infinity();
		std::optional<CollaborationOutcome> best_outcome;
		std::size_t best_record = 0;
		for (std::size_t k = 1; k < pool.size(); ++k)
		{
			const auto& partner = pool[k];
			PairRecord rec;
			rec.members = head.members;
			rec.members.insert(rec.members.end(), partner.members.begin(), partner.members.end());
			std::sort(rec.members.begin(), rec.members.end());
			rec.energy_before = head.energy + partner.energy;
			rec.prices_exist =
			    pair_feasibility(world, head.members, partner.members, baselines, opt.sleep.equilibrium.price_cap,
			                     opt.reference);
			if (rec.prices_exist)
			{
				auto outcome = optimize_collab(world, rec.members, baselines, opt.sleep);
				rec.collaborating = outcome.collaborating;
				rec.energy_after = outcome.total_energy();
				if (outcome.collaborating)
				{
					// The network criterion ranks merges by what the whole
					// network saves; the pair criterion by the pair's total.
					const double score = opt.criterion == MergeCriterion::pair_energy
					                         ? rec.energy_after
					                         : rec.energy_after - rec.energy_before;
					const bool better =
					    score < best_score ||
					    (score == best_score && best && partner.members.front() < pool[*best].members.front());
					if (!best || better)
					{
						best = k;
						best_score = score;
						best_outcome = std::move(outcome);
						best_record = res.log.size();
					}
				}
			}
			res.log.push_back(std::move(rec));
		}

		if (best)
		{
			res.log[best_record].merged = true;
			Element merged;
			merged.members = best_outcome->members;
			merged.energy = best_outcome->total_energy();
			merged.outcome = std::move(best_outcome);
			pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*best));
			pool.front() = std::move(merged);
		}
		else
		{
			closed.push_back(head);
			pool.erase(pool.begin());
		}
	}

	for (auto& e : closed)
	{
		if (e.outcome)
		{
			res.groups.push_back(std::move(*e.outcome));
		}
		else
		{
			const Network net = world.network(e.members);
			res.groups.push_back(detail::standalone_outcome(net, baselines));
			res.groups.back().status = "standalone";
		}
	}
	std::sort(res.groups.begin(), res.groups.end(),
	          [](const CollaborationOutcome& x, const CollaborationOutcome& y) {
		          return x.members.front() < y.members.front();
	          });
	return res;
}

} // namespace greenvirt

#endif // GREENVIRT_GROUPING_HPP
