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

#ifndef GREENVIRT_MOLPP_HPP
#define GREENVIRT_MOLPP_HPP

/// \file molpp.hpp
///
/// Equilibrium roaming prices for a group of operators with a fixed set of
/// active sites, found by an aspiration-level game:
///
///  - every operator starts aspiring to its individual optimum over the
///    profitable price set S = { p : profit_l(p) >= baseline_l for all l };
///  - each round solves  max lambda  s.t.  profit_l(p) >= lambda * d_l,
///    p in S,  and measures each player's achievement profit_l / d_l;
///  - the best-served player leaves the game once it reaches its
///    aspiration, and the worst-served one bisects its aspiration towards
///    its baseline;
///  - the game stops when every operator reaches its aspiration.
///
/// Prices live in [0, price_cap], which keeps S bounded.

#include <greenvirt/economics.hpp>
#include <greenvirt/lp.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace greenvirt {

struct EquilibriumOptions
{
	double tol = 1e-6;
	int max_iter = 200;
	double price_cap = 1e6;
	double bracket_floor = 1e-9;
};

struct IndividualOptimum
{
	double value = 0.0;           ///< maximum profit of the player over S
	std::vector<double> prices;   ///< where it is attained
};

/// One round of the game, kept for inspection.
struct AspirationRound
{
	double lambda_hat = 0.0;
	std::vector<double> lambdas;
	std::vector<double> aspirations;  ///< d_l used in this round (shifted)
	std::vector<double> lower;        ///< bracket after the update (shifted)
	std::vector<double> upper;
	int targeted = -1;                ///< player whose aspiration was bisected
	int removed = -1;                 ///< player that left the game
};

struct EquilibriumResult
{
	bool feasible = false;
	std::vector<double> prices;
	double lambda_hat = 0.0;
	std::vector<double> lambdas;
	std::vector<double> profits;       ///< at `prices`, unshifted
	std::vector<double> optima;        ///< individual optima, unshifted
	double shift = 0.0;                ///< added to every profit during the game
	int iterations = 0;
	std::string diagnostic;
	std::vector<AspirationRound> rounds;
};

namespace detail {

inline lp::LinearProgram price_region(std::span<const AffineProfit> affines,
                                      std::span<const Profit> baselines, double price_cap)
{
	const auto cs = build_constraint_system(affines, baselines);
	const std::size_t n = affines.empty() ? 0 : affines.front().coef.size();
	lp::LinearProgram prog;
	prog.objective.assign(n, 0.0);
	prog.matrix = cs.A;
	prog.rhs = cs.b;
	prog.lower.assign(n, 0.0);
	prog.upper.assign(n, price_cap);
	return prog;
}

inline bool close_enough(double a, double b)
{
	return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace detail

/// True when some price vector in [0, cap]^n keeps every member at or
/// above its baseline.
inline bool prices_exist(std::span<const AffineProfit> affines, std::span<const Profit> baselines,
                         double price_cap = 1e6)
{
	if (affines.empty())
	{
		return true;
	}
	return lp::is_feasible(detail::price_region(affines, baselines, price_cap));
}

/// Maximum of player l's profit over S. Empty when S is empty.
inline std::optional<IndividualOptimum> individual_optimum(std::size_t l,
                                                           std::span<const AffineProfit> affines,
                                                           std::span<const Profit> baselines,
                                                           double price_cap = 1e6)
{
	auto prog = detail::price_region(affines, baselines, price_cap);
	prog.objective = affines[l].coef;
	const auto out = lp::solve(prog);
	if (out.status != lp::LpStatus::optimal)
	{
		return std::nullopt;
	}
	return IndividualOptimum{affines[l].at(out.x), out.x};
}

/// Runs the aspiration game for one group. `affines[l]` and `baselines[l]`
/// belong to the same member; all affines share one price vector layout.
inline EquilibriumResult solve_equilibrium(std::span<const AffineProfit> affines,
                                           std::span<const Profit> baselines,
                                           const EquilibriumOptions& opt = {})
{
	EquilibriumResult res;
	const std::size_t m = affines.size();
	if (m != baselines.size())
	{
		throw std::invalid_argument("solve_equilibrium: one baseline per member required");
	}
	if (m < 2)
	{
		throw std::invalid_argument("solve_equilibrium: a group needs at least two operators");
	}
	const std::size_t n = affines.front().coef.size();

	if (!prices_exist(affines, baselines, opt.price_cap))
	{
		res.diagnostic = "no price vector satisfies every member's profitability constraint";
		return res;
	}

	// Ratios only make sense for positive aspirations, so move every profit
	// up until the smallest baseline is at least one.
	double min_base = baselines.front().total();
	for (const auto& b : baselines)
	{
		min_base = std::min(min_base, b.total());
	}
	const double shift = std::max(0.0, 1.0 - min_base);
	res.shift = shift;

	std::vector<double> d(m), lo(m), hi(m);
	for (std::size_t l = 0; l < m; ++l)
	{
		const auto best = individual_optimum(l, affines, baselines, opt.price_cap);
		if (!best)
		{
			res.diagnostic = "individual optimum could not be computed";
			return res;
		}
		res.optima.push_back(best->value);
		d[l] = best->value + shift;
		hi[l] = d[l];
		lo[l] = std::min(baselines[l].total() + shift, hi[l]);
	}

	auto base_prog = detail::price_region(affines, baselines, opt.price_cap);
	std::vector<bool> in_game(m, true);
	std::size_t players = m;

	for (int it = 1; it <= opt.max_iter; ++it)
	{
		// Variables: prices, then lambda.
		lp::LinearProgram prog;
		prog.objective.assign(n + 1, 0.0);
		prog.objective[n] = 1.0;
		prog.lower.assign(n + 1, 0.0);
		prog.upper.assign(n + 1, opt.price_cap);
		prog.upper[n] = lp::kInfinity;
		for (std::size_t l = 0; l < m; ++l)
		{
			std::vector<double> row(n + 1);
			for (std::size_t k = 0; k < n; ++k)
			{
				row[k] = -affines[l].coef[k];
			}
			row[n] = d[l];
			prog.matrix.push_back(std::move(row));
			prog.rhs.push_back(affines[l].constant() + shift);
		}
		for (std::size_t r = 0; r < base_prog.num_rows(); ++r)
		{
			auto row = base_prog.matrix[r];
			row.push_back(0.0);
			prog.matrix.push_back(std::move(row));
			prog.rhs.push_back(base_prog.rhs[r]);
		}
		const auto sol = lp::solve(prog);
		if (sol.status != lp::LpStatus::optimal)
		{
			res.diagnostic = std::string("aspiration program ended ") + lp::to_string(sol.status) +
			                 " at round " + std::to_string(it);
			res.iterations = it;
			return res;
		}

		std::vector<double> prices(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
		AspirationRound round;
		round.lambda_hat = sol.x[n];
		round.aspirations = d;
		for (std::size_t l = 0; l < m; ++l)
		{
			round.lambdas.push_back((affines[l].at(prices) + shift) / d[l]);
		}

		// Lowest member index wins ties on both ends.
		std::optional<std::size_t> lmax, lmin;
		for (std::size_t l = 0; l < m; ++l)
		{
			if (!in_game[l])
			{
				continue;
			}
			const double v = round.lambdas[l];
			if (!lmax || (v > round.lambdas[*lmax] && !detail::close_enough(v, round.lambdas[*lmax])))
			{
				lmax = l;
			}
			if (!lmin || (v < round.lambdas[*lmin] && !detail::close_enough(v, round.lambdas[*lmin])))
			{
				lmin = l;
			}
		}
		if (lmax && round.lambdas[*lmax] >= 1.0 - opt.tol)
		{
			in_game[*lmax] = false;
			--players;
			round.removed = static_cast<int>(*lmax);
		}
		if (players > 0 && lmin && in_game[*lmin])
		{
			// An unattained aspiration is lowered, an attained one raised,
			// by halving the bracket [baseline, individual optimum].
			const std::size_t l = *lmin;
			if (round.lambdas[l] < 1.0 - opt.tol)
			{
				hi[l] = d[l];
			}
			else
			{
				lo[l] = d[l];
			}
			d[l] = (hi[l] - lo[l] < opt.bracket_floor) ? lo[l] : 0.5 * (lo[l] + hi[l]);
			round.targeted = static_cast<int>(l);
		}
		round.lower = lo;
		round.upper = hi;

		res.prices = prices;
		res.lambda_hat = round.lambda_hat;
		res.lambdas = round.lambdas;
		res.iterations = it;
		res.rounds.push_back(std::move(round));

		if (res.lambda_hat >= 1.0 - opt.tol)
		{
			res.feasible = true;
			break;
		}
		if (players == 0)
		{
			res.diagnostic = "every player left the game before the group reached its aspirations";
			return res;
		}
	}

	if (!res.feasible)
	{
		res.diagnostic = "no equilibrium within " + std::to_string(opt.max_iter) + " rounds";
		return res;
	}
	res.profits.clear();
	for (std::size_t l = 0; l < m; ++l)
	{
		res.profits.push_back(affines[l].at(res.prices));
	}
	return res;
}

} // namespace greenvirt

#endif // GREENVIRT_MOLPP_HPP
