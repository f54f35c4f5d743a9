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

#ifndef GREENVIRT_TESTS_SUPPORT_HPP
#define GREENVIRT_TESTS_SUPPORT_HPP

#include <greenvirt/greenvirt.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace greenvirt::fixtures {

inline std::string scenario_path(const std::string& name)
{
	return std::string(GREENVIRT_SCENARIO_DIR) + "/" + name;
}

/// Two operators on a small area, quick enough for unit tests.
inline Scenario small_two_op(double resolution = 10.0)
{
	Scenario sc;
	sc.name = "small_two_op";
	sc.area = {3.0, 3.0};
	sc.resolution_per_km = resolution;
	sc.expectation = ExpectationMode::literal;

	OperatorSpec a;
	a.name = "A";
	a.sites = lattice_sites(sc.area, 2, 2);
	a.services.push_back({"data", -90.0, 3.0, 60, {}});
	a.energy_price_mu_per_wh = 0.5;

	OperatorSpec b;
	b.name = "B";
	b.sites = {{0.75, 1.5}, {2.25, 1.5}, {1.5, 2.5}};
	b.services.push_back({"data", -90.0, 4.0, 40, {}});
	b.energy_price_mu_per_wh = 1.0;

	sc.operators = {a, b};
	return sc;
}

struct RandomScenarioLimits
{
	int min_ops = 2;
	int max_ops = 3;
	int min_sites = 4;
	int max_sites = 12;
	int min_users = 20;
	int max_users = 200;
	double resolution = 20.0;
};

/// Random operators with uniformly placed sites and users. Every operator
/// gets at least one site and one user; totals stay within the limits.
inline Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioLimits& lim = {})
{
	std::uniform_int_distribution<int> ops_d(lim.min_ops, lim.max_ops);
	const int ops = ops_d(rng);
	std::uniform_int_distribution<int> sites_d(std::max(lim.min_sites, ops), lim.max_sites);
	std::uniform_int_distribution<int> users_d(std::max(lim.min_users, ops), lim.max_users);
	const int n_sites = sites_d(rng);
	const int n_users = users_d(rng);

	Scenario sc;
	sc.name = "random";
	sc.area = {4.0, 4.0};
	sc.resolution_per_km = lim.resolution;
	sc.expectation = ExpectationMode::literal;

	std::vector<int> site_count(static_cast<std::size_t>(ops), 1);
	std::vector<int> user_count(static_cast<std::size_t>(ops), 1);
	std::uniform_int_distribution<int> pick(0, ops - 1);
	for (int k = ops; k < n_sites; ++k)
	{
		++site_count[static_cast<std::size_t>(pick(rng))];
	}
	for (int k = ops; k < n_users; ++k)
	{
		++user_count[static_cast<std::size_t>(pick(rng))];
	}

	std::uniform_real_distribution<double> pos(0.2, 3.8);
	std::uniform_real_distribution<double> energy_price(0.1, 2.5);
	std::uniform_real_distribution<double> service_price(1.0, 8.0);
	std::uniform_real_distribution<double> renewable(0.0, 300.0);
	for (int l = 0; l < ops; ++l)
	{
		OperatorSpec op;
		op.name = "Op" + std::to_string(l + 1);
		for (int k = 0; k < site_count[static_cast<std::size_t>(l)]; ++k)
		{
			op.sites.push_back({pos(rng), pos(rng)});
		}
		op.services.push_back({"data", -90.0, service_price(rng), user_count[static_cast<std::size_t>(l)], {}});
		op.energy_price_mu_per_wh = energy_price(rng);
		op.renewable_wh = renewable(rng);
		sc.operators.push_back(std::move(op));
	}
	return sc;
}

/// Whether every operator can serve its users with all of its sites on.
inline bool standalone_feasible(const Scenario& sc)
{
	const World world(sc);
	for (int l = 0; l < sc.num_operators(); ++l)
	{
		const auto net = world.network({l});
		const auto s = evaluate_state(net, ActivationVector(net.size(), true), {}, false);
		if (!s.physical_ok())
		{
			return false;
		}
	}
	return true;
}

/// Draws until `standalone_feasible` holds.
inline Scenario random_feasible_scenario(std::mt19937_64& rng, const RandomScenarioLimits& lim = {},
                                         int* rejected = nullptr)
{
	for (;;)
	{
		auto sc = random_scenario(rng, lim);
		if (standalone_feasible(sc))
		{
			return sc;
		}
		if (rejected)
		{
			++*rejected;
		}
	}
}

// Linear programming by vertex enumeration. Every vertex of
// { A x <= b, lower <= x <= upper } is the solution of n tight constraints;
// infinite upper bounds are replaced by a large box whose faces mark
// unboundedness.

struct VertexOracle
{
	lp::LpStatus status = lp::LpStatus::infeasible;
	double value = 0.0;
	std::size_t vertices = 0;
};

namespace detail {

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> r)
{
	const std::size_t n = r.size();
	for (std::size_t c = 0; c < n; ++c)
	{
		std::size_t piv = c;
		for (std::size_t i = c + 1; i < n; ++i)
		{
			if (std::abs(m[i][c]) > std::abs(m[piv][c]))
			{
				piv = i;
			}
		}
		if (std::abs(m[piv][c]) < 1e-10)
		{
			return std::nullopt;
		}
		std::swap(m[piv], m[c]);
		std::swap(r[piv], r[c]);
		for (std::size_t i = 0; i < n; ++i)
		{
			if (i == c)
			{
				continue;
			}
			const double f = m[i][c] / m[c][c];
			for (std::size_t k = c; k < n; ++k)
			{
				m[i][k] -= f * m[c][k];
			}
			r[i] -= f * r[c];
		}
	}
	std::vector<double> x(n);
	for (std::size_t i = 0; i < n; ++i)
	{
		x[i] = r[i] / m[i][i];
	}
	return x;
}

} // namespace detail

inline VertexOracle enumerate_vertices(const lp::LinearProgram& prog, double box = 1e8)
{
	const std::size_t n = prog.num_vars();
	struct Row
	{
		std::vector<double> a;
		double b;
		bool box_face;
	};
	std::vector<Row> rows;
	for (std::size_t i = 0; i < prog.num_rows(); ++i)
	{
		rows.push_back({prog.matrix[i], prog.rhs[i], false});
	}
	for (std::size_t k = 0; k < n; ++k)
	{
		std::vector<double> e(n, 0.0);
		e[k] = -1.0;
		const double lo = prog.lower.empty() ? 0.0 : prog.lower[k];
		rows.push_back({e, -lo, false});
		e[k] = 1.0;
		const double hi = prog.upper.empty() ? lp::kInfinity : prog.upper[k];
		rows.push_back({e, std::isfinite(hi) ? hi : box, !std::isfinite(hi)});
	}

	VertexOracle out;
	double best_inner = -lp::kInfinity;
	double best_any = -lp::kInfinity;
	std::vector<std::size_t> pick(n);
	// Lexicographic n-subsets of the rows.
	for (std::size_t k = 0; k < n; ++k)
	{
		pick[k] = k;
	}
	if (rows.size() < n)
	{
		return out;
	}
	for (;;)
	{
		std::vector<std::vector<double>> m;
		std::vector<double> r;
		bool on_box = false;
		for (std::size_t k : pick)
		{
			m.push_back(rows[k].a);
			r.push_back(rows[k].b);
			on_box = on_box || rows[k].box_face;
		}
		if (const auto x = detail::solve_square(m, r))
		{
			bool ok = true;
			for (const auto& row : rows)
			{
				double lhs = 0.0;
				for (std::size_t k = 0; k < n; ++k)
				{
					lhs += row.a[k] * (*x)[k];
				}
				if (lhs > row.b + 1e-7 * std::max(1.0, std::abs(row.b)))
				{
					ok = false;
					break;
				}
			}
			if (ok)
			{
				++out.vertices;
				double v = 0.0;
				for (std::size_t k = 0; k < n; ++k)
				{
					v += prog.objective[k] * (*x)[k];
				}
				best_any = std::max(best_any, v);
				if (!on_box)
				{
					best_inner = std::max(best_inner, v);
				}
			}
		}
		std::size_t i = n;
		while (i > 0 && pick[i - 1] == rows.size() - n + (i - 1))
		{
			--i;
		}
		if (i == 0)
		{
			break;
		}
		++pick[i - 1];
		for (std::size_t k = i; k < n; ++k)
		{
			pick[k] = pick[k - 1] + 1;
		}
	}
	if (out.vertices == 0)
	{
		return out;
	}
	if (best_any > best_inner + 1e-6 * std::max(1.0, std::abs(best_inner)))
	{
		out.status = lp::LpStatus::unbounded;
		return out;
	}
	out.status = lp::LpStatus::optimal;
	out.value = best_inner;
	return out;
}

/// Integer-coefficient program with up to `max_vars` variables and
/// `max_rows` rows; about half of the variables get finite upper bounds.
inline lp::LinearProgram random_program(std::mt19937_64& rng, std::size_t max_vars = 5, std::size_t max_rows = 8)
{
	std::uniform_int_distribution<std::size_t> nv(1, max_vars);
	std::uniform_int_distribution<std::size_t> nr(1, max_rows);
	std::uniform_int_distribution<int> coef(-5, 5);
	std::uniform_int_distribution<int> rhs(-4, 12);
	std::uniform_int_distribution<int> coin(0, 1);
	lp::LinearProgram prog;
	const std::size_t n = nv(rng);
	const std::size_t m = nr(rng);
	for (std::size_t k = 0; k < n; ++k)
	{
		prog.objective.push_back(coef(rng));
	}
	for (std::size_t i = 0; i < m; ++i)
	{
		std::vector<double> row;
		for (std::size_t k = 0; k < n; ++k)
		{
			row.push_back(coef(rng));
		}
		prog.matrix.push_back(std::move(row));
		prog.rhs.push_back(rhs(rng));
	}
	if (coin(rng))
	{
		for (std::size_t k = 0; k < n; ++k)
		{
			prog.lower.push_back(coin(rng) ? 0.0 : -2.0);
			prog.upper.push_back(coin(rng) ? 6.0 : lp::kInfinity);
		}
	}
	return prog;
}

/// Affine profits of a random roaming pattern among `m` members, with
/// baselines a little below or above the zero-price profits.
struct RandomGroup
{
	std::vector<AffineProfit> affines;
	std::vector<Profit> baselines;
};

inline RandomGroup random_group(std::mt19937_64& rng, int m)
{
	const PricePairs pairs([m] {
		std::vector<int> v;
		for (int i = 0; i < m; ++i)
		{
			v.push_back(i);
		}
		return v;
	}());
	std::uniform_int_distribution<int> roam(0, 30);
	std::vector<std::vector<int>> n(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
	for (int t = 0; t < m; ++t)
	{
		for (int l = 0; l < m; ++l)
		{
			if (t != l)
			{
				n[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)] = roam(rng);
			}
		}
	}
	std::uniform_real_distribution<double> operating(-200.0, 800.0);
	std::uniform_real_distribution<double> delta(-60.0, 40.0);
	std::uniform_real_distribution<double> fixed(0.0, 100.0);
	RandomGroup g;
	for (int l = 0; l < m; ++l)
	{
		AffineProfit ap;
		ap.operating = operating(rng);
		ap.fixed = fixed(rng);
		ap.coef.assign(pairs.size(), 0.0);
		for (std::size_t k = 0; k < pairs.size(); ++k)
		{
			const auto [u, v] = pairs.at(k);
			if (u != l && v != l)
			{
				continue;
			}
			const int t = u == l ? v : u;
			ap.coef[k] = n[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)] -
			             n[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)];
		}
		g.baselines.push_back({ap.operating + delta(rng), ap.fixed});
		g.affines.push_back(std::move(ap));
	}
	return g;
}

} // namespace greenvirt::fixtures

#endif // GREENVIRT_TESTS_SUPPORT_HPP
