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

#include "support.hpp"

#include <gtest/gtest.h>

namespace {

using namespace greenvirt;

// One price, player 0 earns a per unit, player 1 pays it.
struct Interval
{
	std::vector<AffineProfit> affines;
	std::vector<Profit> baselines;
	double lo = 0.0;
	double hi = 0.0;
};

Interval interval(double c0, double c1, double a, double b0, double b1, double cap = 1e6)
{
	Interval iv;
	iv.affines = {{c0, 0.0, {a}}, {c1, 0.0, {-a}}};
	iv.baselines = {{b0, 0.0}, {b1, 0.0}};
	iv.lo = std::max(0.0, (b0 - c0) / a);
	iv.hi = std::min(cap, (c1 - b1) / a);
	return iv;
}

TEST(Equilibrium, PriceStaysInsideTheFeasibleInterval)
{
	const auto iv = interval(100.0, 300.0, 10.0, 120.0, 250.0);
	ASSERT_NEAR(iv.lo, 2.0, 1e-12);
	ASSERT_NEAR(iv.hi, 5.0, 1e-12);
	const auto r = solve_equilibrium(iv.affines, iv.baselines);
	ASSERT_TRUE(r.feasible) << r.diagnostic;
	ASSERT_EQ(r.prices.size(), 1u);
	EXPECT_GE(r.prices[0], iv.lo - 1e-9);
	EXPECT_LE(r.prices[0], iv.hi + 1e-9);
	EXPECT_NEAR(r.optima[0], 100.0 + 10.0 * iv.hi, 1e-9);
	EXPECT_NEAR(r.optima[1], 300.0 - 10.0 * iv.lo, 1e-9);
	EXPECT_GE(r.lambda_hat, 1.0 - 1e-6);
	for (double l : r.lambdas)
	{
		EXPECT_GE(l, 1.0 - 1e-6);
	}
	EXPECT_LE(r.iterations, 200);
}

TEST(Equilibrium, RandomIntervalsAgreeWithClosedForm)
{
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> u(-100.0, 400.0);
	std::uniform_real_distribution<double> slope(0.5, 20.0);
	int solved = 0;
	for (int trial = 0; trial < 100; ++trial)
	{
		const auto iv = interval(u(rng), u(rng), slope(rng), u(rng), u(rng));
		const auto r = solve_equilibrium(iv.affines, iv.baselines);
		if (iv.lo > iv.hi + 1e-9)
		{
			EXPECT_FALSE(r.feasible);
			EXPECT_FALSE(r.diagnostic.empty());
			continue;
		}
		ASSERT_TRUE(r.feasible) << "trial " << trial << ": " << r.diagnostic;
		EXPECT_GE(r.prices[0], iv.lo - 1e-7);
		EXPECT_LE(r.prices[0], iv.hi + 1e-7);
		++solved;
	}
	EXPECT_GT(solved, 10);
}

TEST(Equilibrium, NoPricesReportsDiagnostic)
{
	const auto iv = interval(0.0, 0.0, 1.0, 10.0, 10.0);
	EXPECT_FALSE(prices_exist(iv.affines, iv.baselines));
	const auto r = solve_equilibrium(iv.affines, iv.baselines);
	EXPECT_FALSE(r.feasible);
	EXPECT_NE(r.diagnostic.find("no price vector"), std::string::npos);
}

TEST(Equilibrium, RejectsSingletonGroup)
{
	const std::vector<AffineProfit> a = {{1.0, 0.0, {}}};
	const std::vector<Profit> b = {{0.0, 0.0}};
	EXPECT_THROW(solve_equilibrium(a, b), std::invalid_argument);
}

TEST(Equilibrium, NegativeBaselinesAreShifted)
{
	const auto iv = interval(-500.0, -100.0, 5.0, -480.0, -150.0);
	const auto r = solve_equilibrium(iv.affines, iv.baselines);
	ASSERT_TRUE(r.feasible) << r.diagnostic;
	EXPECT_NEAR(r.shift, 481.0, 1e-9);
	EXPECT_GE(r.profits[0], -480.0 - 1e-9);
	EXPECT_GE(r.profits[1], -150.0 - 1e-9);
}

TEST(Equilibrium, RandomGroupsConvergeWithProfitableMembers)
{
	std::mt19937_64 rng(5);
	int feasible = 0;
	for (int trial = 0; trial < 150; ++trial)
	{
		const int m = 2 + trial % 3;
		const auto g = fixtures::random_group(rng, m);
		if (!prices_exist(g.affines, g.baselines))
		{
			continue;
		}
		++feasible;
		const auto r = solve_equilibrium(g.affines, g.baselines);
		ASSERT_TRUE(r.feasible) << "trial " << trial << ": " << r.diagnostic;
		EXPECT_LE(r.iterations, 200);
		EXPECT_GE(r.lambda_hat, 1.0 - 1e-6);
		for (std::size_t l = 0; l < g.affines.size(); ++l)
		{
			EXPECT_GE(r.lambdas[l], 1.0 - 1e-6);
			const double b = g.baselines[l].total();
			EXPECT_GE(r.profits[l], b - 1e-6 * std::max(1.0, std::abs(b)));
			EXPECT_LE(r.profits[l], r.optima[l] + 1e-6 * std::max(1.0, std::abs(r.optima[l])));
		}
	}
	EXPECT_GT(feasible, 30);
}

TEST(Equilibrium, IndividualOptimumOfEachPlayer)
{
	const auto iv = interval(100.0, 300.0, 10.0, 120.0, 250.0);
	const auto best0 = individual_optimum(0, iv.affines, iv.baselines);
	const auto best1 = individual_optimum(1, iv.affines, iv.baselines);
	ASSERT_TRUE(best0 && best1);
	EXPECT_NEAR(best0->prices[0], 5.0, 1e-9);
	EXPECT_NEAR(best1->prices[0], 2.0, 1e-9);
}

} // namespace
