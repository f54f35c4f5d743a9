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

void expect_contract(const CollaborationOutcome& g)
{
	if (!g.collaborating)
	{
		EXPECT_EQ(g.status, "no_collaboration");
		EXPECT_EQ(g.energy, g.baseline_energy);
		return;
	}
	EXPECT_LT(g.total_energy(), g.total_baseline_energy());
	for (std::size_t i = 0; i < g.members.size(); ++i)
	{
		const double b = g.baseline_profit[i];
		EXPECT_GE(g.profits[i], b - 1e-9 * std::max(1.0, std::abs(b)));
	}
}

TEST(Noncollaborative, NeverWorseThanAllOn)
{
	const World world(fixtures::small_two_op());
	for (int l = 0; l < 2; ++l)
	{
		const auto b = optimize_noncollab(world, l);
		ASSERT_FALSE(b.trace.empty());
		EXPECT_LE(b.energy, b.trace.front().total_energy + 1e-9);
		EXPECT_EQ(b.activation.size(), world.scenario.operators[static_cast<std::size_t>(l)].sites.size());
		EXPECT_GE(b.activation.active_count(), 1u);
		for (const auto& s : b.trace)
		{
			EXPECT_GE(s.total_energy, b.energy - 1e-9);
		}
	}
}

TEST(Noncollaborative, InfeasibleAllOnStateThrows)
{
	auto sc = fixtures::small_two_op();
	sc.operators[1].sites = {{1.5, 1.5}};
	sc.operators[1].services[0].users = 60;
	const World world(sc);
	try
	{
		optimize_noncollab(world, 1);
		FAIL() << "expected ScenarioInfeasible";
	}
	catch (const ScenarioInfeasible& e)
	{
		EXPECT_EQ(e.operator_id(), 1);
	}
}

TEST(StateEval, AllOffWithUsersIsACapacityViolation)
{
	const World world(fixtures::small_two_op());
	const auto net = world.network({0});
	const auto s = evaluate_state(net, ActivationVector(net.size(), false), {}, false);
	EXPECT_EQ(s.verdict, Verdict::capacity);
	EXPECT_FALSE(s.physical_ok());
}

TEST(Collaborative, OutcomeHonoursContract)
{
	const World world(fixtures::small_two_op());
	const auto base = all_baselines(world);
	const auto g = optimize_collab(world, {0, 1}, base);
	expect_contract(g);
	EXPECT_EQ(g.members, (std::vector<int>{0, 1}));
	EXPECT_EQ(g.prices.size(), 1u);
	if (g.collaborating)
	{
		EXPECT_GE(g.selected_step, 0);
		EXPECT_GE(g.lambda_hat, 1.0 - 1e-6);
	}
}

TEST(Collaborative, RejectsSingleOperator)
{
	const World world(fixtures::small_two_op());
	const auto base = all_baselines(world);
	EXPECT_THROW(optimize_collab(world, {1}, base), std::invalid_argument);
}

TEST(Collaborative, ExhaustiveSearchIsALowerBound)
{
	std::mt19937_64 rng(17);
	fixtures::RandomScenarioLimits lim;
	lim.max_ops = 2;
	lim.max_sites = 8;
	lim.resolution = 10.0;
	for (int trial = 0; trial < 6; ++trial)
	{
		const auto sc = fixtures::random_feasible_scenario(rng, lim);
		const World world(sc);
		const auto base = all_baselines(world);
		const auto net = world.network({0, 1});
		const auto greedy = optimize_collab(net, base);
		const auto exact = exhaustive_search(net, base);
		expect_contract(greedy);
		expect_contract(exact);
		EXPECT_LE(exact.total_energy(), greedy.total_energy() + 1e-9) << "trial " << trial;
	}
}

TEST(Collaborative, PriceSolvingModesAgree)
{
	const World world(fixtures::small_two_op());
	const auto base = all_baselines(world);
	SleepOptions eager;
	SleepOptions lazy;
	lazy.solving = PriceSolving::selected_only;
	for (auto gate : {PriceGate::rollback, PriceGate::elimination})
	{
		eager.gate = gate;
		lazy.gate = gate;
		const auto a = optimize_collab(world, {0, 1}, base, eager);
		const auto b = optimize_collab(world, {0, 1}, base, lazy);
		EXPECT_EQ(a.activation, b.activation);
		EXPECT_EQ(a.energy, b.energy);
		EXPECT_EQ(a.collaborating, b.collaborating);
	}
}

TEST(Collaborative, BestSelectionNeverAboveLast)
{
	std::mt19937_64 rng(23);
	fixtures::RandomScenarioLimits lim;
	lim.max_ops = 2;
	lim.max_sites = 8;
	lim.resolution = 10.0;
	for (int trial = 0; trial < 4; ++trial)
	{
		const World world(fixtures::random_feasible_scenario(rng, lim));
		const auto base = all_baselines(world);
		SleepOptions last;
		last.selection = RollbackSelection::last;
		const auto b = optimize_collab(world, {0, 1}, base);
		const auto l = optimize_collab(world, {0, 1}, base, last);
		EXPECT_EQ(b.collaborating, l.collaborating);
		EXPECT_LE(b.total_energy(), l.total_energy() + 1e-9);
	}
}

TEST(Collaborative, ThreadedCandidatesMatchSerial)
{
	auto sc = fixtures::small_two_op();
	const World world(sc);
	const auto base = all_baselines(world);
	SleepOptions par;
	par.threads = 3;
	const auto a = optimize_collab(world, {0, 1}, base);
	const auto b = optimize_collab(world, {0, 1}, base, par);
	EXPECT_EQ(a.activation, b.activation);
	EXPECT_EQ(a.energy, b.energy);
	EXPECT_EQ(a.prices, b.prices);
}

TEST(Collaborative, UnequalEnergyPricesLeadToCollaboration)
{
	auto sc = fixtures::small_two_op();
	sc.operators[0].energy_price_mu_per_wh = 3.0;
	sc.operators[0].services[0].users = 20;
	sc.operators[1].energy_price_mu_per_wh = 0.1;
	const World world(sc);
	const auto base = all_baselines(world);
	const auto g = optimize_collab(world, {0, 1}, base);
	ASSERT_TRUE(g.collaborating) << g.diagnostic;
	EXPECT_LT(g.active_per_member[0] + g.active_per_member[1], 7);
	expect_contract(g);
}

} // namespace
