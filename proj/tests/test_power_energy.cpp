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

TEST(Units, DecibelConversions)
{
	EXPECT_NEAR(dbm_to_watts(46.0), 39.810717, 1e-6);
	EXPECT_NEAR(dbm_to_watts(-90.0), 1e-12, 1e-24);
	EXPECT_NEAR(watts_to_dbm(1.0), 30.0, 1e-12);
	EXPECT_NEAR(db_to_linear(-128.1) * 1e12, 0.15488166, 1e-7);
}

TEST(Power, TransmitPowerIsLinearInUsers)
{
	// P_min / K * N * E[r^eta]: -90 dBm, -128.1 dB, 10 users, E = 0.5 km^eta.
	const PowerModel m;
	const std::vector<int> n = {10};
	const std::vector<double> f = {0.5};
	const std::vector<double> pmin = {dbm_to_watts(-90.0)};
	const double expect = 10 * 1e-12 / db_to_linear(-128.1) * 0.5;
	EXPECT_NEAR(transmit_power(n, f, pmin, m), expect, 1e-12);
	EXPECT_NEAR(expect, 32.283, 1e-3);
}

TEST(Power, MetreDistancesScaleByThousandToTheEta)
{
	PowerModel km;
	PowerModel m = km;
	m.distance_scale = 1000.0;
	const std::vector<int> n = {1};
	const std::vector<double> f = {1.0};
	const std::vector<double> pmin = {1e-12};
	EXPECT_NEAR(transmit_power(n, f, pmin, m) / transmit_power(n, f, pmin, km), std::pow(1000.0, 3.76), 1e-3);
}

TEST(Power, ConsumedAndGridEnergy)
{
	const PowerModel m;
	EXPECT_DOUBLE_EQ(consumed_power(10.0, true, m), 7.84 * 10.0 + 71.5);
	EXPECT_DOUBLE_EQ(consumed_power(10.0, false, m), 0.0);
	EXPECT_DOUBLE_EQ(grid_energy(100.0, 2.0, 50.0), 150.0);
	EXPECT_DOUBLE_EQ(grid_energy(100.0, 1.0, 500.0), 0.0);
}

TEST(Energy, RenewablesSplitPerSiteOrPooled)
{
	const std::vector<BaseStation> sites = {{0, {0.5, 0.5}}, {0, {1.5, 0.5}}, {1, {1.0, 1.5}}};
	RenewablePlan plan;
	plan.operator_total_wh = {100.0, 30.0};
	plan.per_site_wh = {50.0, 50.0, 30.0};
	ActivationVector act(3, true);
	act.set(1, false);
	EXPECT_EQ(plan.effective(sites, act), (std::vector<double>{50.0, 50.0, 30.0}));
	plan.pooling = true;
	EXPECT_EQ(plan.effective(sites, act), (std::vector<double>{100.0, 0.0, 30.0}));
}

TEST(Energy, OperatorLedgerSumsGridEnergyOfActiveSites)
{
	const AreaSpec area{2.0, 1.0};
	const auto g = build_grid(area, 10.0);
	const std::vector<BaseStation> sites = {{0, {0.5, 0.5}}, {1, {1.5, 0.5}}};
	const std::vector<UserPopulation> pops = {{0, 0, {}, 10}, {1, 0, {}, 10}};
	const ActivationVector on(2, true);
	const auto a = assign_users(sites, on, g, pops, 2);
	RenewablePlan plan;
	plan.operator_total_wh = {40.0, 0.0};
	plan.per_site_wh = {40.0, 0.0};
	const std::vector<PowerModel> models(2);
	const std::vector<double> pmin = {1e-12, 1e-12};
	const auto led = operator_energy(a, on, sites, plan, models, pmin, 1.0, 2);
	ASSERT_EQ(led.operator_wh.size(), 2u);
	EXPECT_NEAR(led.operator_wh[0], led.consumed_w[0] - 40.0, 1e-12);
	EXPECT_NEAR(led.operator_wh[1], led.consumed_w[1], 1e-12);
	EXPECT_NEAR(led.renewable_used_wh[0], 40.0, 1e-12);
	EXPECT_GT(led.transmit_w[0], 0.0);
	EXPECT_NEAR(led.total_wh(), led.operator_wh[0] + led.operator_wh[1], 1e-12);
}

TEST(Feasibility, CapacityAndPowerViolations)
{
	const AreaSpec area{4.0, 4.0};
	const auto g = build_grid(area, 10.0);
	const std::vector<BaseStation> sites = {{0, {2.0, 2.0}}};
	const std::vector<double> pmin = {1e-12};
	std::vector<PowerModel> models(1);

	const std::vector<UserPopulation> many = {{0, 0, {}, 51}};
	const auto a = assign_users(sites, ActivationVector(1, true), g, many, 1);
	EXPECT_EQ(check_feasibility(a, ActivationVector(1, true), models, pmin)[0], CellStatus::capacity_violation);

	// 50 users, conditional E[r^3.76] over a 4 km square is far above the budget.
	const std::vector<UserPopulation> fifty = {{0, 0, {}, 50}};
	const auto b = assign_users(sites, ActivationVector(1, true), g, fifty, 1);
	EXPECT_EQ(check_feasibility(b, ActivationVector(1, true), models, pmin)[0], CellStatus::power_violation);

	models[0].p_max_w = 1e9;
	EXPECT_EQ(check_feasibility(b, ActivationVector(1, true), models, pmin)[0], CellStatus::ok);
}

} // namespace
