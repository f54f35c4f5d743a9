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

// greenvirt: run, sweep and validate scenario files.
//
// Exit codes: 0 success, 1 other error, 2 validation error, 3 infeasible
// scenario.

#include <greenvirt/greenvirt.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

std::vector<double> parse_values(const std::string& text)
{
	std::vector<double> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		if (item.empty())
		{
			continue;
		}
		std::size_t used = 0;
		const double v = std::stod(item, &used);
		if (used != item.size())
		{
			throw std::invalid_argument("bad sweep value '" + item + "'");
		}
		out.push_back(v);
	}
	return out;
}

greenvirt::Scenario load(const std::string& path, double resolution)
{
	auto sc = greenvirt::load_scenario(path);
	if (resolution > 0.0)
	{
		sc.resolution_per_km = resolution;
	}
	return sc;
}

greenvirt::ReportFormat format_of(const std::string& s)
{
	return s == "csv" ? greenvirt::ReportFormat::csv : greenvirt::ReportFormat::json;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Multi-operator base-station sleeping and roaming-price simulator"};
	app.require_subcommand(1);

	std::string scenario_path;
	std::string out_path;
	std::string format = "json";
	std::string mode = "collab";
	std::string axis;
	std::string values;
	double resolution = 0.0;

	auto* run_cmd = app.add_subcommand("run", "Run a scenario once");
	run_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
	run_cmd->add_option("--mode", mode, "noncollab, collab or group")
	    ->check(CLI::IsMember({"noncollab", "collab", "group"}));
	run_cmd->add_option("--out", out_path, "Report file")->required();
	run_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
	run_cmd->add_option("--resolution", resolution, "Quadrature points per km");

	auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario for several values of one parameter");
	sweep_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
	sweep_cmd->add_option("--axis", axis, "pi:L, users:L[:S], fixed_revenue:L or beta_re")->required();
	sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
	sweep_cmd->add_option("--mode", mode, "noncollab, collab or group")
	    ->check(CLI::IsMember({"noncollab", "collab", "group"}));
	sweep_cmd->add_option("--out", out_path, "Report file")->required();
	sweep_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
	sweep_cmd->add_option("--resolution", resolution, "Quadrature points per km");

	auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
	validate_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? 0 : kExitValidation;
	}

	try
	{
		if (validate_cmd->parsed())
		{
			const auto sc = load(scenario_path, 0.0);
			std::printf("%s: %d operators, %zu base stations\n", sc.name.c_str(), sc.num_operators(),
			            sc.num_sites());
			return 0;
		}
		const auto sc = load(scenario_path, resolution);
		greenvirt::Report rep;
		if (run_cmd->parsed())
		{
			rep = greenvirt::single_run(sc, greenvirt::parse_mode(mode));
		}
		else
		{
			const auto v = parse_values(values);
			rep = greenvirt::sweep(sc, axis, v, greenvirt::parse_mode(mode));
		}
		greenvirt::emit(rep, format_of(format), out_path);
		return 0;
	}
	catch (const greenvirt::ScenarioError& e)
	{
		std::fprintf(stderr, "validation error: %s\n", e.what());
		return kExitValidation;
	}
	catch (const greenvirt::ScenarioInfeasible& e)
	{
		std::fprintf(stderr, "infeasible scenario: %s\n", e.what());
		return kExitInfeasible;
	}
	catch (const std::invalid_argument& e)
	{
		std::fprintf(stderr, "invalid argument: %s\n", e.what());
		return kExitValidation;
	}
	catch (const std::exception& e)
	{
		std::fprintf(stderr, "error: %s\n", e.what());
		return kExitError;
	}
}
