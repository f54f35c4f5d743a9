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

#ifndef GREENVIRT_EXPERIMENT_HPP
#define GREENVIRT_EXPERIMENT_HPP

/// \file experiment.hpp
///
/// Runs a scenario in one of three modes and writes the results.
///
///   noncollab  every operator optimizes alone
///   collab     all operators form one group
///   group      operators are split into groups
///
/// Sweeps clone the scenario for each value of one parameter.

#include <greenvirt/grouping.hpp>
#include <greenvirt/scenario.hpp>
#include <greenvirt/sleeping.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenvirt {

enum class RunMode
{
	noncollab,
	collab,
	group
};

inline const char* to_string(RunMode m)
{
	switch (m)
	{
		case RunMode::noncollab: return "noncollab";
		case RunMode::collab:    return "collab";
		case RunMode::group:     return "group";
	}
	return "unknown";
}

inline RunMode parse_mode(const std::string& s)
{
	if (s == "noncollab") return RunMode::noncollab;
	if (s == "collab")    return RunMode::collab;
	if (s == "group")     return RunMode::group;
	throw std::invalid_argument("unknown mode '" + s + "'");
}

/// One operator's line of a report.
struct OperatorRow
{
	int op = 0;
	std::string name;
	double energy_u = 0.0;
	double profit_u = 0.0;
	int active_u = 0;
	double energy_c = 0.0;
	double profit_c = 0.0;
	int active_c = 0;
	int group_id = 0;      ///< 1-based
	std::string status;    ///< standalone, collaborating, no_collaboration
	std::string prices;    ///< "1-2:0.25;1-3:0.5" for the operator's group
};

struct RunReport
{
	RunMode mode = RunMode::noncollab;
	std::optional<double> sweep_value;
	std::vector<OperatorRow> rows;
	std::vector<CollaborationOutcome> groups;
	std::vector<PairRecord> pair_log;
};

struct Report
{
	std::string scenario;
	RunMode mode = RunMode::noncollab;
	std::string axis;  ///< empty for a single run
	std::vector<RunReport> runs;
};

namespace detail {

inline std::string format_number(double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6g", v);
	return buf;
}

inline std::string price_list(const CollaborationOutcome& g)
{
	std::string s;
	for (std::size_t k = 0; k < g.pairs.size(); ++k)
	{
		if (!s.empty())
		{
			s += ';';
		}
		s += g.pairs.label(k) + ":" + format_number(k < g.prices.size() ? g.prices[k] : 0.0);
	}
	return s;
}

inline void fill_rows(RunReport& r, const Scenario& sc, const std::vector<Baseline>& baselines)
{
	for (std::size_t gi = 0; gi < r.groups.size(); ++gi)
	{
		const auto& g = r.groups[gi];
		for (std::size_t i = 0; i < g.members.size(); ++i)
		{
			const int l = g.members[i];
			const auto& b = baselines.at(static_cast<std::size_t>(l));
			OperatorRow row;
			row.op = l;
			row.name = sc.operators.at(static_cast<std::size_t>(l)).name;
			row.energy_u = b.energy;
			row.profit_u = b.profit.total();
			row.active_u = static_cast<int>(b.activation.active_count());
			row.energy_c = g.energy.at(i);
			row.profit_c = g.profits.at(i);
			row.active_c = g.active_per_member.at(i);
			row.group_id = static_cast<int>(gi) + 1;
			row.status = g.status;
			row.prices = price_list(g);
			r.rows.push_back(std::move(row));
		}
	}
	std::sort(r.rows.begin(), r.rows.end(), [](const OperatorRow& a, const OperatorRow& b) { return a.op < b.op; });
}

} // namespace detail

/// Runs one scenario. Throws ScenarioInfeasible when an operator cannot
/// serve its users alone.
inline RunReport run(const Scenario& sc, RunMode mode)
{
	const World world(sc);
	const auto sopt = sleep_options(sc);
	const auto baselines = all_baselines(world, sopt);
	RunReport r;
	r.mode = mode;

	std::vector<int> everyone;
	for (int l = 0; l < sc.num_operators(); ++l)
	{
		everyone.push_back(l);
	}

	if (mode == RunMode::noncollab || sc.num_operators() == 1)
	{
		for (int l : everyone)
		{
			auto g = detail::standalone_outcome(world.network({l}), baselines);
			g.status = "standalone";
			r.groups.push_back(std::move(g));
		}
	}
	else if (mode == RunMode::collab)
	{
		r.groups.push_back(optimize_collab(world, everyone, baselines, sopt));
	}
	else
	{
		auto res = identify_groups(world, baselines, grouping_options(sc));
		r.groups = std::move(res.groups);
		r.pair_log = std::move(res.log);
	}
	detail::fill_rows(r, sc, baselines);
	return r;
}

/// Sweep axis: "pi:L", "users:L" or "users:L:S" (1-based operator and
/// service), "fixed_revenue:L" or "beta_re".
inline Scenario apply_axis(Scenario sc, const std::string& axis, double value)
{
	auto parts = std::vector<std::string>{};
	{
		std::string cur;
		for (char c : axis)
		{
			if (c == ':')
			{
				parts.push_back(cur);
				cur.clear();
			}
			else
			{
				cur.push_back(c);
			}
		}
		parts.push_back(cur);
	}
	auto op_at = [&](std::size_t k) -> OperatorSpec& {
		if (parts.size() <= k)
		{
			throw std::invalid_argument("axis '" + axis + "' needs an operator number");
		}
		const int l = std::stoi(parts[k]) - 1;
		if (l < 0 || l >= sc.num_operators())
		{
			throw std::invalid_argument("axis '" + axis + "': no such operator");
		}
		return sc.operators[static_cast<std::size_t>(l)];
	};

	if (parts[0] == "pi")
	{
		if (value < 0.0)
		{
			throw std::invalid_argument("energy price must be nonnegative");
		}
		op_at(1).energy_price_mu_per_wh = value;
	}
	else if (parts[0] == "fixed_revenue")
	{
		op_at(1).fixed_revenue_mu = value;
	}
	else if (parts[0] == "users")
	{
		auto& op = op_at(1);
		const std::size_t s = parts.size() > 2 ? static_cast<std::size_t>(std::stoi(parts[2]) - 1) : 0;
		if (s >= op.services.size())
		{
			throw std::invalid_argument("axis '" + axis + "': no such service");
		}
		if (value < 0.0 || value != std::floor(value))
		{
			throw std::invalid_argument("user totals must be nonnegative integers");
		}
		op.services[s].users = static_cast<int>(value);
	}
	else if (parts[0] == "beta_re")
	{
		// Op1 receives beta percent of the shared budget, Op2 the rest; each
		// share is split equally over that operator's sites.
		if (sc.num_operators() < 2)
		{
			throw std::invalid_argument("beta_re needs two operators");
		}
		if (value < 0.0 || value > 100.0)
		{
			throw std::invalid_argument("beta_re must lie in [0, 100]");
		}
		const double budget = sc.shared_renewable_wh.value_or(sc.operators[0].renewable_wh);
		sc.operators[0].renewable_wh = budget * value / 100.0;
		sc.operators[1].renewable_wh = budget * (100.0 - value) / 100.0;
		sc.operators[0].renewable_allocation_wh.clear();
		sc.operators[1].renewable_allocation_wh.clear();
	}
	else
	{
		throw std::invalid_argument("unknown sweep axis '" + axis + "'");
	}
	return sc;
}

inline Report sweep(const Scenario& sc, const std::string& axis, const std::vector<double>& values,
                    RunMode mode = RunMode::collab)
{
	if (values.empty())
	{
		throw std::invalid_argument("sweep needs at least one value");
	}
	// Reject a bad axis before any work is done.
	(void)apply_axis(sc, axis, values.front());
	Report rep;
	rep.scenario = sc.name;
	rep.mode = mode;
	rep.axis = axis;
	for (double v : values)
	{
		auto r = run(apply_axis(sc, axis, v), mode);
		r.sweep_value = v;
		rep.runs.push_back(std::move(r));
	}
	return rep;
}

inline Report single_run(const Scenario& sc, RunMode mode)
{
	Report rep;
	rep.scenario = sc.name;
	rep.mode = mode;
	rep.runs.push_back(run(sc, mode));
	return rep;
}

inline nlohmann::ordered_json to_json(const CollaborationOutcome& g)
{
	nlohmann::ordered_json j;
	j["members"] = nlohmann::ordered_json::array();
	for (int l : g.members)
	{
		j["members"].push_back(l + 1);
	}
	j["status"] = g.status;
	j["activation"] = g.activation.to_string();
	nlohmann::ordered_json prices = nlohmann::ordered_json::object();
	for (std::size_t k = 0; k < g.pairs.size(); ++k)
	{
		prices[g.pairs.label(k)] = k < g.prices.size() ? g.prices[k] : 0.0;
	}
	j["prices_mu"] = prices;
	j["energy_wh"] = g.energy;
	j["profit_mu"] = g.profits;
	j["baseline_energy_wh"] = g.baseline_energy;
	j["baseline_profit_mu"] = g.baseline_profit;
	j["active_bs"] = g.active_per_member;
	j["roamed_users"] = g.roamed;
	j["lambda_hat"] = g.lambda_hat;
	j["greedy_steps"] = g.trace.empty() ? 0 : static_cast<int>(g.trace.size()) - 1;
	j["selected_step"] = g.selected_step;
	if (!g.diagnostic.empty())
	{
		j["diagnostic"] = g.diagnostic;
	}
	return j;
}

inline nlohmann::ordered_json to_json(const Report& rep)
{
	nlohmann::ordered_json j;
	j["scenario"] = rep.scenario;
	j["mode"] = to_string(rep.mode);
	if (!rep.axis.empty())
	{
		j["axis"] = rep.axis;
	}
	j["runs"] = nlohmann::ordered_json::array();
	for (const auto& r : rep.runs)
	{
		nlohmann::ordered_json rj;
		if (r.sweep_value)
		{
			rj["sweep_value"] = *r.sweep_value;
		}
		rj["operators"] = nlohmann::ordered_json::array();
		for (const auto& row : r.rows)
		{
			nlohmann::ordered_json o;
			o["operator"] = row.op + 1;
			o["name"] = row.name;
			o["E_u_Wh"] = row.energy_u;
			o["E_c_Wh"] = row.energy_c;
			o["P_u_MU"] = row.profit_u;
			o["P_c_MU"] = row.profit_c;
			o["active_bs_u"] = row.active_u;
			o["active_bs"] = row.active_c;
			o["group_id"] = row.group_id;
			o["status"] = row.status;
			o["prices"] = row.prices;
			rj["operators"].push_back(std::move(o));
		}
		rj["groups"] = nlohmann::ordered_json::array();
		for (const auto& g : r.groups)
		{
			rj["groups"].push_back(to_json(g));
		}
		if (!r.pair_log.empty())
		{
			rj["pair_evaluations"] = nlohmann::ordered_json::array();
			for (const auto& p : r.pair_log)
			{
				nlohmann::ordered_json pj;
				pj["members"] = nlohmann::ordered_json::array();
				for (int l : p.members)
				{
					pj["members"].push_back(l + 1);
				}
				pj["prices_exist"] = p.prices_exist;
				pj["collaborating"] = p.collaborating;
				pj["energy_before_wh"] = p.energy_before;
				pj["energy_after_wh"] = p.energy_after;
				pj["merged"] = p.merged;
				rj["pair_evaluations"].push_back(std::move(pj));
			}
		}
		j["runs"].push_back(std::move(rj));
	}
	return j;
}

inline std::string to_csv(const Report& rep)
{
	using detail::format_number;
	std::string out = "mode,operator,E_u_Wh,E_c_Wh,P_u_MU,P_c_MU,active_bs,group_id,prices,status,sweep_value\n";
	for (const auto& r : rep.runs)
	{
		for (const auto& row : r.rows)
		{
			out += std::string(to_string(rep.mode)) + "," + std::to_string(row.op + 1) + "," +
			       format_number(row.energy_u) + "," + format_number(row.energy_c) + "," +
			       format_number(row.profit_u) + "," + format_number(row.profit_c) + "," +
			       std::to_string(row.active_c) + "," + std::to_string(row.group_id) + "," + row.prices + "," +
			       row.status + "," + (r.sweep_value ? format_number(*r.sweep_value) : std::string()) + "\n";
		}
	}
	return out;
}

enum class ReportFormat
{
	json,
	csv
};

inline void emit(const Report& rep, ReportFormat format, const std::string& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
	{
		throw std::runtime_error("cannot open '" + path + "' for writing");
	}
	if (format == ReportFormat::json)
	{
		out << to_json(rep).dump(2) << '\n';
	}
	else
	{
		out << to_csv(rep);
	}
	if (!out)
	{
		throw std::runtime_error("write to '" + path + "' failed");
	}
}

} // namespace greenvirt

#endif // GREENVIRT_EXPERIMENT_HPP
