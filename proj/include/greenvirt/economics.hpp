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

#ifndef GREENVIRT_ECONOMICS_HPP
#define GREENVIRT_ECONOMICS_HPP

/// \file economics.hpp
///
/// Operator profits with and without collaboration. The collaborative
/// profit is affine in the symmetric roaming prices, one price per
/// unordered pair of group members.

#include <greenvirt/geometry.hpp>
#include <greenvirt/power_energy.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace greenvirt {

/// Prices, all in monetary units (MU). Indexed by operator id.
struct Tariffs
{
	std::vector<std::vector<double>> service_price;  ///< [operator][service], MU per user
	std::vector<double> energy_price;                ///< MU per Wh of grid energy
	std::vector<double> fixed_revenue;               ///< R_op, MU
};

/// Unordered operator pairs of a group, in lexicographic order of the
/// member ids: (m0,m1), (m0,m2), ..., (m1,m2), ...
class PricePairs
{
public:
	PricePairs() = default;
	explicit PricePairs(std::vector<int> members) : members_(std::move(members))
	{
		for (std::size_t a = 0; a < members_.size(); ++a)
		{
			for (std::size_t b = a + 1; b < members_.size(); ++b)
			{
				pairs_.emplace_back(members_[a], members_[b]);
			}
		}
	}

	std::size_t size() const { return pairs_.size(); }
	const std::vector<int>& members() const { return members_; }
	std::pair<int, int> at(std::size_t k) const { return pairs_.at(k); }

	std::size_t index(int t, int l) const
	{
		if (t > l)
		{
			std::swap(t, l);
		}
		for (std::size_t k = 0; k < pairs_.size(); ++k)
		{
			if (pairs_[k].first == t && pairs_[k].second == l)
			{
				return k;
			}
		}
		throw std::out_of_range("PricePairs: operators " + std::to_string(t) + "," +
		                        std::to_string(l) + " are not a pair of this group");
	}

	/// "1-2" style label with 1-based operator numbers.
	std::string label(std::size_t k) const
	{
		return std::to_string(pairs_.at(k).first + 1) + "-" + std::to_string(pairs_.at(k).second + 1);
	}

private:
	std::vector<int> members_;
	std::vector<std::pair<int, int>> pairs_;
};

/// A profit split into the part that depends on operation (revenue minus
/// energy cost) and the fixed subscription revenue R_op. Keeping R_op apart
/// lets it cancel exactly wherever two profits of one operator are compared.
struct Profit
{
	double operating = 0.0;
	double fixed = 0.0;

	double total() const { return operating + fixed; }
};

/// Profit as constant + coef . prices, with constant = operating + fixed.
struct AffineProfit
{
	double operating = 0.0;
	double fixed = 0.0;
	std::vector<double> coef;

	double constant() const { return operating + fixed; }

	double at(std::span<const double> prices) const
	{
		if (prices.size() != coef.size())
		{
			throw std::invalid_argument("AffineProfit: price vector has wrong length");
		}
		double v = constant();
		for (std::size_t k = 0; k < coef.size(); ++k)
		{
			v += coef[k] * prices[k];
		}
		return v;
	}
};

/// A p <= b, one row per group member.
struct ConstraintSystem
{
	std::vector<std::vector<double>> A;
	std::vector<double> b;

	friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;
};

/// Revenue from the nominal user totals of `op` in the assignment.
inline double service_revenue(int op, const Assignment& assignment, const Tariffs& tariffs)
{
	const auto& prices = tariffs.service_price.at(static_cast<std::size_t>(op));
	double r = 0.0;
	for (std::size_t p = 0; p < assignment.nominal_users.size(); ++p)
	{
		if (assignment.population_operator[p] != op)
		{
			continue;
		}
		r += assignment.nominal_users[p] *
		     prices.at(static_cast<std::size_t>(assignment.population_service[p]));
	}
	return r;
}

/// Standalone profit: revenue + R_op - pi * E.
inline Profit profit_noncollab(int op, const Assignment& assignment, const EnergyLedger& ledger,
                               const Tariffs& tariffs)
{
	const auto l = static_cast<std::size_t>(op);
	return {service_revenue(op, assignment, tariffs) -
	            tariffs.energy_price.at(l) * ledger.operator_wh.at(l),
	        tariffs.fixed_revenue.at(l)};
}

/// Collaborative profit of `op`. Operator l earns p_tl per user of t it
/// hosts and pays p_lt per own user hosted by t, so the coefficient on the
/// (t,l) price is N(t->l) - N(l->t).
inline AffineProfit profit_collab_affine(int op, const Assignment& assignment,
                                         const EnergyLedger& ledger, const Tariffs& tariffs,
                                         const PricePairs& pairs)
{
	AffineProfit ap;
	const Profit base = profit_noncollab(op, assignment, ledger, tariffs);
	ap.operating = base.operating;
	ap.fixed = base.fixed;
	ap.coef.assign(pairs.size(), 0.0);
	const auto l = static_cast<std::size_t>(op);
	for (std::size_t k = 0; k < pairs.size(); ++k)
	{
		const auto [u, v] = pairs.at(k);
		if (u != op && v != op)
		{
			continue;
		}
		const auto t = static_cast<std::size_t>(u == op ? v : u);
		ap.coef[k] = static_cast<double>(assignment.roamed.at(t).at(l)) -
		             static_cast<double>(assignment.roamed.at(l).at(t));
	}
	return ap;
}

/// Row l: -coef_l . p <= constant_l - baseline_l, i.e. profit_l(p) >= baseline_l.
/// Operating and fixed parts are differenced separately, so the system does
/// not change by a single bit when both sides carry the same R_op.
inline ConstraintSystem build_constraint_system(std::span<const AffineProfit> affines,
                                                std::span<const Profit> baselines)
{
	if (affines.size() != baselines.size())
	{
		throw std::invalid_argument("build_constraint_system: one baseline per affine profit required");
	}
	ConstraintSystem cs;
	for (std::size_t l = 0; l < affines.size(); ++l)
	{
		std::vector<double> row(affines[l].coef.size());
		for (std::size_t k = 0; k < row.size(); ++k)
		{
			row[k] = -affines[l].coef[k];
		}
		cs.A.push_back(std::move(row));
		cs.b.push_back((affines[l].operating - baselines[l].operating) +
		               (affines[l].fixed - baselines[l].fixed));
	}
	return cs;
}

} // namespace greenvirt

#endif // GREENVIRT_ECONOMICS_HPP
