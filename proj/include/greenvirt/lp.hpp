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

#ifndef GREENVIRT_LP_HPP
#define GREENVIRT_LP_HPP

/// \file lp.hpp
///
/// Dense two-phase simplex for the small programs that appear in roaming
/// price computations (a handful of variables and constraints).
///
/// Programs are stated as
///
///     maximize    c.x
///     subject to  A x <= b
///                 lower <= x <= upper
///
/// Entering and leaving variables follow Bland's rule, so the pivot
/// sequence (and therefore the returned vertex) is a deterministic function
/// of the input.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenvirt::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LinearProgram
{
	std::vector<double> objective;               ///< c, one entry per variable
	std::vector<std::vector<double>> matrix;     ///< A, one row per constraint
	std::vector<double> rhs;                     ///< b
	std::vector<double> lower;                   ///< empty means all zero
	std::vector<double> upper;                   ///< empty means all +inf

	std::size_t num_vars() const { return objective.size(); }
	std::size_t num_rows() const { return rhs.size(); }
};

enum class LpStatus
{
	optimal,
	infeasible,
	unbounded,
	solver_failure
};

inline const char* to_string(LpStatus s)
{
	switch (s)
	{
		case LpStatus::optimal:        return "optimal";
		case LpStatus::infeasible:     return "infeasible";
		case LpStatus::unbounded:      return "unbounded";
		case LpStatus::solver_failure: return "solver_failure";
	}
	return "unknown";
}

struct LpOutcome
{
	LpStatus status = LpStatus::solver_failure;
	std::vector<double> x;
	double value = 0.0;
};

struct SolverOptions
{
	double feasibility_tol = 1e-9;
	double pivot_tol = 1e-11;
	std::size_t max_pivots = 50000;
};

namespace detail {

/// Tableau in equality form over nonnegative columns.
///
/// Row i of `rows` holds the coefficients of the structural, slack and
/// artificial columns followed by the right-hand side in the last slot.
class Tableau
{
public:
	Tableau(std::size_t nrows, std::size_t ncols)
		: rows_(nrows, std::vector<double>(ncols + 1, 0.0)),
		  basis_(nrows, 0),
		  ncols_(ncols)
	{
	}

	std::vector<double>& row(std::size_t i) { return rows_[i]; }
	const std::vector<double>& row(std::size_t i) const { return rows_[i]; }
	std::size_t& basic(std::size_t i) { return basis_[i]; }
	std::size_t basic(std::size_t i) const { return basis_[i]; }
	std::size_t nrows() const { return rows_.size(); }
	std::size_t ncols() const { return ncols_; }
	double rhs(std::size_t i) const { return rows_[i][ncols_]; }

	void pivot(std::size_t r, std::size_t c)
	{
		auto& pr = rows_[r];
		const double inv = 1.0 / pr[c];
		for (double& v : pr)
		{
			v *= inv;
		}
		pr[c] = 1.0;
		for (std::size_t i = 0; i < rows_.size(); ++i)
		{
			if (i == r)
			{
				continue;
			}
			auto& ri = rows_[i];
			const double f = ri[c];
			if (f == 0.0)
			{
				continue;
			}
			for (std::size_t k = 0; k <= ncols_; ++k)
			{
				ri[k] -= f * pr[k];
			}
			ri[c] = 0.0;
		}
		basis_[r] = c;
	}

	void drop_row(std::size_t r)
	{
		rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
		basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
	}

private:
	std::vector<std::vector<double>> rows_;
	std::vector<std::size_t> basis_;
	std::size_t ncols_;
};

enum class PhaseResult
{
	optimal,
	unbounded,
	stalled
};

/// Maximizes cost.x over the tableau, restricted to columns with
/// `allowed[c] == true`. Bland's rule: lowest-index improving column enters,
/// minimum ratio leaves with ties broken by lowest basic column index.
inline PhaseResult run_phase(Tableau& t, const std::vector<double>& cost,
                             const std::vector<bool>& allowed,
                             const SolverOptions& opt, std::size_t& pivots)
{
	const std::size_t n = t.ncols();
	std::vector<double> reduced(n);
	for (;;)
	{
		for (std::size_t c = 0; c < n; ++c)
		{
			double z = 0.0;
			for (std::size_t i = 0; i < t.nrows(); ++i)
			{
				z += cost[t.basic(i)] * t.row(i)[c];
			}
			reduced[c] = cost[c] - z;
		}

		std::optional<std::size_t> enter;
		for (std::size_t c = 0; c < n; ++c)
		{
			if (allowed[c] && reduced[c] > opt.pivot_tol * 100.0)
			{
				enter = c;
				break;
			}
		}
		if (!enter)
		{
			return PhaseResult::optimal;
		}

		std::optional<std::size_t> leave;
		double best_ratio = kInfinity;
		for (std::size_t i = 0; i < t.nrows(); ++i)
		{
			const double a = t.row(i)[*enter];
			if (a <= opt.pivot_tol)
			{
				continue;
			}
			const double ratio = std::max(t.rhs(i), 0.0) / a;
			if (!leave || ratio < best_ratio - 1e-12 ||
			    (std::abs(ratio - best_ratio) <= 1e-12 && t.basic(i) < t.basic(*leave)))
			{
				leave = i;
				best_ratio = ratio;
			}
		}
		if (!leave)
		{
			return PhaseResult::unbounded;
		}
		if (++pivots > opt.max_pivots)
		{
			return PhaseResult::stalled;
		}
		t.pivot(*leave, *enter);
	}
}

} // namespace detail

inline void validate(const LinearProgram& lp)
{
	const std::size_t n = lp.num_vars();
	if (lp.matrix.size() != lp.rhs.size())
	{
		throw std::invalid_argument("lp: matrix has " + std::to_string(lp.matrix.size()) +
		                            " rows but rhs has " + std::to_string(lp.rhs.size()));
	}
	for (const auto& row : lp.matrix)
	{
		if (row.size() != n)
		{
			throw std::invalid_argument("lp: constraint row width does not match objective");
		}
		for (double v : row)
		{
			if (!std::isfinite(v))
			{
				throw std::invalid_argument("lp: non-finite constraint coefficient");
			}
		}
	}
	if (!lp.lower.empty() && lp.lower.size() != n)
	{
		throw std::invalid_argument("lp: lower bound vector has wrong length");
	}
	if (!lp.upper.empty() && lp.upper.size() != n)
	{
		throw std::invalid_argument("lp: upper bound vector has wrong length");
	}
	for (double v : lp.objective)
	{
		if (!std::isfinite(v))
		{
			throw std::invalid_argument("lp: non-finite objective coefficient");
		}
	}
	for (double v : lp.rhs)
	{
		if (!std::isfinite(v))
		{
			throw std::invalid_argument("lp: non-finite right-hand side");
		}
	}
	for (double v : lp.lower)
	{
		if (!std::isfinite(v))
		{
			throw std::invalid_argument("lp: lower bounds must be finite");
		}
	}
}

/// Solves `lp`. Throws std::invalid_argument on malformed input; every
/// numerical problem is reported through LpStatus::solver_failure.
inline LpOutcome solve(const LinearProgram& lp, const SolverOptions& opt = {})
{
	validate(lp);

	const std::size_t n = lp.num_vars();
	std::vector<double> lower = lp.lower.empty() ? std::vector<double>(n, 0.0) : lp.lower;

	// Substitute x = lower + y with y >= 0 and collect finite upper bounds as
	// extra rows y_k <= upper_k - lower_k.
	std::vector<std::vector<double>> rows;
	std::vector<double> rhs;
	rows.reserve(lp.num_rows() + n);
	for (std::size_t i = 0; i < lp.num_rows(); ++i)
	{
		double shift = 0.0;
		for (std::size_t k = 0; k < n; ++k)
		{
			shift += lp.matrix[i][k] * lower[k];
		}
		rows.push_back(lp.matrix[i]);
		rhs.push_back(lp.rhs[i] - shift);
	}
	for (std::size_t k = 0; k < n && !lp.upper.empty(); ++k)
	{
		if (std::isfinite(lp.upper[k]))
		{
			if (lp.upper[k] < lower[k] - opt.feasibility_tol)
			{
				return {LpStatus::infeasible, {}, 0.0};
			}
			std::vector<double> r(n, 0.0);
			r[k] = 1.0;
			rows.push_back(std::move(r));
			rhs.push_back(lp.upper[k] - lower[k]);
		}
	}

	const std::size_t m = rows.size();
	// Columns: n structural, m slacks, then one artificial per negative row.
	std::size_t n_art = 0;
	for (double v : rhs)
	{
		if (v < 0.0)
		{
			++n_art;
		}
	}
	const std::size_t ncols = n + m + n_art;
	detail::Tableau t(m, ncols);
	std::size_t art = n + m;
	for (std::size_t i = 0; i < m; ++i)
	{
		auto& r = t.row(i);
		const double sign = rhs[i] < 0.0 ? -1.0 : 1.0;
		for (std::size_t k = 0; k < n; ++k)
		{
			r[k] = sign * rows[i][k];
		}
		r[n + i] = sign;
		r[ncols] = sign * rhs[i];
		if (sign < 0.0)
		{
			r[art] = 1.0;
			t.basic(i) = art++;
		}
		else
		{
			t.basic(i) = n + i;
		}
	}

	std::size_t pivots = 0;
	std::vector<bool> allowed(ncols, true);

	if (n_art > 0)
	{
		std::vector<double> phase1(ncols, 0.0);
		for (std::size_t c = n + m; c < ncols; ++c)
		{
			phase1[c] = -1.0;
		}
		const auto res = detail::run_phase(t, phase1, allowed, opt, pivots);
		if (res != detail::PhaseResult::optimal)
		{
			return {LpStatus::solver_failure, {}, 0.0};
		}
		double infeas = 0.0;
		for (std::size_t i = 0; i < t.nrows(); ++i)
		{
			if (t.basic(i) >= n + m)
			{
				infeas += t.rhs(i);
			}
		}
		if (infeas > opt.feasibility_tol)
		{
			return {LpStatus::infeasible, {}, 0.0};
		}
		// Drive artificials out of the basis; rows where that is impossible
		// are linearly dependent and can be dropped.
		for (std::size_t i = 0; i < t.nrows();)
		{
			if (t.basic(i) < n + m)
			{
				++i;
				continue;
			}
			std::optional<std::size_t> col;
			for (std::size_t c = 0; c < n + m; ++c)
			{
				if (std::abs(t.row(i)[c]) > 1e-9)
				{
					col = c;
					break;
				}
			}
			if (col)
			{
				t.pivot(i, *col);
				++i;
			}
			else
			{
				t.drop_row(i);
			}
		}
		for (std::size_t c = n + m; c < ncols; ++c)
		{
			allowed[c] = false;
		}
	}

	std::vector<double> cost(ncols, 0.0);
	for (std::size_t k = 0; k < n; ++k)
	{
		cost[k] = lp.objective[k];
	}
	const auto res = detail::run_phase(t, cost, allowed, opt, pivots);
	if (res == detail::PhaseResult::unbounded)
	{
		return {LpStatus::unbounded, {}, 0.0};
	}
	if (res == detail::PhaseResult::stalled)
	{
		return {LpStatus::solver_failure, {}, 0.0};
	}

	LpOutcome out;
	out.status = LpStatus::optimal;
	out.x = lower;
	for (std::size_t i = 0; i < t.nrows(); ++i)
	{
		if (t.basic(i) < n)
		{
			out.x[t.basic(i)] += t.rhs(i);
		}
	}
	// Never hand back a vertex that does not satisfy the original program.
	for (std::size_t i = 0; i < lp.num_rows(); ++i)
	{
		double ax = 0.0;
		double scale = std::abs(lp.rhs[i]);
		for (std::size_t k = 0; k < n; ++k)
		{
			ax += lp.matrix[i][k] * out.x[k];
			scale = std::max(scale, std::abs(lp.matrix[i][k] * out.x[k]));
		}
		if (ax > lp.rhs[i] + opt.feasibility_tol * std::max(1.0, scale))
		{
			return {LpStatus::solver_failure, {}, 0.0};
		}
	}
	for (std::size_t k = 0; k < n; ++k)
	{
		const double tol = opt.feasibility_tol * std::max(1.0, std::abs(out.x[k]));
		if (out.x[k] < lower[k] - tol ||
		    (!lp.upper.empty() && out.x[k] > lp.upper[k] + tol))
		{
			return {LpStatus::solver_failure, {}, 0.0};
		}
		// Snap tiny round-off back onto the box.
		out.x[k] = std::max(out.x[k], lower[k]);
		if (!lp.upper.empty())
		{
			out.x[k] = std::min(out.x[k], lp.upper[k]);
		}
		out.value += lp.objective[k] * out.x[k];
	}
	return out;
}

/// Whether { x : A x <= b, lower <= x <= upper } is non-empty.
inline bool is_feasible(LinearProgram lp, const SolverOptions& opt = {})
{
	std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
	return solve(lp, opt).status == LpStatus::optimal;
}

} // namespace greenvirt::lp

#endif // GREENVIRT_LP_HPP
