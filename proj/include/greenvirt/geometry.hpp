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

#ifndef GREENVIRT_GEOMETRY_HPP
#define GREENVIRT_GEOMETRY_HPP

/// \file geometry.hpp
///
/// Spatial model: base-station sites, nearest-site (Voronoi) association of
/// users over the active set, and midpoint quadrature of per-cell user
/// counts and expected path-loss factors.
///
/// All coordinates are in km. A user population is a (operator, service)
/// pair with a planar density and a nominal head count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace greenvirt {

struct Point
{
	double x = 0.0;
	double y = 0.0;

	friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b)
{
	const double dx = a.x - b.x;
	const double dy = a.y - b.y;
	return dx * dx + dy * dy;
}

/// Axis-aligned rectangle [0, width] x [0, height].
struct AreaSpec
{
	double width = 0.0;
	double height = 0.0;

	bool contains(Point p) const
	{
		return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
	}
};

enum class DistributionKind
{
	uniform,
	gaussian
};

/// Planar user density. `uniform` is uniform over the scenario area;
/// `gaussian` is an isotropic normal density on the whole plane, so its mass
/// inside the area is below one.
struct UserDistribution
{
	DistributionKind kind = DistributionKind::uniform;
	Point mean{};
	double variance = 1.0;

	double pdf(Point p, const AreaSpec& area) const
	{
		if (kind == DistributionKind::uniform)
		{
			return area.contains(p) ? 1.0 / (area.width * area.height) : 0.0;
		}
		const double r2 = squared_distance(p, mean);
		return std::exp(-r2 / (2.0 * variance)) / (2.0 * std::numbers::pi * variance);
	}
};

/// Cell-centered lattice over the area. Every sample point stands for a
/// dx x dy rectangle; weights for a density are pdf(center) * dx * dy.
struct QuadratureGrid
{
	AreaSpec area;
	double resolution = 0.0;
	std::size_t nx = 0;
	std::size_t ny = 0;
	double dx = 0.0;
	double dy = 0.0;
	std::vector<Point> points;

	double cell_area() const { return dx * dy; }
	std::size_t size() const { return points.size(); }

	std::vector<double> weights(const UserDistribution& dist) const
	{
		std::vector<double> w(points.size());
		for (std::size_t i = 0; i < points.size(); ++i)
		{
			w[i] = dist.pdf(points[i], area) * cell_area();
		}
		return w;
	}
};

/// Lattice with ceil(width * resolution) x ceil(height * resolution) points,
/// row-major in y then x.
inline QuadratureGrid build_grid(const AreaSpec& area, double resolution)
{
	if (!(resolution > 0.0) || !std::isfinite(resolution))
	{
		throw std::invalid_argument("build_grid: resolution must be positive");
	}
	if (!(area.width > 0.0) || !(area.height > 0.0))
	{
		throw std::invalid_argument("build_grid: area must have positive extent");
	}
	QuadratureGrid g;
	g.area = area;
	g.resolution = resolution;
	// Guard against 5 * 50 evaluating to 250.00000000000003.
	g.nx = static_cast<std::size_t>(std::ceil(area.width * resolution - 1e-9));
	g.ny = static_cast<std::size_t>(std::ceil(area.height * resolution - 1e-9));
	g.nx = std::max<std::size_t>(g.nx, 1);
	g.ny = std::max<std::size_t>(g.ny, 1);
	g.dx = area.width / static_cast<double>(g.nx);
	g.dy = area.height / static_cast<double>(g.ny);
	g.points.reserve(g.nx * g.ny);
	for (std::size_t iy = 0; iy < g.ny; ++iy)
	{
		for (std::size_t ix = 0; ix < g.nx; ++ix)
		{
			g.points.push_back({(static_cast<double>(ix) + 0.5) * g.dx,
			                    (static_cast<double>(iy) + 0.5) * g.dy});
		}
	}
	return g;
}

struct BaseStation
{
	int operator_id = 0;
	Point site{};
};

struct UserPopulation
{
	int operator_id = 0;
	int service = 0;
	UserDistribution distribution{};
	int total = 0; ///< nominal head count N_U for this (operator, service)
};

/// ON/OFF state of every base station of a network, in network order.
class ActivationVector
{
public:
	ActivationVector() = default;
	explicit ActivationVector(std::size_t n, bool on = true) : state_(n, on ? 1 : 0) {}

	std::size_t size() const { return state_.size(); }
	bool is_on(std::size_t j) const { return state_.at(j) != 0; }
	void set(std::size_t j, bool on) { state_.at(j) = on ? 1 : 0; }

	ActivationVector with_off(std::size_t j) const
	{
		ActivationVector v = *this;
		v.set(j, false);
		return v;
	}

	std::size_t active_count() const
	{
		return static_cast<std::size_t>(std::count(state_.begin(), state_.end(), std::uint8_t{1}));
	}

	std::string to_string() const
	{
		std::string s;
		s.reserve(state_.size());
		for (auto v : state_)
		{
			s.push_back(v ? '1' : '0');
		}
		return s;
	}

	friend bool operator==(const ActivationVector&, const ActivationVector&) = default;

private:
	std::vector<std::uint8_t> state_;
};

enum class ExpectationMode
{
	conditional, ///< per-user expectation, normalized by the cell mass
	literal      ///< unnormalized integral over the cell
};

class DegenerateCell : public std::runtime_error
{
public:
	DegenerateCell() : std::runtime_error("cell has zero probability mass") {}
};

namespace detail {

struct CellMoments
{
	double mass = 0.0;
	double moment = 0.0;
};

inline double finish_path_loss(const CellMoments& m, ExpectationMode mode)
{
	if (mode == ExpectationMode::literal)
	{
		return m.moment;
	}
	if (!(m.mass > 0.0))
	{
		throw DegenerateCell{};
	}
	return m.moment / m.mass;
}

} // namespace detail

/// E[r^eta] for users of density `weights` (grid weights of one
/// population) restricted to the grid points in `cell`, distances in km.
inline double expected_path_loss_factor(std::span<const std::size_t> cell, Point site,
                                        std::span<const double> weights,
                                        const QuadratureGrid& grid, double eta,
                                        ExpectationMode mode)
{
	if (!(eta > 0.0))
	{
		throw std::invalid_argument("expected_path_loss_factor: eta must be positive");
	}
	if (cell.empty())
	{
		throw std::invalid_argument("expected_path_loss_factor: empty cell");
	}
	if (weights.size() != grid.size())
	{
		throw std::invalid_argument("expected_path_loss_factor: weights do not match grid");
	}
	detail::CellMoments m;
	for (std::size_t idx : cell)
	{
		const double w = weights[idx];
		m.mass += w;
		m.moment += w * std::pow(squared_distance(grid.points[idx], site), 0.5 * eta);
	}
	return detail::finish_path_loss(m, mode);
}

struct PopulationInCell
{
	double mass = 0.0;        ///< integral of the density over the cell
	int count = 0;            ///< ceil(N_U * mass)
	double path_loss = 0.0;   ///< E[r^eta] in km^eta
	bool degenerate = false;  ///< zero mass in conditional mode
};

struct CellStats
{
	int owner = -1;                            ///< operator owning the site
	bool active = false;
	std::size_t points = 0;
	std::vector<PopulationInCell> by_population;

	int total_users() const
	{
		int n = 0;
		for (const auto& p : by_population)
		{
			n += p.count;
		}
		return n;
	}
};

/// Result of associating every population with the active sites.
struct Assignment
{
	std::vector<int> nearest;                 ///< per grid point: site index, -1 if none
	std::vector<CellStats> cells;             ///< one per site, empty when inactive
	std::vector<std::vector<int>> roamed;     ///< roamed[t][l]: users of t hosted by l
	std::vector<int> users_per_operator;      ///< served (post-ceiling) users
	std::vector<int> nominal_users;           ///< per population, copied from input
	std::vector<int> population_operator;     ///< per population operator id
	std::vector<int> population_service;      ///< per population service index

	friend bool operator==(const Assignment& a, const Assignment& b)
	{
		if (a.nearest != b.nearest || a.roamed != b.roamed ||
		    a.users_per_operator != b.users_per_operator || a.cells.size() != b.cells.size())
		{
			return false;
		}
		for (std::size_t j = 0; j < a.cells.size(); ++j)
		{
			const auto& x = a.cells[j];
			const auto& y = b.cells[j];
			if (x.owner != y.owner || x.active != y.active || x.points != y.points ||
			    x.by_population.size() != y.by_population.size())
			{
				return false;
			}
			for (std::size_t p = 0; p < x.by_population.size(); ++p)
			{
				const auto& u = x.by_population[p];
				const auto& v = y.by_population[p];
				// Bitwise equality is the point of this comparison.
				if (u.mass != v.mass || u.count != v.count || u.path_loss != v.path_loss ||
				    u.degenerate != v.degenerate)
				{
					return false;
				}
			}
		}
		return true;
	}
};

/// ceil() that ignores round-off just above an integer, so that
/// 200 * (1/25) summed over a lattice gives 8 rather than 9.
inline int ceil_count(double x)
{
	if (x <= 0.0)
	{
		return 0;
	}
	return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

struct AssignOptions
{
	double eta = 3.76;
	ExpectationMode mode = ExpectationMode::conditional;
	unsigned threads = 1;  ///< workers for the nearest-site search
};

/// Nearest active site for each grid point. Ties go to the lowest site
/// index. The search is split into contiguous point ranges when
/// `threads > 1`; every point is computed independently, so the result does
/// not depend on the split.
inline std::vector<int> nearest_active_site(std::span<const BaseStation> sites,
                                            const ActivationVector& active,
                                            const QuadratureGrid& grid, unsigned threads = 1)
{
	std::vector<std::size_t> on;
	for (std::size_t j = 0; j < sites.size(); ++j)
	{
		if (active.is_on(j))
		{
			on.push_back(j);
		}
	}
	std::vector<int> nearest(grid.size(), -1);
	if (on.empty())
	{
		return nearest;
	}
	auto work = [&](std::size_t begin, std::size_t end) {
		for (std::size_t i = begin; i < end; ++i)
		{
			const Point p = grid.points[i];
			std::size_t best = on.front();
			double best_d = squared_distance(p, sites[best].site);
			for (std::size_t k = 1; k < on.size(); ++k)
			{
				const double d = squared_distance(p, sites[on[k]].site);
				if (d < best_d)
				{
					best_d = d;
					best = on[k];
				}
			}
			nearest[i] = static_cast<int>(best);
		}
	};
	const std::size_t n = grid.size();
	threads = std::max(1u, threads);
	if (threads == 1 || n < 2 * threads)
	{
		work(0, n);
		return nearest;
	}
	std::vector<std::jthread> pool;
	const std::size_t chunk = (n + threads - 1) / threads;
	for (std::size_t b = 0; b < n; b += chunk)
	{
		pool.emplace_back(work, b, std::min(n, b + chunk));
	}
	pool.clear();
	return nearest;
}

/// Associates users with the nearest active site and evaluates per-cell
/// counts and expected path-loss factors.
///
/// `weights[p]` are the grid weights of `populations[p]`; pass
/// `grid.weights(dist)` or a cached copy. Counts use ceil(N_U * mass) per
/// cell and population, so total served users may exceed N_U. Only
/// operators with ids below `num_operators` appear in the roamed matrix.
inline Assignment assign_users(std::span<const BaseStation> sites, const ActivationVector& active,
                               const QuadratureGrid& grid,
                               std::span<const UserPopulation> populations,
                               std::span<const std::vector<double>> weights,
                               int num_operators, const AssignOptions& opt = {})
{
	if (grid.size() == 0)
	{
		throw std::invalid_argument("assign_users: empty quadrature grid");
	}
	if (active.size() != sites.size())
	{
		throw std::invalid_argument("assign_users: activation vector length does not match sites");
	}
	if (active.active_count() == 0)
	{
		throw std::invalid_argument("assign_users: no active base station");
	}
	if (weights.size() != populations.size())
	{
		throw std::invalid_argument("assign_users: one weight vector per population required");
	}
	for (const auto& pop : populations)
	{
		if (pop.total < 0)
		{
			throw std::invalid_argument("assign_users: negative user total");
		}
		if (pop.operator_id < 0 || pop.operator_id >= num_operators)
		{
			throw std::invalid_argument("assign_users: population operator out of range");
		}
	}

	Assignment a;
	a.nearest = nearest_active_site(sites, active, grid, opt.threads);

	const std::size_t np = populations.size();
	std::vector<std::vector<detail::CellMoments>> moments(sites.size(),
	                                                      std::vector<detail::CellMoments>(np));
	a.cells.resize(sites.size());
	for (std::size_t j = 0; j < sites.size(); ++j)
	{
		a.cells[j].owner = sites[j].operator_id;
		a.cells[j].active = active.is_on(j);
	}
	for (std::size_t i = 0; i < grid.size(); ++i)
	{
		const auto j = static_cast<std::size_t>(a.nearest[i]);
		++a.cells[j].points;
		const double r_eta =
		    std::pow(squared_distance(grid.points[i], sites[j].site), 0.5 * opt.eta);
		for (std::size_t p = 0; p < np; ++p)
		{
			const double w = weights[p][i];
			moments[j][p].mass += w;
			moments[j][p].moment += w * r_eta;
		}
	}

	a.roamed.assign(static_cast<std::size_t>(num_operators),
	                std::vector<int>(static_cast<std::size_t>(num_operators), 0));
	a.users_per_operator.assign(static_cast<std::size_t>(num_operators), 0);
	for (std::size_t j = 0; j < sites.size(); ++j)
	{
		auto& cell = a.cells[j];
		if (!cell.active)
		{
			continue;
		}
		cell.by_population.resize(np);
		for (std::size_t p = 0; p < np; ++p)
		{
			auto& pc = cell.by_population[p];
			const auto& m = moments[j][p];
			pc.mass = m.mass;
			pc.count = ceil_count(static_cast<double>(populations[p].total) * m.mass);
			if (opt.mode == ExpectationMode::conditional && !(m.mass > 0.0))
			{
				pc.degenerate = true;
				pc.path_loss = 0.0;
			}
			else
			{
				pc.path_loss = detail::finish_path_loss(m, opt.mode);
			}
			const auto t = static_cast<std::size_t>(populations[p].operator_id);
			const auto l = static_cast<std::size_t>(cell.owner);
			a.users_per_operator[t] += pc.count;
			if (t != l && l < a.roamed.size())
			{
				a.roamed[t][l] += pc.count;
			}
		}
	}
	for (const auto& pop : populations)
	{
		a.nominal_users.push_back(pop.total);
		a.population_operator.push_back(pop.operator_id);
		a.population_service.push_back(pop.service);
	}
	return a;
}

/// Convenience overload computing population weights on the fly.
inline Assignment assign_users(std::span<const BaseStation> sites, const ActivationVector& active,
                               const QuadratureGrid& grid,
                               std::span<const UserPopulation> populations, int num_operators,
                               const AssignOptions& opt = {})
{
	std::vector<std::vector<double>> w;
	w.reserve(populations.size());
	for (const auto& pop : populations)
	{
		w.push_back(grid.weights(pop.distribution));
	}
	return assign_users(sites, active, grid, populations, w, num_operators, opt);
}

/// Grid points belonging to site `j` in an assignment.
inline std::vector<std::size_t> cell_points(const Assignment& a, std::size_t j)
{
	std::vector<std::size_t> out;
	for (std::size_t i = 0; i < a.nearest.size(); ++i)
	{
		if (a.nearest[i] == static_cast<int>(j))
		{
			out.push_back(i);
		}
	}
	return out;
}

/// Sites on a rows x cols lattice with half-spacing margins, row-major from
/// the bottom-left corner.
inline std::vector<Point> lattice_sites(const AreaSpec& area, int rows, int cols)
{
	if (rows < 1 || cols < 1)
	{
		throw std::invalid_argument("lattice_sites: rows and cols must be positive");
	}
	std::vector<Point> out;
	const double sx = area.width / cols;
	const double sy = area.height / rows;
	for (int r = 0; r < rows; ++r)
	{
		for (int c = 0; c < cols; ++c)
		{
			out.push_back({(c + 0.5) * sx, (r + 0.5) * sy});
		}
	}
	return out;
}

} // namespace greenvirt

#endif // GREENVIRT_GEOMETRY_HPP
