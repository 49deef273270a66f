/*
 * asmsvm - statistical shape model face alignment
 *
 * Copyright 2026 The asmsvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "asmsvm/search.hpp"
#include "asmsvm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asmsvm {

Box inflated_bounding_box(const Shape& shape, double inflate)
{
	const auto [lo, hi] = shape.bounding_box();
	const Point2 center = 0.5 * (lo + hi);
	const Point2 extent = (hi - lo) * (1.0 + inflate);
	return {center.x() - 0.5 * extent.x(), center.y() - 0.5 * extent.y(), extent.x(), extent.y()};
}

Shape init_shape_from_box(const ShapeModel& model, const Box& box)
{
	if (!(box.width > 0.0) || !(box.height > 0.0) || !std::isfinite(box.x) || !std::isfinite(box.y)) {
		throw BoxError("initialisation box must have positive width and height");
	}
	const auto [lo, hi] = model.mean_shape.bounding_box();
	const Point2 extent = hi - lo;
	if (!(extent.x() > 0.0) || !(extent.y() > 0.0)) {
		throw DegenerateShapeError("mean shape has a degenerate bounding box");
	}
	const double sx = box.width / extent.x();
	const double sy = box.height / extent.y();
	Shape out = model.mean_shape;
	for (std::size_t i = 0; i < out.size(); ++i) {
		const Point2 p = model.mean_shape.point(i);
		out.set_point(i, {box.x + (p.x() - lo.x()) * sx, box.y + (p.y() - lo.y()) * sy});
	}
	return out;
}

Shape shape_to_level(const Shape& level0, int level)
{
	Shape out(level0);
	for (Eigen::Index k = 0; k < out.coords().size(); ++k) {
		out.coords()(k) = to_level(level0.coords()(k), level);
	}
	return out;
}

Shape shape_from_level(const Shape& at_level, int level)
{
	Shape out(at_level);
	for (Eigen::Index k = 0; k < out.coords().size(); ++k) {
		out.coords()(k) = from_level(at_level.coords()(k), level);
	}
	return out;
}

namespace {

struct Candidate
{
	Point2 position;
	double displacement = 0.0; // Chebyshev
};

bool on_edge_at(const EdgeMap& edges, const Point2& p)
{
	const int x = std::clamp(static_cast<int>(std::lround(p.x())), 0, edges.width - 1);
	const int y = std::clamp(static_cast<int>(std::lround(p.y())), 0, edges.height - 1);
	return edges.at(x, y);
}

} // namespace

SearchOutcome search_landmarks(const LevelContext& ctx, const Shape& shape, const FitConfig& config, int level)
{
	if (ctx.image == nullptr || ctx.stats == nullptr || ctx.scheme == nullptr) {
		throw ConfigError("search_landmarks: incomplete level context");
	}
	if (ctx.stats->size() != shape.size() || ctx.scheme->total() != shape.size()) {
		throw ArityError("search_landmarks: context does not match the shape");
	}
	if (level < 0 || static_cast<std::size_t>(level) >= config.profile_lengths.size()) {
		throw ConfigError("search_landmarks: level outside the configured profile lengths");
	}
	const bool two_d = config.profile_kind == ProfileKind::two_d;
	const bool gate = config.svm_gate && two_d && ctx.classifiers != nullptr;
	if (gate && ctx.classifiers->size() != shape.size()) {
		throw ArityError("search_landmarks: classifier table does not match the shape");
	}
	const int radius = config.search_radius;
	const int side = config.profile_lengths[static_cast<std::size_t>(level)];

	SearchOutcome outcome;
	outcome.shape = shape;
	outcome.costs.assign(shape.size(), 0.0);

	std::vector<Candidate> candidates;
	std::vector<double> costs;
	std::vector<bool> accepted;
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const Point2 current = shape.point(i);
		const ProfileStats& stats = (*ctx.stats)[i];

		candidates.clear();
		if (two_d) {
			for (int dy = -radius; dy <= radius; ++dy) {
				for (int dx = -radius; dx <= radius; ++dx) {
					candidates.push_back({current + Point2(dx, dy), static_cast<double>(std::max(std::abs(dx), std::abs(dy)))});
				}
			}
		} else {
			const Point2 normal = landmark_normal(shape, *ctx.scheme, i);
			for (int k = -radius; k <= radius; ++k) {
				const Point2 step = k * normal;
				candidates.push_back({current + step, step.cwiseAbs().maxCoeff()});
			}
		}

		costs.assign(candidates.size(), 0.0);
		accepted.assign(candidates.size(), true);
		bool any_accepted = false;
		for (std::size_t k = 0; k < candidates.size(); ++k) {
			const Point2& p = candidates[k].position;
			const Profile g = two_d ? extract_profile_2d(ctx.image->gradient.magnitude, p, side, config.normalization, config.q)
			                        : extract_profile_1d_at(ctx.image->equalized, p, landmark_normal(shape, *ctx.scheme, i),
			                                                config.one_d_length);
			double cost = mahalanobis_cost(stats, g);
			if (config.edge_weighting) {
				cost *= edge_weight(on_edge_at(ctx.image->edges, p), config.c);
			}
			costs[k] = cost;
			if (gate) {
				accepted[k] = (*ctx.classifiers)[i].classify(g.values).label == 1;
			}
			any_accepted = any_accepted || accepted[k];
		}
		if (!any_accepted) {
			accepted.assign(candidates.size(), true);
			++outcome.gated_out;
		}

		std::size_t best = candidates.size();
		for (std::size_t k = 0; k < candidates.size(); ++k) {
			if (!accepted[k]) {
				continue;
			}
			if (best == candidates.size() || costs[k] < costs[best] ||
			    (costs[k] == costs[best] && candidates[k].displacement < candidates[best].displacement)) {
				best = k;
			}
		}
		outcome.shape.set_point(i, candidates[best].position);
		outcome.costs[i] = costs[best];
	}
	return outcome;
}

FitResult fit(const std::vector<LevelImage>& levels, const ModelBundle& bundle, const Shape& init,
              const FitConfig& config)
{
	config.validate();
	const ShapeModel& model = bundle.shape_model;
	if (init.size() != model.num_points()) {
		throw ArityError("fit: initial shape does not match the model");
	}
	if (levels.size() != static_cast<std::size_t>(config.levels) ||
	    bundle.profiles.two_d.size() < levels.size()) {
		throw ConfigError("fit: pyramid depth does not match the configuration or the model");
	}
	if (config.profile_lengths != bundle.profiles.geometry.window_sizes ||
	    config.one_d_length != bundle.profiles.geometry.one_d_length) {
		throw ConfigError("fit: profile lengths differ from those the model was trained with");
	}

	const GrayImage& base = levels.front().equalized;
	bool any_inside = false;
	for (std::size_t i = 0; i < init.size(); ++i) {
		const Point2 p = init.point(i);
		any_inside = any_inside || (p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= base.width() - 1 && p.y() <= base.height() - 1);
	}
	if (!any_inside) {
		throw InitializationError("fit: every initial landmark lies outside the image");
	}

	FitResult result;
	result.iterations.assign(levels.size(), 0);
	result.converged.assign(levels.size(), false);

	auto regularized = [&](const Shape& target) {
		const ParamFit pf = fit_params(model, target, config.param_tolerance, config.param_max_iters);
		result.transform = pf.transform;
		result.params = pf.params;
		return pf.transform.apply(synthesize(model, pf.params));
	};

	Shape current = regularized(init);
	for (int level = config.levels - 1; level >= 0; --level) {
		const auto lvl = static_cast<std::size_t>(level);
		LevelContext ctx;
		ctx.image = &levels[lvl];
		ctx.stats = config.profile_kind == ProfileKind::two_d ? &bundle.profiles.two_d[lvl] : &bundle.profiles.one_d[lvl];
		ctx.classifiers = lvl < bundle.classifiers.size() ? &bundle.classifiers[lvl] : nullptr;
		ctx.scheme = &bundle.scheme;

		for (int iter = 0; iter < config.max_iters_per_level; ++iter) {
			const Shape at_level = shape_to_level(current, level);
			SearchOutcome found = search_landmarks(ctx, at_level, config, level);
			const Shape next = regularized(shape_from_level(found.shape, level));
			result.costs = std::move(found.costs);

			const double pixel = std::ldexp(1.0, level);
			std::size_t still = 0;
			for (std::size_t i = 0; i < next.size(); ++i) {
				if ((next.point(i) - current.point(i)).norm() < pixel) {
					++still;
				}
			}
			current = next;
			result.iterations[lvl] = iter + 1;
			if (static_cast<double>(still) >= config.convergence_fraction * static_cast<double>(next.size())) {
				result.converged[lvl] = true;
				break;
			}
		}
	}
	result.shape = current;
	return result;
}

FitResult fit(const ImagePyramid& pyramid, const ModelBundle& bundle, const Shape& init, const FitConfig& config)
{
	return fit(prepare_levels(pyramid, config.canny), bundle, init, config);
}

} // namespace asmsvm
