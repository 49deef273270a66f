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
#pragma once

#ifndef ASMSVM_SEARCH_HPP_
#define ASMSVM_SEARCH_HPP_

#include "asmsvm/dataset_io.hpp"
#include "asmsvm/features.hpp"
#include "asmsvm/fit_config.hpp"
#include "asmsvm/geometry.hpp"
#include "asmsvm/landmark_scheme.hpp"
#include "asmsvm/profiles.hpp"
#include "asmsvm/shape_model.hpp"
#include "asmsvm/svm.hpp"

#include <vector>

namespace asmsvm {

// Axis-aligned rectangle in level-0 pixels.
struct Box
{
	double x = 0.0;
	double y = 0.0;
	double width = 0.0;
	double height = 0.0;
};

// Bounding box of a shape, grown by `inflate` (0.1 = 10%) about its centre.
Box inflated_bounding_box(const Shape& shape, double inflate);

/**
 * Places the model mean so that its bounding box fills `box`, scaling x and
 * y independently and applying no rotation.
 */
Shape init_shape_from_box(const ShapeModel& model, const Box& box);

/**
 * One pyramid level's view for the landmark search. All referenced data
 * must outlive the context.
 */
struct LevelContext
{
	const LevelImage* image = nullptr;
	const std::vector<ProfileStats>* stats = nullptr;                // per landmark, matching profile_kind
	const std::vector<LandmarkClassifier>* classifiers = nullptr;    // per landmark; may be null when ungated
	const LandmarkScheme* scheme = nullptr;
};

struct SearchOutcome
{
	Shape shape;
	std::vector<double> costs; // cost of the chosen candidate per landmark
	std::size_t gated_out = 0; // landmarks whose gate rejected every candidate
};

/**
 * Moves every landmark (level coordinates) to its best nearby candidate.
 *
 * With 2-D profiles the candidates are the current position plus every
 * integer offset within Chebyshev radius search_radius; with 1-D profiles
 * they are the integer steps -r..r along the landmark normal. Cost is the
 * Mahalanobis distance, weighted by (c - I) from the edge map when
 * edge_weighting is on. With svm_gate only candidates the landmark's
 * classifier labels +1 compete (all of them when none does). Ties go to the
 * smaller displacement, then to row-major order.
 */
SearchOutcome search_landmarks(const LevelContext& ctx, const Shape& shape, const FitConfig& config, int level);

struct FitResult
{
	Shape shape; // level-0 coordinates
	std::vector<int> iterations; // per level, index = level
	std::vector<bool> converged; // per level
	std::vector<double> costs;   // final per-landmark search costs (empty when no search ran)
	SimilarityTransform transform;
	Eigen::VectorXd params;
};

/**
 * Multi-resolution fit, coarsest level first. At each level search and
 * model regularisation alternate until convergence_fraction of the
 * landmarks moved less than one level pixel, or max_iters_per_level.
 */
FitResult fit(const std::vector<LevelImage>& levels, const ModelBundle& bundle, const Shape& init,
              const FitConfig& config);
FitResult fit(const ImagePyramid& pyramid, const ModelBundle& bundle, const Shape& init, const FitConfig& config);

// Level-0 <-> level-k coordinate maps applied to every landmark.
Shape shape_to_level(const Shape& level0, int level);
Shape shape_from_level(const Shape& at_level, int level);

} // namespace asmsvm

#endif /* ASMSVM_SEARCH_HPP_ */
