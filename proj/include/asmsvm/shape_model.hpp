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

#ifndef ASMSVM_SHAPE_MODEL_HPP_
#define ASMSVM_SHAPE_MODEL_HPP_

#include "asmsvm/geometry.hpp"

#include "Eigen/Core"

#include <vector>

namespace asmsvm {

/**
 * Point distribution model: a mean shape plus t orthonormal modes of
 * variation and their variances. Instances are x = mean + modes * b, with
 * every |b_i| limited to clamp_alpha * sqrt(eigenvalues_i).
 */
struct ShapeModel
{
	Shape mean_shape;
	Eigen::MatrixXd modes;       // 2n x t, orthonormal columns
	Eigen::VectorXd eigenvalues; // t, non-increasing, all > 0
	double variance_fraction = 0.975;
	double clamp_alpha = 3.0;

	std::size_t num_points() const { return mean_shape.size(); }
	Eigen::Index num_modes() const { return modes.cols(); }

	bool operator==(const ShapeModel& other) const;
};

struct GpaResult
{
	std::vector<Shape> aligned;
	Shape mean;
	int rounds = 0;
};

/**
 * Generalized Procrustes alignment. Every shape is centred, then repeatedly
 * fitted (rotation and scale) to the current mean; the mean is re-centred,
 * put into a canonical orientation and rescaled to unit centroid size each
 * round. The canonical orientation depends only on the mean's own geometry,
 * so the output does not depend on the pose of the input set.
 *
 * Stops when the mean moves less than `tolerance` (Euclidean norm of the
 * 2n-vector change) or after `max_rounds`.
 */
GpaResult gpa_align(const std::vector<Shape>& shapes, double tolerance = 1e-10, int max_rounds = 100);

/**
 * Rotates a centred shape so that the major axis of its point scatter lies
 * along +x, with the sign fixed by the third moment along each axis.
 */
Shape canonical_orientation(const Shape& centered);

/**
 * PCA of aligned shapes. Eigenvalues below 1e-12 of the largest are never
 * retained; otherwise the smallest t reaching variance_fraction of the total
 * is kept. Needs at least two shapes.
 */
// Smallest count of leading eigenvalues (sorted non-increasing, all > 0) reaching the fraction of their sum.
Eigen::Index retained_mode_count(const Eigen::VectorXd& eigenvalues, double variance_fraction);

ShapeModel build_shape_model(const std::vector<Shape>& aligned, double variance_fraction = 0.975,
                             double clamp_alpha = 3.0);

// mean + modes * params.
Shape synthesize(const ShapeModel& model, const Eigen::VectorXd& params);

// Projection of a model-frame shape onto the modes, without clamping.
Eigen::VectorXd project(const ShapeModel& model, const Shape& model_frame_shape);

Eigen::VectorXd clamp_params(const ShapeModel& model, const Eigen::VectorXd& params);

/**
 * The whole model rotated about the origin by `radians`. Mean and modes
 * are rotated together, so the eigen-structure is unchanged.
 */
ShapeModel rotate_model(const ShapeModel& model, double radians);

/**
 * Circular mean of the rotations of the least-squares similarities that map
 * the model mean onto each of the given shapes.
 */
double mean_orientation(const ShapeModel& model, const std::vector<Shape>& shapes);

struct ParamFit
{
	SimilarityTransform transform;
	Eigen::VectorXd params;
	// Sum of squared point distances between target and T(mean + P b).
	double residual = 0.0;
	int iterations = 0;
	// Residual after each iteration, first entry is the b = 0 initialisation.
	std::vector<double> residual_history;
};

/**
 * Pose and shape parameters for a target shape. Alternates the closed-form
 * similarity fit with b fixed and the projection of T^-1(target) onto the
 * clamped modes, until max_i |delta b_i| / sqrt(lambda_i) < tolerance or
 * max_iters is reached.
 */
ParamFit fit_params(const ShapeModel& model, const Shape& target, double tolerance = 1e-6, int max_iters = 50);

// T(mean + P b) for a completed fit: the nearest plausible shape.
Shape regularize(const ShapeModel& model, const Shape& target, double tolerance = 1e-6, int max_iters = 50);

} // namespace asmsvm

#endif /* ASMSVM_SHAPE_MODEL_HPP_ */
