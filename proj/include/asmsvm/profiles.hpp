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

#ifndef ASMSVM_PROFILES_HPP_
#define ASMSVM_PROFILES_HPP_

#include "asmsvm/geometry.hpp"
#include "asmsvm/imaging.hpp"
#include "asmsvm/landmark_scheme.hpp"

#include "Eigen/Core"

#include <vector>

namespace asmsvm {

enum class ProfileKind { one_d, two_d };

// Normalisation applied to a flattened 2-D gradient window.
enum class WindowNormalization {
	sigmoid, // g / (|g| + q)
	sum,     // g / sum(g)
};

struct Profile
{
	Eigen::VectorXd values;
	ProfileKind kind = ProfileKind::two_d;
};

/**
 * Mean and covariance of a set of equal-length profiles, plus the inverse of
 * the covariance after ridge regularisation. The ridge added to the diagonal
 * is epsilon * trace / dim, floored at 1e-12 so that a zero covariance still
 * has a finite inverse.
 */
struct ProfileStats
{
	Eigen::VectorXd mean;
	Eigen::MatrixXd covariance;
	Eigen::MatrixXd inverse;

	static constexpr double default_epsilon = 1e-3;

	static ProfileStats from_covariance(Eigen::VectorXd mean, Eigen::MatrixXd covariance,
	                                    double epsilon = default_epsilon);
	Eigen::Index dim() const { return mean.size(); }
	bool operator==(const ProfileStats& other) const;
};

struct ProfileGeometry
{
	// Side of the square 2-D window at each pyramid level (index = level).
	std::vector<int> window_sizes{3, 7, 15};
	// 1-D profile length, the same at every level.
	int one_d_length = 15;
	WindowNormalization normalization = WindowNormalization::sum;
	double q = 10.0;

	bool operator==(const ProfileGeometry& other) const = default;
};

/**
 * Per-level, per-landmark profile statistics for both feature pipelines.
 * Indexing is [level][landmark].
 */
struct ProfileModel
{
	ProfileGeometry geometry;
	std::vector<std::vector<ProfileStats>> one_d;
	std::vector<std::vector<ProfileStats>> two_d;

	bool operator==(const ProfileModel& other) const = default;
};

/**
 * Unit normal at a landmark: perpendicular to the chord between its contour
 * neighbours (the single neighbour at an open end), pointing away from the
 * shape centroid. Falls back to the centroid-to-landmark direction when the
 * chord has zero length.
 */
Point2 landmark_normal(const Shape& shape, const LandmarkScheme& scheme, std::size_t index);

// Elementwise g / (|g| + q).
Eigen::VectorXd normalize_sigmoid(const Eigen::VectorXd& values, double q);
// g / sum(g); uniform 1/dim when the sum is below 1e-12.
Eigen::VectorXd normalize_sum(const Eigen::VectorXd& values);
// g / sum(|g|); zero vector when the sum vanishes.
Eigen::VectorXd normalize_abs_sum(const Eigen::VectorXd& values);

/**
 * Derivative profile along `normal`: length + 1 bilinear samples at unit
 * spacing centred on `center`, successive differences, normalised by the
 * sum of absolute values.
 */
Profile extract_profile_1d_at(const GrayImage& image, const Point2& center, const Point2& normal, int length);
Profile extract_profile_1d(const GrayImage& image, const Shape& shape, const LandmarkScheme& scheme,
                           std::size_t index, int length);

/**
 * size x size window of `magnitude` centred on the nearest pixel to
 * `center` (edge-clamped), flattened row-major and normalised.
 */
Profile extract_profile_2d(const GrayImage& magnitude, const Point2& center, int size, WindowNormalization mode,
                           double q = 10.0);
inline Profile extract_profile_2d(const GradientField& gradient, const Point2& center, int size,
                                  WindowNormalization mode, double q = 10.0)
{
	return extract_profile_2d(gradient.magnitude, center, size, mode, q);
}

// Sample mean and covariance (divide by m - 1); needs >= 2 equal-length samples.
ProfileStats train_profile_stats(const std::vector<Profile>& samples,
                                 double epsilon = ProfileStats::default_epsilon);

double mahalanobis_cost(const ProfileStats& stats, const Profile& g);
double mahalanobis_cost(const ProfileStats& stats, const Eigen::VectorXd& g);

// (c - I) * mahalanobis, I = 1 on an edge pixel.
double edge_weighted_cost(const ProfileStats& stats, const Profile& g, bool on_edge, double c = 2.0);
double edge_weight(bool on_edge, double c);

} // namespace asmsvm

#endif /* ASMSVM_PROFILES_HPP_ */
