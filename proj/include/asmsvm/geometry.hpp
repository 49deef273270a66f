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

#ifndef ASMSVM_GEOMETRY_HPP_
#define ASMSVM_GEOMETRY_HPP_

#include "Eigen/Core"

#include <cstddef>
#include <vector>

namespace asmsvm {

using Point2 = Eigen::Vector2d;

/**
 * An ordered set of n landmarks, stored flattened as the 2n-vector
 * (x1, y1, ..., xn, yn). Landmark order is fixed by the landmark scheme.
 */
class Shape
{
public:
	Shape() = default;
	explicit Shape(Eigen::VectorXd coords);
	explicit Shape(const std::vector<Point2>& points);

	std::size_t size() const { return static_cast<std::size_t>(coords_.size() / 2); }
	bool empty() const { return coords_.size() == 0; }

	Point2 point(std::size_t i) const { return {coords_(2 * i), coords_(2 * i + 1)}; }
	void set_point(std::size_t i, const Point2& p)
	{
		coords_(2 * i) = p.x();
		coords_(2 * i + 1) = p.y();
	}
	std::vector<Point2> points() const;

	const Eigen::VectorXd& coords() const { return coords_; }
	Eigen::VectorXd& coords() { return coords_; }

	Point2 centroid() const;
	// Root of the summed squared distances to the centroid.
	double centroid_size() const;
	// Min corner and max corner of the axis-aligned bounding box.
	std::pair<Point2, Point2> bounding_box() const;

	Shape translated(const Point2& offset) const;
	// Centroid moved to the origin.
	Shape centered() const;

	bool operator==(const Shape& other) const = default;

private:
	Eigen::VectorXd coords_;
};

// Sum of squared point-to-point distances between two shapes of equal size.
double squared_distance(const Shape& a, const Shape& b);

/**
 * x -> scale * R(rotation) * x + translation. The similarity group is closed
 * under composition and inversion.
 */
struct SimilarityTransform
{
	double scale = 1.0;
	double rotation = 0.0; // radians
	Point2 translation = Point2::Zero();

	static SimilarityTransform identity() { return {}; }

	Eigen::Matrix2d linear() const;
	Point2 apply(const Point2& p) const;
	Shape apply(const Shape& shape) const;
	SimilarityTransform inverse() const;
	// (*this)(other(x)).
	SimilarityTransform compose(const SimilarityTransform& other) const;
};

/**
 * Least-squares similarity T minimising sum |T(source_i) - target_i|^2
 * (closed-form Procrustes pair fit). Throws DegenerateShapeError if the
 * source has zero centroid size and ArityError on mismatched sizes.
 */
SimilarityTransform fit_similarity(const Shape& source, const Shape& target);

} // namespace asmsvm

#endif /* ASMSVM_GEOMETRY_HPP_ */
