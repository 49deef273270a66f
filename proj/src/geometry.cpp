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
#include "asmsvm/geometry.hpp"
#include "asmsvm/errors.hpp"

#include <cmath>
#include <limits>

namespace asmsvm {

Shape::Shape(Eigen::VectorXd coords) : coords_(std::move(coords))
{
	if (coords_.size() % 2 != 0) {
		throw ArityError("shape coordinate vector must have even length");
	}
}

Shape::Shape(const std::vector<Point2>& points) : coords_(2 * static_cast<Eigen::Index>(points.size()))
{
	for (std::size_t i = 0; i < points.size(); ++i) {
		set_point(i, points[i]);
	}
}

std::vector<Point2> Shape::points() const
{
	std::vector<Point2> out(size());
	for (std::size_t i = 0; i < size(); ++i) {
		out[i] = point(i);
	}
	return out;
}

Point2 Shape::centroid() const
{
	Point2 c = Point2::Zero();
	if (empty()) {
		return c;
	}
	for (std::size_t i = 0; i < size(); ++i) {
		c += point(i);
	}
	return c / static_cast<double>(size());
}

double Shape::centroid_size() const
{
	const Point2 c = centroid();
	double sum = 0.0;
	for (std::size_t i = 0; i < size(); ++i) {
		sum += (point(i) - c).squaredNorm();
	}
	return std::sqrt(sum);
}

std::pair<Point2, Point2> Shape::bounding_box() const
{
	constexpr double inf = std::numeric_limits<double>::infinity();
	Point2 lo(inf, inf);
	Point2 hi(-inf, -inf);
	for (std::size_t i = 0; i < size(); ++i) {
		lo = lo.cwiseMin(point(i));
		hi = hi.cwiseMax(point(i));
	}
	return {lo, hi};
}

Shape Shape::translated(const Point2& offset) const
{
	Shape out(*this);
	for (std::size_t i = 0; i < size(); ++i) {
		out.set_point(i, point(i) + offset);
	}
	return out;
}

Shape Shape::centered() const
{
	return translated(-centroid());
}

double squared_distance(const Shape& a, const Shape& b)
{
	if (a.size() != b.size()) {
		throw ArityError("squared_distance: shapes have different point counts");
	}
	return (a.coords() - b.coords()).squaredNorm();
}

Eigen::Matrix2d SimilarityTransform::linear() const
{
	const double c = scale * std::cos(rotation);
	const double s = scale * std::sin(rotation);
	Eigen::Matrix2d m;
	m << c, -s, s, c;
	return m;
}

Point2 SimilarityTransform::apply(const Point2& p) const
{
	return linear() * p + translation;
}

Shape SimilarityTransform::apply(const Shape& shape) const
{
	const Eigen::Matrix2d m = linear();
	Shape out(shape);
	for (std::size_t i = 0; i < shape.size(); ++i) {
		out.set_point(i, m * shape.point(i) + translation);
	}
	return out;
}

SimilarityTransform SimilarityTransform::inverse() const
{
	SimilarityTransform inv;
	inv.scale = 1.0 / scale;
	inv.rotation = -rotation;
	inv.translation = -(inv.linear() * translation);
	return inv;
}

SimilarityTransform SimilarityTransform::compose(const SimilarityTransform& other) const
{
	SimilarityTransform out;
	out.scale = scale * other.scale;
	out.rotation = std::remainder(rotation + other.rotation, 2.0 * M_PI);
	out.translation = linear() * other.translation + translation;
	return out;
}

SimilarityTransform fit_similarity(const Shape& source, const Shape& target)
{
	if (source.size() != target.size()) {
		throw ArityError("fit_similarity: shapes have different point counts");
	}
	const Point2 cs = source.centroid();
	const Point2 ct = target.centroid();
	double norm = 0.0;
	double a = 0.0;
	double b = 0.0;
	for (std::size_t i = 0; i < source.size(); ++i) {
		const Point2 s = source.point(i) - cs;
		const Point2 t = target.point(i) - ct;
		norm += s.squaredNorm();
		a += s.dot(t);
		b += s.x() * t.y() - s.y() * t.x();
	}
	if (!(norm > 0.0)) {
		throw DegenerateShapeError("fit_similarity: source shape has zero centroid size");
	}
	a /= norm;
	b /= norm;
	SimilarityTransform out;
	out.scale = std::hypot(a, b);
	out.rotation = std::atan2(b, a);
	if (!(out.scale > 0.0)) {
		// Target collapsed to a point: keep the pose well-defined.
		out.scale = std::numeric_limits<double>::min();
		out.rotation = 0.0;
	}
	out.translation = ct - out.linear() * cs;
	return out;
}

} // namespace asmsvm
