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
#include "asmsvm/profiles.hpp"
#include "asmsvm/errors.hpp"

#include "Eigen/Cholesky"

#include <cmath>

namespace asmsvm {

ProfileStats ProfileStats::from_covariance(Eigen::VectorXd mean, Eigen::MatrixXd covariance, double epsilon)
{
	const Eigen::Index dim = mean.size();
	if (covariance.rows() != dim || covariance.cols() != dim) {
		throw ArityError("profile covariance does not match the mean dimension");
	}
	ProfileStats stats;
	stats.mean = std::move(mean);
	stats.covariance = std::move(covariance);
	Eigen::MatrixXd regularized = stats.covariance;
	if (epsilon > 0.0) {
		const double ridge = std::max(epsilon * stats.covariance.trace() / static_cast<double>(dim), 1e-12);
		regularized.diagonal().array() += ridge;
	}
	stats.inverse = regularized.ldlt().solve(Eigen::MatrixXd::Identity(dim, dim));
	// Symmetrise against round-off in the solve.
	stats.inverse = 0.5 * (stats.inverse + stats.inverse.transpose()).eval();
	return stats;
}

bool ProfileStats::operator==(const ProfileStats& other) const
{
	auto same = [](const auto& a, const auto& b) {
		return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
	};
	return same(mean, other.mean) && same(covariance, other.covariance) && same(inverse, other.inverse);
}

Point2 landmark_normal(const Shape& shape, const LandmarkScheme& scheme, std::size_t index)
{
	if (index >= shape.size() || shape.size() != scheme.total()) {
		throw ArityError("landmark_normal: index or scheme does not match the shape");
	}
	const Point2 p = shape.point(index);
	const Point2 chord = shape.point(scheme.next(index)) - shape.point(scheme.previous(index));
	const Point2 outward = p - shape.centroid();
	const double len = chord.norm();
	if (!(len > 0.0)) {
		const double r = outward.norm();
		return r > 0.0 ? Point2(outward / r) : Point2(1.0, 0.0);
	}
	Point2 normal(-chord.y() / len, chord.x() / len);
	if (normal.dot(outward) < 0.0) {
		normal = -normal;
	}
	return normal;
}

Eigen::VectorXd normalize_sigmoid(const Eigen::VectorXd& values, double q)
{
	return values.array() / (values.array().abs() + q);
}

Eigen::VectorXd normalize_sum(const Eigen::VectorXd& values)
{
	const double sum = values.sum();
	if (sum < 1e-12) {
		return Eigen::VectorXd::Constant(values.size(), 1.0 / static_cast<double>(values.size()));
	}
	return values / sum;
}

Eigen::VectorXd normalize_abs_sum(const Eigen::VectorXd& values)
{
	const double sum = values.cwiseAbs().sum();
	if (!(sum > 0.0)) {
		return Eigen::VectorXd::Zero(values.size());
	}
	return values / sum;
}

Profile extract_profile_1d_at(const GrayImage& image, const Point2& center, const Point2& normal, int length)
{
	if (length < 3 || length % 2 == 0) {
		throw ConfigError("1-D profile length must be odd and at least 3");
	}
	const double half = 0.5 * length;
	double previous = 0.0;
	Eigen::VectorXd diffs(length);
	for (int k = 0; k <= length; ++k) {
		const Point2 at = center + (k - half) * normal;
		const double v = sample_bilinear(image, at.x(), at.y());
		if (k > 0) {
			diffs(k - 1) = v - previous;
		}
		previous = v;
	}
	return {normalize_abs_sum(diffs), ProfileKind::one_d};
}

Profile extract_profile_1d(const GrayImage& image, const Shape& shape, const LandmarkScheme& scheme,
                           std::size_t index, int length)
{
	return extract_profile_1d_at(image, shape.point(index), landmark_normal(shape, scheme, index), length);
}

Profile extract_profile_2d(const GrayImage& magnitude, const Point2& center, int size, WindowNormalization mode,
                           double q)
{
	if (size < 3 || size % 2 == 0) {
		throw ConfigError("2-D window size must be odd and at least 3");
	}
	const int cx = static_cast<int>(std::lround(center.x()));
	const int cy = static_cast<int>(std::lround(center.y()));
	const int half = size / 2;
	Eigen::VectorXd raw(size * size);
	Eigen::Index k = 0;
	for (int y = cy - half; y <= cy + half; ++y) {
		for (int x = cx - half; x <= cx + half; ++x) {
			raw(k++) = magnitude.clamped(x, y);
		}
	}
	Profile out;
	out.kind = ProfileKind::two_d;
	out.values = mode == WindowNormalization::sigmoid ? normalize_sigmoid(raw, q) : normalize_sum(raw);
	return out;
}

ProfileStats train_profile_stats(const std::vector<Profile>& samples, double epsilon)
{
	if (samples.size() < 2) {
		throw InsufficientDataError("train_profile_stats: need at least two samples");
	}
	const Eigen::Index dim = samples.front().values.size();
	Eigen::MatrixXd data(dim, static_cast<Eigen::Index>(samples.size()));
	for (std::size_t j = 0; j < samples.size(); ++j) {
		if (samples[j].values.size() != dim) {
			throw ArityError("train_profile_stats: samples have different lengths");
		}
		data.col(static_cast<Eigen::Index>(j)) = samples[j].values;
	}
	Eigen::VectorXd mean = data.rowwise().mean();
	const Eigen::MatrixXd centered = data.colwise() - mean;
	Eigen::MatrixXd covariance = centered * centered.transpose() / static_cast<double>(samples.size() - 1);
	return ProfileStats::from_covariance(std::move(mean), std::move(covariance), epsilon);
}

double mahalanobis_cost(const ProfileStats& stats, const Eigen::VectorXd& g)
{
	if (g.size() != stats.dim()) {
		throw ArityError("mahalanobis_cost: profile dimension does not match the statistics");
	}
	const Eigen::VectorXd delta = g - stats.mean;
	return std::max(0.0, delta.dot(stats.inverse * delta));
}

double mahalanobis_cost(const ProfileStats& stats, const Profile& g)
{
	return mahalanobis_cost(stats, g.values);
}

double edge_weight(bool on_edge, double c)
{
	return c - (on_edge ? 1.0 : 0.0);
}

double edge_weighted_cost(const ProfileStats& stats, const Profile& g, bool on_edge, double c)
{
	if (!(c > 1.0)) {
		throw ConfigError("edge_weighted_cost: c must exceed 1");
	}
	return edge_weight(on_edge, c) * mahalanobis_cost(stats, g);
}

} // namespace asmsvm
