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
#include "asmsvm/shape_model.hpp"
#include "asmsvm/errors.hpp"

#include "Eigen/Eigenvalues"

#include <algorithm>
#include <cmath>

namespace asmsvm {

namespace {

void check_same_arity(const std::vector<Shape>& shapes)
{
	for (const auto& s : shapes) {
		if (s.size() != shapes.front().size()) {
			throw ArityError("shapes have different point counts");
		}
	}
}

Shape unit_size(const Shape& centered)
{
	const double size = centered.centroid_size();
	if (!(size > 0.0)) {
		throw DegenerateShapeError("shape has zero centroid size");
	}
	return Shape(Eigen::VectorXd(centered.coords() / size));
}

Shape rotated(const Shape& shape, double radians)
{
	SimilarityTransform t;
	t.rotation = radians;
	return t.apply(shape);
}

} // namespace

bool ShapeModel::operator==(const ShapeModel& other) const
{
	return mean_shape == other.mean_shape && modes.rows() == other.modes.rows() &&
	       modes.cols() == other.modes.cols() && modes == other.modes && eigenvalues.size() == other.eigenvalues.size() &&
	       eigenvalues == other.eigenvalues && variance_fraction == other.variance_fraction &&
	       clamp_alpha == other.clamp_alpha;
}

Shape canonical_orientation(const Shape& centered)
{
	const std::size_t n = centered.size();
	Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
	for (std::size_t i = 0; i < n; ++i) {
		const Point2 p = centered.point(i);
		scatter += p * p.transpose();
	}
	const double total = scatter.trace();
	if (!(total > 0.0)) {
		return centered;
	}
	Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(scatter);
	const double lo = eig.eigenvalues()(0);
	const double hi = eig.eigenvalues()(1);

	double angle = 0.0;
	if ((hi - lo) / total > 1e-6) {
		const Point2 axis = eig.eigenvectors().col(1);
		angle = -std::atan2(axis.y(), axis.x());
	} else {
		// Isotropic scatter: the first point clearly off the centroid sets the axis.
		const double scale = std::sqrt(total / static_cast<double>(n));
		for (std::size_t i = 0; i < n; ++i) {
			const Point2 p = centered.point(i);
			if (p.norm() > 1e-6 * scale) {
				return rotated(centered, -std::atan2(p.y(), p.x()));
			}
		}
	}
	Shape out = rotated(centered, angle);

	// The axis fixes the orientation up to a half turn; odd moments pick one.
	double mx = 0.0;
	double my = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		const Point2 p = out.point(i);
		mx += p.x() * p.x() * p.x();
		my += p.y() * p.y() * p.y();
	}
	const double cube = std::pow(total, 1.5);
	double sign = 0.0;
	if (std::abs(mx) > 1e-9 * cube) {
		sign = mx;
	} else if (std::abs(my) > 1e-9 * cube) {
		sign = my;
	} else {
		const double scale = std::sqrt(total / static_cast<double>(n));
		for (std::size_t i = 0; i < n && sign == 0.0; ++i) {
			const Point2 p = out.point(i);
			if (std::abs(p.x()) > 1e-6 * scale) {
				sign = p.x();
			} else if (std::abs(p.y()) > 1e-6 * scale) {
				sign = p.y();
			}
		}
	}
	if (sign < 0.0) {
		out = rotated(out, M_PI);
	}
	return out;
}

GpaResult gpa_align(const std::vector<Shape>& shapes, double tolerance, int max_rounds)
{
	if (shapes.empty()) {
		throw ArityError("gpa_align: no shapes given");
	}
	check_same_arity(shapes);
	if (shapes.front().size() < 3) {
		throw ArityError("gpa_align: shapes need at least 3 points");
	}

	std::vector<Shape> centered;
	centered.reserve(shapes.size());
	for (const auto& s : shapes) {
		centered.push_back(unit_size(s.centered()));
	}

	GpaResult result;
	result.mean = unit_size(canonical_orientation(centered.front()));
	result.aligned.resize(centered.size());

	auto align_all = [&] {
		for (std::size_t i = 0; i < centered.size(); ++i) {
			result.aligned[i] = fit_similarity(centered[i], result.mean).apply(centered[i]);
		}
	};

	for (int round = 0; round < max_rounds; ++round) {
		align_all();
		Eigen::VectorXd sum = Eigen::VectorXd::Zero(result.mean.coords().size());
		for (const auto& a : result.aligned) {
			sum += a.coords();
		}
		Shape next(Eigen::VectorXd(sum / static_cast<double>(result.aligned.size())));
		next = unit_size(canonical_orientation(next.centered()));
		const double moved = (next.coords() - result.mean.coords()).norm();
		result.mean = next;
		result.rounds = round + 1;
		if (moved < tolerance) {
			break;
		}
	}
	align_all();
	return result;
}

Eigen::Index retained_mode_count(const Eigen::VectorXd& eigenvalues, double variance_fraction)
{
	const double total = eigenvalues.sum();
	Eigen::Index keep = 0;
	double cumulative = 0.0;
	while (keep < eigenvalues.size()) {
		cumulative += eigenvalues(keep);
		++keep;
		if (cumulative >= variance_fraction * total) {
			break;
		}
	}
	return keep;
}

ShapeModel build_shape_model(const std::vector<Shape>& aligned, double variance_fraction, double clamp_alpha)
{
	if (aligned.size() < 2) {
		throw InsufficientDataError("build_shape_model: need at least two shapes");
	}
	check_same_arity(aligned);
	if (!(variance_fraction > 0.0 && variance_fraction <= 1.0)) {
		throw ConfigError("build_shape_model: variance_fraction must be in (0, 1]");
	}
	if (!(clamp_alpha > 0.0)) {
		throw ConfigError("build_shape_model: clamp_alpha must be positive");
	}

	const Eigen::Index dim = aligned.front().coords().size();
	const Eigen::Index m = static_cast<Eigen::Index>(aligned.size());
	Eigen::MatrixXd data(dim, m);
	for (Eigen::Index j = 0; j < m; ++j) {
		data.col(j) = aligned[static_cast<std::size_t>(j)].coords();
	}
	const Eigen::VectorXd mean = data.rowwise().mean();
	const Eigen::MatrixXd deviations = data.colwise() - mean;
	const Eigen::MatrixXd covariance = deviations * deviations.transpose() / static_cast<double>(m - 1);

	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
	// Ascending order from Eigen; walk from the back.
	const Eigen::VectorXd& values = eig.eigenvalues();
	const double largest = std::max(values(dim - 1), 0.0);
	// Rounding noise floor relative to the magnitude of the coordinates.
	const double noise_floor = 1e-24 * std::max(data.squaredNorm() / static_cast<double>(m), 1.0);
	const double cutoff = std::max(1e-12 * largest, noise_floor);
	Eigen::Index usable = 0;
	while (usable < dim && values(dim - 1 - usable) > cutoff) {
		++usable;
	}

	const Eigen::Index keep =
	    retained_mode_count(values.tail(usable).reverse().eval(), variance_fraction);

	ShapeModel model;
	model.mean_shape = Shape(Eigen::VectorXd(mean));
	model.variance_fraction = variance_fraction;
	model.clamp_alpha = clamp_alpha;
	model.modes.resize(dim, keep);
	model.eigenvalues.resize(keep);
	for (Eigen::Index k = 0; k < keep; ++k) {
		Eigen::VectorXd v = eig.eigenvectors().col(dim - 1 - k);
		Eigen::Index pivot = 0;
		v.cwiseAbs().maxCoeff(&pivot);
		if (v(pivot) < 0.0) {
			v = -v;
		}
		model.modes.col(k) = v;
		model.eigenvalues(k) = values(dim - 1 - k);
	}
	return model;
}

Shape synthesize(const ShapeModel& model, const Eigen::VectorXd& params)
{
	if (params.size() != model.num_modes()) {
		throw ArityError("synthesize: parameter count does not match the model");
	}
	if (params.size() == 0) {
		return model.mean_shape;
	}
	return Shape(Eigen::VectorXd(model.mean_shape.coords() + model.modes * params));
}

Eigen::VectorXd project(const ShapeModel& model, const Shape& model_frame_shape)
{
	if (model_frame_shape.size() != model.num_points()) {
		throw ArityError("project: point count does not match the model");
	}
	return model.modes.transpose() * (model_frame_shape.coords() - model.mean_shape.coords());
}

Eigen::VectorXd clamp_params(const ShapeModel& model, const Eigen::VectorXd& params)
{
	if (params.size() != model.num_modes()) {
		throw ArityError("clamp_params: parameter count does not match the model");
	}
	Eigen::VectorXd out(params.size());
	for (Eigen::Index i = 0; i < params.size(); ++i) {
		const double limit = model.clamp_alpha * std::sqrt(model.eigenvalues(i));
		out(i) = std::min(std::max(params(i), -limit), limit);
	}
	return out;
}

ShapeModel rotate_model(const ShapeModel& model, double radians)
{
	SimilarityTransform r;
	r.rotation = radians;
	const Eigen::Matrix2d rot = r.linear();
	ShapeModel out = model;
	out.mean_shape = r.apply(model.mean_shape);
	for (Eigen::Index k = 0; k < model.modes.cols(); ++k) {
		for (Eigen::Index i = 0; i + 1 < model.modes.rows(); i += 2) {
			const Point2 v(model.modes(i, k), model.modes(i + 1, k));
			const Point2 w = rot * v;
			out.modes(i, k) = w.x();
			out.modes(i + 1, k) = w.y();
		}
	}
	return out;
}

double mean_orientation(const ShapeModel& model, const std::vector<Shape>& shapes)
{
	double s = 0.0;
	double c = 0.0;
	for (const auto& shape : shapes) {
		const double angle = fit_similarity(model.mean_shape, shape).rotation;
		s += std::sin(angle);
		c += std::cos(angle);
	}
	return std::atan2(s, c);
}

ParamFit fit_params(const ShapeModel& model, const Shape& target, double tolerance, int max_iters)
{
	if (target.size() != model.num_points()) {
		throw ArityError("fit_params: target point count does not match the model");
	}
	if (!(target.centroid_size() > 0.0)) {
		throw DegenerateShapeError("fit_params: target has zero centroid size");
	}

	ParamFit fit;
	fit.params = Eigen::VectorXd::Zero(model.num_modes());
	Shape instance = model.mean_shape;
	fit.transform = fit_similarity(instance, target);
	fit.residual = squared_distance(fit.transform.apply(instance), target);
	fit.residual_history.push_back(fit.residual);

	for (int iter = 0; iter < max_iters; ++iter) {
		const Shape in_model_frame = fit.transform.inverse().apply(target);
		const Eigen::VectorXd next = clamp_params(model, project(model, in_model_frame));

		double change = 0.0;
		for (Eigen::Index i = 0; i < next.size(); ++i) {
			change = std::max(change, std::abs(next(i) - fit.params(i)) / std::sqrt(model.eigenvalues(i)));
		}
		fit.params = next;
		instance = synthesize(model, fit.params);
		fit.transform = fit_similarity(instance, target);
		fit.residual = squared_distance(fit.transform.apply(instance), target);
		fit.residual_history.push_back(fit.residual);
		fit.iterations = iter + 1;
		if (change < tolerance) {
			break;
		}
	}
	return fit;
}

Shape regularize(const ShapeModel& model, const Shape& target, double tolerance, int max_iters)
{
	const ParamFit fit = fit_params(model, target, tolerance, max_iters);
	return fit.transform.apply(synthesize(model, fit.params));
}

} // namespace asmsvm
