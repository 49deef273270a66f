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
#include "asmsvm/errors.hpp"
#include "asmsvm/shape_model.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace asmsvm;

namespace {

Shape scaled_rotated(const Shape& s, double scale, double radians)
{
	SimilarityTransform t;
	t.scale = scale;
	t.rotation = radians;
	t.translation = Point2(12.0, -4.0);
	return t.apply(s);
}

// Orthogonal projection of v onto span(basis) by explicit Gram-Schmidt, no Eigen products.
Eigen::VectorXd project_onto(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& v)
{
	std::vector<Eigen::VectorXd> ortho;
	for (const auto& b : basis) {
		Eigen::VectorXd u = b;
		for (const auto& o : ortho) {
			double dot = 0.0;
			for (Eigen::Index i = 0; i < u.size(); ++i) {
				dot += u(i) * o(i);
			}
			u -= dot * o;
		}
		double norm = 0.0;
		for (Eigen::Index i = 0; i < u.size(); ++i) {
			norm += u(i) * u(i);
		}
		if (norm > 1e-20) {
			ortho.push_back(u / std::sqrt(norm));
		}
	}
	Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
	for (const auto& o : ortho) {
		double dot = 0.0;
		for (Eigen::Index i = 0; i < v.size(); ++i) {
			dot += v(i) * o(i);
		}
		out += dot * o;
	}
	return out;
}

ShapeModel random_model(std::mt19937_64& rng, std::size_t count = 20, std::size_t n = 8)
{
	const auto gpa = gpa_align(testing::random_shape_set(rng, count, n, 1.5));
	return build_shape_model(gpa.aligned, 0.975);
}

} // namespace

TEST_CASE("gpa_align: identical shapes")
{
	std::mt19937_64 rng(1);
	const Shape s = testing::random_shape(rng, 6);
	const auto result = gpa_align({s, s});
	REQUIRE(result.aligned.size() == 2);
	CHECK(testing::max_abs_diff(result.aligned[0].coords(), result.aligned[1].coords()) < 1e-12);
	const Shape normalized = canonical_orientation(s.centered());
	const Shape expected(Eigen::VectorXd(normalized.coords() / normalized.centroid_size()));
	CHECK(testing::max_abs_diff(result.mean.coords(), expected.coords()) < 1e-12);
	CHECK(result.mean.centroid_size() == doctest::Approx(1.0));
}

TEST_CASE("gpa_align: a rotated and scaled copy aligns onto its base")
{
	std::mt19937_64 rng(2);
	const Shape base = testing::random_shape(rng, 9);
	const Shape copy = scaled_rotated(base, 2.0, M_PI / 2.0);
	const auto result = gpa_align({base, copy});
	CHECK(testing::max_abs_diff(result.aligned[0].coords(), result.aligned[1].coords()) < 1e-9);
}

TEST_CASE("gpa_align: single shape")
{
	std::mt19937_64 rng(3);
	const Shape s = testing::random_shape(rng, 5);
	const auto result = gpa_align({s});
	REQUIRE(result.aligned.size() == 1);
	CHECK(result.mean.centroid_size() == doctest::Approx(1.0));
	CHECK(testing::max_abs_diff(result.aligned[0].coords(), result.mean.coords()) < 1e-12);
}

TEST_CASE("gpa_align: errors")
{
	std::mt19937_64 rng(4);
	CHECK_THROWS_AS(gpa_align({}), ArityError);
	CHECK_THROWS_AS(gpa_align({testing::random_shape(rng, 5), testing::random_shape(rng, 6)}), ArityError);
	const Shape flat(std::vector<Point2>{{2, 2}, {2, 2}, {2, 2}});
	CHECK_THROWS_AS(gpa_align({flat, flat}), DegenerateShapeError);
}

TEST_CASE("gpa_align is invariant to a common similarity on every input")
{
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 20; ++trial) {
		const auto shapes = testing::random_shape_set(rng, 10, 6, 2.0);
		const auto moved_by = testing::random_similarity(rng);
		std::vector<Shape> moved;
		for (const auto& s : shapes) {
			moved.push_back(moved_by.apply(s));
		}
		const auto a = gpa_align(shapes);
		const auto b = gpa_align(moved);
		CHECK(testing::max_abs_diff(a.mean.coords(), b.mean.coords()) < 1e-6);
		for (std::size_t k = 0; k < shapes.size(); ++k) {
			CHECK(testing::max_abs_diff(a.aligned[k].coords(), b.aligned[k].coords()) < 1e-6);
		}
	}
}

TEST_CASE("build_shape_model: rank-one variation gives one mode along it")
{
	std::mt19937_64 rng(6);
	const Shape mean = testing::random_shape(rng, 5);
	Eigen::VectorXd v = Eigen::VectorXd::Random(10);
	const std::vector<Shape> shapes{Shape(Eigen::VectorXd(mean.coords() - v)), mean,
	                                Shape(Eigen::VectorXd(mean.coords() + v))};
	const ShapeModel model = build_shape_model(shapes, 0.975);
	REQUIRE(model.num_modes() == 1);
	CHECK(std::abs(model.modes.col(0).dot(v.normalized())) == doctest::Approx(1.0).epsilon(1e-12));
	CHECK(model.eigenvalues(0) == doctest::Approx(v.squaredNorm()));
}

TEST_CASE("build_shape_model: spectrum {9, 0.5, 0.5} keeps all three modes at 97.5%")
{
	// Orthogonal zero-mean coefficient columns over 5 samples give a
	// covariance with exactly these eigenvalues along three fixed directions.
	const int m = 5;
	const double c1[m] = {1, -1, 0, 0, 0};
	const double c2[m] = {0, 0, 1, -1, 0};
	const double c3[m] = {1, 1, -1, -1, 0};
	const double a1 = std::sqrt(18.0);
	const double a2 = 1.0;
	const double a3 = std::sqrt(0.5);
	Eigen::VectorXd u1 = Eigen::VectorXd::Zero(8);
	Eigen::VectorXd u2 = Eigen::VectorXd::Zero(8);
	Eigen::VectorXd u3 = Eigen::VectorXd::Zero(8);
	u1(0) = 1;
	u2(3) = 1;
	u3(6) = 1;
	Eigen::VectorXd base(8);
	base << 0, 0, 1, 0, 1, 1, 0, 1;
	std::vector<Shape> shapes;
	for (int j = 0; j < m; ++j) {
		shapes.emplace_back(Eigen::VectorXd(base + a1 * c1[j] * u1 + a2 * c2[j] * u2 + a3 * c3[j] * u3));
	}
	const ShapeModel model = build_shape_model(shapes, 0.975);
	REQUIRE(model.num_modes() == 3);
	CHECK(model.eigenvalues(0) == doctest::Approx(9.0));
	CHECK(model.eigenvalues(1) == doctest::Approx(0.5));
	CHECK(model.eigenvalues(2) == doctest::Approx(0.5));

	Eigen::VectorXd spectrum(3);
	spectrum << 9.0, 0.5, 0.5;
	CHECK(retained_mode_count(spectrum, 0.975) == 3);
	CHECK(retained_mode_count(spectrum, 0.95) == 2);
	CHECK(retained_mode_count(spectrum, 0.90) == 1);
}

TEST_CASE("build_shape_model: identical shapes give zero modes, synthesis returns the mean")
{
	std::mt19937_64 rng(7);
	const Shape s = testing::random_shape(rng, 5);
	const ShapeModel model = build_shape_model({s, s, s});
	CHECK(model.num_modes() == 0);
	CHECK(synthesize(model, Eigen::VectorXd()) == model.mean_shape);
	CHECK_THROWS_AS(build_shape_model({s}), InsufficientDataError);
}

TEST_CASE("build_shape_model: orthonormal modes and full-basis reconstruction")
{
	std::mt19937_64 rng(8);
	for (int trial = 0; trial < 10; ++trial) {
		const auto gpa = gpa_align(testing::random_shape_set(rng, 12, 6, 2.0));
		const ShapeModel model = build_shape_model(gpa.aligned, 1.0);
		const Eigen::Index t = model.num_modes();
		CHECK((model.modes.transpose() * model.modes - Eigen::MatrixXd::Identity(t, t)).cwiseAbs().maxCoeff() < 1e-9);
		for (Eigen::Index k = 1; k < t; ++k) {
			CHECK(model.eigenvalues(k) <= model.eigenvalues(k - 1));
			CHECK(model.eigenvalues(k) > 0.0);
		}
		std::vector<Eigen::VectorXd> basis;
		for (Eigen::Index k = 0; k < t; ++k) {
			basis.push_back(model.modes.col(k));
		}
		for (const auto& aligned : gpa.aligned) {
			const Eigen::VectorXd deviation = aligned.coords() - model.mean_shape.coords();
			const Eigen::VectorXd oracle = model.mean_shape.coords() + project_onto(basis, deviation);
			const Shape rebuilt = synthesize(model, project(model, aligned));
			CHECK(testing::max_abs_diff(rebuilt.coords(), aligned.coords()) < 1e-9);
			CHECK(testing::max_abs_diff(rebuilt.coords(), oracle) < 1e-9);
		}
	}
}

TEST_CASE("synthesize")
{
	std::mt19937_64 rng(9);
	const ShapeModel model = random_model(rng);
	REQUIRE(model.num_modes() >= 1);
	const Eigen::Index t = model.num_modes();
	CHECK(synthesize(model, Eigen::VectorXd::Zero(t)) == model.mean_shape);
	Eigen::VectorXd b = Eigen::VectorXd::Zero(t);
	b(0) = static_cast<double>(t);
	const Eigen::VectorXd expected = model.mean_shape.coords() + static_cast<double>(t) * model.modes.col(0);
	CHECK(testing::max_abs_diff(synthesize(model, b).coords(), expected) < 1e-15);
	CHECK_THROWS_AS(synthesize(model, Eigen::VectorXd::Zero(t + 1)), ArityError);
}

TEST_CASE("clamp_params")
{
	std::mt19937_64 rng(10);
	const ShapeModel model = random_model(rng);
	const Eigen::Index t = model.num_modes();
	const Eigen::VectorXd sd = model.eigenvalues.cwiseSqrt();

	CHECK(clamp_params(model, 4.0 * sd) == 3.0 * sd);
	CHECK(clamp_params(model, -5.0 * sd) == -3.0 * sd);
	const Eigen::VectorXd inside = 0.5 * sd;
	CHECK(clamp_params(model, inside) == inside);
	CHECK_THROWS_AS(clamp_params(model, Eigen::VectorXd::Zero(t + 1)), ArityError);

	std::normal_distribution<double> d(0.0, 5.0);
	for (int trial = 0; trial < 200; ++trial) {
		Eigen::VectorXd b(t);
		for (Eigen::Index i = 0; i < t; ++i) {
			b(i) = d(rng) * sd(i);
		}
		const Eigen::VectorXd once = clamp_params(model, b);
		CHECK(clamp_params(model, once) == once);
		for (Eigen::Index i = 0; i < t; ++i) {
			CHECK(std::abs(once(i)) <= 3.0 * sd(i));
		}
	}
}

TEST_CASE("fit_params: the mean is a fixed point")
{
	std::mt19937_64 rng(11);
	const ShapeModel model = random_model(rng);
	const ParamFit fit = fit_params(model, model.mean_shape);
	CHECK(fit.transform.scale == doctest::Approx(1.0));
	CHECK(std::abs(fit.transform.rotation) < 1e-9);
	CHECK(fit.transform.translation.norm() < 1e-9);
	CHECK(fit.params.cwiseAbs().maxCoeff() < 1e-9);
	CHECK(fit.residual < 1e-18);
}

TEST_CASE("fit_params: recovers forward-constructed parameters and pose")
{
	std::mt19937_64 rng(12);
	const ShapeModel model = random_model(rng);
	std::uniform_real_distribution<double> u(-2.5, 2.5);
	for (int trial = 0; trial < 20; ++trial) {
		Eigen::VectorXd b0(model.num_modes());
		for (Eigen::Index i = 0; i < b0.size(); ++i) {
			b0(i) = u(rng) * std::sqrt(model.eigenvalues(i));
		}
		const auto pose = testing::random_similarity(rng);
		const Shape target = pose.apply(synthesize(model, b0));
		const ParamFit fit = fit_params(model, target, 1e-10, 500);
		CHECK(testing::max_abs_diff(fit.params, b0) < 1e-3);
		CHECK(fit.residual < 1e-6);
	}
}

TEST_CASE("fit_params: a component outside the model space is left as residual")
{
	std::mt19937_64 rng(13);
	const ShapeModel model = random_model(rng);
	const std::size_t n = model.num_points();
	// Directions the fit can absorb: modes, translation, scale and rotation of the mean.
	std::vector<Eigen::VectorXd> absorbed;
	for (Eigen::Index k = 0; k < model.num_modes(); ++k) {
		absorbed.push_back(model.modes.col(k));
	}
	Eigen::VectorXd tx = Eigen::VectorXd::Zero(2 * n);
	Eigen::VectorXd ty = Eigen::VectorXd::Zero(2 * n);
	Eigen::VectorXd rot(2 * n);
	for (std::size_t i = 0; i < n; ++i) {
		tx(2 * i) = 1.0;
		ty(2 * i + 1) = 1.0;
		rot(2 * i) = -model.mean_shape.coords()(2 * i + 1);
		rot(2 * i + 1) = model.mean_shape.coords()(2 * i);
	}
	absorbed.push_back(tx);
	absorbed.push_back(ty);
	absorbed.push_back(model.mean_shape.coords());
	absorbed.push_back(rot);

	Eigen::VectorXd w = Eigen::VectorXd::Random(2 * static_cast<Eigen::Index>(n));
	w -= project_onto(absorbed, w);
	w *= 0.01 / w.norm();
	const ParamFit fit = fit_params(model, Shape(Eigen::VectorXd(model.mean_shape.coords() + w)), 1e-12, 200);
	CHECK(fit.params.cwiseAbs().maxCoeff() < 1e-6);
	CHECK(fit.residual == doctest::Approx(w.squaredNorm()).epsilon(1e-4));
}

TEST_CASE("fit_params: residual never increases across iterations")
{
	std::mt19937_64 rng(14);
	const ShapeModel model = random_model(rng);
	for (int trial = 0; trial < 30; ++trial) {
		const Shape target = testing::random_similarity(rng).apply(testing::random_shape(rng, model.num_points()));
		const ParamFit fit = fit_params(model, target);
		for (std::size_t k = 1; k < fit.residual_history.size(); ++k) {
			CHECK(fit.residual_history[k] <= fit.residual_history[k - 1] * (1.0 + 1e-12) + 1e-15);
		}
		// The result lies in the valid region: refitting changes nothing beyond tolerance.
		const Shape fitted = fit.transform.apply(synthesize(model, fit.params));
		const ParamFit again = fit_params(model, fitted);
		for (Eigen::Index i = 0; i < fit.params.size(); ++i) {
			CHECK(std::abs(again.params(i) - fit.params(i)) / std::sqrt(model.eigenvalues(i)) < 1e-4);
		}
	}
}

TEST_CASE("fit_params: errors")
{
	std::mt19937_64 rng(15);
	const ShapeModel model = random_model(rng);
	CHECK_THROWS_AS(fit_params(model, testing::random_shape(rng, model.num_points() + 1)), ArityError);
	const Shape flat(Eigen::VectorXd(Eigen::VectorXd::Constant(2 * static_cast<Eigen::Index>(model.num_points()), 3.0)));
	CHECK_THROWS_AS(fit_params(model, flat), DegenerateShapeError);
}

TEST_CASE("rotate_model keeps the eigen-structure")
{
	std::mt19937_64 rng(16);
	const ShapeModel model = random_model(rng);
	const ShapeModel turned = rotate_model(model, 0.7);
	const Eigen::Index t = model.num_modes();
	CHECK((turned.modes.transpose() * turned.modes - Eigen::MatrixXd::Identity(t, t)).cwiseAbs().maxCoeff() < 1e-12);
	CHECK(turned.eigenvalues == model.eigenvalues);
	CHECK(fit_similarity(model.mean_shape, turned.mean_shape).rotation == doctest::Approx(0.7));
	CHECK(mean_orientation(model, {turned.mean_shape}) == doctest::Approx(0.7));
}
