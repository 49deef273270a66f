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
#include "asmsvm/svm.hpp"
#include "asmsvm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace asmsvm {

namespace {

void validate(const SvmTrainingSet& set)
{
	if (set.features.size() != set.labels.size()) {
		throw ArityError("svm: feature and label counts differ");
	}
	if (set.features.empty()) {
		throw InsufficientDataError("svm: empty training set");
	}
	bool positive = false;
	bool negative = false;
	for (std::size_t i = 0; i < set.labels.size(); ++i) {
		if (set.labels[i] == 1) {
			positive = true;
		} else if (set.labels[i] == -1) {
			negative = true;
		} else {
			throw ConfigError("svm: labels must be +1 or -1");
		}
		if (set.features[i].size() != set.features.front().size()) {
			throw ArityError("svm: features have different dimensions");
		}
	}
	if (!positive || !negative) {
		throw ClassBalanceError("svm: training set needs both classes");
	}
}

} // namespace

double hinge_loss(const LinearSvmModel& model, const SvmTrainingSet& set)
{
	double loss = 0.0;
	for (std::size_t i = 0; i < set.features.size(); ++i) {
		const double margin = set.labels[i] * (model.weights.dot(set.features[i]) + model.bias);
		loss += std::max(0.0, 1.0 - margin);
	}
	return loss;
}

double svm_objective(const LinearSvmModel& model, const SvmTrainingSet& set, double c_penalty)
{
	return 0.5 * (model.weights.squaredNorm() + model.bias * model.bias) + c_penalty * hinge_loss(model, set);
}

SvmTrainReport train_linear_svm_report(const SvmTrainingSet& set, const SvmTrainConfig& config)
{
	validate(set);
	if (!(config.c_penalty > 0.0) || config.epochs < 1) {
		throw ConfigError("svm: c_penalty must be positive and epochs >= 1");
	}
	const std::size_t m = set.features.size();
	const Eigen::Index dim = set.features.front().size();

	std::vector<double> alpha(m, 0.0);
	std::vector<double> diag(m);
	for (std::size_t i = 0; i < m; ++i) {
		diag[i] = set.features[i].squaredNorm() + 1.0;
	}
	SvmTrainReport report;
	report.model.weights = Eigen::VectorXd::Zero(dim);
	LinearSvmModel& model = report.model;

	std::mt19937_64 rng(config.seed);
	std::vector<std::size_t> order(m);
	std::iota(order.begin(), order.end(), std::size_t{0});

	for (int epoch = 0; epoch < config.epochs; ++epoch) {
		std::shuffle(order.begin(), order.end(), rng);
		double pg_max = -std::numeric_limits<double>::infinity();
		double pg_min = std::numeric_limits<double>::infinity();
		for (std::size_t i : order) {
			const double y = set.labels[i];
			const Eigen::VectorXd& x = set.features[i];
			const double gradient = y * (model.weights.dot(x) + model.bias) - 1.0;
			double projected = gradient;
			if (alpha[i] <= 0.0) {
				projected = std::min(gradient, 0.0);
			} else if (alpha[i] >= config.c_penalty) {
				projected = std::max(gradient, 0.0);
			}
			pg_max = std::max(pg_max, projected);
			pg_min = std::min(pg_min, projected);
			if (projected == 0.0) {
				continue;
			}
			const double previous = alpha[i];
			alpha[i] = std::clamp(previous - gradient / diag[i], 0.0, config.c_penalty);
			const double step = (alpha[i] - previous) * y;
			model.weights += step * x;
			model.bias += step;
		}
		report.objective_history.push_back(svm_objective(model, set, config.c_penalty));
		report.epochs_run = epoch + 1;
		if (pg_max - pg_min < config.tolerance) {
			break;
		}
	}
	report.hinge_loss = hinge_loss(model, set);
	return report;
}

LinearSvmModel train_linear_svm(const SvmTrainingSet& set, const SvmTrainConfig& config)
{
	return train_linear_svm_report(set, config).model;
}

Prediction predict(const LinearSvmModel& model, const Eigen::VectorXd& g)
{
	if (g.size() != model.weights.size()) {
		throw ArityError("predict: feature dimension does not match the model");
	}
	Prediction p;
	p.decision_value = model.weights.dot(g) + model.bias;
	p.label = p.decision_value >= 0.0 ? 1 : -1;
	return p;
}

Standardizer Standardizer::fit(const std::vector<Eigen::VectorXd>& features)
{
	if (features.empty()) {
		throw InsufficientDataError("Standardizer: no features");
	}
	const Eigen::Index dim = features.front().size();
	Standardizer s;
	s.mean = Eigen::VectorXd::Zero(dim);
	for (const auto& f : features) {
		if (f.size() != dim) {
			throw ArityError("Standardizer: features have different dimensions");
		}
		s.mean += f;
	}
	s.mean /= static_cast<double>(features.size());
	Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
	for (const auto& f : features) {
		var += (f - s.mean).cwiseAbs2();
	}
	var /= static_cast<double>(features.size());
	s.inv_std.resize(dim);
	for (Eigen::Index k = 0; k < dim; ++k) {
		const double sd = std::sqrt(var(k));
		s.inv_std(k) = sd > 1e-12 ? 1.0 / sd : 0.0;
	}
	return s;
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& x) const
{
	if (x.size() != mean.size()) {
		throw ArityError("Standardizer: feature dimension mismatch");
	}
	return (x - mean).cwiseProduct(inv_std);
}

} // namespace asmsvm
