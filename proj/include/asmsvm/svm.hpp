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

#ifndef ASMSVM_SVM_HPP_
#define ASMSVM_SVM_HPP_

#include "Eigen/Core"

#include <cstdint>
#include <vector>

namespace asmsvm {

struct LinearSvmModel
{
	Eigen::VectorXd weights;
	double bias = 0.0;

	bool operator==(const LinearSvmModel& other) const
	{
		return weights.size() == other.weights.size() && weights == other.weights && bias == other.bias;
	}
};

struct SvmTrainConfig
{
	double c_penalty = 1.0;
	// Maximum passes over the data.
	int epochs = 200;
	// Stop once the projected-gradient spread of a pass falls below this.
	double tolerance = 1e-4;
	std::uint64_t seed = 1;
};

struct SvmTrainingSet
{
	std::vector<Eigen::VectorXd> features;
	std::vector<int> labels; // +1 / -1
};

struct SvmTrainReport
{
	LinearSvmModel model;
	int epochs_run = 0;
	// Primal objective after every pass.
	std::vector<double> objective_history;
	double hinge_loss = 0.0;
};

struct Prediction
{
	int label = 1;
	double decision_value = 0.0;
};

/**
 * Soft-margin linear SVM, 0.5 * (|w|^2 + bias^2) + C * sum hinge, trained
 * by dual coordinate descent on the bias-augmented features. Visiting
 * order is shuffled per pass with the seeded generator, so training is
 * deterministic for a fixed seed.
 */
SvmTrainReport train_linear_svm_report(const SvmTrainingSet& set, const SvmTrainConfig& config);
LinearSvmModel train_linear_svm(const SvmTrainingSet& set, const SvmTrainConfig& config);

double svm_objective(const LinearSvmModel& model, const SvmTrainingSet& set, double c_penalty);
double hinge_loss(const LinearSvmModel& model, const SvmTrainingSet& set);

// decision = w.g + bias; label +1 when decision >= 0.
Prediction predict(const LinearSvmModel& model, const Eigen::VectorXd& g);

/**
 * Per-dimension affine map to zero mean and unit variance, fitted on
 * training features. Dimensions with (near) zero spread map to 0.
 */
struct Standardizer
{
	Eigen::VectorXd mean;
	Eigen::VectorXd inv_std;

	static Standardizer fit(const std::vector<Eigen::VectorXd>& features);
	Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

	bool operator==(const Standardizer& other) const
	{
		return mean.size() == other.mean.size() && mean == other.mean && inv_std.size() == other.inv_std.size() &&
		       inv_std == other.inv_std;
	}
};

// A standardiser followed by an SVM: the per-landmark candidate gate.
struct LandmarkClassifier
{
	Standardizer standardizer;
	LinearSvmModel svm;

	Prediction classify(const Eigen::VectorXd& raw_features) const
	{
		return predict(svm, standardizer.apply(raw_features));
	}
	bool operator==(const LandmarkClassifier& other) const = default;
};

} // namespace asmsvm

#endif /* ASMSVM_SVM_HPP_ */
