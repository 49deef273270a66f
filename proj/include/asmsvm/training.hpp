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

#ifndef ASMSVM_TRAINING_HPP_
#define ASMSVM_TRAINING_HPP_

#include "asmsvm/dataset_io.hpp"
#include "asmsvm/features.hpp"
#include "asmsvm/fit_config.hpp"
#include "asmsvm/svm.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace asmsvm {

struct NegativeSampling
{
	int negatives_per_positive = 4;
	// Chebyshev distance range of negative window centres, level pixels.
	int offset_min = 2;
	int offset_max = 8;
};

struct TrainConfig
{
	std::uint64_t seed = 1;
	double variance_fraction = 0.975;
	double clamp_alpha = 3.0;
	double profile_epsilon = ProfileStats::default_epsilon;
	NegativeSampling sampling;
	SvmTrainConfig svm;
	// Pyramid depth, window sizes, q, Canny thresholds... stored in the bundle.
	FitConfig fit = FitConfig::asm_svm();
	// Rotate the model into the mean pose of the training annotations.
	bool upright_model = true;

	void validate() const;
};

/**
 * Reads a JSON training configuration. Every key is optional; missing keys
 * keep the defaults above. Recognised keys: seed, variance_fraction,
 * clamp_alpha, profile_epsilon, levels, coarsest_window (window sides then
 * follow the halving rule), window_sizes (explicit, index = level),
 * one_d_length, q, c, normalization ("sum" | "sigmoid"), search_radius,
 * max_iters_per_level, convergence_fraction, canny_low, canny_high,
 * canny_sigma, svm_c, svm_epochs, svm_tolerance, negatives_per_positive,
 * negative_offset_min, negative_offset_max.
 */
TrainConfig parse_train_config(const std::string& json_text);
TrainConfig load_train_config(const std::filesystem::path& path);

// A training image with its pyramid features precomputed.
struct PreparedSample
{
	std::vector<LevelImage> levels;
	Shape shape; // level 0
};

PreparedSample prepare_sample(const GrayImage& image, const Shape& shape, const FitConfig& config);

struct LandmarkTrainingSet
{
	std::size_t landmark = 0;
	int level = 0;
	std::vector<Profile> features;
	std::vector<int> labels;
	std::size_t skipped = 0; // images whose landmark fell outside the level image
};

/**
 * One positive window at the annotated landmark per image and
 * negatives_per_positive windows at random integer offsets whose Chebyshev
 * distance lies in [offset_min, offset_max]. Deterministic for a seed.
 */
LandmarkTrainingSet build_landmark_training_set(const std::vector<PreparedSample>& dataset, std::size_t landmark,
                                                int level, const NegativeSampling& sampling, int window_size,
                                                WindowNormalization normalization, double q, std::uint64_t seed);

// Standardises the features, then trains the SVM.
LandmarkClassifier train_landmark_classifier(const LandmarkTrainingSet& set, const SvmTrainConfig& config);

struct TrainSummary
{
	ModelBundle bundle;
	Eigen::Index modes = 0;
	std::vector<std::size_t> samples_per_level; // positive profile samples per level
	std::size_t skipped = 0;
	double mean_training_accuracy = 0.0; // SVM, over all landmarks and levels
};

TrainSummary train_bundle(const std::vector<AnnotatedSample>& samples, const LandmarkScheme& scheme,
                          const TrainConfig& config);

} // namespace asmsvm

#endif /* ASMSVM_TRAINING_HPP_ */
