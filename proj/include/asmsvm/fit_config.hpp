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

#ifndef ASMSVM_FIT_CONFIG_HPP_
#define ASMSVM_FIT_CONFIG_HPP_

#include "asmsvm/imaging.hpp"
#include "asmsvm/profiles.hpp"

#include <string>
#include <vector>

namespace asmsvm {

/**
 * Odd window sides that shrink by half per level towards full resolution:
 * the coarsest level gets `coarsest`, the next coarsest/2, then coarsest/4,
 * each rounded down to an odd number and never below 3. Index = level.
 */
std::vector<int> adaptive_profile_lengths(int coarsest, int levels);

struct FitConfig
{
	int levels = 3;
	// 2-D window side per level (index = level, 0 = full resolution).
	std::vector<int> profile_lengths = adaptive_profile_lengths(15, 3);
	int one_d_length = 15;
	int search_radius = 3;
	int max_iters_per_level = 20;
	// Stop a level once this fraction of landmarks moved less than one pixel.
	double convergence_fraction = 0.9;
	double q = 10.0;
	double c = 2.0;
	CannyParams canny;
	bool svm_gate = true;
	bool edge_weighting = true;
	ProfileKind profile_kind = ProfileKind::two_d;
	WindowNormalization normalization = WindowNormalization::sum;
	double param_tolerance = 1e-6;
	int param_max_iters = 50;

	// SVM gate, Canny weighting and adaptive 2-D Sobel windows.
	static FitConfig asm_svm();
	// 1-D derivative profiles, plain Mahalanobis cost, no gate.
	static FitConfig classic();

	// Throws ConfigError when an invariant is violated.
	void validate() const;

	bool operator==(const FitConfig& other) const = default;
};

// "classic" or "asm_svm"; throws ConfigError otherwise.
FitConfig fit_config_for_mode(const std::string& mode);

} // namespace asmsvm

#endif /* ASMSVM_FIT_CONFIG_HPP_ */
