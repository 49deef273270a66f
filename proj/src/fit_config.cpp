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
#include "asmsvm/fit_config.hpp"
#include "asmsvm/errors.hpp"

#include <algorithm>

namespace asmsvm {

std::vector<int> adaptive_profile_lengths(int coarsest, int levels)
{
	if (levels < 1) {
		throw ConfigError("adaptive_profile_lengths: need at least one level");
	}
	std::vector<int> lengths(static_cast<std::size_t>(levels));
	for (int level = 0; level < levels; ++level) {
		int side = coarsest >> (levels - 1 - level);
		if (side % 2 == 0) {
			--side;
		}
		lengths[static_cast<std::size_t>(level)] = std::max(side, 3);
	}
	return lengths;
}

FitConfig FitConfig::asm_svm()
{
	return FitConfig{};
}

FitConfig FitConfig::classic()
{
	FitConfig config;
	config.svm_gate = false;
	config.edge_weighting = false;
	config.profile_kind = ProfileKind::one_d;
	return config;
}

void FitConfig::validate() const
{
	if (levels < 1) {
		throw ConfigError("fit config: levels must be >= 1");
	}
	if (profile_lengths.size() != static_cast<std::size_t>(levels)) {
		throw ConfigError("fit config: need one profile length per level");
	}
	for (int side : profile_lengths) {
		if (side < 3 || side % 2 == 0) {
			throw ConfigError("fit config: profile lengths must be odd and >= 3");
		}
	}
	if (one_d_length < 3 || one_d_length % 2 == 0) {
		throw ConfigError("fit config: 1-D profile length must be odd and >= 3");
	}
	if (search_radius < 1) {
		throw ConfigError("fit config: search_radius must be >= 1");
	}
	if (max_iters_per_level < 0) {
		throw ConfigError("fit config: max_iters_per_level must be >= 0");
	}
	if (!(c > 1.0)) {
		throw ConfigError("fit config: c must exceed 1");
	}
	if (!(q > 0.0)) {
		throw ConfigError("fit config: q must be positive");
	}
	if (!(convergence_fraction >= 0.0 && convergence_fraction <= 1.0)) {
		throw ConfigError("fit config: convergence_fraction must lie in [0, 1]");
	}
	if (!(canny.low >= 0.0 && canny.low <= canny.high)) {
		throw ThresholdError("fit config: canny thresholds must satisfy 0 <= low <= high");
	}
}

FitConfig fit_config_for_mode(const std::string& mode)
{
	if (mode == "asm_svm") {
		return FitConfig::asm_svm();
	}
	if (mode == "classic") {
		return FitConfig::classic();
	}
	throw ConfigError("unknown fitting mode '" + mode + "' (expected classic or asm_svm)");
}

} // namespace asmsvm
