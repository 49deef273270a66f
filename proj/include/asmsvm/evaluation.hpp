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

#ifndef ASMSVM_EVALUATION_HPP_
#define ASMSVM_EVALUATION_HPP_

#include "asmsvm/geometry.hpp"
#include "asmsvm/landmark_scheme.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace asmsvm {

enum class ErrorMetric {
	euclidean, // |fit - truth|
	abs_coord, // |dx| + |dy|
};

ErrorMetric parse_metric(const std::string& name);
std::string metric_name(ErrorMetric metric);

struct EvalReport
{
	std::string method;
	ErrorMetric metric = ErrorMetric::euclidean;
	std::size_t images = 0;    // n
	std::size_t landmarks = 0; // k
	std::vector<std::string> image_names;
	// Mean landmark error of each image; E_ave is their mean.
	std::vector<double> per_image;
	double e_ave = 0.0;
	std::vector<std::pair<std::string, double>> per_group;
};

/**
 * E_ave = 1/n * 1/k * sum_i sum_j d(fit(i, j), truth(i, j)).
 * Group breakdown follows the scheme when its total matches k; otherwise a
 * single "all" group is reported.
 */
EvalReport evaluate(const std::vector<Shape>& fitted, const std::vector<Shape>& truth, const LandmarkScheme& scheme,
                    ErrorMetric metric = ErrorMetric::euclidean);

// Key/value lines, then a TSV table per group and per image.
void write_report(std::ostream& out, const EvalReport& report);
// Published E_ave values of the two methods on the two public face sets, for context.
void write_reference_footer(std::ostream& out);

} // namespace asmsvm

#endif /* ASMSVM_EVALUATION_HPP_ */
