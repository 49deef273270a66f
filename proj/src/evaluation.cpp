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
#include "asmsvm/evaluation.hpp"
#include "asmsvm/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace asmsvm {

ErrorMetric parse_metric(const std::string& name)
{
	if (name == "euclidean") {
		return ErrorMetric::euclidean;
	}
	if (name == "abs-coord") {
		return ErrorMetric::abs_coord;
	}
	throw ConfigError("unknown metric '" + name + "' (expected euclidean or abs-coord)");
}

std::string metric_name(ErrorMetric metric)
{
	return metric == ErrorMetric::euclidean ? "euclidean" : "abs-coord";
}

EvalReport evaluate(const std::vector<Shape>& fitted, const std::vector<Shape>& truth, const LandmarkScheme& scheme,
                    ErrorMetric metric)
{
	if (fitted.size() != truth.size()) {
		throw ArityError("evaluate: fitted and truth lists differ in length");
	}
	if (fitted.empty()) {
		throw InsufficientDataError("evaluate: no images");
	}
	EvalReport report;
	report.metric = metric;
	report.images = fitted.size();
	report.landmarks = truth.front().size();
	const std::size_t k = report.landmarks;

	const bool grouped = scheme.total() == k;
	const std::size_t groups = grouped ? scheme.groups().size() : 1;
	std::vector<double> group_sum(groups, 0.0);
	std::vector<std::size_t> group_count(groups, 0);

	double total = 0.0;
	for (std::size_t i = 0; i < fitted.size(); ++i) {
		if (fitted[i].size() != k || truth[i].size() != k) {
			throw ArityError("evaluate: point counts differ between images");
		}
		double image_sum = 0.0;
		for (std::size_t j = 0; j < k; ++j) {
			const Point2 d = fitted[i].point(j) - truth[i].point(j);
			const double err = metric == ErrorMetric::euclidean ? d.norm() : d.cwiseAbs().sum();
			image_sum += err;
			const std::size_t g = grouped ? scheme.group_of(j) : 0;
			group_sum[g] += err;
			++group_count[g];
		}
		report.per_image.push_back(image_sum / static_cast<double>(k));
		total += image_sum;
	}
	report.e_ave = total / static_cast<double>(k) / static_cast<double>(fitted.size());
	for (std::size_t g = 0; g < groups; ++g) {
		report.per_group.emplace_back(grouped ? scheme.groups()[g].name : "all",
		                              group_sum[g] / static_cast<double>(group_count[g]));
	}
	return report;
}

void write_report(std::ostream& out, const EvalReport& report)
{
	out << std::fixed << std::setprecision(6);
	out << "method: " << report.method << '\n';
	out << "metric: " << metric_name(report.metric) << '\n';
	out << "n_images: " << report.images << '\n';
	out << "k_landmarks: " << report.landmarks << '\n';
	out << "E_ave: " << report.e_ave << '\n';
	out << "group\tmean_error\n";
	for (const auto& [name, err] : report.per_group) {
		out << name << '\t' << err << '\n';
	}
	out << "image\tmean_error\n";
	for (std::size_t i = 0; i < report.per_image.size(); ++i) {
		const std::string name = i < report.image_names.size() ? report.image_names[i] : std::to_string(i);
		out << name << '\t' << report.per_image[i] << '\n';
	}
	out << '\n';
	out.unsetf(std::ios::floatfield);
}

void write_reference_footer(std::ostream& out)
{
	out << "# reference E_ave (published, full-size data): caltech classic=14.021 asm_svm=10.548;"
	       " dtu classic=11.751 asm_svm=7.176\n";
}

} // namespace asmsvm
