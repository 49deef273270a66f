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
#include "asmsvm/training.hpp"
#include "asmsvm/errors.hpp"
#include "asmsvm/profiles.hpp"
#include "asmsvm/search.hpp"
#include "asmsvm/shape_model.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace asmsvm {

using nlohmann::json;

void TrainConfig::validate() const
{
	fit.validate();
	if (sampling.negatives_per_positive < 1) {
		throw ConfigError("negatives_per_positive must be >= 1");
	}
	if (sampling.offset_min < 1 || sampling.offset_max < sampling.offset_min) {
		throw ConfigError("negative offsets need 1 <= offset_min <= offset_max");
	}
	if (!(svm.c_penalty > 0.0) || svm.epochs < 1) {
		throw ConfigError("svm_c must be positive and svm_epochs >= 1");
	}
	if (!(profile_epsilon >= 0.0)) {
		throw ConfigError("profile_epsilon must be non-negative");
	}
}

TrainConfig parse_train_config(const std::string& json_text)
{
	json j;
	try {
		j = json::parse(json_text);
	} catch (const json::parse_error& e) {
		throw ConfigError(std::string("training config is not valid JSON: ") + e.what());
	}
	if (!j.is_object()) {
		throw ConfigError("training config must be a JSON object");
	}
	TrainConfig c;
	try {
		c.seed = j.value("seed", c.seed);
		c.variance_fraction = j.value("variance_fraction", c.variance_fraction);
		c.clamp_alpha = j.value("clamp_alpha", c.clamp_alpha);
		c.profile_epsilon = j.value("profile_epsilon", c.profile_epsilon);
		c.upright_model = j.value("upright_model", c.upright_model);

		FitConfig& f = c.fit;
		f.levels = j.value("levels", f.levels);
		f.profile_lengths = adaptive_profile_lengths(j.value("coarsest_window", 15), f.levels);
		if (j.contains("window_sizes")) {
			f.profile_lengths = j.at("window_sizes").get<std::vector<int>>();
		}
		f.one_d_length = j.value("one_d_length", f.one_d_length);
		f.q = j.value("q", f.q);
		f.c = j.value("c", f.c);
		const std::string norm = j.value("normalization", std::string("sum"));
		if (norm == "sum") {
			f.normalization = WindowNormalization::sum;
		} else if (norm == "sigmoid") {
			f.normalization = WindowNormalization::sigmoid;
		} else {
			throw ConfigError("normalization must be \"sum\" or \"sigmoid\"");
		}
		f.search_radius = j.value("search_radius", f.search_radius);
		f.max_iters_per_level = j.value("max_iters_per_level", f.max_iters_per_level);
		f.convergence_fraction = j.value("convergence_fraction", f.convergence_fraction);
		f.canny.low = j.value("canny_low", f.canny.low);
		f.canny.high = j.value("canny_high", f.canny.high);
		f.canny.sigma = j.value("canny_sigma", f.canny.sigma);

		c.svm.c_penalty = j.value("svm_c", c.svm.c_penalty);
		c.svm.epochs = j.value("svm_epochs", c.svm.epochs);
		c.svm.tolerance = j.value("svm_tolerance", c.svm.tolerance);
		c.sampling.negatives_per_positive = j.value("negatives_per_positive", c.sampling.negatives_per_positive);
		c.sampling.offset_min = j.value("negative_offset_min", c.sampling.offset_min);
		c.sampling.offset_max = j.value("negative_offset_max", c.sampling.offset_max);
	} catch (const json::exception& e) {
		throw ConfigError(std::string("training config has a field of the wrong type: ") + e.what());
	}
	c.svm.seed = c.seed;
	c.validate();
	return c;
}

TrainConfig load_train_config(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in) {
		throw ConfigError("cannot open training config " + path.string());
	}
	std::ostringstream text;
	text << in.rdbuf();
	return parse_train_config(text.str());
}

PreparedSample prepare_sample(const GrayImage& image, const Shape& shape, const FitConfig& config)
{
	return {prepare_levels(image, config.levels, config.canny), shape};
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::size_t landmark, int level)
{
	std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
	                  static_cast<std::uint32_t>(landmark), static_cast<std::uint32_t>(level)};
	std::array<std::uint32_t, 2> out{};
	seq.generate(out.begin(), out.end());
	return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

bool inside(const GrayImage& image, const Point2& p)
{
	const long x = std::lround(p.x());
	const long y = std::lround(p.y());
	return x >= 0 && y >= 0 && x < image.width() && y < image.height();
}

} // namespace

LandmarkTrainingSet build_landmark_training_set(const std::vector<PreparedSample>& dataset, std::size_t landmark,
                                                int level, const NegativeSampling& sampling, int window_size,
                                                WindowNormalization normalization, double q, std::uint64_t seed)
{
	if (sampling.offset_min < 1 || sampling.offset_max < sampling.offset_min || sampling.negatives_per_positive < 0) {
		throw ConfigError("negative sampling needs 1 <= offset_min <= offset_max");
	}
	LandmarkTrainingSet set;
	set.landmark = landmark;
	set.level = level;
	std::mt19937_64 rng(derive_seed(seed, landmark, level));
	std::uniform_int_distribution<int> offset(-sampling.offset_max, sampling.offset_max);

	for (const auto& sample : dataset) {
		if (landmark >= sample.shape.size() || static_cast<std::size_t>(level) >= sample.levels.size()) {
			throw ArityError("build_landmark_training_set: landmark or level out of range");
		}
		const GrayImage& magnitude = sample.levels[static_cast<std::size_t>(level)].gradient.magnitude;
		const Point2 p0 = sample.shape.point(landmark);
		const Point2 center(to_level(p0.x(), level), to_level(p0.y(), level));
		if (!inside(magnitude, center)) {
			++set.skipped;
			continue;
		}
		set.features.push_back(extract_profile_2d(magnitude, center, window_size, normalization, q));
		set.labels.push_back(1);
		for (int k = 0; k < sampling.negatives_per_positive; ++k) {
			int dx = 0;
			int dy = 0;
			do {
				dx = offset(rng);
				dy = offset(rng);
			} while (std::max(std::abs(dx), std::abs(dy)) < sampling.offset_min);
			set.features.push_back(extract_profile_2d(magnitude, center + Point2(dx, dy), window_size, normalization, q));
			set.labels.push_back(-1);
		}
	}
	return set;
}

LandmarkClassifier train_landmark_classifier(const LandmarkTrainingSet& set, const SvmTrainConfig& config)
{
	std::vector<Eigen::VectorXd> raw;
	raw.reserve(set.features.size());
	for (const auto& f : set.features) {
		raw.push_back(f.values);
	}
	LandmarkClassifier classifier;
	classifier.standardizer = Standardizer::fit(raw);
	SvmTrainingSet standardized;
	standardized.labels = set.labels;
	for (const auto& x : raw) {
		standardized.features.push_back(classifier.standardizer.apply(x));
	}
	SvmTrainConfig seeded = config;
	seeded.seed = derive_seed(config.seed, set.landmark, set.level + 1000);
	classifier.svm = train_linear_svm(standardized, seeded);
	return classifier;
}

TrainSummary train_bundle(const std::vector<AnnotatedSample>& samples, const LandmarkScheme& scheme,
                          const TrainConfig& config)
{
	config.validate();
	if (samples.size() < 2) {
		throw InsufficientDataError("training needs at least two annotated images");
	}
	std::vector<Shape> shapes;
	for (const auto& s : samples) {
		if (s.shape.size() != scheme.total()) {
			throw ArityError("annotation '" + s.stem + "' has " + std::to_string(s.shape.size()) +
			                 " points but the scheme has " + std::to_string(scheme.total()));
		}
		shapes.push_back(s.shape);
	}

	TrainSummary summary;
	ModelBundle& bundle = summary.bundle;
	bundle.scheme = scheme;
	bundle.fit_defaults = config.fit;

	const GpaResult gpa = gpa_align(shapes);
	bundle.shape_model = build_shape_model(gpa.aligned, config.variance_fraction, config.clamp_alpha);
	if (config.upright_model) {
		bundle.shape_model = rotate_model(bundle.shape_model, mean_orientation(bundle.shape_model, shapes));
	}
	summary.modes = bundle.shape_model.num_modes();

	std::vector<PreparedSample> prepared;
	prepared.reserve(samples.size());
	for (const auto& s : samples) {
		prepared.push_back(prepare_sample(s.image, s.shape, config.fit));
	}

	const FitConfig& fc = config.fit;
	const auto levels = static_cast<std::size_t>(fc.levels);
	const std::size_t n = scheme.total();
	bundle.profiles.geometry.window_sizes = fc.profile_lengths;
	bundle.profiles.geometry.one_d_length = fc.one_d_length;
	bundle.profiles.geometry.normalization = fc.normalization;
	bundle.profiles.geometry.q = fc.q;
	bundle.profiles.one_d.assign(levels, std::vector<ProfileStats>(n));
	bundle.profiles.two_d.assign(levels, std::vector<ProfileStats>(n));
	bundle.classifiers.assign(levels, std::vector<LandmarkClassifier>(n));
	summary.samples_per_level.assign(levels, 0);

	double accuracy_sum = 0.0;
	for (std::size_t level = 0; level < levels; ++level) {
		const int lvl = static_cast<int>(level);
		const int side = fc.profile_lengths[level];
		std::vector<Shape> level_shapes;
		for (const auto& s : prepared) {
			level_shapes.push_back(shape_to_level(s.shape, lvl));
		}
		for (std::size_t i = 0; i < n; ++i) {
			std::vector<Profile> one_d;
			for (std::size_t k = 0; k < prepared.size(); ++k) {
				one_d.push_back(extract_profile_1d(prepared[k].levels[level].equalized, level_shapes[k], scheme, i,
				                                   fc.one_d_length));
			}
			bundle.profiles.one_d[level][i] = train_profile_stats(one_d, config.profile_epsilon);

			const LandmarkTrainingSet set = build_landmark_training_set(prepared, i, lvl, config.sampling, side,
			                                                            fc.normalization, fc.q, config.seed);
			summary.skipped += set.skipped;
			std::vector<Profile> positives;
			for (std::size_t k = 0; k < set.features.size(); ++k) {
				if (set.labels[k] == 1) {
					positives.push_back(set.features[k]);
				}
			}
			if (positives.size() < 2) {
				throw InsufficientDataError("landmark " + std::to_string(i) + " has fewer than two usable samples at level " +
				                            std::to_string(level));
			}
			summary.samples_per_level[level] += positives.size();
			bundle.profiles.two_d[level][i] = train_profile_stats(positives, config.profile_epsilon);

			SvmTrainConfig svm = config.svm;
			svm.seed = config.seed;
			const LandmarkClassifier classifier = train_landmark_classifier(set, svm);
			std::size_t correct = 0;
			for (std::size_t k = 0; k < set.features.size(); ++k) {
				correct += classifier.classify(set.features[k].values).label == set.labels[k] ? 1 : 0;
			}
			accuracy_sum += static_cast<double>(correct) / static_cast<double>(set.features.size());
			bundle.classifiers[level][i] = classifier;
		}
	}
	summary.mean_training_accuracy = accuracy_sum / static_cast<double>(levels * n);
	bundle.check_consistency();
	return summary;
}

} // namespace asmsvm
