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
#include "asmsvm/cli.hpp"
#include "asmsvm/errors.hpp"
#include "asmsvm/evaluation.hpp"
#include "asmsvm/synthetic.hpp"
#include "asmsvm/training.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace asmsvm::cli {

namespace fs = std::filesystem;

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
	try {
		return body();
	} catch (const std::exception& e) {
		std::string message = e.what();
		for (auto& ch : message) {
			if (ch == '\n') {
				ch = ' ';
			}
		}
		err << "error: " << message << '\n';
		return 1;
	}
}

void draw_line(RgbImage& image, Point2 a, Point2 b, std::array<std::uint8_t, 3> color)
{
	int x0 = static_cast<int>(std::lround(a.x()));
	int y0 = static_cast<int>(std::lround(a.y()));
	const int x1 = static_cast<int>(std::lround(b.x()));
	const int y1 = static_cast<int>(std::lround(b.y()));
	const int dx = std::abs(x1 - x0);
	const int dy = -std::abs(y1 - y0);
	const int sx = x0 < x1 ? 1 : -1;
	const int sy = y0 < y1 ? 1 : -1;
	int e = dx + dy;
	while (true) {
		image.set(x0, y0, color);
		if (x0 == x1 && y0 == y1) {
			break;
		}
		const int e2 = 2 * e;
		if (e2 >= dy) {
			e += dy;
			x0 += sx;
		}
		if (e2 <= dx) {
			e += dx;
			y0 += sy;
		}
	}
}

} // namespace

Box parse_box(const std::string& text)
{
	std::array<double, 4> v{};
	std::istringstream in(text);
	for (std::size_t k = 0; k < 4; ++k) {
		std::string field;
		if (!std::getline(in, field, ',')) {
			throw BoxError("box must be x,y,w,h");
		}
		try {
			std::size_t used = 0;
			v[k] = std::stod(field, &used);
			if (used != field.size()) {
				throw BoxError("box must be x,y,w,h");
			}
		} catch (const std::logic_error&) {
			throw BoxError("box must be x,y,w,h with numeric fields");
		}
	}
	std::string rest;
	if (std::getline(in, rest)) {
		throw BoxError("box must have exactly four fields");
	}
	return {v[0], v[1], v[2], v[3]};
}

RgbImage render_overlay(const GrayImage& image, const Shape& shape, const LandmarkScheme& scheme)
{
	static constexpr std::array<std::array<std::uint8_t, 3>, 7> palette{{{0, 200, 0},
	                                                                      {0, 160, 255},
	                                                                      {0, 255, 255},
	                                                                      {255, 200, 0},
	                                                                      {255, 0, 255},
	                                                                      {160, 100, 255},
	                                                                      {255, 128, 0}}};
	RgbImage out = RgbImage::from_gray(image);
	if (scheme.total() == shape.size()) {
		for (std::size_t g = 0; g < scheme.groups().size(); ++g) {
			const auto color = palette[g % palette.size()];
			const std::size_t start = scheme.group_start(g);
			const std::size_t count = scheme.groups()[g].count;
			for (std::size_t k = 0; k + 1 < count; ++k) {
				draw_line(out, shape.point(start + k), shape.point(start + k + 1), color);
			}
			if (scheme.groups()[g].closed && count > 2) {
				draw_line(out, shape.point(start + count - 1), shape.point(start), color);
			}
		}
	}
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const int cx = static_cast<int>(std::lround(shape.point(i).x()));
		const int cy = static_cast<int>(std::lround(shape.point(i).y()));
		for (int dy = -1; dy <= 1; ++dy) {
			for (int dx = -1; dx <= 1; ++dx) {
				out.set(cx + dx, cy + dy, {255, 0, 0});
			}
		}
	}
	return out;
}

FitConfig config_for_mode(const ModelBundle& bundle, const std::string& mode)
{
	const FitConfig preset = fit_config_for_mode(mode);
	FitConfig config = bundle.fit_defaults;
	config.svm_gate = preset.svm_gate;
	config.edge_weighting = preset.edge_weighting;
	config.profile_kind = preset.profile_kind;
	return config;
}

FitResult fit_image(const ModelBundle& bundle, const GrayImage& image, const Box& box, const std::string& mode)
{
	const FitConfig config = config_for_mode(bundle, mode);
	if (box.x >= image.width() || box.y >= image.height() || box.x + box.width <= 0.0 || box.y + box.height <= 0.0) {
		throw BoxError("box lies outside the image");
	}
	const Shape init = init_shape_from_box(bundle.shape_model, box);
	return fit(build_pyramid(image, config.levels), bundle, init, config);
}

int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const TrainConfig config = options.config ? load_train_config(*options.config) : TrainConfig{};
		const LandmarkScheme scheme = LandmarkScheme::face68();
		const auto samples = load_annotated_dir(options.images, options.points, scheme.total());
		const TrainSummary summary = train_bundle(samples, scheme, config);
		save_bundle(summary.bundle, options.out);
		out << "training images: " << samples.size() << '\n';
		out << "retained modes: " << summary.modes << '\n';
		for (std::size_t level = 0; level < summary.samples_per_level.size(); ++level) {
			out << "level " << level << " profile samples: " << summary.samples_per_level[level] << '\n';
		}
		if (summary.skipped > 0) {
			out << "warning: " << summary.skipped << " classifier samples skipped (landmark outside level image)\n";
		}
		out << "svm training accuracy: " << summary.mean_training_accuracy << '\n';
		out << "bundle written: " << options.out.string() << '\n';
		return 0;
	});
}

int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const Box box = parse_box(options.box);
		const ModelBundle bundle = load_bundle(options.model);
		const GrayImage image = load_image(options.image);
		const FitResult result = fit_image(bundle, image, box, options.mode);
		save_points_file(options.out, result.shape);
		if (options.overlay) {
			save_ppm(*options.overlay, render_overlay(image, result.shape, bundle.scheme));
		}
		out << "fitted " << result.shape.size() << " landmarks -> " << options.out.string() << '\n';
		return 0;
	});
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err)
{
	for (const auto& mode : options.modes) {
		if (mode != "classic" && mode != "asm_svm") {
			err << "error: unknown mode '" << mode << "' (expected classic or asm_svm)\n";
			return 2;
		}
	}
	if (options.modes.empty()) {
		err << "error: at least one --mode is required\n";
		return 2;
	}
	return guarded(err, [&] {
		const ErrorMetric metric = parse_metric(options.metric);
		const ModelBundle bundle = load_bundle(options.model);
		const auto samples = load_annotated_dir(options.images, options.points, bundle.scheme.total());

		std::ostringstream text;
		for (const auto& mode : options.modes) {
			std::vector<Shape> fitted;
			std::vector<Shape> truth;
			std::vector<std::string> names;
			for (const auto& s : samples) {
				const Box box = inflated_bounding_box(s.shape, options.box_inflate);
				fitted.push_back(fit_image(bundle, s.image, box, mode).shape);
				truth.push_back(s.shape);
				names.push_back(s.stem);
			}
			EvalReport report = evaluate(fitted, truth, bundle.scheme, metric);
			report.method = mode;
			report.image_names = names;
			write_report(text, report);
			out << mode << " E_ave: " << report.e_ave << " (" << report.images << " images)\n";
		}
		write_reference_footer(text);
		std::ofstream file(options.report);
		if (!file) {
			throw Error("cannot write report " + options.report.string());
		}
		file << text.str();
		return 0;
	});
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		SyntheticFaceOptions face;
		face.noise_sigma = options.noise;
		face.width = options.size;
		face.height = options.size;
		const auto samples = generate_synthetic_dataset(options.count, options.seed, face);
		write_dataset(samples, options.out / "images", options.out / "points");
		out << "wrote " << samples.size() << " synthetic faces to " << options.out.string() << '\n';
		return 0;
	});
}

} // namespace asmsvm::cli
