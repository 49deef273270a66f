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

#ifndef ASMSVM_CLI_HPP_
#define ASMSVM_CLI_HPP_

#include "asmsvm/dataset_io.hpp"
#include "asmsvm/search.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asmsvm::cli {

// Command implementations behind the asmsvm executable. Each returns the
// process exit status and writes a single-line diagnostic to `err` on failure.

struct TrainOptions
{
	std::filesystem::path images;
	std::filesystem::path points;
	std::optional<std::filesystem::path> config;
	std::filesystem::path out;
};

struct FitOptions
{
	std::filesystem::path model;
	std::filesystem::path image;
	std::string box; // "x,y,w,h"
	std::filesystem::path out;
	std::optional<std::filesystem::path> overlay;
	std::string mode = "asm_svm";
};

struct EvalOptions
{
	std::filesystem::path model;
	std::filesystem::path images;
	std::filesystem::path points;
	std::vector<std::string> modes;
	std::filesystem::path report;
	double box_inflate = 0.1;
	std::string metric = "euclidean";
};

struct SynthOptions
{
	std::filesystem::path out;
	std::size_t count = 40;
	std::uint64_t seed = 7;
	double noise = 5.0;
	int size = 256;
};

int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

// Parses "x,y,w,h"; throws BoxError.
Box parse_box(const std::string& text);

/**
 * Grayscale copy of the image with group contours drawn in a fixed palette
 * and 3x3 pure red markers on every landmark.
 */
RgbImage render_overlay(const GrayImage& image, const Shape& shape, const LandmarkScheme& scheme);

// Fits one image from an initial box using the bundle's stored settings for `mode`.
FitResult fit_image(const ModelBundle& bundle, const GrayImage& image, const Box& box, const std::string& mode);

// Bundle defaults with the mode switches (gate, edge weighting, profile kind) applied.
FitConfig config_for_mode(const ModelBundle& bundle, const std::string& mode);

} // namespace asmsvm::cli

#endif /* ASMSVM_CLI_HPP_ */
