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

#ifndef ASMSVM_DATASET_IO_HPP_
#define ASMSVM_DATASET_IO_HPP_

#include "asmsvm/errors.hpp"
#include "asmsvm/fit_config.hpp"
#include "asmsvm/geometry.hpp"
#include "asmsvm/imaging.hpp"
#include "asmsvm/landmark_scheme.hpp"
#include "asmsvm/profiles.hpp"
#include "asmsvm/shape_model.hpp"
#include "asmsvm/svm.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace asmsvm {

/**
 * Parses the plain-text points format:
 *
 *     version: 1
 *     n_points: <k>
 *     {
 *     x y        (k lines)
 *     }
 *
 * When expected_points is non-zero the declared count must match it.
 * Errors are ParseError carrying the offending line number.
 */
Shape parse_points(std::istream& in, std::size_t expected_points = 0);
Shape load_points_file(const std::filesystem::path& path, std::size_t expected_points = 0);
// Coordinates are written with 17 significant digits, so parse(write(s)) == s.
void write_points(std::ostream& out, const Shape& shape);
void save_points_file(const std::filesystem::path& path, const Shape& shape);

// Binary 8-bit PGM (P5, maxval 255).
GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes);
GrayImage load_image(const std::filesystem::path& path);
// Intensities are rounded and clamped to [0, 255].
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);

struct RgbImage
{
	int width = 0;
	int height = 0;
	std::vector<std::array<std::uint8_t, 3>> pixels;

	static RgbImage from_gray(const GrayImage& image);
	void set(int x, int y, std::array<std::uint8_t, 3> color);
};
// Binary PPM (P6).
void save_ppm(const std::filesystem::path& path, const RgbImage& image);

// Luminance 0.299 R + 0.587 G + 0.114 B.
GrayImage to_gray(const RgbImage& image);

struct AnnotatedSample
{
	std::string stem;
	std::filesystem::path image_path;
	GrayImage image;
	Shape shape;
};

/**
 * Loads `<images>/<stem>.pgm` / `<points>/<stem>.pts` pairs in sorted stem
 * order. Throws when a points file has no image, when no pair is found, or
 * when an annotated point falls outside its image.
 */
std::vector<AnnotatedSample> load_annotated_dir(const std::filesystem::path& images_dir,
                                                const std::filesystem::path& points_dir,
                                                std::size_t expected_points);

// Throws Error when any point lies outside [0, w-1] x [0, h-1].
void check_within_bounds(const Shape& shape, const GrayImage& image, const std::string& what);

/**
 * Seeded shuffle, then the first train_count items go to the training
 * side. Requires train_count < samples.size().
 */
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_dataset(const std::vector<T>& samples, std::size_t train_count,
                                                        std::uint64_t seed);
std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed);

inline constexpr std::uint32_t bundle_format_version = 1;

/**
 * The persisted training output: everything fitting needs.
 * classifiers is indexed [level][landmark].
 */
struct ModelBundle
{
	std::uint32_t version = bundle_format_version;
	LandmarkScheme scheme;
	ShapeModel shape_model;
	ProfileModel profiles;
	std::vector<std::vector<LandmarkClassifier>> classifiers;
	FitConfig fit_defaults;

	// Throws CorruptionError when dimensions disagree anywhere.
	void check_consistency() const;
	bool operator==(const ModelBundle& other) const = default;
};

std::vector<std::uint8_t> serialize_bundle(const ModelBundle& bundle);
ModelBundle deserialize_bundle(const std::vector<std::uint8_t>& bytes);
void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_dataset(const std::vector<T>& samples, std::size_t train_count,
                                                        std::uint64_t seed)
{
	const auto order = shuffled_indices(samples.size(), seed);
	if (train_count >= samples.size()) {
		throw SplitError("split_dataset: train_count must be smaller than the sample count");
	}
	std::pair<std::vector<T>, std::vector<T>> out;
	for (std::size_t k = 0; k < order.size(); ++k) {
		(k < train_count ? out.first : out.second).push_back(samples[order[k]]);
	}
	return out;
}

} // namespace asmsvm

#endif /* ASMSVM_DATASET_IO_HPP_ */
