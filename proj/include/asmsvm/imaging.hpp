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

#ifndef ASMSVM_IMAGING_HPP_
#define ASMSVM_IMAGING_HPP_

#include <cstdint>
#include <vector>

namespace asmsvm {

/**
 * Row-major single-channel image with real intensities on the [0, 255]
 * scale. Intermediate results (gradients, smoothed images) reuse the same
 * container without the range restriction.
 */
class GrayImage
{
public:
	GrayImage() = default;
	GrayImage(int width, int height, double fill = 0.0);
	GrayImage(int width, int height, std::vector<double> pixels);

	int width() const { return width_; }
	int height() const { return height_; }
	bool empty() const { return pixels_.empty(); }

	double operator()(int x, int y) const { return pixels_[index(x, y)]; }
	double& operator()(int x, int y) { return pixels_[index(x, y)]; }
	// Edge-replicating access: coordinates are clamped into the image.
	double clamped(int x, int y) const;

	const std::vector<double>& pixels() const { return pixels_; }
	std::vector<double>& pixels() { return pixels_; }

	GrayImage transposed() const;

	bool operator==(const GrayImage& other) const = default;

private:
	std::size_t index(int x, int y) const
	{
		return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
	}

	int width_ = 0;
	int height_ = 0;
	std::vector<double> pixels_;
};

struct GradientField
{
	GrayImage gx;
	GrayImage gy;
	GrayImage magnitude;
};

struct EdgeMap
{
	int width = 0;
	int height = 0;
	std::vector<std::uint8_t> flags; // 1 = edge

	bool at(int x, int y) const
	{
		return flags[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] != 0;
	}
	std::size_t count() const;
	bool operator==(const EdgeMap& other) const = default;
};

struct ImagePyramid
{
	std::vector<GrayImage> levels; // 0 = full resolution
};

struct CannyParams
{
	double low = 50.0;
	double high = 150.0;
	double sigma = 1.4;

	bool operator==(const CannyParams& other) const = default;
};

// 256-bin CDF remap; intensities are binned by rounding.
GrayImage equalize_histogram(const GrayImage& image);

// 3x3 Sobel with edge replication. Requires at least 3x3.
GradientField sobel_gradients(const GrayImage& image);

// Normalised 5x5 Gaussian with edge replication.
GrayImage gaussian_blur5(const GrayImage& image, double sigma);

/**
 * Canny edge map: 5x5 Gaussian smoothing, Sobel gradients, non-maximum
 * suppression along the gradient direction quantised to 4 directions, then
 * hysteresis (strong >= high, weak >= low kept when 8-connected to strong).
 */
EdgeMap canny_edges(const GrayImage& image, double low, double high, double sigma = 1.4);
inline EdgeMap canny_edges(const GrayImage& image, const CannyParams& params)
{
	return canny_edges(image, params.low, params.high, params.sigma);
}

// 2x2 block average, floor-halved dimensions.
GrayImage downsample_half(const GrayImage& image);
ImagePyramid build_pyramid(const GrayImage& image, int levels = 3);

// Bilinear interpolation; coordinates are clamped into the image first.
double sample_bilinear(const GrayImage& image, double x, double y);

/**
 * Level-k pixel coordinate of a level-0 coordinate under 2x2 block
 * averaging (pixel centres at integers), and the inverse map.
 */
double to_level(double level0_coord, int level);
double from_level(double level_coord, int level);

} // namespace asmsvm

#endif /* ASMSVM_IMAGING_HPP_ */
