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
#include "asmsvm/imaging.hpp"
#include "asmsvm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace asmsvm {

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height),
      pixels_(static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)), fill)
{
	if (width < 0 || height < 0) {
		throw SizeError("image dimensions must be non-negative");
	}
}

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels))
{
	if (width < 0 || height < 0 ||
	    pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
		throw SizeError("pixel count does not match image dimensions");
	}
}

double GrayImage::clamped(int x, int y) const
{
	return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

GrayImage GrayImage::transposed() const
{
	GrayImage out(height_, width_);
	for (int y = 0; y < height_; ++y) {
		for (int x = 0; x < width_; ++x) {
			out(y, x) = (*this)(x, y);
		}
	}
	return out;
}

std::size_t EdgeMap::count() const
{
	return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

GrayImage equalize_histogram(const GrayImage& image)
{
	std::array<std::size_t, 256> histogram{};
	auto bin = [](double v) { return static_cast<std::size_t>(std::clamp(std::lround(v), 0L, 255L)); };
	for (double v : image.pixels()) {
		++histogram[bin(v)];
	}
	std::array<std::size_t, 256> cdf{};
	std::partial_sum(histogram.begin(), histogram.end(), cdf.begin());

	const std::size_t total = image.pixels().size();
	std::size_t cdf_min = 0;
	for (std::size_t k = 0; k < 256; ++k) {
		if (histogram[k] != 0) {
			cdf_min = cdf[k];
			break;
		}
	}

	std::array<double, 256> lut{};
	if (total > cdf_min) {
		const double denom = static_cast<double>(total - cdf_min);
		for (std::size_t k = 0; k < 256; ++k) {
			const double c = cdf[k] > cdf_min ? static_cast<double>(cdf[k] - cdf_min) : 0.0;
			lut[k] = std::round(255.0 * c / denom);
		}
	}
	GrayImage out(image.width(), image.height());
	for (std::size_t i = 0; i < total; ++i) {
		out.pixels()[i] = lut[bin(image.pixels()[i])];
	}
	return out;
}

GradientField sobel_gradients(const GrayImage& image)
{
	if (image.width() < 3 || image.height() < 3) {
		throw SizeError("sobel_gradients: image must be at least 3x3");
	}
	const int w = image.width();
	const int h = image.height();
	GradientField field{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h)};
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			const double tl = image.clamped(x - 1, y - 1);
			const double tc = image.clamped(x, y - 1);
			const double tr = image.clamped(x + 1, y - 1);
			const double ml = image.clamped(x - 1, y);
			const double mr = image.clamped(x + 1, y);
			const double bl = image.clamped(x - 1, y + 1);
			const double bc = image.clamped(x, y + 1);
			const double br = image.clamped(x + 1, y + 1);
			const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
			const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
			field.gx(x, y) = gx;
			field.gy(x, y) = gy;
			field.magnitude(x, y) = std::sqrt(gx * gx + gy * gy);
		}
	}
	return field;
}

GrayImage gaussian_blur5(const GrayImage& image, double sigma)
{
	std::array<double, 5> kernel{};
	double sum = 0.0;
	for (int k = -2; k <= 2; ++k) {
		kernel[static_cast<std::size_t>(k + 2)] = std::exp(-(k * k) / (2.0 * sigma * sigma));
		sum += kernel[static_cast<std::size_t>(k + 2)];
	}
	for (auto& v : kernel) {
		v /= sum;
	}
	// Separable: rows then columns.
	const int w = image.width();
	const int h = image.height();
	GrayImage rows(w, h);
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			double acc = 0.0;
			for (int k = -2; k <= 2; ++k) {
				acc += kernel[static_cast<std::size_t>(k + 2)] * image.clamped(x + k, y);
			}
			rows(x, y) = acc;
		}
	}
	GrayImage out(w, h);
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			double acc = 0.0;
			for (int k = -2; k <= 2; ++k) {
				acc += kernel[static_cast<std::size_t>(k + 2)] * rows.clamped(x, y + k);
			}
			out(x, y) = acc;
		}
	}
	return out;
}

EdgeMap canny_edges(const GrayImage& image, double low, double high, double sigma)
{
	if (!(low >= 0.0) || !(low <= high)) {
		throw ThresholdError("canny_edges: thresholds must satisfy 0 <= low <= high");
	}
	const GradientField grad = sobel_gradients(gaussian_blur5(image, sigma));
	const int w = image.width();
	const int h = image.height();
	const GrayImage& mag = grad.magnitude;

	// tan(22.5 deg) and tan(67.5 deg) split the four direction sectors.
	const double tan22 = std::tan(M_PI / 8.0);
	const double tan67 = std::tan(3.0 * M_PI / 8.0);

	GrayImage thin(w, h);
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			const double m = mag(x, y);
			if (m <= 0.0) {
				continue;
			}
			const double gx = grad.gx(x, y);
			const double gy = grad.gy(x, y);
			const double ax = std::abs(gx);
			const double ay = std::abs(gy);
			int dx = 0;
			int dy = 0;
			if (ay <= tan22 * ax) {
				dx = 1;
			} else if (ay >= tan67 * ax) {
				dy = 1;
			} else {
				dx = 1;
				dy = (gx * gy > 0.0) ? 1 : -1;
			}
			const double behind = mag.clamped(x - dx, y - dy);
			const double ahead = mag.clamped(x + dx, y + dy);
			if (m > behind && m >= ahead) {
				thin(x, y) = m;
			}
		}
	}

	EdgeMap edges{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0)};
	std::vector<std::pair<int, int>> stack;
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			if (thin(x, y) >= high && thin(x, y) > 0.0) {
				edges.flags[static_cast<std::size_t>(y * w + x)] = 1;
				stack.emplace_back(x, y);
			}
		}
	}
	while (!stack.empty()) {
		const auto [x, y] = stack.back();
		stack.pop_back();
		for (int ny = y - 1; ny <= y + 1; ++ny) {
			for (int nx = x - 1; nx <= x + 1; ++nx) {
				if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
					continue;
				}
				auto& flag = edges.flags[static_cast<std::size_t>(ny * w + nx)];
				if (flag == 0 && thin(nx, ny) >= low && thin(nx, ny) > 0.0) {
					flag = 1;
					stack.emplace_back(nx, ny);
				}
			}
		}
	}
	return edges;
}

GrayImage downsample_half(const GrayImage& image)
{
	const int w = image.width() / 2;
	const int h = image.height() / 2;
	GrayImage out(w, h);
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			out(x, y) = 0.25 * (image(2 * x, 2 * y) + image(2 * x + 1, 2 * y) + image(2 * x, 2 * y + 1) +
			                    image(2 * x + 1, 2 * y + 1));
		}
	}
	return out;
}

ImagePyramid build_pyramid(const GrayImage& image, int levels)
{
	if (levels < 1) {
		throw SizeError("build_pyramid: need at least one level");
	}
	const int shrink = 1 << (levels - 1);
	if (image.width() / shrink < 3 || image.height() / shrink < 3) {
		throw SizeError("build_pyramid: image too small for the requested number of levels");
	}
	ImagePyramid pyramid;
	pyramid.levels.push_back(image);
	for (int k = 1; k < levels; ++k) {
		pyramid.levels.push_back(downsample_half(pyramid.levels.back()));
	}
	return pyramid;
}

double sample_bilinear(const GrayImage& image, double x, double y)
{
	const double cx = std::clamp(x, 0.0, static_cast<double>(image.width() - 1));
	const double cy = std::clamp(y, 0.0, static_cast<double>(image.height() - 1));
	const int x0 = static_cast<int>(std::floor(cx));
	const int y0 = static_cast<int>(std::floor(cy));
	const int x1 = std::min(x0 + 1, image.width() - 1);
	const int y1 = std::min(y0 + 1, image.height() - 1);
	const double fx = cx - x0;
	const double fy = cy - y0;
	const double top = (1.0 - fx) * image(x0, y0) + fx * image(x1, y0);
	const double bottom = (1.0 - fx) * image(x0, y1) + fx * image(x1, y1);
	return (1.0 - fy) * top + fy * bottom;
}

double to_level(double level0_coord, int level)
{
	return std::ldexp(level0_coord + 0.5, -level) - 0.5;
}

double from_level(double level_coord, int level)
{
	return std::ldexp(level_coord + 0.5, level) - 0.5;
}

} // namespace asmsvm
