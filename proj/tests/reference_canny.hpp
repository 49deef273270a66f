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

#include "asmsvm/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace asmsvm::testing {

inline double at_clamped(const std::vector<std::vector<double>>& a, int x, int y)
{
	const int h = static_cast<int>(a.size());
	const int w = static_cast<int>(a[0].size());
	return a[static_cast<std::size_t>(std::clamp(y, 0, h - 1))][static_cast<std::size_t>(std::clamp(x, 0, w - 1))];
}

// Reference Canny: direct 2-D Gaussian, direct Sobel, atan2 direction bins,
// recursive hysteresis. Shares no code with the library.
inline std::vector<std::vector<int>> reference_canny(const GrayImage& img, double low, double high, double sigma)
{
	const int w = img.width();
	const int h = img.height();
	std::vector<std::vector<double>> src(static_cast<std::size_t>(h), std::vector<double>(static_cast<std::size_t>(w)));
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			src[y][x] = img(x, y);
		}
	}
	double kernel[5][5];
	double ksum = 0.0;
	for (int j = -2; j <= 2; ++j) {
		for (int i = -2; i <= 2; ++i) {
			kernel[j + 2][i + 2] = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
			ksum += kernel[j + 2][i + 2];
		}
	}
	auto smooth = src;
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			double acc = 0.0;
			for (int j = -2; j <= 2; ++j) {
				for (int i = -2; i <= 2; ++i) {
					acc += kernel[j + 2][i + 2] * at_clamped(src, x + i, y + j);
				}
			}
			smooth[y][x] = acc / ksum;
		}
	}
	const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
	auto gx = src;
	auto gy = src;
	auto mag = src;
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			double sx = 0.0;
			double sy = 0.0;
			for (int j = -1; j <= 1; ++j) {
				for (int i = -1; i <= 1; ++i) {
					const double v = at_clamped(smooth, x + i, y + j);
					sx += kx[j + 1][i + 1] * v;
					sy += kx[i + 1][j + 1] * v;
				}
			}
			gx[y][x] = sx;
			gy[y][x] = sy;
			mag[y][x] = std::hypot(sx, sy);
		}
	}
	auto thin = src;
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			thin[y][x] = 0.0;
			const double m = mag[y][x];
			if (m <= 0.0) {
				continue;
			}
			double angle = std::atan2(gy[y][x], gx[y][x]) * 180.0 / M_PI;
			if (angle < 0.0) {
				angle += 180.0;
			}
			int dx = 1;
			int dy = 0;
			if (angle < 22.5 || angle >= 157.5) {
				dx = 1;
				dy = 0;
			} else if (angle < 67.5) {
				dx = 1;
				dy = 1;
			} else if (angle < 112.5) {
				dx = 0;
				dy = 1;
			} else {
				dx = 1;
				dy = -1;
			}
			if (m > at_clamped(mag, x - dx, y - dy) && m >= at_clamped(mag, x + dx, y + dy)) {
				thin[y][x] = m;
			}
		}
	}
	std::vector<std::vector<int>> out(static_cast<std::size_t>(h), std::vector<int>(static_cast<std::size_t>(w), 0));
	std::function<void(int, int)> grow = [&](int x, int y) {
		for (int j = -1; j <= 1; ++j) {
			for (int i = -1; i <= 1; ++i) {
				const int nx = x + i;
				const int ny = y + j;
				if (nx >= 0 && ny >= 0 && nx < w && ny < h && out[ny][nx] == 0 && thin[ny][nx] > 0.0 &&
				    thin[ny][nx] >= low) {
					out[ny][nx] = 1;
					grow(nx, ny);
				}
			}
		}
	};
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			if (thin[y][x] > 0.0 && thin[y][x] >= high && out[y][x] == 0) {
				out[y][x] = 1;
				grow(x, y);
			}
		}
	}
	return out;
}

} // namespace asmsvm::testing
