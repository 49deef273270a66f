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
#include "asmsvm/features.hpp"

namespace asmsvm {

LevelImage prepare_level(const GrayImage& level_image, const CannyParams& canny)
{
	LevelImage out;
	out.equalized = equalize_histogram(level_image);
	out.gradient = sobel_gradients(out.equalized);
	out.edges = canny_edges(out.equalized, canny);
	return out;
}

std::vector<LevelImage> prepare_levels(const ImagePyramid& pyramid, const CannyParams& canny)
{
	std::vector<LevelImage> out;
	out.reserve(pyramid.levels.size());
	for (const auto& level : pyramid.levels) {
		out.push_back(prepare_level(level, canny));
	}
	return out;
}

std::vector<LevelImage> prepare_levels(const GrayImage& image, int levels, const CannyParams& canny)
{
	return prepare_levels(build_pyramid(image, levels), canny);
}

} // namespace asmsvm
