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

#ifndef ASMSVM_FEATURES_HPP_
#define ASMSVM_FEATURES_HPP_

#include "asmsvm/imaging.hpp"

#include <vector>

namespace asmsvm {

/**
 * Everything the profile operations read at one pyramid level: the
 * histogram-equalised level image, its Sobel gradients and its Canny edges.
 */
struct LevelImage
{
	GrayImage equalized;
	GradientField gradient;
	EdgeMap edges;
};

LevelImage prepare_level(const GrayImage& level_image, const CannyParams& canny);
std::vector<LevelImage> prepare_levels(const ImagePyramid& pyramid, const CannyParams& canny);
std::vector<LevelImage> prepare_levels(const GrayImage& image, int levels, const CannyParams& canny);

} // namespace asmsvm

#endif /* ASMSVM_FEATURES_HPP_ */
