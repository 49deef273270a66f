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

#ifndef ASMSVM_SYNTHETIC_HPP_
#define ASMSVM_SYNTHETIC_HPP_

#include "asmsvm/dataset_io.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace asmsvm {

/**
 * Procedural test faces: a filled face ellipse with brows, eyes, a nose
 * stroke and a mouth, annotated with the 68-point face scheme. Every
 * landmark sits on a rendered region boundary (or on the nose stroke).
 */
struct SyntheticFaceOptions
{
	int width = 256;
	int height = 256;
	double noise_sigma = 5.0;
	double max_rotation_deg = 4.0;
	int supersampling = 4;
};

AnnotatedSample generate_synthetic_face(std::uint64_t seed, const SyntheticFaceOptions& options = {});
std::vector<AnnotatedSample> generate_synthetic_dataset(std::size_t count, std::uint64_t seed,
                                                        const SyntheticFaceOptions& options = {});

// Writes <images>/<stem>.pgm and <points>/<stem>.pts for every sample.
void write_dataset(const std::vector<AnnotatedSample>& samples, const std::filesystem::path& images_dir,
                   const std::filesystem::path& points_dir);

} // namespace asmsvm

#endif /* ASMSVM_SYNTHETIC_HPP_ */
