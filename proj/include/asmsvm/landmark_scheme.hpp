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

#ifndef ASMSVM_LANDMARK_SCHEME_HPP_
#define ASMSVM_LANDMARK_SCHEME_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace asmsvm {

struct LandmarkGroup
{
	std::string name;
	std::size_t count = 0;
	bool closed = false;

	bool operator==(const LandmarkGroup& other) const = default;
};

/**
 * Partition of the landmark indices into consecutive contour groups. The
 * groups fix both landmark order and the neighbourhood used for normals.
 */
class LandmarkScheme
{
public:
	LandmarkScheme() = default;
	explicit LandmarkScheme(std::vector<LandmarkGroup> groups);

	// 68 points: face boundary 15, brows 8+8, eyes 8+8, nose 9, mouth 12.
	static LandmarkScheme face68();
	// A single closed contour of n points.
	static LandmarkScheme single_contour(std::size_t n, bool closed = true);

	std::size_t total() const { return total_; }
	const std::vector<LandmarkGroup>& groups() const { return groups_; }
	std::size_t group_of(std::size_t landmark) const;
	std::size_t group_start(std::size_t group) const { return starts_.at(group); }

	// Previous / next neighbour along the contour, or the landmark itself at an open end.
	std::size_t previous(std::size_t landmark) const;
	std::size_t next(std::size_t landmark) const;

	bool operator==(const LandmarkScheme& other) const { return groups_ == other.groups_; }

private:
	std::vector<LandmarkGroup> groups_;
	std::vector<std::size_t> starts_;
	std::size_t total_ = 0;
};

} // namespace asmsvm

#endif /* ASMSVM_LANDMARK_SCHEME_HPP_ */
