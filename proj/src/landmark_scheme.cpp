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
#include "asmsvm/landmark_scheme.hpp"
#include "asmsvm/errors.hpp"

namespace asmsvm {

LandmarkScheme::LandmarkScheme(std::vector<LandmarkGroup> groups) : groups_(std::move(groups))
{
	for (const auto& g : groups_) {
		if (g.count == 0) {
			throw ConfigError("landmark group '" + g.name + "' is empty");
		}
		starts_.push_back(total_);
		total_ += g.count;
	}
}

LandmarkScheme LandmarkScheme::face68()
{
	return LandmarkScheme({{"face_boundary", 15, false},
	                       {"right_eyebrow", 8, true},
	                       {"left_eyebrow", 8, true},
	                       {"left_eye", 8, true},
	                       {"right_eye", 8, true},
	                       {"nose", 9, false},
	                       {"mouth", 12, true}});
}

LandmarkScheme LandmarkScheme::single_contour(std::size_t n, bool closed)
{
	return LandmarkScheme({{"contour", n, closed}});
}

std::size_t LandmarkScheme::group_of(std::size_t landmark) const
{
	if (landmark >= total_) {
		throw ArityError("landmark index out of range");
	}
	std::size_t g = 0;
	while (g + 1 < groups_.size() && starts_[g + 1] <= landmark) {
		++g;
	}
	return g;
}

std::size_t LandmarkScheme::previous(std::size_t landmark) const
{
	const std::size_t g = group_of(landmark);
	const std::size_t start = starts_[g];
	const std::size_t count = groups_[g].count;
	if (landmark > start) {
		return landmark - 1;
	}
	return groups_[g].closed ? start + count - 1 : landmark;
}

std::size_t LandmarkScheme::next(std::size_t landmark) const
{
	const std::size_t g = group_of(landmark);
	const std::size_t start = starts_[g];
	const std::size_t count = groups_[g].count;
	if (landmark + 1 < start + count) {
		return landmark + 1;
	}
	return groups_[g].closed ? start : landmark;
}

} // namespace asmsvm
