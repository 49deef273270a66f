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
#include "asmsvm/synthetic.hpp"
#include "asmsvm/landmark_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace asmsvm {

namespace {

using Polygon = std::vector<Point2>;

struct Region
{
	Polygon outline;
	double intensity = 0.0;
	Point2 lo;
	Point2 hi;
};

Region make_region(Polygon outline, double intensity)
{
	Region r{std::move(outline), intensity, {}, {}};
	r.lo = r.hi = r.outline.front();
	for (const auto& p : r.outline) {
		r.lo = r.lo.cwiseMin(p);
		r.hi = r.hi.cwiseMax(p);
	}
	return r;
}

bool inside_polygon(const Polygon& poly, const Point2& p)
{
	bool in = false;
	for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
		const Point2& a = poly[i];
		const Point2& b = poly[j];
		if ((a.y() > p.y()) != (b.y() > p.y()) &&
		    p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
			in = !in;
		}
	}
	return in;
}

double distance_to_segment(const Point2& p, const Point2& a, const Point2& b)
{
	const Point2 ab = b - a;
	const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
	return (p - (a + t * ab)).norm();
}

Polygon ellipse_points(const Point2& c, double rx, double ry, int count, double phase = 0.0)
{
	Polygon out;
	for (int k = 0; k < count; ++k) {
		const double t = phase + 2.0 * M_PI * k / count;
		out.emplace_back(c.x() + rx * std::cos(t), c.y() + ry * std::sin(t));
	}
	return out;
}

} // namespace

AnnotatedSample generate_synthetic_face(std::uint64_t seed, const SyntheticFaceOptions& options)
{
	std::mt19937_64 rng(seed);
	auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

	const double w = options.width;
	const double h = options.height;
	const double scale = std::min(w, h) / 256.0;

	// Face-local frame: origin at the face centre, y down, pixels.
	const double a = uniform(60.0, 72.0) * scale;
	const double b = uniform(80.0, 92.0) * scale;
	const double eye_y = -uniform(0.14, 0.22) * b;
	const double eye_dx = uniform(0.36, 0.44) * a;
	const double eye_rx = uniform(10.0, 13.5) * scale;
	const double eye_ry = uniform(4.5, 6.5) * scale;
	const double brow_gap = uniform(9.0, 14.0) * scale;
	const double brow_w = uniform(13.0, 17.0) * scale;
	const double brow_t = uniform(4.0, 6.0) * scale;
	const double brow_arch = uniform(2.0, 5.0) * scale;
	const double nose_tip = uniform(0.16, 0.24) * b;
	const double nose_w = uniform(9.0, 13.0) * scale;
	const double nose_h = uniform(10.0, 14.0) * scale;
	const double mouth_y = uniform(0.42, 0.50) * b;
	const double mouth_w = uniform(17.0, 24.0) * scale;
	const double lip_up = uniform(4.0, 7.0) * scale;
	const double lip_lo = uniform(6.0, 10.0) * scale;

	const double background = uniform(30.0, 90.0);
	const double skin = uniform(145.0, 190.0);
	const double brow_ink = uniform(20.0, 50.0);
	const double eye_white = uniform(215.0, 245.0);
	const double iris = uniform(40.0, 80.0);
	const double mouth_ink = uniform(70.0, 110.0);
	const double nose_ink = uniform(80.0, 115.0);

	std::vector<Point2> local;
	// Face boundary: 15 points along the lower part of the face ellipse.
	for (int k = 0; k < 15; ++k) {
		const double t = -0.15 + (M_PI + 0.3) * k / 14.0;
		local.emplace_back(-a * std::cos(t), b * std::sin(t));
	}
	// Brows: 8-point closed bands (upper arc left to right, lower arc back).
	auto brow = [&](double cx) {
		const double cy = eye_y - eye_ry - brow_gap;
		const double ts[4] = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
		for (double t : ts) {
			local.emplace_back(cx + brow_w * t, cy - brow_arch * (1.0 - t * t) - 0.5 * brow_t);
		}
		for (int k = 3; k >= 0; --k) {
			const double t = ts[k];
			local.emplace_back(cx + brow_w * t, cy - brow_arch * (1.0 - t * t) + 0.5 * brow_t * (0.6 + 0.4 * (1.0 - t * t)));
		}
	};
	brow(-eye_dx); // right eyebrow (image left)
	brow(eye_dx);
	// Eyes: 8 points on an ellipse; left eye (image right) first.
	for (double cx : {eye_dx, -eye_dx}) {
		for (const auto& p : ellipse_points({cx, eye_y}, eye_rx, eye_ry, 8, M_PI)) {
			local.push_back(p);
		}
	}
	// Nose: open U-shaped stroke around the nose base.
	const double us[9][2] = {{-1.0, -1.0}, {-0.9, -0.35}, {-0.6, 0.1},  {-0.3, 0.3}, {0.0, 0.35},
	                         {0.3, 0.3},   {0.6, 0.1},    {0.9, -0.35}, {1.0, -1.0}};
	for (const auto& u : us) {
		local.emplace_back(nose_w * u[0], nose_tip + nose_h * u[1]);
	}
	// Mouth: corners plus 5 upper and 5 lower lip points, clockwise from the left corner.
	local.emplace_back(-mouth_w, mouth_y);
	for (int k = 1; k <= 5; ++k) {
		const double t = -1.0 + k / 3.0;
		local.emplace_back(mouth_w * t, mouth_y - lip_up * std::sqrt(std::max(0.0, 1.0 - t * t)));
	}
	local.emplace_back(mouth_w, mouth_y);
	for (int k = 5; k >= 1; --k) {
		const double t = -1.0 + k / 3.0;
		local.emplace_back(mouth_w * t, mouth_y + lip_lo * std::sqrt(std::max(0.0, 1.0 - t * t)));
	}

	const double theta = uniform(-options.max_rotation_deg, options.max_rotation_deg) * M_PI / 180.0;
	const Point2 center(w / 2.0 + uniform(-8.0, 8.0) * scale, h / 2.0 + uniform(-6.0, 10.0) * scale);
	SimilarityTransform pose;
	pose.rotation = theta;
	pose.translation = center;

	std::vector<Point2> landmarks;
	for (const auto& p : local) {
		landmarks.push_back(pose.apply(p));
	}

	// Regions in face-local coordinates; later entries paint over earlier ones.
	const LandmarkScheme scheme = LandmarkScheme::face68();
	auto group_points = [&](std::size_t g) {
		const std::size_t s = scheme.group_start(g);
		return Polygon(local.begin() + static_cast<long>(s),
		               local.begin() + static_cast<long>(s + scheme.groups()[g].count));
	};
	std::vector<Region> regions;
	regions.push_back(make_region(group_points(1), brow_ink));
	regions.push_back(make_region(group_points(2), brow_ink));
	regions.push_back(make_region(group_points(3), eye_white));
	regions.push_back(make_region(group_points(4), eye_white));
	regions.push_back(make_region(ellipse_points({eye_dx, eye_y}, 0.8 * eye_ry, 0.8 * eye_ry, 24), iris));
	regions.push_back(make_region(ellipse_points({-eye_dx, eye_y}, 0.8 * eye_ry, 0.8 * eye_ry, 24), iris));
	regions.push_back(make_region(group_points(6), mouth_ink));
	const Polygon nose = group_points(5);
	const double nose_half_width = 1.2 * scale;

	const SimilarityTransform to_local = pose.inverse();
	const int ss = std::max(1, options.supersampling);
	std::normal_distribution<double> noise(0.0, options.noise_sigma);

	GrayImage image(options.width, options.height);
	for (int y = 0; y < options.height; ++y) {
		for (int x = 0; x < options.width; ++x) {
			double acc = 0.0;
			for (int sy = 0; sy < ss; ++sy) {
				for (int sx = 0; sx < ss; ++sx) {
					const Point2 world(x - 0.5 + (sx + 0.5) / ss, y - 0.5 + (sy + 0.5) / ss);
					const Point2 p = to_local.apply(world);
					double v = background;
					if ((p.x() * p.x()) / (a * a) + (p.y() * p.y()) / (b * b) <= 1.0) {
						v = skin;
						for (std::size_t s = 0; s + 1 < nose.size(); ++s) {
							if (distance_to_segment(p, nose[s], nose[s + 1]) <= nose_half_width) {
								v = nose_ink;
								break;
							}
						}
						for (const auto& r : regions) {
							if (p.x() >= r.lo.x() && p.x() <= r.hi.x() && p.y() >= r.lo.y() && p.y() <= r.hi.y() &&
							    inside_polygon(r.outline, p)) {
								v = r.intensity;
							}
						}
					}
					acc += v;
				}
			}
			const double value = acc / (ss * ss) + (options.noise_sigma > 0.0 ? noise(rng) : 0.0);
			image(x, y) = std::round(std::clamp(value, 0.0, 255.0));
		}
	}

	AnnotatedSample sample;
	std::ostringstream stem;
	stem << "face_" << std::setw(4) << std::setfill('0') << (seed % 10000);
	sample.stem = stem.str();
	sample.image = std::move(image);
	sample.shape = Shape(landmarks);
	return sample;
}

std::vector<AnnotatedSample> generate_synthetic_dataset(std::size_t count, std::uint64_t seed,
                                                        const SyntheticFaceOptions& options)
{
	std::mt19937_64 rng(seed);
	std::vector<AnnotatedSample> out;
	for (std::size_t i = 0; i < count; ++i) {
		AnnotatedSample s = generate_synthetic_face(rng(), options);
		std::ostringstream stem;
		stem << "face_" << std::setw(4) << std::setfill('0') << i;
		s.stem = stem.str();
		out.push_back(std::move(s));
	}
	return out;
}

void write_dataset(const std::vector<AnnotatedSample>& samples, const std::filesystem::path& images_dir,
                   const std::filesystem::path& points_dir)
{
	std::filesystem::create_directories(images_dir);
	std::filesystem::create_directories(points_dir);
	for (const auto& s : samples) {
		save_pgm(images_dir / (s.stem + ".pgm"), s.image);
		save_points_file(points_dir / (s.stem + ".pts"), s.shape);
	}
}

} // namespace asmsvm
