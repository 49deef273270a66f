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
#include "asmsvm/dataset_io.hpp"
#include "asmsvm/errors.hpp"

#include "doctest.h"
#include "test_support.hpp"
#include "trained_fixture.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace asmsvm;
namespace fs = std::filesystem;

namespace {

std::string points_text(std::size_t declared, std::size_t written)
{
	std::ostringstream s;
	s << "version: 1\nn_points: " << declared << "\n{\n";
	for (std::size_t i = 0; i < written; ++i) {
		s << (10.25 + static_cast<double>(i)) << " " << (3.5 * static_cast<double>(i)) << "\n";
	}
	s << "}\n";
	return s.str();
}

fs::path scratch_dir(const std::string& name)
{
	const fs::path dir = fs::temp_directory_path() / ("asmsvm_test_" + name);
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

std::vector<std::uint8_t> pgm_bytes(const std::string& header, const std::vector<std::uint8_t>& payload)
{
	std::vector<std::uint8_t> out(header.begin(), header.end());
	out.insert(out.end(), payload.begin(), payload.end());
	return out;
}

} // namespace

TEST_CASE("parse_points: well formed")
{
	std::istringstream in(points_text(68, 68));
	const Shape s = parse_points(in, 68);
	REQUIRE(s.size() == 68);
	CHECK(s.point(0) == Point2(10.25, 0.0));
	CHECK(s.point(67) == Point2(77.25, 3.5 * 67));
}

TEST_CASE("parse_points: errors carry line numbers")
{
	{
		std::istringstream in(points_text(68, 67));
		try {
			parse_points(in, 68);
			FAIL("expected a parse error");
		} catch (const ParseError& e) {
			// Header is 3 lines, 67 points, then '}' on line 71.
			CHECK(e.line() == 71);
			CHECK(std::string(e.what()).find("missing point 68 of 68") != std::string::npos);
		}
	}
	{
		std::istringstream in("version: 1\nn_points: 2\n{\n1 2\n3 x\n}\n");
		try {
			parse_points(in, 2);
			FAIL("expected a parse error");
		} catch (const ParseError& e) {
			CHECK(e.line() == 5);
		}
	}
	std::istringstream bad_header("version: 2\nn_points: 1\n{\n1 1\n}\n");
	CHECK_THROWS_AS(parse_points(bad_header), ParseError);
	std::istringstream wrong_count(points_text(5, 5));
	CHECK_THROWS_AS(parse_points(wrong_count, 68), ParseError);
	std::istringstream extra("version: 1\nn_points: 1\n{\n1 1\n2 2\n}\n");
	CHECK_THROWS_AS(parse_points(extra), ParseError);
}

TEST_CASE("points files round trip every double exactly")
{
	std::mt19937_64 rng(1);
	const fs::path dir = scratch_dir("points");
	for (int trial = 0; trial < 20; ++trial) {
		const Shape s = testing::random_shape(rng, 68, 100.0);
		save_points_file(dir / "a.pts", s);
		CHECK(load_points_file(dir / "a.pts", 68) == s);
	}
	CHECK_THROWS_AS(load_points_file(dir / "missing.pts"), Error);
	fs::remove_all(dir);
}

TEST_CASE("decode_pgm")
{
	const GrayImage img = decode_pgm(pgm_bytes("P5\n2 2\n255\n", {0, 64, 128, 255}));
	CHECK(img.width() == 2);
	CHECK(img.height() == 2);
	CHECK(img.pixels() == std::vector<double>{0, 64, 128, 255});

	const GrayImage commented = decode_pgm(pgm_bytes("P5\n# made by hand\n3 1 255\n", {1, 2, 3}));
	CHECK(commented.pixels() == std::vector<double>{1, 2, 3});

	try {
		decode_pgm(pgm_bytes("P5\n2 2\n65535\n", std::vector<std::uint8_t>(8, 0)));
		FAIL("expected a decode error");
	} catch (const DecodeError& e) {
		CHECK(std::string(e.what()).find("unsupported PGM depth") != std::string::npos);
	}
	CHECK_THROWS_AS(decode_pgm(pgm_bytes("P2\n2 2\n255\n", {0, 0, 0, 0})), DecodeError);
	CHECK_THROWS_AS(decode_pgm(pgm_bytes("P5\n2 2\n255\n", {0, 0, 0})), DecodeError);
	CHECK_THROWS_AS(decode_pgm(pgm_bytes("P5\n2", {})), DecodeError);
}

TEST_CASE("PGM encode and decode round trip")
{
	std::mt19937_64 rng(2);
	std::uniform_int_distribution<int> d(0, 255);
	GrayImage img(17, 9);
	for (auto& v : img.pixels()) {
		v = d(rng);
	}
	CHECK(decode_pgm(encode_pgm(img)) == img);
}

TEST_CASE("to_gray uses luminance weights")
{
	RgbImage rgb = RgbImage::from_gray(GrayImage(1, 1));
	rgb.set(0, 0, {100, 200, 50});
	CHECK(to_gray(rgb)(0, 0) == doctest::Approx(0.299 * 100 + 0.587 * 200 + 0.114 * 50));
}

TEST_CASE("split_dataset")
{
	for (const auto& [total, train] : std::vector<std::pair<std::size_t, std::size_t>>{{450, 300}, {240, 160}}) {
		std::vector<int> items(total);
		std::iota(items.begin(), items.end(), 0);
		const auto [a, b] = split_dataset(items, train, 7);
		CHECK(a.size() == train);
		CHECK(b.size() == total - train);
		std::set<int> all(a.begin(), a.end());
		all.insert(b.begin(), b.end());
		CHECK(all.size() == total);
		const auto [a2, b2] = split_dataset(items, train, 7);
		CHECK(a == a2);
		CHECK(b == b2);
		const auto [a3, b3] = split_dataset(items, train, 8);
		CHECK(a != a3);
	}
	const std::vector<int> few{1, 2, 3};
	CHECK_THROWS_AS(split_dataset(few, 3, 1), SplitError);
}

TEST_CASE("load_annotated_dir")
{
	const fs::path dir = scratch_dir("dataset");
	const auto samples = generate_synthetic_dataset(3, 5);
	write_dataset(samples, dir / "images", dir / "points");
	const auto loaded = load_annotated_dir(dir / "images", dir / "points", 68);
	REQUIRE(loaded.size() == 3);
	for (std::size_t k = 0; k < 3; ++k) {
		CHECK(loaded[k].stem == samples[k].stem);
		CHECK(loaded[k].shape == samples[k].shape);
		CHECK(loaded[k].image == samples[k].image);
	}

	fs::remove(dir / "images" / (samples[1].stem + ".pgm"));
	CHECK_THROWS_WITH_AS(load_annotated_dir(dir / "images", dir / "points", 68),
	                     doctest::Contains("has no image"), Error);

	const fs::path empty = dir / "empty";
	fs::create_directories(empty);
	CHECK_THROWS_WITH_AS(load_annotated_dir(dir / "images", empty, 68), doctest::Contains("no training pairs"), Error);

	Shape outside = samples[0].shape;
	outside.set_point(3, Point2(-4.0, 10.0));
	CHECK_THROWS_AS(check_within_bounds(outside, samples[0].image, "sample"), Error);
	fs::remove_all(dir);
}

TEST_CASE("model bundle round trip and integrity checks")
{
	const ModelBundle& bundle = testing::trained_fixture().bundle;
	const auto bytes = serialize_bundle(bundle);
	const ModelBundle back = deserialize_bundle(bytes);
	CHECK(back == bundle);
	CHECK(serialize_bundle(back) == bytes);

	const fs::path dir = scratch_dir("bundle");
	save_bundle(bundle, dir / "model.bin");
	CHECK(load_bundle(dir / "model.bin") == bundle);

	// Version field follows the 8-byte magic.
	auto future = bytes;
	future[8] = 99;
	future[9] = future[10] = future[11] = 0;
	CHECK_THROWS_AS(deserialize_bundle(future), VersionError);

	std::mt19937_64 rng(3);
	std::uniform_int_distribution<std::size_t> pick(16, bytes.size() - 5);
	for (int trial = 0; trial < 20; ++trial) {
		auto flipped = bytes;
		flipped[pick(rng)] ^= 0x40;
		CHECK_THROWS_AS(deserialize_bundle(flipped), CorruptionError);
	}
	auto truncated = bytes;
	truncated.resize(bytes.size() / 2);
	CHECK_THROWS_AS(deserialize_bundle(truncated), CorruptionError);
	CHECK_THROWS_AS(load_bundle(dir / "absent.bin"), Error);
	fs::remove_all(dir);
}

TEST_CASE("bundle consistency check rejects mismatched dimensions")
{
	ModelBundle broken = testing::trained_fixture().bundle;
	broken.classifiers[1].pop_back();
	CHECK_THROWS_AS(broken.check_consistency(), CorruptionError);
	CHECK_THROWS_AS(serialize_bundle(broken), CorruptionError);
}

TEST_CASE("face68 scheme")
{
	const auto scheme = LandmarkScheme::face68();
	CHECK(scheme.total() == 68);
	const std::vector<std::pair<std::string, std::size_t>> expected{
	    {"face_boundary", 15}, {"right_eyebrow", 8}, {"left_eyebrow", 8}, {"left_eye", 8},
	    {"right_eye", 8},      {"nose", 9},          {"mouth", 12}};
	REQUIRE(scheme.groups().size() == expected.size());
	std::size_t sum = 0;
	for (std::size_t g = 0; g < expected.size(); ++g) {
		CHECK(scheme.groups()[g].name == expected[g].first);
		CHECK(scheme.groups()[g].count == expected[g].second);
		sum += scheme.groups()[g].count;
	}
	CHECK(sum == 68);
	CHECK_FALSE(scheme.groups()[0].closed);
	CHECK(scheme.groups()[6].closed);
	CHECK(scheme.previous(0) == 0);
	CHECK(scheme.next(14) == 14);
	CHECK(scheme.previous(15) == 22);
	CHECK(scheme.next(22) == 15);
}
