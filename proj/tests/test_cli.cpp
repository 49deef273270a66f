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
#include "asmsvm/cli.hpp"
#include "asmsvm/errors.hpp"

#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace asmsvm;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir()
{
	static const fs::path dir = [] {
		const fs::path d = fs::temp_directory_path() / "asmsvm_test_cli";
		fs::remove_all(d);
		fs::create_directories(d);
		return d;
	}();
	return dir;
}

struct Run
{
	int status = 0;
	std::string out;
	std::string err;
};

std::string slurp(const fs::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

// Runs the installed command-line binary, capturing exit code and streams.
Run run_cli(const std::string& args)
{
	static int counter = 0;
	const fs::path out = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
	const fs::path err = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
	++counter;
	const std::string command =
	    std::string("\"") + ASMSVM_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
	const int raw = std::system(command.c_str());
	Run r;
	r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
	r.out = slurp(out);
	r.err = slurp(err);
	return r;
}

std::string q(const fs::path& p)
{
	return "\"" + p.string() + "\"";
}

// Synthetic train/test directories and a trained model shared by the tests.
struct CliFixture
{
	fs::path train;
	fs::path test;
	fs::path model;
};

const CliFixture& fixture()
{
	static const CliFixture f = [] {
		CliFixture c;
		c.train = work_dir() / "train";
		c.test = work_dir() / "test";
		c.model = work_dir() / "model.bin";
		REQUIRE(run_cli("synth --out " + q(c.train) + " --count 10 --seed 3").status == 0);
		REQUIRE(run_cli("synth --out " + q(c.test) + " --count 3 --seed 4").status == 0);
		const Run t = run_cli("train --images " + q(c.train / "images") + " --points " + q(c.train / "points") +
		                      " --out " + q(c.model));
		REQUIRE(t.status == 0);
		return c;
	}();
	return f;
}

std::string box_of(const fs::path& pts)
{
	const Shape s = load_points_file(pts, 68);
	const Box b = inflated_bounding_box(s, 0.1);
	std::ostringstream out;
	out << b.x << "," << b.y << "," << b.width << "," << b.height;
	return out.str();
}

} // namespace

TEST_CASE("train: valid synthetic set")
{
	const auto& f = fixture();
	CHECK(fs::exists(f.model));
	const Run t = run_cli("train --images " + q(f.train / "images") + " --points " + q(f.train / "points") +
	                      " --out " + q(work_dir() / "model_again.bin"));
	REQUIRE(t.status == 0);
	std::istringstream lines(t.out);
	std::string line;
	long modes = -1;
	while (std::getline(lines, line)) {
		if (line.rfind("retained modes: ", 0) == 0) {
			modes = std::stol(line.substr(16));
		}
	}
	CHECK(modes >= 1);
	CHECK(t.out.find("level 2 profile samples: 680") != std::string::npos);
}

TEST_CASE("train: empty directory and missing image")
{
	const fs::path empty = work_dir() / "empty";
	fs::create_directories(empty / "images");
	fs::create_directories(empty / "points");
	const Run e = run_cli("train --images " + q(empty / "images") + " --points " + q(empty / "points") + " --out " +
	                      q(empty / "m.bin"));
	CHECK(e.status != 0);
	CHECK(e.err.find("no training pairs") != std::string::npos);
	CHECK(std::count(e.err.begin(), e.err.end(), '\n') == 1);

	const fs::path partial = work_dir() / "partial";
	REQUIRE(run_cli("synth --out " + q(partial) + " --count 3 --seed 9").status == 0);
	fs::remove(partial / "images" / "face_0001.pgm");
	const Run m = run_cli("train --images " + q(partial / "images") + " --points " + q(partial / "points") +
	                      " --out " + q(partial / "m.bin"));
	CHECK(m.status != 0);
	CHECK(m.err.find("face_0001") != std::string::npos);
	CHECK_FALSE(fs::exists(partial / "m.bin"));
}

TEST_CASE("train: configuration file")
{
	const auto& f = fixture();
	const fs::path config = work_dir() / "config.json";
	std::ofstream(config) << R"({"seed": 5, "svm_c": 0.5, "negatives_per_positive": 2})";
	const Run ok = run_cli("train --images " + q(f.train / "images") + " --points " + q(f.train / "points") +
	                       " --config " + q(config) + " --out " + q(work_dir() / "model_cfg.bin"));
	CHECK(ok.status == 0);

	const fs::path bad = work_dir() / "bad.json";
	std::ofstream(bad) << R"({"levels": "three"})";
	const Run fail = run_cli("train --images " + q(f.train / "images") + " --points " + q(f.train / "points") +
	                         " --config " + q(bad) + " --out " + q(work_dir() / "model_bad.bin"));
	CHECK(fail.status != 0);
	CHECK(fail.err.rfind("error: ", 0) == 0);
}

TEST_CASE("fit: writes a 68-point file and a same-size overlay")
{
	const auto& f = fixture();
	const fs::path image = f.test / "images" / "face_0000.pgm";
	const fs::path out = work_dir() / "fit.pts";
	const fs::path overlay = work_dir() / "fit.ppm";
	const Run r = run_cli("fit --model " + q(f.model) + " --image " + q(image) + " --box " +
	                      box_of(f.test / "points" / "face_0000.pts") + " --out " + q(out) + " --overlay " +
	                      q(overlay));
	REQUIRE(r.status == 0);
	CHECK(load_points_file(out, 68).size() == 68);

	std::ifstream ppm(overlay, std::ios::binary);
	std::string magic;
	int w = 0;
	int h = 0;
	int maxval = 0;
	ppm >> magic >> w >> h >> maxval;
	const GrayImage source = load_image(image);
	CHECK(magic == "P6");
	CHECK(w == source.width());
	CHECK(h == source.height());
	CHECK(maxval == 255);
	CHECK(fs::file_size(overlay) > static_cast<std::uintmax_t>(3 * w * h));
}

TEST_CASE("fit: deterministic output")
{
	const auto& f = fixture();
	const std::string args = "fit --model " + q(f.model) + " --image " + q(f.test / "images" / "face_0001.pgm") +
	                         " --box " + box_of(f.test / "points" / "face_0001.pts") + " --out ";
	REQUIRE(run_cli(args + q(work_dir() / "a.pts")).status == 0);
	REQUIRE(run_cli(args + q(work_dir() / "b.pts")).status == 0);
	CHECK(slurp(work_dir() / "a.pts") == slurp(work_dir() / "b.pts"));
}

TEST_CASE("fit: failures")
{
	const auto& f = fixture();
	const std::string image = q(f.test / "images" / "face_0000.pgm");
	const Run missing = run_cli("fit --model " + q(work_dir() / "nope.bin") + " --image " + image +
	                            " --box 10,10,100,100 --out " + q(work_dir() / "x.pts"));
	CHECK(missing.status != 0);
	CHECK(missing.err.rfind("error: ", 0) == 0);

	const Run outside = run_cli("fit --model " + q(f.model) + " --image " + image + " --box 900,900,50,50 --out " +
	                            q(work_dir() / "x.pts"));
	CHECK(outside.status != 0);

	const Run bad_box = run_cli("fit --model " + q(f.model) + " --image " + image + " --box 1,2,3 --out " +
	                            q(work_dir() / "x.pts"));
	CHECK(bad_box.status != 0);

	const Run bad_mode = run_cli("fit --model " + q(f.model) + " --image " + image +
	                             " --box 10,10,100,100 --mode fancy --out " + q(work_dir() / "x.pts"));
	CHECK(bad_mode.status == 2);
}

TEST_CASE("eval: two modes in one report")
{
	const auto& f = fixture();
	const fs::path report = work_dir() / "report.txt";
	const Run r = run_cli("eval --model " + q(f.model) + " --images " + q(f.test / "images") + " --points " +
	                      q(f.test / "points") + " --mode classic --mode asm_svm --report " + q(report));
	REQUIRE(r.status == 0);
	const std::string text = slurp(report);
	CHECK(text.find("method: classic") != std::string::npos);
	CHECK(text.find("method: asm_svm") != std::string::npos);
	std::size_t e_lines = 0;
	std::size_t n_lines = 0;
	std::size_t k_lines = 0;
	std::istringstream lines(text);
	std::string line;
	while (std::getline(lines, line)) {
		e_lines += line.rfind("E_ave: ", 0) == 0 ? 1 : 0;
		n_lines += line == "n_images: 3" ? 1 : 0;
		k_lines += line == "k_landmarks: 68" ? 1 : 0;
	}
	CHECK(e_lines == 2);
	CHECK(n_lines == 2);
	CHECK(k_lines == 2);
	CHECK(text.find("10.548") != std::string::npos);
}

TEST_CASE("eval: unknown mode is a usage error")
{
	const auto& f = fixture();
	const Run r = run_cli("eval --model " + q(f.model) + " --images " + q(f.test / "images") + " --points " +
	                      q(f.test / "points") + " --mode fancy --report " + q(work_dir() / "r.txt"));
	CHECK(r.status == 2);

	cli::EvalOptions options;
	options.model = f.model;
	options.images = f.test / "images";
	options.points = f.test / "points";
	options.modes = {"fancy"};
	options.report = work_dir() / "r2.txt";
	std::ostringstream out;
	std::ostringstream err;
	CHECK(cli::cmd_eval(options, out, err) == 2);
	CHECK(err.str().find("unknown mode") != std::string::npos);
}

TEST_CASE("train is byte-for-byte deterministic")
{
	const auto& f = fixture();
	const fs::path again = work_dir() / "model_repeat.bin";
	REQUIRE(run_cli("train --images " + q(f.train / "images") + " --points " + q(f.train / "points") + " --out " +
	                q(again))
	            .status == 0);
	CHECK(slurp(again) == slurp(f.model));
}

TEST_CASE("parse_box")
{
	const Box b = cli::parse_box("1.5,2,30,40.25");
	CHECK(b.x == 1.5);
	CHECK(b.height == 40.25);
	CHECK_THROWS_AS(cli::parse_box("1,2,3"), BoxError);
	CHECK_THROWS_AS(cli::parse_box("1,2,3,4,5"), BoxError);
	CHECK_THROWS_AS(cli::parse_box("a,b,c,d"), BoxError);
}

TEST_CASE("render_overlay marks landmarks in red")
{
	GrayImage img(20, 20, 100.0);
	const Shape s(std::vector<Point2>{{5, 5}, {14, 5}, {10, 14}});
	const RgbImage out = cli::render_overlay(img, s, LandmarkScheme::single_contour(3, true));
	CHECK(out.width == 20);
	CHECK(out.height == 20);
	for (const auto& p : {Point2(5, 5), Point2(14, 5), Point2(10, 14)}) {
		for (int dy = -1; dy <= 1; ++dy) {
			for (int dx = -1; dx <= 1; ++dx) {
				const auto idx = static_cast<std::size_t>((p.y() + dy) * 20 + (p.x() + dx));
				CHECK(out.pixels[idx] == std::array<std::uint8_t, 3>{255, 0, 0});
			}
		}
	}
}
