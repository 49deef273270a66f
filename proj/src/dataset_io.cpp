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

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace asmsvm {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Points files

namespace {

std::string trim(const std::string& s)
{
	const auto first = s.find_first_not_of(" \t\r");
	if (first == std::string::npos) {
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r");
	return s.substr(first, last - first + 1);
}

bool parse_real(const std::string& token, double& value)
{
	const char* begin = token.data();
	const char* end = token.data() + token.size();
	const auto result = std::from_chars(begin, end, value);
	return result.ec == std::errc() && result.ptr == end && std::isfinite(value);
}

} // namespace

Shape parse_points(std::istream& in, std::size_t expected_points)
{
	std::string line;
	int line_no = 0;
	auto next_content_line = [&](const char* what) {
		while (std::getline(in, line)) {
			++line_no;
			line = trim(line);
			if (!line.empty()) {
				return;
			}
		}
		throw ParseError(std::string("unexpected end of file, expected ") + what, line_no + 1);
	};

	next_content_line("'version: 1'");
	if (line.rfind("version:", 0) != 0 || trim(line.substr(8)) != "1") {
		throw ParseError("expected 'version: 1'", line_no);
	}
	next_content_line("'n_points: <k>'");
	if (line.rfind("n_points:", 0) != 0) {
		throw ParseError("expected 'n_points: <k>'", line_no);
	}
	const std::string count_text = trim(line.substr(9));
	std::size_t declared = 0;
	{
		const auto r = std::from_chars(count_text.data(), count_text.data() + count_text.size(), declared);
		if (r.ec != std::errc() || r.ptr != count_text.data() + count_text.size() || declared == 0) {
			throw ParseError("n_points must be a positive integer", line_no);
		}
	}
	if (expected_points != 0 && declared != expected_points) {
		throw ParseError("n_points is " + std::to_string(declared) + " but the landmark scheme has " +
		                     std::to_string(expected_points),
		                 line_no);
	}
	next_content_line("'{'");
	if (line != "{") {
		throw ParseError("expected '{'", line_no);
	}
	std::vector<Point2> points;
	points.reserve(declared);
	while (points.size() < declared) {
		next_content_line("a coordinate line");
		if (line == "}") {
			throw ParseError("missing point " + std::to_string(points.size() + 1) + " of " +
			                     std::to_string(declared),
			                 line_no);
		}
		std::istringstream fields(line);
		std::string xs;
		std::string ys;
		std::string extra;
		fields >> xs >> ys;
		if (fields >> extra) {
			throw ParseError("expected exactly two coordinates", line_no);
		}
		double x = 0.0;
		double y = 0.0;
		if (!parse_real(xs, x) || !parse_real(ys, y)) {
			throw ParseError("non-numeric coordinate", line_no);
		}
		points.emplace_back(x, y);
	}
	next_content_line("'}'");
	if (line != "}") {
		throw ParseError("expected '}' after " + std::to_string(declared) + " points", line_no);
	}
	return Shape(points);
}

Shape load_points_file(const fs::path& path, std::size_t expected_points)
{
	std::ifstream in(path);
	if (!in) {
		throw Error("cannot open points file " + path.string());
	}
	try {
		return parse_points(in, expected_points);
	} catch (const ParseError& e) {
		throw ParseError(path.string() + ": " + e.what(), e.line());
	}
}

void write_points(std::ostream& out, const Shape& shape)
{
	out << "version: 1\n";
	out << "n_points: " << shape.size() << "\n{\n";
	out << std::setprecision(17);
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const Point2 p = shape.point(i);
		out << p.x() << ' ' << p.y() << '\n';
	}
	out << "}\n";
}

void save_points_file(const fs::path& path, const Shape& shape)
{
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error("cannot write points file " + path.string());
	}
	write_points(out, shape);
}

// ---------------------------------------------------------------------------
// Images

std::vector<std::uint8_t> read_file_bytes(const fs::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw Error("cannot open " + path.string());
	}
	return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes)
{
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error("cannot write " + path.string());
	}
	out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
	if (!out) {
		throw Error("write failed for " + path.string());
	}
}

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes)
{
	std::size_t pos = 0;
	auto skip_space = [&] {
		while (pos < bytes.size()) {
			if (bytes[pos] == '#') {
				while (pos < bytes.size() && bytes[pos] != '\n') {
					++pos;
				}
			} else if (std::isspace(bytes[pos])) {
				++pos;
			} else {
				break;
			}
		}
	};
	auto read_uint = [&](const char* what) {
		skip_space();
		long value = 0;
		std::size_t digits = 0;
		while (pos < bytes.size() && std::isdigit(bytes[pos])) {
			value = value * 10 + (bytes[pos] - '0');
			if (value > 1'000'000) {
				throw DecodeError(std::string("PGM ") + what + " too large");
			}
			++pos;
			++digits;
		}
		if (digits == 0) {
			throw DecodeError(std::string("PGM header: missing ") + what);
		}
		return static_cast<int>(value);
	};

	if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
		throw DecodeError("not a binary PGM (expected magic P5)");
	}
	pos = 2;
	const int width = read_uint("width");
	const int height = read_uint("height");
	const int maxval = read_uint("maxval");
	if (maxval != 255) {
		throw DecodeError("unsupported PGM depth: maxval " + std::to_string(maxval) + " (only 255 is supported)");
	}
	if (width <= 0 || height <= 0) {
		throw DecodeError("PGM dimensions must be positive");
	}
	if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
		throw DecodeError("PGM header not terminated by whitespace");
	}
	++pos;
	const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
	if (bytes.size() - pos < count) {
		throw DecodeError("PGM payload truncated: expected " + std::to_string(count) + " bytes, found " +
		                  std::to_string(bytes.size() - pos));
	}
	std::vector<double> pixels(count);
	for (std::size_t i = 0; i < count; ++i) {
		pixels[i] = bytes[pos + i];
	}
	return GrayImage(width, height, std::move(pixels));
}

GrayImage load_image(const fs::path& path)
{
	try {
		return decode_pgm(read_file_bytes(path));
	} catch (const DecodeError& e) {
		throw DecodeError(path.string() + ": " + e.what());
	}
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image)
{
	const std::string header =
	    "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
	std::vector<std::uint8_t> out(header.begin(), header.end());
	out.reserve(out.size() + image.pixels().size());
	for (double v : image.pixels()) {
		out.push_back(static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)));
	}
	return out;
}

void save_pgm(const fs::path& path, const GrayImage& image)
{
	write_file_bytes(path, encode_pgm(image));
}

RgbImage RgbImage::from_gray(const GrayImage& image)
{
	RgbImage out;
	out.width = image.width();
	out.height = image.height();
	out.pixels.reserve(image.pixels().size());
	for (double v : image.pixels()) {
		const auto g = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
		out.pixels.push_back({g, g, g});
	}
	return out;
}

void RgbImage::set(int x, int y, std::array<std::uint8_t, 3> color)
{
	if (x < 0 || y < 0 || x >= width || y >= height) {
		return;
	}
	pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] = color;
}

void save_ppm(const fs::path& path, const RgbImage& image)
{
	const std::string header =
	    "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
	std::vector<std::uint8_t> out(header.begin(), header.end());
	for (const auto& px : image.pixels) {
		out.insert(out.end(), px.begin(), px.end());
	}
	write_file_bytes(path, out);
}

GrayImage to_gray(const RgbImage& image)
{
	GrayImage out(image.width, image.height);
	for (std::size_t i = 0; i < image.pixels.size(); ++i) {
		const auto& p = image.pixels[i];
		out.pixels()[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
	}
	return out;
}

// ---------------------------------------------------------------------------
// Datasets

void check_within_bounds(const Shape& shape, const GrayImage& image, const std::string& what)
{
	for (std::size_t i = 0; i < shape.size(); ++i) {
		const Point2 p = shape.point(i);
		if (p.x() < 0.0 || p.y() < 0.0 || p.x() > image.width() - 1 || p.y() > image.height() - 1) {
			throw Error(what + ": landmark " + std::to_string(i) + " lies outside the " +
			            std::to_string(image.width()) + "x" + std::to_string(image.height()) + " image");
		}
	}
}

std::vector<AnnotatedSample> load_annotated_dir(const fs::path& images_dir, const fs::path& points_dir,
                                                std::size_t expected_points)
{
	if (!fs::is_directory(points_dir)) {
		throw Error("points directory " + points_dir.string() + " does not exist");
	}
	if (!fs::is_directory(images_dir)) {
		throw Error("images directory " + images_dir.string() + " does not exist");
	}
	std::map<std::string, fs::path> annotations;
	for (const auto& entry : fs::directory_iterator(points_dir)) {
		if (entry.is_regular_file() && entry.path().extension() == ".pts") {
			annotations.emplace(entry.path().stem().string(), entry.path());
		}
	}
	if (annotations.empty()) {
		throw Error("no training pairs found in " + points_dir.string());
	}
	std::vector<AnnotatedSample> samples;
	for (const auto& [stem, pts_path] : annotations) {
		const fs::path image_path = images_dir / (stem + ".pgm");
		if (!fs::exists(image_path)) {
			throw Error("annotation '" + stem + "' has no image " + image_path.string());
		}
		AnnotatedSample sample;
		sample.stem = stem;
		sample.image_path = image_path;
		sample.image = load_image(image_path);
		sample.shape = load_points_file(pts_path, expected_points);
		check_within_bounds(sample.shape, sample.image, stem);
		samples.push_back(std::move(sample));
	}
	return samples;
}

std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed)
{
	std::vector<std::size_t> order(count);
	for (std::size_t i = 0; i < count; ++i) {
		order[i] = i;
	}
	std::mt19937_64 rng(seed);
	std::shuffle(order.begin(), order.end(), rng);
	return order;
}

// ---------------------------------------------------------------------------
// Model bundle. Layout documented in FORMAT.md.

namespace {

constexpr std::array<std::uint8_t, 8> bundle_magic{'A', 'S', 'M', 'S', 'V', 'M', 'B', 'N'};

enum SectionId : std::uint32_t {
	section_scheme = 1,
	section_fit_config = 2,
	section_shape_model = 3,
	section_profiles = 4,
	section_classifiers = 5,
};

class Writer
{
public:
	void u8(std::uint8_t v) { bytes.push_back(v); }
	void u32(std::uint32_t v)
	{
		for (int k = 0; k < 4; ++k) {
			bytes.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
		}
	}
	void u64(std::uint64_t v)
	{
		for (int k = 0; k < 8; ++k) {
			bytes.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
		}
	}
	void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
	void f64(double v)
	{
		std::uint64_t bits = 0;
		std::memcpy(&bits, &v, sizeof bits);
		u64(bits);
	}
	void str(const std::string& s)
	{
		u32(static_cast<std::uint32_t>(s.size()));
		bytes.insert(bytes.end(), s.begin(), s.end());
	}
	void vec(const Eigen::VectorXd& v)
	{
		u64(static_cast<std::uint64_t>(v.size()));
		for (Eigen::Index i = 0; i < v.size(); ++i) {
			f64(v(i));
		}
	}
	void mat(const Eigen::MatrixXd& m)
	{
		u64(static_cast<std::uint64_t>(m.rows()));
		u64(static_cast<std::uint64_t>(m.cols()));
		for (Eigen::Index j = 0; j < m.cols(); ++j) {
			for (Eigen::Index i = 0; i < m.rows(); ++i) {
				f64(m(i, j));
			}
		}
	}

	std::vector<std::uint8_t> bytes;
};

class Reader
{
public:
	Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

	std::uint8_t u8()
	{
		need(1);
		return data_[pos_++];
	}
	std::uint32_t u32()
	{
		need(4);
		std::uint32_t v = 0;
		for (int k = 0; k < 4; ++k) {
			v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * k);
		}
		return v;
	}
	std::uint64_t u64()
	{
		need(8);
		std::uint64_t v = 0;
		for (int k = 0; k < 8; ++k) {
			v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * k);
		}
		return v;
	}
	std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
	double f64()
	{
		const std::uint64_t bits = u64();
		double v = 0.0;
		std::memcpy(&v, &bits, sizeof v);
		return v;
	}
	std::string str()
	{
		const std::uint32_t n = u32();
		need(n);
		std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
		pos_ += n;
		return s;
	}
	Eigen::VectorXd vec()
	{
		const std::uint64_t n = count(8);
		Eigen::VectorXd v(static_cast<Eigen::Index>(n));
		for (Eigen::Index i = 0; i < v.size(); ++i) {
			v(i) = f64();
		}
		return v;
	}
	Eigen::MatrixXd mat()
	{
		const std::uint64_t rows = u64();
		const std::uint64_t cols = u64();
		if (rows != 0 && cols > (size_ - pos_) / 8 / rows) {
			throw CorruptionError("bundle: matrix size exceeds section");
		}
		Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
		for (Eigen::Index j = 0; j < m.cols(); ++j) {
			for (Eigen::Index i = 0; i < m.rows(); ++i) {
				m(i, j) = f64();
			}
		}
		return m;
	}
	// An element count whose elements occupy at least `element_bytes` each.
	std::uint64_t count(std::size_t element_bytes)
	{
		const std::uint64_t n = u64();
		if (n > (size_ - pos_) / element_bytes) {
			throw CorruptionError("bundle: element count exceeds section");
		}
		return n;
	}
	bool done() const { return pos_ == size_; }

private:
	void need(std::size_t n) const
	{
		if (size_ - pos_ < n) {
			throw CorruptionError("bundle: section truncated");
		}
	}

	const std::uint8_t* data_;
	std::size_t size_;
	std::size_t pos_ = 0;
};

void write_stats(Writer& w, const ProfileStats& s)
{
	w.vec(s.mean);
	w.mat(s.covariance);
	w.mat(s.inverse);
}

ProfileStats read_stats(Reader& r)
{
	ProfileStats s;
	s.mean = r.vec();
	s.covariance = r.mat();
	s.inverse = r.mat();
	return s;
}

std::vector<std::uint8_t> encode_scheme(const LandmarkScheme& scheme)
{
	Writer w;
	w.u64(scheme.groups().size());
	for (const auto& g : scheme.groups()) {
		w.str(g.name);
		w.u64(g.count);
		w.u8(g.closed ? 1 : 0);
	}
	return w.bytes;
}

LandmarkScheme decode_scheme(Reader& r)
{
	const std::uint64_t n = r.count(13);
	std::vector<LandmarkGroup> groups;
	for (std::uint64_t k = 0; k < n; ++k) {
		LandmarkGroup g;
		g.name = r.str();
		g.count = r.u64();
		g.closed = r.u8() != 0;
		groups.push_back(std::move(g));
	}
	return LandmarkScheme(std::move(groups));
}

std::vector<std::uint8_t> encode_fit_config(const FitConfig& c)
{
	Writer w;
	w.i32(c.levels);
	w.u64(c.profile_lengths.size());
	for (int side : c.profile_lengths) {
		w.i32(side);
	}
	w.i32(c.one_d_length);
	w.i32(c.search_radius);
	w.i32(c.max_iters_per_level);
	w.f64(c.convergence_fraction);
	w.f64(c.q);
	w.f64(c.c);
	w.f64(c.canny.low);
	w.f64(c.canny.high);
	w.f64(c.canny.sigma);
	w.u8(c.svm_gate ? 1 : 0);
	w.u8(c.edge_weighting ? 1 : 0);
	w.u8(c.profile_kind == ProfileKind::two_d ? 1 : 0);
	w.u8(c.normalization == WindowNormalization::sum ? 1 : 0);
	w.f64(c.param_tolerance);
	w.i32(c.param_max_iters);
	return w.bytes;
}

FitConfig decode_fit_config(Reader& r)
{
	FitConfig c;
	c.levels = r.i32();
	const std::uint64_t n = r.count(4);
	c.profile_lengths.assign(n, 0);
	for (auto& side : c.profile_lengths) {
		side = r.i32();
	}
	c.one_d_length = r.i32();
	c.search_radius = r.i32();
	c.max_iters_per_level = r.i32();
	c.convergence_fraction = r.f64();
	c.q = r.f64();
	c.c = r.f64();
	c.canny.low = r.f64();
	c.canny.high = r.f64();
	c.canny.sigma = r.f64();
	c.svm_gate = r.u8() != 0;
	c.edge_weighting = r.u8() != 0;
	c.profile_kind = r.u8() != 0 ? ProfileKind::two_d : ProfileKind::one_d;
	c.normalization = r.u8() != 0 ? WindowNormalization::sum : WindowNormalization::sigmoid;
	c.param_tolerance = r.f64();
	c.param_max_iters = r.i32();
	return c;
}

std::vector<std::uint8_t> encode_shape_model(const ShapeModel& m)
{
	Writer w;
	w.vec(m.mean_shape.coords());
	w.mat(m.modes);
	w.vec(m.eigenvalues);
	w.f64(m.variance_fraction);
	w.f64(m.clamp_alpha);
	return w.bytes;
}

ShapeModel decode_shape_model(Reader& r)
{
	ShapeModel m;
	Eigen::VectorXd mean = r.vec();
	if (mean.size() % 2 != 0) {
		throw CorruptionError("bundle: odd mean-shape length");
	}
	m.mean_shape = Shape(std::move(mean));
	m.modes = r.mat();
	m.eigenvalues = r.vec();
	m.variance_fraction = r.f64();
	m.clamp_alpha = r.f64();
	return m;
}

void encode_stats_grid(Writer& w, const std::vector<std::vector<ProfileStats>>& grid)
{
	w.u64(grid.size());
	for (const auto& level : grid) {
		w.u64(level.size());
		for (const auto& s : level) {
			write_stats(w, s);
		}
	}
}

std::vector<std::vector<ProfileStats>> decode_stats_grid(Reader& r)
{
	std::vector<std::vector<ProfileStats>> grid(r.count(8));
	for (auto& level : grid) {
		level.resize(r.count(24));
		for (auto& s : level) {
			s = read_stats(r);
		}
	}
	return grid;
}

std::vector<std::uint8_t> encode_profiles(const ProfileModel& p)
{
	Writer w;
	w.u64(p.geometry.window_sizes.size());
	for (int side : p.geometry.window_sizes) {
		w.i32(side);
	}
	w.i32(p.geometry.one_d_length);
	w.u8(p.geometry.normalization == WindowNormalization::sum ? 1 : 0);
	w.f64(p.geometry.q);
	encode_stats_grid(w, p.one_d);
	encode_stats_grid(w, p.two_d);
	return w.bytes;
}

ProfileModel decode_profiles(Reader& r)
{
	ProfileModel p;
	p.geometry.window_sizes.assign(r.count(4), 0);
	for (auto& side : p.geometry.window_sizes) {
		side = r.i32();
	}
	p.geometry.one_d_length = r.i32();
	p.geometry.normalization = r.u8() != 0 ? WindowNormalization::sum : WindowNormalization::sigmoid;
	p.geometry.q = r.f64();
	p.one_d = decode_stats_grid(r);
	p.two_d = decode_stats_grid(r);
	return p;
}

std::vector<std::uint8_t> encode_classifiers(const std::vector<std::vector<LandmarkClassifier>>& grid)
{
	Writer w;
	w.u64(grid.size());
	for (const auto& level : grid) {
		w.u64(level.size());
		for (const auto& c : level) {
			w.vec(c.standardizer.mean);
			w.vec(c.standardizer.inv_std);
			w.vec(c.svm.weights);
			w.f64(c.svm.bias);
		}
	}
	return w.bytes;
}

std::vector<std::vector<LandmarkClassifier>> decode_classifiers(Reader& r)
{
	std::vector<std::vector<LandmarkClassifier>> grid(r.count(8));
	for (auto& level : grid) {
		level.resize(r.count(32));
		for (auto& c : level) {
			c.standardizer.mean = r.vec();
			c.standardizer.inv_std = r.vec();
			c.svm.weights = r.vec();
			c.svm.bias = r.f64();
		}
	}
	return grid;
}

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size)
{
	uLong crc = crc32(0L, Z_NULL, 0);
	// zlib takes uInt lengths; feed in chunks.
	while (size > 0) {
		const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
		crc = crc32(crc, data, chunk);
		data += chunk;
		size -= chunk;
	}
	return static_cast<std::uint32_t>(crc);
}

void require(bool condition, const std::string& message)
{
	if (!condition) {
		throw CorruptionError("bundle inconsistent: " + message);
	}
}

} // namespace

void ModelBundle::check_consistency() const
{
	const std::size_t n = scheme.total();
	require(n >= 3, "landmark scheme has fewer than 3 points");
	require(shape_model.num_points() == n, "shape model point count differs from the scheme");
	require(shape_model.modes.rows() == static_cast<Eigen::Index>(2 * n), "mode rows differ from 2n");
	require(shape_model.eigenvalues.size() == shape_model.modes.cols(), "eigenvalue count differs from mode count");
	for (Eigen::Index k = 0; k < shape_model.eigenvalues.size(); ++k) {
		require(shape_model.eigenvalues(k) > 0.0, "non-positive eigenvalue");
	}
	const auto levels = static_cast<std::size_t>(fit_defaults.levels);
	require(fit_defaults.levels >= 1, "no pyramid levels");
	require(profiles.geometry.window_sizes.size() == levels, "window sizes do not cover every level");
	require(profiles.geometry.window_sizes == fit_defaults.profile_lengths, "window sizes differ from fit defaults");
	require(profiles.geometry.one_d_length == fit_defaults.one_d_length, "1-D length differs from fit defaults");
	require(profiles.one_d.size() == levels && profiles.two_d.size() == levels && classifiers.size() == levels,
	        "per-level tables do not match the level count");
	for (std::size_t level = 0; level < levels; ++level) {
		const auto side = static_cast<Eigen::Index>(profiles.geometry.window_sizes[level]);
		require(profiles.one_d[level].size() == n && profiles.two_d[level].size() == n &&
		            classifiers[level].size() == n,
		        "per-landmark tables do not cover every landmark");
		for (std::size_t i = 0; i < n; ++i) {
			const auto check_stats = [&](const ProfileStats& s, Eigen::Index dim) {
				require(s.mean.size() == dim && s.covariance.rows() == dim && s.covariance.cols() == dim &&
				            s.inverse.rows() == dim && s.inverse.cols() == dim,
				        "profile statistics dimension mismatch");
			};
			check_stats(profiles.one_d[level][i], profiles.geometry.one_d_length);
			check_stats(profiles.two_d[level][i], side * side);
			const auto& c = classifiers[level][i];
			require(c.svm.weights.size() == side * side && c.standardizer.mean.size() == side * side &&
			            c.standardizer.inv_std.size() == side * side,
			        "classifier dimension differs from the profile dimension");
		}
	}
}

std::vector<std::uint8_t> serialize_bundle(const ModelBundle& bundle)
{
	bundle.check_consistency();
	const std::vector<std::pair<std::uint32_t, std::vector<std::uint8_t>>> sections{
	    {section_scheme, encode_scheme(bundle.scheme)},
	    {section_fit_config, encode_fit_config(bundle.fit_defaults)},
	    {section_shape_model, encode_shape_model(bundle.shape_model)},
	    {section_profiles, encode_profiles(bundle.profiles)},
	    {section_classifiers, encode_classifiers(bundle.classifiers)},
	};
	Writer w;
	w.bytes.assign(bundle_magic.begin(), bundle_magic.end());
	w.u32(bundle.version);
	w.u32(static_cast<std::uint32_t>(sections.size()));
	std::uint64_t offset = bundle_magic.size() + 4 + 4 + sections.size() * 20;
	for (const auto& [id, payload] : sections) {
		w.u32(id);
		w.u64(offset);
		w.u64(payload.size());
		offset += payload.size();
	}
	for (const auto& section : sections) {
		w.bytes.insert(w.bytes.end(), section.second.begin(), section.second.end());
	}
	w.u32(crc32_of(w.bytes.data(), w.bytes.size()));
	return w.bytes;
}

ModelBundle deserialize_bundle(const std::vector<std::uint8_t>& bytes)
{
	const std::size_t header = bundle_magic.size() + 8;
	if (bytes.size() < header + 4 || !std::equal(bundle_magic.begin(), bundle_magic.end(), bytes.begin())) {
		throw CorruptionError("not a model bundle (bad magic)");
	}
	Reader head(bytes.data() + bundle_magic.size(), 8);
	const std::uint32_t version = head.u32();
	if (version != bundle_format_version) {
		throw VersionError("unsupported bundle version " + std::to_string(version) + " (expected " +
		                   std::to_string(bundle_format_version) + ")");
	}
	const std::size_t body = bytes.size() - 4;
	Reader tail(bytes.data() + body, 4);
	if (tail.u32() != crc32_of(bytes.data(), body)) {
		throw CorruptionError("bundle checksum mismatch");
	}
	const std::uint32_t section_count = head.u32();
	if (section_count > (body - header) / 20) {
		throw CorruptionError("bundle section table truncated");
	}
	Reader table(bytes.data() + header, section_count * 20);

	ModelBundle bundle;
	bundle.version = version;
	std::uint32_t seen = 0;
	for (std::uint32_t k = 0; k < section_count; ++k) {
		const std::uint32_t id = table.u32();
		const std::uint64_t offset = table.u64();
		const std::uint64_t length = table.u64();
		if (offset > body || length > body - offset) {
			throw CorruptionError("bundle section out of range");
		}
		Reader r(bytes.data() + offset, length);
		switch (id) {
		case section_scheme: bundle.scheme = decode_scheme(r); break;
		case section_fit_config: bundle.fit_defaults = decode_fit_config(r); break;
		case section_shape_model: bundle.shape_model = decode_shape_model(r); break;
		case section_profiles: bundle.profiles = decode_profiles(r); break;
		case section_classifiers: bundle.classifiers = decode_classifiers(r); break;
		default: throw CorruptionError("unknown bundle section " + std::to_string(id));
		}
		if (!r.done()) {
			throw CorruptionError("trailing bytes in bundle section " + std::to_string(id));
		}
		seen |= 1u << id;
	}
	if (seen != 0b111110) {
		throw CorruptionError("bundle is missing sections");
	}
	bundle.check_consistency();
	return bundle;
}

void save_bundle(const ModelBundle& bundle, const fs::path& path)
{
	write_file_bytes(path, serialize_bundle(bundle));
}

ModelBundle load_bundle(const fs::path& path)
{
	return deserialize_bundle(read_file_bytes(path));
}

} // namespace asmsvm
