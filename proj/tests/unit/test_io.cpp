// Copyright 2026-present the knntest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "knntest/error.hpp"
#include "knntest/generators.hpp"
#include "knntest/io.hpp"

using namespace knntest;

namespace {

GeometricGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_knng(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  FAIL("expected a FormatError");
  return 0;
}

}  // namespace

TEST_CASE("knng parses the documented layout", "[io]") {
  const auto g = parse("knng 1 3 2 1\n0 0\n1.5 -2\n1e-3 4\n1 1\n2 0 2\n0\n");
  CHECK(g.n() == 3);
  CHECK(g.dim() == 2);
  CHECK(g.k_hint() == std::uint32_t{1});
  CHECK(g.point(1)[0] == 1.5);
  CHECK(g.point(2)[0] == 0.001);
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbors(1)[1] == 2);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("adjacency keeps file order", "[io]") {
  const auto g = parse("knng 1 3 1 0\n0\n1\n2\n2 2 1\n1 0\n1 0\n");
  CHECK(g.neighbors(0)[0] == 2);
  CHECK(g.neighbors(0)[1] == 1);
  CHECK_FALSE(g.k_hint().has_value());
}

TEST_CASE("knng errors carry the offending line", "[io]") {
  CHECK(error_line("knng 2 1 1 0\n0\n0\n") == 1);
  CHECK(error_line("graph 1 1 1 0\n0\n0\n") == 1);
  CHECK(error_line("knng 1 2 1 0\n0\nx\n0\n0\n") == 3);
  CHECK(error_line("knng 1 2 1 0\n0\nnan\n0\n0\n") == 3);
  CHECK(error_line("knng 1 2 2 0\n0 0\n1\n0\n0\n") == 3);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n1 0\n0\n") == 4);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n2 1 1\n0\n") == 4);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n1 1\n1 1\n") == 5);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n1 5\n0\n") == 4);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n2 1\n0\n") == 4);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n0\n0\nextra\n") == 6);
  CHECK(error_line("knng 1 2 1 0\n0\n1\n0\n") == 5);
}

TEST_CASE("CR line endings are rejected", "[io]") {
  CHECK_THROWS_AS(parse("knng 1 1 1 0\r\n0\r\n0\r\n"), FormatError);
}

TEST_CASE("write then read is bit-exact", "[io]") {
  PointSet points(3, {0.1, 1.0 / 3.0, -2.5e-300, std::nextafter(1.0, 2.0), 1e300, -0.0});
  const GeometricGraph g(points, {{1}, {0}}, 1);
  std::ostringstream out;
  write_knng(out, g);
  std::istringstream in(out.str());
  const auto back = read_knng(in);
  CHECK(back == g);
  for (std::size_t i = 0; i < points.data().size(); ++i) {
    CHECK(std::memcmp(&back.points().data()[i], &points.data()[i], sizeof(double)) == 0);
  }
}

TEST_CASE("generated graphs round-trip through files", "[io]") {
  const auto g = sample_d2(60, 2, 0.1, 11);
  const auto path = std::filesystem::temp_directory_path() / "knntest_io_roundtrip.knng";
  write_knng(path, g);
  CHECK(read_knng(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("file errors name the path", "[io]") {
  const auto missing = std::filesystem::temp_directory_path() / "knntest_definitely_missing.knng";
  CHECK_THROWS_AS(read_knng(missing), IoError);
  const auto path = std::filesystem::temp_directory_path() / "knntest_bad.knng";
  {
    std::ofstream out(path);
    out << "knng 1 1 1 0\n0\nbad\n";
  }
  try {
    read_knng(path);
    FAIL("expected a FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find(path.string()) != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("points CSV skips comments, blanks and a header", "[io]") {
  std::istringstream in("x,y\n# comment\n\n1,2\n3,4.5\n");
  const auto points = read_points_csv(in);
  CHECK(points.size() == 2);
  CHECK(points.dim() == 2);
  CHECK(points[1][1] == 4.5);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_points_csv(ragged), FormatError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_points_csv(empty), FormatError);
}

TEST_CASE("points CSV round-trips", "[io]") {
  const auto points = uniform_points(40, 3, 8);
  std::ostringstream out;
  write_points_csv(out, points);
  std::istringstream in(out.str());
  CHECK(read_points_csv(in) == points);
}

TEST_CASE("format_double is shortest round-trip", "[io]") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
