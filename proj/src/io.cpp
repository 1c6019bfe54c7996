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

#include "knntest/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <vector>

#include "knntest/error.hpp"

namespace knntest {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) {
      return false;
    }
    ++number_;
    if (!line.empty() && line.back() == '\r') {
      throw FormatError(number_, "CR line endings are not supported");
    }
    return true;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) {
      throw FormatError(number_ + 1, std::string("unexpected end of file, expected ") + what);
    }
    return line;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split_tokens(std::string_view line, char sep) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    if (sep == ' ') {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
        ++pos;
      }
      if (pos == line.size()) {
        break;
      }
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
        ++end;
      }
      tokens.push_back(line.substr(pos, end - pos));
      pos = end;
    } else {
      std::size_t end = line.find(sep, pos);
      if (end == std::string_view::npos) {
        end = line.size();
      }
      std::string_view token = line.substr(pos, end - pos);
      while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
        token.remove_prefix(1);
      }
      while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) {
        token.remove_suffix(1);
      }
      tokens.push_back(token);
      pos = end + 1;
    }
  }
  return tokens;
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') {
    token.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size() && std::isfinite(out);
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) {
    throw UsageError("format_double: conversion failed");
  }
  return std::string(buffer.data(), ptr);
}

GeometricGraph read_knng(std::istream& in) {
  LineReader reader(in);
  const std::string header = reader.require("header");
  const auto head = split_tokens(header, ' ');
  if (head.size() != 5 || head[0] != "knng") {
    throw FormatError(1, "expected header 'knng 1 <n> <dim> <k_hint>'");
  }
  if (head[1] != "1") {
    throw FormatError(1, "unsupported format version '" + std::string(head[1]) + "'");
  }
  std::size_t n = 0;
  std::size_t dim = 0;
  std::uint32_t k_hint = 0;
  if (!parse_int(head[2], n) || !parse_int(head[3], dim) || !parse_int(head[4], k_hint)) {
    throw FormatError(1, "header fields must be non-negative integers");
  }
  if (dim == 0) {
    throw FormatError(1, "dimension must be at least 1");
  }
  if (n > std::numeric_limits<VertexId>::max()) {
    throw FormatError(1, "vertex count exceeds the supported id range");
  }

  std::vector<double> coords;
  coords.reserve(n * dim);
  for (std::size_t v = 0; v < n; ++v) {
    const std::string line = reader.require("coordinate row");
    const auto tokens = split_tokens(line, ' ');
    if (tokens.size() != dim) {
      throw FormatError(reader.number(), "expected " + std::to_string(dim) + " coordinates, found " +
                                             std::to_string(tokens.size()));
    }
    for (const auto token : tokens) {
      double value = 0.0;
      if (!parse_double(token, value)) {
        throw FormatError(reader.number(), "invalid or non-finite coordinate '" + std::string(token) + "'");
      }
      coords.push_back(value);
    }
  }

  AdjacencyList adjacency(n);
  std::vector<std::size_t> seen(n, static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < n; ++v) {
    const std::string line = reader.require("adjacency row");
    const auto tokens = split_tokens(line, ' ');
    std::size_t degree = 0;
    if (tokens.empty() || !parse_int(tokens[0], degree)) {
      throw FormatError(reader.number(), "expected a degree");
    }
    if (tokens.size() != degree + 1) {
      throw FormatError(reader.number(), "degree " + std::to_string(degree) + " but " +
                                             std::to_string(tokens.size() - 1) + " ids listed");
    }
    auto& list = adjacency[v];
    list.reserve(degree);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      VertexId u = 0;
      if (!parse_int(tokens[i], u) || u >= n) {
        throw FormatError(reader.number(), "invalid vertex id '" + std::string(tokens[i]) + "'");
      }
      if (u == v) {
        throw FormatError(reader.number(), "self-loop at vertex " + std::to_string(v));
      }
      if (seen[u] == v) {
        throw FormatError(reader.number(), "duplicate neighbor " + std::to_string(u));
      }
      seen[u] = v;
      list.push_back(u);
    }
  }

  std::string rest;
  while (reader.next(rest)) {
    if (!split_tokens(rest, ' ').empty()) {
      throw FormatError(reader.number(), "trailing content after the last adjacency row");
    }
  }

  std::optional<std::uint32_t> hint;
  if (k_hint != 0) {
    hint = k_hint;
  }
  return GeometricGraph(PointSet(dim, std::move(coords)), std::move(adjacency), hint);
}

GeometricGraph read_knng(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_knng(in);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.detail(), path.string());
  }
}

void write_knng(std::ostream& out, const GeometricGraph& g) {
  out << "knng 1 " << g.n() << ' ' << g.dim() << ' ' << g.k_hint().value_or(0) << '\n';
  for (VertexId v = 0; v < g.n(); ++v) {
    const auto p = g.point(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != 0) {
        out << ' ';
      }
      out << format_double(p[i]);
    }
    out << '\n';
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    const auto list = g.neighbors(v);
    out << list.size();
    for (VertexId u : list) {
      out << ' ' << u;
    }
    out << '\n';
  }
}

void write_knng(const std::filesystem::path& path, const GeometricGraph& g) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  write_knng(out, g);
  out.flush();
  if (!out) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

PointSet read_points_csv(std::istream& in) {
  LineReader reader(in);
  PointSet points;
  std::string line;
  std::vector<double> row;
  bool first_data_line = true;
  while (reader.next(line)) {
    const auto trimmed = split_tokens(line, ' ');
    if (trimmed.empty() || trimmed.front().front() == '#') {
      continue;
    }
    const auto tokens = split_tokens(line, ',');
    row.clear();
    bool ok = true;
    for (const auto token : tokens) {
      double value = 0.0;
      if (!parse_double(token, value)) {
        ok = false;
        break;
      }
      row.push_back(value);
    }
    if (!ok) {
      if (first_data_line) {
        first_data_line = false;
        continue;
      }
      throw FormatError(reader.number(), "invalid or non-finite value in CSV row");
    }
    first_data_line = false;
    if (!points.empty() && row.size() != points.dim()) {
      throw FormatError(reader.number(), "expected " + std::to_string(points.dim()) + " columns, found " +
                                             std::to_string(row.size()));
    }
    points.push_back(row);
  }
  if (points.empty()) {
    throw FormatError(0, "no points in CSV input");
  }
  return points;
}

PointSet read_points_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_points_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.detail(), path.string());
  }
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  for (VertexId v = 0; v < points.size(); ++v) {
    const auto p = points[v];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != 0) {
        out << ',';
      }
      out << format_double(p[i]);
    }
    out << '\n';
  }
}

void write_points_csv(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  write_points_csv(out, points);
  out.flush();
  if (!out) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

}  // namespace knntest
