// tests/test_io.cc

// Copyright 2026 The monoalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "monoalign/error.h"
#include "monoalign/io.h"
#include "oracles.h"

#ifndef MONOALIGN_FIXTURES
#error "MONOALIGN_FIXTURES must point at tests/fixtures"
#endif

namespace monoalign {
namespace {

namespace fs = std::filesystem;

fs::path Fixture(const char* name) { return fs::path(MONOALIGN_FIXTURES) / name; }

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("monoalign_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kIoError;
}

TEST_CASE("read float32 NPY written by numpy") {
  const MatrixFile f = ReadMatrix(Fixture("f4_2x3.npy"));
  CHECK(f.dtype == Dtype::kFloat32);
  CHECK_FALSE(f.one_dimensional);
  CHECK(f.matrix == Matrix{{0.0, 0.25, 0.5}, {0.75, 1.0, 1.25}});
}

TEST_CASE("NPY encoding matches numpy byte for byte") {
  const std::string numpy_bytes = Slurp(Fixture("f8_2x3.npy"));
  const MatrixFile f = ParseNpy(numpy_bytes);
  CHECK(f.matrix(1, 0) == 1e-300);
  CHECK(std::signbit(f.matrix(1, 1)));
  CHECK(EncodeNpy(f) == numpy_bytes);

  const std::string vector_bytes = Slurp(Fixture("vector_f8.npy"));
  const MatrixFile v = ParseNpy(vector_bytes);
  CHECK(v.one_dimensional);
  CHECK(v.matrix == Matrix{{2.0, 2.0, 1.0}});
  CHECK(EncodeNpy(v) == vector_bytes);
}

TEST_CASE("NPY rejections") {
  CHECK(KindOf([] { ReadMatrix(Fixture("fortran.npy")); }) ==
        ErrorKind::kFortranOrderUnsupported);
  CHECK(KindOf([] { ReadMatrix(Fixture("int32.npy")); }) == ErrorKind::kUnsupportedDtype);
  std::string truncated = Slurp(Fixture("f8_2x3.npy"));
  truncated.pop_back();
  CHECK(KindOf([&] { ParseNpy(truncated); }) == ErrorKind::kParseError);
  std::string v2 = Slurp(Fixture("f8_2x3.npy"));
  v2[6] = 2;
  CHECK(KindOf([&] { ParseNpy(v2); }) == ErrorKind::kParseError);
  CHECK(KindOf([] { ParseNpy(std::string("\x93NUMPY\x01\x00\x04\x00{}  ", 14)); }) ==
        ErrorKind::kParseError);
  CHECK(KindOf([] { ReadMatrix("/nonexistent/monoalign.npy"); }) == ErrorKind::kIoError);
}

TEST_CASE("NPY parse errors carry a byte offset") {
  const std::string bad("\x93NUMPY\x01\x00\x10\x00{'descr' ; '<f8'}\n", 26);
  try {
    ParseNpy(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("byte 19") != std::string::npos);
  }
}

TEST_CASE("TSV parsing") {
  CHECK(ParseTsv("1.0\t2.0\n3.0\t4.0\n").matrix == Matrix{{1, 2}, {3, 4}});
  CHECK(ParseTsv("5\t-inf").matrix(0, 1) == -std::numeric_limits<double>::infinity());
  try {
    ParseTsv("1\t2\n3\tx\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(KindOf([] { ParseTsv("1\t2\n3\n"); }) == ErrorKind::kParseError);
  CHECK(KindOf([] { ParseTsv(""); }) == ErrorKind::kParseError);
  CHECK(KindOf([] { ParseTsv("1\n\n2\n"); }) == ErrorKind::kParseError);
  CHECK(KindOf([] { ParseTsv("1\t\t2\n"); }) == ErrorKind::kParseError);
}

TEST_CASE("writing matrices") {
  TempDir dir;
  const fs::path tsv = dir.path / "half.tsv";
  WriteMatrix(Matrix{{0.5}}, tsv, FileFormat::kTsv);
  CHECK(Slurp(tsv) == "0.5\n");

  CHECK(KindOf([&] { WriteMatrix(Matrix(0, 3), dir.path / "empty.npy", FileFormat::kNpy); }) ==
        ErrorKind::kParseError);
  CHECK_FALSE(fs::exists(dir.path / "empty.npy"));
  CHECK(KindOf([&] { WriteMatrix(Matrix{{1.0}}, dir.path / "missing" / "x.npy", FileFormat::kNpy); }) ==
        ErrorKind::kIoError);
  // Failed writes leave no temporaries behind.
  CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator()) == 1);

  const fs::path json = dir.path / "m.json";
  WriteMatrix(Matrix{{1, 2}, {3, 4}}, json, FormatFromExtension(json));
  CHECK(Slurp(json) == "{\"data\":[[1.0,2.0],[3.0,4.0]],\"shape\":[2,2]}\n");
}

TEST_CASE("round trips") {
  TempDir dir;
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    Matrix m(rows, cols);
    for (double& v : m.data()) v = std::bit_cast<double>(rng() & 0x7FEFFFFFFFFFFFFFull) *
                                  ((rng() & 1) ? 1.0 : -1.0);
    const fs::path npy = dir.path / "m.npy", tsv = dir.path / "m.tsv";
    WriteMatrix(m, npy, FileFormat::kNpy);
    CHECK(ReadMatrix(npy).matrix == m);
    WriteMatrix(m, tsv, FileFormat::kTsv);
    CHECK(ReadMatrix(tsv).matrix == m);

    MatrixFile f32{Dtype::kFloat32, false, Matrix(rows, cols)};
    for (double& v : f32.matrix.data())
      v = std::bit_cast<float>(static_cast<std::uint32_t>(rng() & 0x7F7FFFFFu));
    WriteMatrix(f32, npy, FileFormat::kNpy);
    const MatrixFile back = ReadMatrix(npy);
    CHECK(back.dtype == Dtype::kFloat32);
    CHECK(back.matrix == f32.matrix);
  }
}

TEST_CASE("PGM heatmaps") {
  CHECK(EncodePgm(Matrix{{1, 0}, {0, 1}}) == Slurp(Fixture("identity_2x2.pgm")));
  const std::string constant = EncodePgm(Matrix(3, 2, 0.7));
  CHECK(constant.substr(0, 11) == "P5\n2 3\n255\n");
  for (std::size_t k = 11; k < constant.size(); ++k)
    CHECK(static_cast<unsigned char>(constant[k]) == 128);
  CHECK(constant.size() == 11 + 6);
  const std::string ramp = EncodePgm(Matrix{{0.0, 0.5, 1.0}});
  CHECK(static_cast<unsigned char>(ramp[ramp.size() - 2]) == 128);
  CHECK(KindOf([] { EncodePgm(Matrix{{-1.0, 0.0}}); }) == ErrorKind::kDomainError);
}

}  // namespace
}  // namespace monoalign
