// src/io.cc

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

#include "monoalign/io.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "monoalign/error.h"

namespace monoalign {
namespace {

constexpr std::string_view kNpyMagic("\x93NUMPY", 6);
constexpr std::size_t kNpyPreamble = 10;  // magic + version + header length
constexpr std::size_t kNpyAlign = 64;

[[noreturn]] void ParseFail(const std::string& what, std::size_t offset) {
  throw Error(ErrorKind::kParseError,
              "NPY parse error at byte " + std::to_string(offset) + ": " + what);
}

// Minimal reader for the Python dict literal in an NPY header.
class HeaderParser {
 public:
  HeaderParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  struct Fields {
    std::string descr;
    bool fortran_order = false;
    std::vector<std::size_t> shape;
    bool has_descr = false, has_order = false, has_shape = false;
  };

  Fields Parse() {
    Fields fields;
    Expect('{');
    while (true) {
      SkipSpace();
      if (Peek() == '}') {
        ++pos_;
        break;
      }
      const std::size_t key_pos = pos_;
      const std::string key = ParseString();
      Expect(':');
      SkipSpace();
      if (key == "descr") {
        fields.descr = ParseString();
        fields.has_descr = true;
      } else if (key == "fortran_order") {
        fields.fortran_order = ParseBool();
        fields.has_order = true;
      } else if (key == "shape") {
        fields.shape = ParseShape();
        fields.has_shape = true;
      } else {
        Fail("unexpected header key '" + key + "'", key_pos);
      }
      SkipSpace();
      if (Peek() == ',') ++pos_;
    }
    if (!fields.has_descr || !fields.has_order || !fields.has_shape) {
      Fail("header is missing descr, fortran_order or shape", pos_);
    }
    return fields;
  }

 private:
  [[noreturn]] void Fail(const std::string& what, std::size_t at) const {
    ParseFail(what, base_ + at);
  }
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void SkipSpace() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::string ParseString() {
    SkipSpace();
    const char quote = Peek();
    if (quote != '\'' && quote != '"') Fail("expected a quoted string", pos_);
    const std::size_t end = text_.find(quote, pos_ + 1);
    if (end == std::string_view::npos) Fail("unterminated string", pos_);
    std::string out(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }
  bool ParseBool() {
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    Fail("expected True or False", pos_);
  }
  std::vector<std::size_t> ParseShape() {
    Expect('(');
    std::vector<std::size_t> dims;
    while (true) {
      SkipSpace();
      if (Peek() == ')') {
        ++pos_;
        return dims;
      }
      std::size_t value = 0;
      const char* first = text_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
      if (ec != std::errc()) Fail("expected a dimension", pos_);
      pos_ += static_cast<std::size_t>(ptr - first);
      dims.push_back(value);
      SkipSpace();
      if (Peek() == ',') ++pos_;
    }
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

template <typename UInt>
UInt LoadLittleEndian(const unsigned char* p) {
  UInt v = 0;
  for (std::size_t b = 0; b < sizeof(UInt); ++b) v |= static_cast<UInt>(p[b]) << (8 * b);
  return v;
}

template <typename UInt>
void StoreLittleEndian(UInt v, std::string& out) {
  for (std::size_t b = 0; b < sizeof(UInt); ++b)
    out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(ErrorKind::kIoError, "cannot format value");
  return std::string(buf, ptr);
}

}  // namespace

MatrixFile ParseNpy(std::string_view bytes) {
  if (bytes.size() < kNpyPreamble || bytes.substr(0, 6) != kNpyMagic) {
    ParseFail("missing NPY magic", 0);
  }
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  if (raw[6] != 1 || raw[7] != 0) {
    ParseFail("only NPY format version 1.0 is supported", 6);
  }
  const std::size_t header_len = LoadLittleEndian<std::uint16_t>(raw + 8);
  if (kNpyPreamble + header_len > bytes.size()) {
    ParseFail("header length exceeds file size", 8);
  }
  const auto fields =
      HeaderParser(bytes.substr(kNpyPreamble, header_len), kNpyPreamble).Parse();

  MatrixFile file;
  std::size_t item = 0;
  if (fields.descr == "<f8") {
    file.dtype = Dtype::kFloat64;
    item = 8;
  } else if (fields.descr == "<f4") {
    file.dtype = Dtype::kFloat32;
    item = 4;
  } else {
    throw Error(ErrorKind::kUnsupportedDtype,
                "unsupported NPY dtype '" + fields.descr + "' (expected <f4 or <f8)");
  }
  if (fields.fortran_order) {
    throw Error(ErrorKind::kFortranOrderUnsupported,
                "Fortran-ordered NPY arrays are not supported");
  }

  std::size_t rows = 0, cols = 0;
  if (fields.shape.size() == 1) {
    rows = 1;
    cols = fields.shape[0];
    file.one_dimensional = true;
  } else if (fields.shape.size() == 2) {
    rows = fields.shape[0];
    cols = fields.shape[1];
  } else {
    ParseFail("only 1-D and 2-D arrays are supported", kNpyPreamble);
  }

  const std::size_t offset = kNpyPreamble + header_len;
  const std::size_t count = rows * cols;
  if (bytes.size() - offset != count * item) {
    ParseFail("payload has " + std::to_string(bytes.size() - offset) +
                  " bytes, expected " + std::to_string(count * item),
              offset);
  }
  std::vector<double> values(count);
  const unsigned char* payload = raw + offset;
  for (std::size_t k = 0; k < count; ++k) {
    if (item == 8) {
      values[k] = std::bit_cast<double>(LoadLittleEndian<std::uint64_t>(payload + 8 * k));
    } else {
      values[k] = std::bit_cast<float>(LoadLittleEndian<std::uint32_t>(payload + 4 * k));
    }
  }
  file.matrix = Matrix(rows, cols, std::move(values));
  return file;
}

MatrixFile ParseTsv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      throw Error(ErrorKind::kParseError,
                  "TSV parse error at line " + std::to_string(line_no) + ": empty row");
    }
    std::size_t width = 0, field_start = 0;
    while (true) {
      std::size_t field_end = line.find('\t', field_start);
      if (field_end == std::string_view::npos) field_end = line.size();
      const std::string_view field = line.substr(field_start, field_end - field_start);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::kParseError,
                    "TSV parse error at line " + std::to_string(line_no) +
                        ", field " + std::to_string(width + 1) + ": '" +
                        std::string(field) + "' is not a number");
      }
      values.push_back(value);
      ++width;
      if (field_end == line.size()) break;
      field_start = field_end + 1;
    }
    if (rows == 0) {
      cols = width;
    } else if (width != cols) {
      throw Error(ErrorKind::kParseError,
                  "TSV parse error at line " + std::to_string(line_no) + ": " +
                      std::to_string(width) + " fields, expected " +
                      std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::kParseError, "TSV parse error: empty file");
  MatrixFile file;
  file.matrix = Matrix(rows, cols, std::move(values));
  return file;
}

MatrixFile ReadMatrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIoError, "cannot read " + path.string());
  try {
    if (std::string_view(bytes).substr(0, 6) == kNpyMagic) return ParseNpy(bytes);
    return ParseTsv(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string EncodeNpy(const MatrixFile& file) {
  const Matrix& m = file.matrix;
  const bool f32 = file.dtype == Dtype::kFloat32;
  std::string dict = "{'descr': '";
  dict += f32 ? "<f4" : "<f8";
  dict += "', 'fortran_order': False, 'shape': (";
  if (file.one_dimensional && m.rows() == 1) {
    dict += std::to_string(m.cols()) + ",";
  } else {
    dict += std::to_string(m.rows()) + ", " + std::to_string(m.cols());
  }
  dict += "), }";
  const std::size_t unpadded = kNpyPreamble + dict.size() + 1;
  dict.append((kNpyAlign - unpadded % kNpyAlign) % kNpyAlign, ' ');
  dict.push_back('\n');

  std::string out(kNpyMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  StoreLittleEndian(static_cast<std::uint16_t>(dict.size()), out);
  out += dict;
  out.reserve(out.size() + m.size() * (f32 ? 4 : 8));
  for (double v : m.data()) {
    if (f32) {
      StoreLittleEndian(std::bit_cast<std::uint32_t>(static_cast<float>(v)), out);
    } else {
      StoreLittleEndian(std::bit_cast<std::uint64_t>(v), out);
    }
  }
  return out;
}

std::string EncodeTsv(const Matrix& matrix) {
  std::string out;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) out.push_back('\t');
      out += FormatDouble(matrix(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

std::string EncodeJson(const Matrix& matrix) {
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    data.push_back(std::vector<double>(row.begin(), row.end()));
  }
  const nlohmann::json doc = {{"shape", {matrix.rows(), matrix.cols()}},
                              {"data", std::move(data)}};
  return doc.dump() + "\n";
}

FileFormat FormatFromExtension(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".tsv") return FileFormat::kTsv;
  if (ext == ".json") return FileFormat::kJson;
  return FileFormat::kNpy;
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, "cannot open " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::kIoError, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorKind::kIoError,
                "cannot rename into " + path.string() + ": " + ec.message());
  }
}

void WriteMatrix(const MatrixFile& file, const std::filesystem::path& path,
                 FileFormat format) {
  if (file.matrix.rows() == 0 || file.matrix.cols() == 0) {
    throw Error(ErrorKind::kParseError, "refusing to write a matrix with no rows or columns");
  }
  switch (format) {
    case FileFormat::kNpy: WriteFileAtomic(path, EncodeNpy(file)); break;
    case FileFormat::kTsv: WriteFileAtomic(path, EncodeTsv(file.matrix)); break;
    case FileFormat::kJson: WriteFileAtomic(path, EncodeJson(file.matrix)); break;
  }
}

void WriteMatrix(const Matrix& matrix, const std::filesystem::path& path,
                 FileFormat format) {
  WriteMatrix(MatrixFile{Dtype::kFloat64, false, matrix}, path, format);
}

std::string EncodePgm(const Matrix& matrix) {
  if (matrix.empty()) throw Error(ErrorKind::kInvalidShape, "heatmap of an empty matrix");
  double lo = matrix.data()[0], hi = lo;
  for (double v : matrix.data()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kNonFinite, "heatmap input is not finite");
    if (v < 0.0) throw Error(ErrorKind::kDomainError, "heatmap input must be nonnegative");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::string out = "P5\n" + std::to_string(matrix.cols()) + " " +
                    std::to_string(matrix.rows()) + "\n255\n";
  const double range = hi - lo;
  for (double v : matrix.data()) {
    const long level = range > 0.0 ? std::lround((v - lo) / range * 255.0) : 128;
    out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
  }
  return out;
}

void WriteHeatmap(const Matrix& matrix, const std::filesystem::path& path) {
  WriteFileAtomic(path, EncodePgm(matrix));
}

}  // namespace monoalign
