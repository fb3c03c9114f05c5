// include/monoalign/io.h

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

#ifndef MONOALIGN_IO_H_
#define MONOALIGN_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "monoalign/matrix.h"

namespace monoalign {

enum class Dtype { kFloat32, kFloat64 };

enum class FileFormat { kNpy, kTsv, kJson };

// A matrix as stored on disk. Values are held as doubles; float32 payloads
// are widened exactly and narrowed back on write.
struct MatrixFile {
  Dtype dtype = Dtype::kFloat64;
  bool one_dimensional = false;  // NPY shape (n,) is read as a 1 x n matrix
  Matrix matrix;
};

// NPY v1.0 (little-endian <f4/<f8, C order, 1-D or 2-D) or TSV, detected
// from the leading bytes. Throws kParseError, kUnsupportedDtype,
// kFortranOrderUnsupported or kIoError.
MatrixFile ReadMatrix(const std::filesystem::path& path);

MatrixFile ParseNpy(std::string_view bytes);
MatrixFile ParseTsv(std::string_view text);

std::string EncodeNpy(const MatrixFile& file);
// One line per row, tab separated, shortest round-trip decimal form.
std::string EncodeTsv(const Matrix& matrix);
std::string EncodeJson(const Matrix& matrix);

// Writes through a temporary sibling file and renames it into place, so a
// failed write never leaves a partial file. Empty matrices are rejected with
// kParseError.
void WriteMatrix(const MatrixFile& file, const std::filesystem::path& path,
                 FileFormat format);
void WriteMatrix(const Matrix& matrix, const std::filesystem::path& path,
                 FileFormat format);

// .tsv -> TSV, .json -> JSON, anything else -> NPY.
FileFormat FormatFromExtension(const std::filesystem::path& path);

// 8-bit binary PGM, one pixel per cell (width = cols, height = rows), min
// maps to 0 and max to 255; a constant matrix is mid-gray 128.
std::string EncodePgm(const Matrix& matrix);
void WriteHeatmap(const Matrix& matrix, const std::filesystem::path& path);

// Atomic whole-file write (temp + rename).
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace monoalign

#endif  // MONOALIGN_IO_H_
