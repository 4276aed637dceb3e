// include/ftm/binary-io.h

// Copyright 2026  The FTM Authors

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

#ifndef FTM_BINARY_IO_H_
#define FTM_BINARY_IO_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace ftm {

// Little-endian primitives shared by the FTMF/FTMW/FTME formats. Readers
// throw Error(kFormat) on short reads.

void WriteU32(std::ostream &os, uint32_t value);
void WriteF32(std::ostream &os, float value);
void WriteMagic(std::ostream &os, std::string_view magic);
void WriteString(std::ostream &os, std::string_view s);  // u32 length + bytes

uint32_t ReadU32(std::istream &is);
float ReadF32(std::istream &is);
void ExpectMagic(std::istream &is, std::string_view magic);
std::string ReadString(std::istream &is, uint32_t max_length = 1u << 20);

// Fails with Error(kIo) if the file cannot be opened.
std::ofstream OpenForWrite(const std::filesystem::path &path);
std::ifstream OpenForRead(const std::filesystem::path &path);

}  // namespace ftm

#endif  // FTM_BINARY_IO_H_
