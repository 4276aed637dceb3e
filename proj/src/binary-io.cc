// src/binary-io.cc

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

#include "ftm/binary-io.h"

#include <array>
#include <bit>
#include <fstream>

#include "ftm/error.h"

namespace ftm {

void WriteU32(std::ostream &os, uint32_t value) {
  std::array<char, 4> bytes;
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  os.write(bytes.data(), 4);
}

void WriteF32(std::ostream &os, float value) {
  WriteU32(os, std::bit_cast<uint32_t>(value));
}

void WriteMagic(std::ostream &os, std::string_view magic) {
  os.write(magic.data(), static_cast<std::streamsize>(magic.size()));
}

void WriteString(std::ostream &os, std::string_view s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t ReadU32(std::istream &is) {
  std::array<unsigned char, 4> bytes;
  if (!is.read(reinterpret_cast<char *>(bytes.data()), 4))
    throw Error(ErrorKind::kFormat, "unexpected end of file");
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) value |= static_cast<uint32_t>(bytes[i]) << (8 * i);
  return value;
}

float ReadF32(std::istream &is) { return std::bit_cast<float>(ReadU32(is)); }

void ExpectMagic(std::istream &is, std::string_view magic) {
  std::string got(magic.size(), '\0');
  if (!is.read(got.data(), static_cast<std::streamsize>(got.size())) || got != magic)
    throw Error(ErrorKind::kFormat, "bad magic, expected " + std::string(magic));
}

std::string ReadString(std::istream &is, uint32_t max_length) {
  uint32_t n = ReadU32(is);
  if (n > max_length) throw Error(ErrorKind::kFormat, "string length out of range");
  std::string s(n, '\0');
  if (n > 0 && !is.read(s.data(), n))
    throw Error(ErrorKind::kFormat, "unexpected end of file");
  return s;
}

std::ofstream OpenForWrite(const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  return os;
}

std::ifstream OpenForRead(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return is;
}

}  // namespace ftm
