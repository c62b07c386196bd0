// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_IO_UTIL_H_
#define CDRUD_IO_UTIL_H_

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cdrud {

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);
std::string ReadFileBytes(const std::filesystem::path& path);

// Little-endian byte packing for the binary formats.
class ByteWriter {
 public:
  void PutU16(std::uint16_t v) { PutLe(v, 2); }
  void PutU32(std::uint32_t v) { PutLe(v, 4); }
  void PutI16(std::int16_t v) { PutLe(static_cast<std::uint16_t>(v), 2); }
  void PutF32(float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    PutU32(bits);
  }
  void PutBytes(std::string_view s) { buffer_.append(s); }
  const std::string& bytes() const { return buffer_; }

 private:
  void PutLe(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string buffer_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}
  std::uint16_t GetU16() { return static_cast<std::uint16_t>(GetLe(2)); }
  std::uint32_t GetU32() { return static_cast<std::uint32_t>(GetLe(4)); }
  std::int16_t GetI16() { return static_cast<std::int16_t>(GetU16()); }
  std::int32_t GetI32() { return static_cast<std::int32_t>(GetU32()); }
  float GetF32() {
    std::uint32_t bits = GetU32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  std::string_view GetBytes(std::size_t n);
  void Skip(std::size_t n) { GetBytes(n); }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  std::uint64_t GetLe(int n);
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace cdrud

#endif  // CDRUD_IO_UTIL_H_
