// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/wav.h"

#include <cmath>

#include "cdrud/io_util.h"

namespace cdrud {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

std::int16_t QuantizePcm16(double v) {
  const double scaled = std::round(v * 32768.0);
  if (scaled > 32767.0) return 32767;
  if (scaled < -32768.0) return -32768;
  return static_cast<std::int16_t>(scaled);
}

}  // namespace

void WriteWav(const std::filesystem::path& path, const std::vector<std::vector<double>>& channels,
              double sample_rate, WavEncoding encoding) {
  if (channels.empty()) throw std::invalid_argument("no channels to write");
  const std::size_t n = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw DimensionError("channels differ in length");
  }
  const std::uint16_t num_channels = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t bytes_per_sample = encoding == WavEncoding::kPcm16 ? 2 : 4;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(n * num_channels * bytes_per_sample);
  const std::uint32_t rate = static_cast<std::uint32_t>(std::llround(sample_rate));

  ByteWriter w;
  w.PutBytes("RIFF");
  w.PutU32(36 + data_bytes);
  w.PutBytes("WAVE");
  w.PutBytes("fmt ");
  w.PutU32(16);
  w.PutU16(encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  w.PutU16(num_channels);
  w.PutU32(rate);
  w.PutU32(rate * num_channels * bytes_per_sample);
  w.PutU16(static_cast<std::uint16_t>(num_channels * bytes_per_sample));
  w.PutU16(static_cast<std::uint16_t>(8 * bytes_per_sample));
  w.PutBytes("data");
  w.PutU32(data_bytes);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& ch : channels) {
      if (encoding == WavEncoding::kPcm16) w.PutI16(QuantizePcm16(ch[i]));
      else w.PutF32(static_cast<float>(ch[i]));
    }
  }
  WriteFileAtomic(path, w.bytes());
}

void WriteWav(const std::filesystem::path& path, const MultichannelSignal& signal, WavEncoding encoding) {
  WriteWav(path, signal.channels, signal.sample_rate, encoding);
}

WavData ReadWav(const std::filesystem::path& path) {
  const std::string bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  if (r.remaining() < 12 || r.GetBytes(4) != "RIFF") throw FormatError("not a RIFF file: " + path.string());
  r.GetU32();
  if (r.GetBytes(4) != "WAVE") throw FormatError("not a WAVE file: " + path.string());

  std::uint16_t format = 0, num_channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    const std::string_view id = r.GetBytes(4);
    const std::uint32_t size = r.GetU32();
    if (id == "fmt ") {
      if (size < 16) throw FormatError("short fmt chunk");
      ByteReader f(r.GetBytes(size));
      format = f.GetU16();
      num_channels = f.GetU16();
      rate = f.GetU32();
      f.GetU32();
      f.GetU16();
      bits = f.GetU16();
      if (format == kFormatExtensible) {
        if (size < 40) throw FormatError("short extensible fmt chunk");
        f.GetU16();  // cbSize
        f.GetU16();  // valid bits
        f.GetU32();  // channel mask
        format = f.GetU16();  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("data chunk before fmt chunk");
      const bool pcm16 = format == kFormatPcm && bits == 16;
      const bool float32 = format == kFormatFloat && bits == 32;
      if (!pcm16 && !float32) {
        throw FormatError("unsupported WAV encoding (format " + std::to_string(format) + ", " +
                          std::to_string(bits) + " bits)");
      }
      if (num_channels == 0) throw FormatError("WAV declares zero channels");
      const std::size_t frame_bytes = static_cast<std::size_t>(num_channels) * (bits / 8);
      const std::size_t avail = std::min<std::size_t>(size, r.remaining());
      const std::size_t frames = avail / frame_bytes;
      WavData out;
      out.sample_rate = rate;
      out.encoding = pcm16 ? WavEncoding::kPcm16 : WavEncoding::kFloat32;
      out.channels.assign(num_channels, std::vector<double>(frames));
      for (std::size_t i = 0; i < frames; ++i) {
        for (std::size_t c = 0; c < num_channels; ++c) {
          out.channels[c][i] = pcm16 ? r.GetI16() / 32768.0 : static_cast<double>(r.GetF32());
        }
      }
      return out;
    } else {
      r.Skip(std::min<std::size_t>(size + (size & 1u), r.remaining()));
    }
  }
  throw FormatError("no data chunk in " + path.string());
}

MultichannelSignal ReadWav(const std::filesystem::path& path, const ArrayGeometry& geometry) {
  WavData data = ReadWav(path);
  if (data.channels.size() != geometry.NumMics()) {
    throw DimensionError(path.string() + " has " + std::to_string(data.channels.size()) +
                         " channels, geometry has " + std::to_string(geometry.NumMics()));
  }
  MultichannelSignal out;
  out.channels = std::move(data.channels);
  out.sample_rate = data.sample_rate;
  out.geometry = geometry;
  out.Validate();
  return out;
}

}  // namespace cdrud
