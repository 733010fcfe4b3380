// Copyright 2026 vopkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vopkit/corpus.hpp"

namespace vopkit::corpus {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 24) & 0xFF);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  in.seekg(0, std::ios::end);
  const std::streamoff len = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<unsigned char> bytes(static_cast<std::size_t>(len));
  if (len > 0) in.read(reinterpret_cast<char*>(bytes.data()), len);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  return bytes;
}

}  // namespace

Signal read_wav(const std::string& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error(path + ": not a RIFF/WAVE file");

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size())
      throw std::runtime_error(path + ": truncated chunk");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw std::runtime_error(path + ": bad fmt chunk");
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        // The first two bytes of the SubFormat GUID carry the actual code.
        if (chunk_len < 40)
          throw std::runtime_error(path + ": bad extensible fmt chunk");
        format = read_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len % 2);  // chunks are word aligned
  }

  if (!have_fmt || data == nullptr)
    throw std::runtime_error(path + ": missing fmt or data chunk");
  if (channels != 1)
    throw std::runtime_error(path + ": multi-channel input not supported");
  if (rate == 0) throw std::runtime_error(path + ": zero sample rate");

  Signal out;
  out.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const std::size_t n = data_len / 2;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = static_cast<std::int16_t>(read_u16(data + 2 * i));
      out.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatPcm && bits == 24) {
    const std::size_t n = data_len / 3;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned char* p = data + 3 * i;
      std::int32_t v = static_cast<std::int32_t>(p[0]) |
                       (static_cast<std::int32_t>(p[1]) << 8) |
                       (static_cast<std::int32_t>(p[2]) << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
      out.samples[i] = static_cast<double>(v) / 8388608.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const std::size_t n = data_len / 4;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t u = read_u32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      out.samples[i] = static_cast<double>(f);
    }
  } else {
    throw std::runtime_error(path + ": unsupported encoding");
  }
  for (double v : out.samples)
    if (!std::isfinite(v))
      throw std::runtime_error(path + ": non-finite sample");
  return out;
}

void write_wav_pcm16(const std::string& path, const Signal& signal) {
  ensure_valid(signal, "write_wav_pcm16");
  const std::size_t n = signal.samples.size();
  const std::uint32_t data_len = static_cast<std::uint32_t>(n * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);
  for (std::size_t i = 0; i < n; ++i) {
    const double clipped = std::clamp(signal.samples[i], -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::lround(clipped * 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

Signal resample(const Signal& in, int target_rate) {
  ensure_valid(in, "resample");
  if (target_rate <= 0)
    throw std::invalid_argument("resample: target rate must be positive");
  if (in.sample_rate == target_rate) return in;

  const long long g = std::gcd(static_cast<long long>(in.sample_rate),
                               static_cast<long long>(target_rate));
  const long long up = target_rate / g;    // L
  const long long down = in.sample_rate / g;  // M

  const std::size_t n_in = in.samples.size();
  const auto n_out = static_cast<std::size_t>(std::llround(
      static_cast<double>(n_in) * target_rate / in.sample_rate));

  // Cutoff in cycles per input sample; half when downsampling by M.
  const double cutoff =
      0.5 * std::min(1.0, static_cast<double>(up) / static_cast<double>(down));
  const int zero_crossings = 16;
  const double half_width = zero_crossings / (2.0 * cutoff);

  Signal out;
  out.sample_rate = target_rate;
  out.samples.resize(n_out, 0.0);

  for (std::size_t j = 0; j < n_out; ++j) {
    // Exact rational input position of output sample j.
    const double t = static_cast<double>(j) * down / up;
    const auto k_lo = static_cast<long long>(std::ceil(t - half_width));
    const auto k_hi = static_cast<long long>(std::floor(t + half_width));
    double acc = 0.0;
    for (long long k = std::max<long long>(0, k_lo);
         k <= std::min<long long>(static_cast<long long>(n_in) - 1, k_hi);
         ++k) {
      const double d = t - static_cast<double>(k);
      const double sx = 2.0 * cutoff * d;
      double sinc;
      if (std::abs(sx) < 1e-12) {
        sinc = 1.0;
      } else {
        sinc = std::sin(M_PI * sx) / (M_PI * sx);
      }
      const double u = d / half_width;  // in [-1, 1]
      const double window =
          0.42 + 0.5 * std::cos(M_PI * u) + 0.08 * std::cos(2.0 * M_PI * u);
      acc += in.samples[static_cast<std::size_t>(k)] * sinc * window;
    }
    out.samples[j] = 2.0 * cutoff * acc;
  }
  return out;
}

Signal load_waveform(const std::string& path, int target_rate) {
  Signal s = read_wav(path);
  s = resample(s, target_rate);
  double peak = 0.0;
  for (double v : s.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    const double scale = 1.0 / peak;
    for (double& v : s.samples) v *= scale;
  }
  return s;
}

}  // namespace vopkit::corpus
