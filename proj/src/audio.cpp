#include "dnsmos/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dnsmos/error.hpp"

namespace dnsmos::audio {

namespace {

constexpr int kHalfTaps = 32;  // 64-tap kernel
constexpr double kKaiserBeta = 8.0;
constexpr double kRolloff = 0.945;

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

double bessel_i0(double x) {
  // Series expansion; converges quickly for the beta values used here.
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= (x / (2.0 * k)) * (x / (2.0 * k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

struct WavFormat {
  uint16_t code = 0;
  uint16_t channels = 0;
  uint32_t rate = 0;
  uint16_t bits = 0;
  uint16_t block_align = 0;
};

}  // namespace

std::vector<float> resample(std::span<const float> in, int in_rate, int out_rate) {
  if (in_rate == out_rate) return std::vector<float>(in.begin(), in.end());
  const int64_t in_len = static_cast<int64_t>(in.size());
  const int64_t out_len = (in_len * out_rate + in_rate / 2) / in_rate;
  std::vector<float> out(static_cast<size_t>(out_len));

  const double cutoff = 0.5 * std::min(1.0, static_cast<double>(out_rate) / in_rate) * kRolloff;
  const double i0_beta = bessel_i0(kKaiserBeta);

  for (int64_t n = 0; n < out_len; ++n) {
    // Exact rational source position: t = n * in_rate / out_rate.
    const int64_t num = n * in_rate;
    const int64_t m0 = num / out_rate;
    const double frac = static_cast<double>(num % out_rate) / out_rate;
    double acc = 0.0, wsum = 0.0;
    for (int k = -kHalfTaps + 1; k <= kHalfTaps; ++k) {
      const double x = static_cast<double>(k) - frac;
      const double r = x / kHalfTaps;
      if (r <= -1.0 || r >= 1.0) continue;
      const double w = bessel_i0(kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
      const double h = 2.0 * cutoff * sinc(2.0 * cutoff * x) * w;
      wsum += h;
      const int64_t idx = m0 + k;
      if (idx >= 0 && idx < in_len) acc += static_cast<double>(in[static_cast<size_t>(idx)]) * h;
    }
    out[static_cast<size_t>(n)] = static_cast<float>(acc / wsum);
  }
  return out;
}

AudioClip load_wav_bytes(std::span<const uint8_t> bytes, const std::string& source_id) {
  const uint8_t* p = bytes.data();
  const size_t n = bytes.size();
  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    fail(Err::CorruptHeader, source_id + ": not a RIFF/WAVE file");

  WavFormat fmt;
  bool have_fmt = false;
  const uint8_t* data_ptr = nullptr;
  size_t data_len = 0;

  size_t off = 12;
  while (off + 8 <= n) {
    const char* id = reinterpret_cast<const char*>(p + off);
    const uint32_t chunk_len = read_u32(p + off + 4);
    off += 8;
    if (off + chunk_len > n) fail(Err::CorruptHeader, source_id + ": truncated chunk");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16) fail(Err::CorruptHeader, source_id + ": fmt chunk too short");
      fmt.code = read_u16(p + off);
      fmt.channels = read_u16(p + off + 2);
      fmt.rate = read_u32(p + off + 4);
      fmt.block_align = read_u16(p + off + 12);
      fmt.bits = read_u16(p + off + 14);
      if (fmt.code == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE: subformat GUID leads with the code
        if (chunk_len < 26) fail(Err::CorruptHeader, source_id + ": extensible fmt too short");
        fmt.code = read_u16(p + off + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_ptr = p + off;
      data_len = chunk_len;
    }
    off += chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_ptr == nullptr)
    fail(Err::CorruptHeader, source_id + ": missing fmt or data chunk");
  if (fmt.channels < 1 || fmt.channels > 2)
    fail(Err::UnsupportedFormat, source_id + ": unsupported channel count " + std::to_string(fmt.channels));
  const bool pcm16 = fmt.code == 1 && fmt.bits == 16;
  const bool float32 = fmt.code == 3 && fmt.bits == 32;
  if (!pcm16 && !float32)
    fail(Err::UnsupportedFormat, source_id + ": unsupported codec (format " + std::to_string(fmt.code) +
                                     ", " + std::to_string(fmt.bits) + " bits)");
  const uint32_t rate = fmt.rate;
  if (rate != 8000 && rate != 16000 && rate != 44100 && rate != 48000)
    fail(Err::UnsupportedRate, source_id + ": unsupported sample rate " + std::to_string(rate));

  const size_t bytes_per_sample = fmt.bits / 8;
  const size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (fmt.block_align != 0 && fmt.block_align != frame_bytes)
    fail(Err::CorruptHeader, source_id + ": inconsistent block alignment");
  const size_t frames = data_len / frame_bytes;

  std::vector<float> mono(frames);
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (unsigned c = 0; c < fmt.channels; ++c) {
      const uint8_t* s = data_ptr + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        int16_t v;
        std::memcpy(&v, s, 2);
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, s, 4);
        acc += static_cast<double>(v);
      }
    }
    mono[i] = static_cast<float>(acc / fmt.channels);
  }

  AudioClip clip;
  clip.source_id = source_id;
  if (rate != kCanonicalRateHz) {
    clip.samples = resample(mono, static_cast<int>(rate), kCanonicalRateHz);
    clip.resample_method = "sinc64-kaiser8";
  } else {
    clip.samples = std::move(mono);
  }
  clip.sample_rate_hz = kCanonicalRateHz;
  for (float& v : clip.samples) v = std::clamp(v, -1.0f, 1.0f);
  return clip;
}

AudioClip load_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Err::Io, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_wav_bytes(bytes, path);
}

void write_wav_float32(const std::string& path, std::span<const float> samples, int rate_hz) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Err::Io, "cannot open " + path + " for writing");
  const uint32_t data_len = static_cast<uint32_t>(samples.size() * 4);
  const uint32_t riff_len = 4 + (8 + 16) + (8 + 4) + (8 + data_len);
  auto put_u32 = [&](uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_u16 = [&](uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
  f.write("RIFF", 4);
  put_u32(riff_len);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put_u32(16);
  put_u16(3);  // IEEE float
  put_u16(1);
  put_u32(static_cast<uint32_t>(rate_hz));
  put_u32(static_cast<uint32_t>(rate_hz) * 4);
  put_u16(4);
  put_u16(32);
  f.write("fact", 4);
  put_u32(4);
  put_u32(static_cast<uint32_t>(samples.size()));
  f.write("data", 4);
  put_u32(data_len);
  f.write(reinterpret_cast<const char*>(samples.data()), data_len);
  if (!f) fail(Err::Io, "short write to " + path);
}

AudioClip prepare_pad_or_trim(const AudioClip& clip) {
  if (clip.samples.empty()) fail(Err::EmptyClip, clip.source_id + ": empty clip");
  AudioClip out = clip;
  out.samples.resize(kCanonicalSamples, 0.0f);
  return out;
}

std::vector<AudioClip> prepare_segments(const AudioClip& clip) {
  if (clip.samples.empty()) fail(Err::EmptyClip, clip.source_id + ": empty clip");
  const size_t n = clip.samples.size();
  const size_t windows = (n + kCanonicalSamples - 1) / kCanonicalSamples;
  std::vector<AudioClip> out;
  out.reserve(windows);
  for (size_t w = 0; w < windows; ++w) {
    AudioClip seg;
    seg.sample_rate_hz = clip.sample_rate_hz;
    seg.resample_method = clip.resample_method;
    seg.source_id = clip.source_id + "#" + std::to_string(w);
    seg.samples.assign(kCanonicalSamples, 0.0f);
    const size_t start = w * kCanonicalSamples;
    const size_t len = std::min<size_t>(kCanonicalSamples, n - start);
    std::copy(clip.samples.begin() + start, clip.samples.begin() + start + len, seg.samples.begin());
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace dnsmos::audio
