#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dnsmos::audio {

constexpr int kCanonicalRateHz = 16000;
constexpr int kCanonicalSamples = 144000;  // 9 s at 16 kHz

struct AudioClip {
  std::vector<float> samples;  // mono, [-1, 1]
  int sample_rate_hz = kCanonicalRateHz;
  std::string source_id;
  std::string resample_method = "none";
};

enum class PreparePolicy { PadOrTrim, SegmentAverage };

// Decodes a RIFF/WAVE file: PCM16 or float32, 1-2 channels, rate in
// {8000, 16000, 44100, 48000}. Channels are averaged, output is 16 kHz.
AudioClip load_wav(const std::string& path);
AudioClip load_wav_bytes(std::span<const uint8_t> bytes, const std::string& source_id);

void write_wav_float32(const std::string& path, std::span<const float> samples, int rate_hz);

// Pads with zeros or truncates to exactly 9 s.
AudioClip prepare_pad_or_trim(const AudioClip& clip);

// Splits into non-overlapping 9 s windows; the last window is zero-padded.
std::vector<AudioClip> prepare_segments(const AudioClip& clip);

// Polyphase windowed-sinc resampler, 64 taps, Kaiser beta=8.
std::vector<float> resample(std::span<const float> in, int in_rate, int out_rate);

}  // namespace dnsmos::audio
