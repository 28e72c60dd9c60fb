#pragma once

#include <string>
#include <vector>

#include "dnsmos/audio.hpp"
#include "dnsmos/tensor.hpp"

namespace dnsmos::features {

// 20 ms frames, 10 ms hop at 16 kHz; FFT zero-padded to 512.
constexpr int kFrameSamples = 320;
constexpr int kHopSamples = 160;
constexpr int kFftSize = 512;
constexpr int kNumBins = kFftSize / 2 + 1;  // 257
constexpr int kNumFrames = 900;
constexpr int kNumMelBands = 120;
constexpr double kFMinHz = 0.0;
constexpr double kFMaxHz = 8000.0;
constexpr double kPowerFloor = 1e-12;
constexpr double kFloorDb = -120.0;  // 10*log10(kPowerFloor)

struct MelFilterbank {
  // [kNumMelBands x kNumBins], row-major, non-negative triangular weights.
  std::vector<double> weights;
  std::vector<double> center_hz;  // strictly increasing band centers
  double f_min_hz = kFMinHz;
  double f_max_hz = kFMaxHz;
  std::string scale = "htk";

  double weight(int band, int bin) const { return weights[static_cast<size_t>(band) * kNumBins + bin]; }
};

struct FeatureMatrix {
  // [kNumFrames x kNumMelBands] row-major, units dB.
  std::vector<float> values;
  std::string clip_id;

  float at(int frame, int band) const {
    return values[static_cast<size_t>(frame) * kNumMelBands + band];
  }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// 120 triangular filters with centers equally spaced on the HTK mel scale
// between 0 and 8000 Hz, no area normalization. Bands too narrow to cover an
// FFT bin get unit weight on the bin nearest their center so no row is empty.
const MelFilterbank& mel_filterbank_matrix();

// Hann-windowed |FFT|^2. Frame t starts at sample 160*t; the final frames are
// zero-padded past the end of the clip. Requires a canonical 144000-sample clip.
// Output: [kNumFrames x kNumBins] row-major.
std::vector<double> power_spectrogram(const audio::AudioClip& clip);

// 10*log10(max(P * W^T, power_floor)); no normalization of any kind.
FeatureMatrix extract_features(const audio::AudioClip& clip);

// Binary dump used by test fixtures and the `features` CLI subcommand:
// 16-byte header (magic 'DNSF', version, rows, cols as little-endian u32),
// then row-major float32 values.
void write_feature_dump(const std::string& path, const FeatureMatrix& features);
FeatureMatrix read_feature_dump(const std::string& path);

}  // namespace dnsmos::features
