#include "dnsmos/features.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>

#include "dnsmos/error.hpp"

namespace dnsmos::features {

namespace {

// Iterative radix-2 complex FFT, 512 points.
struct FftPlan {
  std::vector<int> bitrev;
  std::vector<double> cos_tab, sin_tab;

  FftPlan() {
    bitrev.resize(kFftSize);
    int log2n = 9;
    for (int i = 0; i < kFftSize; ++i) {
      int r = 0;
      for (int b = 0; b < log2n; ++b) r |= ((i >> b) & 1) << (log2n - 1 - b);
      bitrev[i] = r;
    }
    cos_tab.resize(kFftSize / 2);
    sin_tab.resize(kFftSize / 2);
    for (int i = 0; i < kFftSize / 2; ++i) {
      cos_tab[i] = std::cos(2.0 * M_PI * i / kFftSize);
      sin_tab[i] = std::sin(2.0 * M_PI * i / kFftSize);
    }
  }

  void run(double* re, double* im) const {
    for (int i = 0; i < kFftSize; ++i) {
      int j = bitrev[i];
      if (j > i) {
        std::swap(re[i], re[j]);
        std::swap(im[i], im[j]);
      }
    }
    for (int len = 2; len <= kFftSize; len <<= 1) {
      const int stride = kFftSize / len;
      for (int start = 0; start < kFftSize; start += len) {
        for (int k = 0; k < len / 2; ++k) {
          const double c = cos_tab[k * stride];
          const double s = -sin_tab[k * stride];
          const int a = start + k, b = start + k + len / 2;
          const double tre = re[b] * c - im[b] * s;
          const double tim = re[b] * s + im[b] * c;
          re[b] = re[a] - tre;
          im[b] = im[a] - tim;
          re[a] += tre;
          im[a] += tim;
        }
      }
    }
  }
};

const FftPlan& fft_plan() {
  static FftPlan plan;
  return plan;
}

std::vector<double> hann_window_periodic(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
  return w;
}

MelFilterbank build_filterbank() {
  MelFilterbank fb;
  fb.weights.assign(static_cast<size_t>(kNumMelBands) * kNumBins, 0.0);
  fb.center_hz.resize(kNumMelBands);

  const double mel_min = hz_to_mel(kFMinHz);
  const double mel_max = hz_to_mel(kFMaxHz);
  std::vector<double> edges_hz(kNumMelBands + 2);
  for (int i = 0; i < kNumMelBands + 2; ++i)
    edges_hz[i] = mel_to_hz(mel_min + (mel_max - mel_min) * i / (kNumMelBands + 1));

  const double bin_hz = static_cast<double>(audio::kCanonicalRateHz) / kFftSize;
  for (int band = 0; band < kNumMelBands; ++band) {
    const double lo = edges_hz[band], c = edges_hz[band + 1], hi = edges_hz[band + 2];
    fb.center_hz[band] = c;
    bool any = false;
    for (int bin = 0; bin < kNumBins; ++bin) {
      const double f = bin * bin_hz;
      double w = 0.0;
      if (f > lo && f < c)
        w = (f - lo) / (c - lo);
      else if (f >= c && f < hi)
        w = (hi - f) / (hi - c);
      if (w > 0.0) {
        fb.weights[static_cast<size_t>(band) * kNumBins + bin] = w;
        any = true;
      }
    }
    if (!any) {
      // Band narrower than one FFT bin: pin it to the nearest bin.
      int bin = static_cast<int>(std::lround(c / bin_hz));
      bin = std::clamp(bin, 0, kNumBins - 1);
      fb.weights[static_cast<size_t>(band) * kNumBins + bin] = 1.0;
    }
  }
  return fb;
}

}  // namespace

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

const MelFilterbank& mel_filterbank_matrix() {
  static MelFilterbank fb = build_filterbank();
  return fb;
}

std::vector<double> power_spectrogram(const audio::AudioClip& clip) {
  if (clip.sample_rate_hz != audio::kCanonicalRateHz ||
      static_cast<int>(clip.samples.size()) != audio::kCanonicalSamples)
    fail(Err::WrongLength, clip.source_id + ": expected canonical 144000-sample clip, got " +
                               std::to_string(clip.samples.size()));

  static const std::vector<double> window = hann_window_periodic(kFrameSamples);
  const FftPlan& plan = fft_plan();

  std::vector<double> out(static_cast<size_t>(kNumFrames) * kNumBins);
  std::vector<double> re(kFftSize), im(kFftSize);
  for (int t = 0; t < kNumFrames; ++t) {
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    const int start = t * kHopSamples;
    const int avail = std::min(kFrameSamples, audio::kCanonicalSamples - start);
    for (int i = 0; i < avail; ++i)
      re[i] = static_cast<double>(clip.samples[start + i]) * window[i];
    plan.run(re.data(), im.data());
    double* row = out.data() + static_cast<size_t>(t) * kNumBins;
    for (int k = 0; k < kNumBins; ++k) row[k] = re[k] * re[k] + im[k] * im[k];
  }
  return out;
}

FeatureMatrix extract_features(const audio::AudioClip& clip) {
  const std::vector<double> power = power_spectrogram(clip);
  const MelFilterbank& fb = mel_filterbank_matrix();

  // [900 x 257] * [257 x 120] -> [900 x 120]
  std::vector<double> mel(static_cast<size_t>(kNumFrames) * kNumMelBands);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, kNumFrames, kNumMelBands, kNumBins, 1.0,
              power.data(), kNumBins, fb.weights.data(), kNumBins, 0.0, mel.data(), kNumMelBands);

  FeatureMatrix features;
  features.clip_id = clip.source_id;
  features.values.resize(mel.size());
  for (size_t i = 0; i < mel.size(); ++i)
    features.values[i] = static_cast<float>(10.0 * std::log10(std::max(mel[i], kPowerFloor)));
  return features;
}

void write_feature_dump(const std::string& path, const FeatureMatrix& features) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Err::Io, "cannot open " + path + " for writing");
  const uint32_t header[4] = {0x46534e44u /* 'DNSF' */, 1u, static_cast<uint32_t>(kNumFrames),
                              static_cast<uint32_t>(kNumMelBands)};
  f.write(reinterpret_cast<const char*>(header), sizeof(header));
  f.write(reinterpret_cast<const char*>(features.values.data()),
          static_cast<std::streamsize>(features.values.size() * sizeof(float)));
  if (!f) fail(Err::Io, "short write to " + path);
}

FeatureMatrix read_feature_dump(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Err::Io, "cannot open " + path);
  uint32_t header[4];
  f.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!f || header[0] != 0x46534e44u) fail(Err::CorruptHeader, path + ": bad feature dump magic");
  if (header[1] != 1u) fail(Err::VersionMismatch, path + ": unsupported feature dump version");
  if (header[2] != kNumFrames || header[3] != kNumMelBands)
    fail(Err::ShapeMismatch, path + ": unexpected feature dump shape");
  FeatureMatrix features;
  features.clip_id = path;
  features.values.resize(static_cast<size_t>(kNumFrames) * kNumMelBands);
  f.read(reinterpret_cast<char*>(features.values.data()),
         static_cast<std::streamsize>(features.values.size() * sizeof(float)));
  if (!f) fail(Err::CorruptHeader, path + ": truncated feature dump");
  return features;
}

}  // namespace dnsmos::features
