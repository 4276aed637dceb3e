// src/feature-fbank.cc

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

#include "ftm/feature-fbank.h"

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "ftm/binary-io.h"
#include "ftm/error.h"

namespace ftm {

namespace {

constexpr char kFeatureMagic[] = "FTMF";
constexpr uint32_t kFeatureVersion = 1;

// FFTW's planner is not re-entrant; execution with a shared plan is.
std::mutex g_planner_mutex;

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};

// Row i holds the weights of filter i over FFT bins [0, fft_size/2].
Eigen::MatrixXd MelFilterMatrix(const FbankOptions &opts) {
  const int num_fft_bins = opts.fft_size / 2 + 1;
  const double mel_low = MelScale(opts.low_freq);
  const double mel_high = MelScale(opts.high_freq);
  const double mel_step = (mel_high - mel_low) / (kNumMelBins + 1);
  Eigen::MatrixXd filters = Eigen::MatrixXd::Zero(kNumMelBins, num_fft_bins);
  for (int b = 0; b < kNumMelBins; ++b) {
    const double left = mel_low + b * mel_step;
    const double center = left + mel_step;
    const double right = center + mel_step;
    for (int k = 0; k < num_fft_bins; ++k) {
      const double mel = MelScale(k * static_cast<double>(kSampleRate) / opts.fft_size);
      if (mel > left && mel < right) {
        filters(b, k) = mel <= center ? (mel - left) / (center - left)
                                      : (right - mel) / (right - center);
      }
    }
  }
  return filters;
}

}  // namespace

int NumFbankFrames(int n_samples, const FbankOptions &opts) {
  if (n_samples < opts.window_samples) return 0;
  return 1 + (n_samples - opts.window_samples) / opts.hop_samples;
}

double MelScale(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> MelCenterFrequencies(const FbankOptions &opts) {
  const double mel_low = MelScale(opts.low_freq);
  const double mel_step = (MelScale(opts.high_freq) - mel_low) / (kNumMelBins + 1);
  std::vector<double> centers(kNumMelBins);
  for (int b = 0; b < kNumMelBins; ++b)
    centers[b] = InverseMelScale(mel_low + (b + 1) * mel_step);
  return centers;
}

FeatureSequence ComputeFilterbank(const AudioBuffer &audio, const FbankOptions &opts) {
  if (audio.sample_rate != kSampleRate)
    throw Error(ErrorKind::kInvalidAudio,
                "sample rate " + std::to_string(audio.sample_rate) + " (need 16000)");
  for (float s : audio.samples)
    if (!std::isfinite(s)) throw Error(ErrorKind::kInvalidAudio, "non-finite sample");
  const int n = static_cast<int>(audio.samples.size());
  const int num_frames = NumFbankFrames(n, opts);
  if (num_frames == 0)
    throw Error(ErrorKind::kInsufficientAudio,
                std::to_string(n) + " samples < window " + std::to_string(opts.window_samples));

  const int fft_size = opts.fft_size;
  const int num_fft_bins = fft_size / 2 + 1;
  std::unique_ptr<double, FftwFree> time_buf(
      static_cast<double *>(fftw_malloc(sizeof(double) * fft_size)));
  std::unique_ptr<fftw_complex, FftwFree> freq_buf(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * num_fft_bins)));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    plan = fftw_plan_dft_r2c_1d(fft_size, time_buf.get(), freq_buf.get(), FFTW_ESTIMATE);
  }

  Eigen::VectorXd window(opts.window_samples);
  for (int i = 0; i < opts.window_samples; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (opts.window_samples - 1));
  const Eigen::MatrixXd filters = MelFilterMatrix(opts);

  FeatureSequence feats;
  feats.frames.resize(num_frames, kNumMelBins);
  Eigen::VectorXd power(num_fft_bins);
  for (int t = 0; t < num_frames; ++t) {
    const float *frame = audio.samples.data() + static_cast<size_t>(t) * opts.hop_samples;
    double *buf = time_buf.get();
    for (int i = 0; i < fft_size; ++i)
      buf[i] = i < opts.window_samples ? window[i] * frame[i] : 0.0;
    fftw_execute_dft_r2c(plan, buf, freq_buf.get());
    for (int k = 0; k < num_fft_bins; ++k) {
      const double re = freq_buf.get()[k][0], im = freq_buf.get()[k][1];
      power[k] = re * re + im * im;
    }
    const Eigen::VectorXd energies = filters * power;
    for (int b = 0; b < kNumMelBins; ++b)
      feats.frames(t, b) = static_cast<float>(std::log(std::max(opts.log_floor, energies[b])));
  }
  {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(plan);
  }
  return feats;
}

void ValidateFeatures(const FeatureSequence &feats) {
  if (feats.Dim() != kNumMelBins)
    throw Error(ErrorKind::kFormat, "feature dim " + std::to_string(feats.Dim()));
  if (!feats.frames.allFinite())
    throw Error(ErrorKind::kFormat, "non-finite feature value");
  if (feats.NumFrames() > 0 && (feats.onset_frame < 0 || feats.onset_frame >= feats.NumFrames()))
    throw Error(ErrorKind::kFormat, "onset frame out of range");
}

void SaveFeatures(const std::filesystem::path &path, const FeatureSequence &feats) {
  ValidateFeatures(feats);
  std::ofstream os = OpenForWrite(path);
  WriteMagic(os, kFeatureMagic);
  WriteU32(os, kFeatureVersion);
  WriteU32(os, static_cast<uint32_t>(feats.NumFrames()));
  WriteU32(os, static_cast<uint32_t>(feats.Dim()));
  for (int t = 0; t < feats.NumFrames(); ++t)
    for (int d = 0; d < feats.Dim(); ++d) WriteF32(os, feats.frames(t, d));
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

FeatureSequence LoadFeatures(const std::filesystem::path &path) {
  std::ifstream is = OpenForRead(path);
  ExpectMagic(is, kFeatureMagic);
  const uint32_t version = ReadU32(is);
  if (version != kFeatureVersion)
    throw Error(ErrorKind::kFormat, "unsupported version " + std::to_string(version));
  const uint32_t num_frames = ReadU32(is);
  const uint32_t dim = ReadU32(is);
  if (dim != kNumMelBins) throw Error(ErrorKind::kFormat, "dim " + std::to_string(dim));
  if (num_frames == 0) throw Error(ErrorKind::kFormat, "zero frames");
  FeatureSequence feats;
  feats.frames.resize(num_frames, dim);
  for (uint32_t t = 0; t < num_frames; ++t)
    for (uint32_t d = 0; d < dim; ++d) feats.frames(t, d) = ReadF32(is);
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorKind::kFormat, "trailing bytes in " + path.string());
  ValidateFeatures(feats);
  return feats;
}

}  // namespace ftm
