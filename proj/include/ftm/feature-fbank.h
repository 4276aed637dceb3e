// include/ftm/feature-fbank.h

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

#ifndef FTM_FEATURE_FBANK_H_
#define FTM_FEATURE_FBANK_H_

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace ftm {

constexpr int kSampleRate = 16000;
constexpr int kNumMelBins = 40;
constexpr double kFrameShiftSeconds = 0.010;
constexpr double kFramesPerSecond = 100.0;

struct AudioBuffer {
  std::vector<float> samples;  // mono, nominally in [-1, 1]
  int sample_rate = kSampleRate;
};

using FeatureMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A T x 40 sequence of log mel filterbank energies at a 10 ms frame shift.
/// onset_frame is the first frame of the padded audio that precedes the
/// trigger-phrase detection event; synthetic data always starts there, so it
/// is 0, and the detection event lies kUnlabeledPrefixFrames later.
struct FeatureSequence {
  FeatureMatrix frames;
  int onset_frame = 0;

  int NumFrames() const { return static_cast<int>(frames.rows()); }
  int Dim() const { return static_cast<int>(frames.cols()); }
  double DurationSeconds() const { return NumFrames() * kFrameShiftSeconds; }
};

struct FbankOptions {
  int window_samples = 400;  // 25 ms
  int hop_samples = 160;     // 10 ms
  int fft_size = 512;
  double low_freq = 0.0;
  double high_freq = 8000.0;
  double log_floor = 1e-10;
};

/// Number of frames produced for n_samples of audio; 0 if shorter than a
/// window.
int NumFbankFrames(int n_samples, const FbankOptions &opts = {});

/// HTK mel scale.
double MelScale(double hz);
double InverseMelScale(double mel);

/// Center frequencies (Hz) of the kNumMelBins triangular filters.
std::vector<double> MelCenterFrequencies(const FbankOptions &opts = {});

/// Hann-windowed 512-point power spectrum -> 40 triangular mel filters ->
/// log(max(floor, energy)). Rejects rates other than 16 kHz, non-finite
/// samples, and audio shorter than one window.
FeatureSequence ComputeFilterbank(const AudioBuffer &audio,
                                  const FbankOptions &opts = {});

// Raw feature file ("FTMF"): 16-byte header then row-major float32 frames.
void SaveFeatures(const std::filesystem::path &path, const FeatureSequence &feats);
FeatureSequence LoadFeatures(const std::filesystem::path &path);

/// Checks every entry is finite and the dimension is kNumMelBins.
void ValidateFeatures(const FeatureSequence &feats);

}  // namespace ftm

#endif  // FTM_FEATURE_FBANK_H_
