// src/error.cc

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

#include "ftm/error.h"

namespace ftm {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInsufficientAudio: return "insufficient audio";
    case ErrorKind::kInvalidAudio: return "invalid audio";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kIsolatedNode: return "isolated node error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kVocab: return "vocab error";
    case ErrorKind::kInvalidLattice: return "invalid lattice";
    case ErrorKind::kDegenerateCorpus: return "degenerate corpus";
    case ErrorKind::kMissingLattice: return "missing lattice";
    case ErrorKind::kInvalidFrame: return "invalid frame";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kUtteranceTooShort: return "utterance too short";
    case ErrorKind::kInvalidTarget: return "invalid target";
    case ErrorKind::kMissingTarget: return "missing target";
    case ErrorKind::kNoCandidates: return "no candidates";
    case ErrorKind::kNoMonitoredFrames: return "no monitored frames";
    case ErrorKind::kDegenerateEvaluation: return "degenerate evaluation";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kMissingFile: return "missing file";
    case ErrorKind::kCorruptRecord: return "corrupt record";
    case ErrorKind::kIo: return "io error";
  }
  return "error";
}

static std::string FormatMessage(ErrorKind kind, const std::string &detail) {
  std::string msg = ErrorKindName(kind);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(FormatMessage(kind, detail)), kind_(kind) {}

}  // namespace ftm
