// include/ftm/error.h

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

#ifndef FTM_ERROR_H_
#define FTM_ERROR_H_

#include <stdexcept>
#include <string>

namespace ftm {

enum class ErrorKind {
  kInsufficientAudio,
  kInvalidAudio,
  kFormat,
  kShape,
  kIsolatedNode,
  kNumeric,
  kVocab,
  kInvalidLattice,
  kDegenerateCorpus,
  kMissingLattice,
  kInvalidFrame,
  kEmptyInput,
  kUtteranceTooShort,
  kInvalidTarget,
  kMissingTarget,
  kNoCandidates,
  kNoMonitoredFrames,
  kDegenerateEvaluation,
  kConfig,
  kMissingFile,
  kCorruptRecord,
  kIo,
};

// Short fixed diagnostic for each kind, e.g. "insufficient audio".
const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &detail);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ftm

#endif  // FTM_ERROR_H_
