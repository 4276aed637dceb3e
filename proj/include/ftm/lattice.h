// include/ftm/lattice.h

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

#ifndef FTM_LATTICE_H_
#define FTM_LATTICE_H_

#include <filesystem>
#include <utility>
#include <vector>

#include "ftm/nnet-attention.h"

namespace ftm {

struct LatticeNode {
  int word_id = 0;
  double posterior = 0.0;  // in [0, 1]
  double am_score = 0.0;
  double lm_score = 0.0;
  double duration_s = 0.0;  // >= 0
};

// Word-hypothesis DAG. Nodes carry one hypothesis each; edges are arcs
// between consecutive hypotheses.
struct Lattice {
  std::vector<LatticeNode> nodes;
  std::vector<std::pair<int, int>> edges;
  int start = 0;
  int end = 0;

  int NumNodes() const { return static_cast<int>(nodes.size()); }
};

/// Throws kInvalidLattice unless the graph is a DAG whose start has no
/// incoming arcs, whose end has no outgoing arcs, and in which every node
/// lies on some start -> end path; node fields are range-checked too.
void ValidateLattice(const Lattice &lattice);

/// mask(i, j) is true iff i == j or an edge joins i and j in either
/// direction.
AttentionMask BuildMask(const Lattice &lattice);

// Plain-text lattice file: one line per node "word_id posterior am lm
// duration", then one line per edge "from to". Lines starting with '#' are
// ignored. The start node is node 0 and the end node is the last node.
void WriteLattice(const std::filesystem::path &path, const Lattice &lattice);
Lattice ReadLattice(const std::filesystem::path &path);

}  // namespace ftm

#endif  // FTM_LATTICE_H_
