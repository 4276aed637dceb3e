// src/lattice.cc

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

#include "ftm/lattice.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "ftm/binary-io.h"
#include "ftm/error.h"

namespace ftm {

namespace {

// Marks every node reachable from `from` along adjacency lists.
std::vector<bool> Reachable(int from, const std::vector<std::vector<int>> &adj) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return seen;
}

}  // namespace

void ValidateLattice(const Lattice &lattice) {
  const int n = lattice.NumNodes();
  auto fail = [](const std::string &why) { throw Error(ErrorKind::kInvalidLattice, why); };
  if (n == 0) fail("no nodes");
  if (lattice.start < 0 || lattice.start >= n || lattice.end < 0 || lattice.end >= n)
    fail("start/end out of range");
  for (const auto &node : lattice.nodes) {
    if (!(node.posterior >= 0.0 && node.posterior <= 1.0)) fail("posterior outside [0,1]");
    if (!(node.duration_s >= 0.0)) fail("negative duration");
    if (!std::isfinite(node.am_score) || !std::isfinite(node.lm_score) ||
        !std::isfinite(node.duration_s))
      fail("non-finite score");
    if (node.word_id < 0) fail("negative word id");
  }
  std::vector<std::vector<int>> out(n), in(n);
  std::vector<int> indegree(n, 0);
  for (const auto &[from, to] : lattice.edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) fail("edge endpoint out of range");
    if (from == to) fail("self loop");
    out[from].push_back(to);
    in[to].push_back(from);
    ++indegree[to];
  }
  if (!in[lattice.start].empty()) fail("start node has incoming arcs");
  if (!out[lattice.end].empty()) fail("end node has outgoing arcs");

  // Kahn's algorithm: every node is emitted iff the graph is acyclic.
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) queue.push_back(i);
  int emitted = 0;
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    ++emitted;
    for (int v : out[u])
      if (--indegree[v] == 0) queue.push_back(v);
  }
  if (emitted != n) fail("directed cycle");

  const auto from_start = Reachable(lattice.start, out);
  const auto to_end = Reachable(lattice.end, in);
  for (int i = 0; i < n; ++i)
    if (!from_start[i] || !to_end[i]) fail("node " + std::to_string(i) + " not on a start-end path");
}

AttentionMask BuildMask(const Lattice &lattice) {
  const int n = lattice.NumNodes();
  AttentionMask mask = AttentionMask::Identity(n, n);
  for (const auto &[from, to] : lattice.edges) {
    mask(from, to) = true;
    mask(to, from) = true;
  }
  return mask;
}

void WriteLattice(const std::filesystem::path &path, const Lattice &lattice) {
  if (lattice.start != 0 || lattice.end != lattice.NumNodes() - 1)
    throw Error(ErrorKind::kInvalidLattice, "text format requires start = 0 and end = last node");
  std::ofstream os = OpenForWrite(path);
  os << std::setprecision(17);
  for (const auto &node : lattice.nodes)
    os << node.word_id << ' ' << node.posterior << ' ' << node.am_score << ' ' << node.lm_score
       << ' ' << node.duration_s << '\n';
  for (const auto &[from, to] : lattice.edges) os << from << ' ' << to << '\n';
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

Lattice ReadLattice(const std::filesystem::path &path) {
  std::ifstream is = OpenForRead(path);
  Lattice lattice;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    try {
      if (tokens.size() == 5) {
        if (!lattice.edges.empty()) throw Error(ErrorKind::kFormat, "node line after edge lines");
        lattice.nodes.push_back({std::stoi(tokens[0]), std::stod(tokens[1]), std::stod(tokens[2]),
                                 std::stod(tokens[3]), std::stod(tokens[4])});
      } else if (tokens.size() == 2) {
        lattice.edges.emplace_back(std::stoi(tokens[0]), std::stoi(tokens[1]));
      } else if (!tokens.empty()) {
        throw Error(ErrorKind::kFormat, "expected 5 or 2 fields");
      }
    } catch (const std::logic_error &e) {
      throw Error(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  lattice.start = 0;
  lattice.end = lattice.NumNodes() - 1;
  ValidateLattice(lattice);
  return lattice;
}

}  // namespace ftm
