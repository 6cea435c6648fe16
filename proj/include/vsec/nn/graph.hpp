// Copyright 2026 The VSE-C Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef VSEC_NN_GRAPH_HPP_
#define VSEC_NN_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vsec/nn/tensor.hpp"

namespace vsec::nn {

// Handle to a node of a Graph. Only meaningful for the graph that made it.
struct Var {
  std::size_t id = 0;
};

// Tape for reverse-mode differentiation. Nodes are appended in creation
// order, which is a topological order, and backward() walks it in reverse.
// Shape mismatches throw ShapeError naming the op and both shapes.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Leaf owning a copy of `value`.
  Var input(Tensor value);
  // Leaf referencing `value`, which must outlive the graph.
  Var view(const Tensor& value);
  // Leaf referencing p.value; backward() adds into p.grad.
  Var param(Parameter& p);

  const Tensor& value(Var v) const;
  // Gradient of the last backward() loss w.r.t. `v`.
  const Tensor& grad(Var v) const;
  std::size_t size() const { return nodes_.size(); }

  // Throws ShapeError unless `loss` is 1 x 1. Leaves bound with param()
  // accumulate; everything else is overwritten on each call.
  void backward(Var loss);

  Var matmul(Var a, Var b);
  Var transpose(Var a);
  // Same shapes, or `b` a 1 x n row broadcast over the rows of `a`.
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var scale(Var a, double factor);
  Var add_scalar(Var a, double offset);
  Var tanh(Var a);
  Var sigmoid(Var a);
  Var relu(Var a);
  // max(0, x); the subgradient at exactly 0 is 0.
  Var hinge(Var a);
  // Column-wise concatenation of equal-height inputs.
  Var concat(std::span<const Var> parts);
  Var mean_rows(Var a);
  Var sum(Var a);
  // Each row scaled to unit Euclidean norm. A zero row throws NumericError.
  Var l2_normalize(Var a);
  // Row-wise inner product: m x n, m x n -> m x 1.
  Var dot(Var a, Var b);
  // Maximum over every element -> 1 x 1. Gradient flows to the first
  // maximal element in row-major order.
  Var max(Var a);
  // Per-row maximum -> m x 1, lowest column index on ties.
  Var max_rows(Var a);
  // Maximum of the m x 1 input within each of `segments` groups; element i
  // belongs to group segment[i]. Empty groups yield `empty_value`.
  Var segment_max(Var a, std::span<const std::size_t> segment,
                  std::size_t segments, double empty_value = 0.0);
  // Diagonal of a square matrix -> m x 1.
  Var diag(Var a);
  Var gather_rows(Var a, std::span<const std::size_t> rows);
  // Row-wise 1 - cos(a_i, b_i) -> m x 1.
  Var cosine_distance(Var a, Var b);
  // Row-wise logistic loss of m x 1 logits against 0/1 labels -> m x 1.
  Var bce_with_logits(Var logits, std::span<const double> labels);

 private:
  enum class Op : std::uint8_t {
    kLeaf, kMatmul, kTranspose, kAdd, kSub, kMul, kScale, kAddScalar,
    kTanh, kSigmoid, kRelu, kHinge, kConcat, kMeanRows, kSum, kL2Normalize,
    kDot, kMax, kMaxRows, kSegmentMax, kDiag, kGatherRows, kCosineDistance,
    kBceWithLogits,
  };

  struct Node {
    Op op = Op::kLeaf;
    std::vector<std::size_t> inputs;
    Tensor owned;
    const Tensor* ref = nullptr;
    Parameter* param = nullptr;
    Tensor grad;
    // Op-specific bookkeeping: argmax positions, gather rows, norms, labels.
    std::vector<std::size_t> index;
    std::vector<double> aux;
    double scalar = 0.0;
    bool broadcast = false;
  };

  Var push(Node node);
  const Tensor& val(std::size_t id) const;
  void propagate(const Node& node);

  std::vector<Node> nodes_;
};

}  // namespace vsec::nn

#endif  // VSEC_NN_GRAPH_HPP_
