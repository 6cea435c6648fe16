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


#include "vsec/nn/graph.hpp"

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "vsec/error.hpp"

namespace vsec::nn {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;
using MutMap = Eigen::Map<RowMatrix>;

ConstMap as_matrix(const Tensor& t) {
  return ConstMap(t.values().data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
}

MutMap as_matrix(Tensor& t) {
  return MutMap(t.values().data(), static_cast<Eigen::Index>(t.rows()),
                static_cast<Eigen::Index>(t.cols()));
}

[[noreturn]] void shape_error(const char* op, const Tensor& a,
                              const Tensor& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " +
                   a.shape_string() + " and " + b.shape_string());
}

bool row_broadcast(const Tensor& a, const Tensor& b) {
  return !a.same_shape(b) && b.rows() == 1 && b.cols() == a.cols();
}

double sigmoid_of(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Var Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

const Tensor& Graph::val(std::size_t id) const {
  const Node& n = nodes_[id];
  return n.ref ? *n.ref : n.owned;
}

const Tensor& Graph::value(Var v) const { return val(v.id); }

const Tensor& Graph::grad(Var v) const { return nodes_.at(v.id).grad; }

Var Graph::input(Tensor value) {
  Node n;
  n.owned = std::move(value);
  return push(std::move(n));
}

Var Graph::view(const Tensor& value) {
  Node n;
  n.ref = &value;
  return push(std::move(n));
}

Var Graph::param(Parameter& p) {
  Node n;
  n.ref = &p.value;
  n.param = &p;
  if (!p.grad.same_shape(p.value)) {
    p.grad = Tensor(p.value.rows(), p.value.cols(), 0.0);
  }
  return push(std::move(n));
}

Var Graph::matmul(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  if (x.cols() != y.rows()) shape_error("matmul", x, y);
  Node n;
  n.op = Op::kMatmul;
  n.inputs = {a.id, b.id};
  n.owned = Tensor(x.rows(), y.cols());
  if (x.cols() > 0) as_matrix(n.owned).noalias() = as_matrix(x) * as_matrix(y);
  return push(std::move(n));
}

Var Graph::transpose(Var a) {
  const Tensor& x = val(a.id);
  Node n;
  n.op = Op::kTranspose;
  n.inputs = {a.id};
  n.owned = Tensor(x.cols(), x.rows());
  as_matrix(n.owned) = as_matrix(x).transpose();
  return push(std::move(n));
}

Var Graph::add(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  Node n;
  n.op = Op::kAdd;
  n.inputs = {a.id, b.id};
  n.owned = x;
  if (x.same_shape(y)) {
    n.owned += y;
  } else if (row_broadcast(x, y)) {
    n.broadcast = true;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto row = n.owned.row_values(r);
      for (std::size_t c = 0; c < x.cols(); ++c) row[c] += y[c];
    }
  } else {
    shape_error("add", x, y);
  }
  return push(std::move(n));
}

Var Graph::sub(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  Node n;
  n.op = Op::kSub;
  n.inputs = {a.id, b.id};
  n.owned = x;
  if (x.same_shape(y)) {
    for (std::size_t i = 0; i < x.size(); ++i) n.owned[i] -= y[i];
  } else if (row_broadcast(x, y)) {
    n.broadcast = true;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto row = n.owned.row_values(r);
      for (std::size_t c = 0; c < x.cols(); ++c) row[c] -= y[c];
    }
  } else {
    shape_error("sub", x, y);
  }
  return push(std::move(n));
}

Var Graph::mul(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  if (!x.same_shape(y)) shape_error("mul", x, y);
  Node n;
  n.op = Op::kMul;
  n.inputs = {a.id, b.id};
  n.owned = x;
  for (std::size_t i = 0; i < x.size(); ++i) n.owned[i] *= y[i];
  return push(std::move(n));
}

Var Graph::scale(Var a, double factor) {
  Node n;
  n.op = Op::kScale;
  n.inputs = {a.id};
  n.scalar = factor;
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v *= factor;
  return push(std::move(n));
}

Var Graph::add_scalar(Var a, double offset) {
  Node n;
  n.op = Op::kAddScalar;
  n.inputs = {a.id};
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v += offset;
  return push(std::move(n));
}

Var Graph::tanh(Var a) {
  Node n;
  n.op = Op::kTanh;
  n.inputs = {a.id};
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v = std::tanh(v);
  return push(std::move(n));
}

Var Graph::sigmoid(Var a) {
  Node n;
  n.op = Op::kSigmoid;
  n.inputs = {a.id};
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v = sigmoid_of(v);
  return push(std::move(n));
}

Var Graph::relu(Var a) {
  Node n;
  n.op = Op::kRelu;
  n.inputs = {a.id};
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v = v > 0.0 ? v : 0.0;
  return push(std::move(n));
}

Var Graph::hinge(Var a) {
  Node n;
  n.op = Op::kHinge;
  n.inputs = {a.id};
  n.owned = val(a.id);
  for (double& v : n.owned.values()) v = v > 0.0 ? v : 0.0;
  return push(std::move(n));
}

Var Graph::concat(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  const std::size_t rows = val(parts[0].id).rows();
  std::size_t cols = 0;
  for (Var p : parts) {
    const Tensor& t = val(p.id);
    if (t.rows() != rows) shape_error("concat", val(parts[0].id), t);
    cols += t.cols();
  }
  Node n;
  n.op = Op::kConcat;
  n.owned = Tensor(rows, cols);
  std::size_t offset = 0;
  for (Var p : parts) {
    const Tensor& t = val(p.id);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < t.cols(); ++c) {
        n.owned(r, offset + c) = t(r, c);
      }
    }
    offset += t.cols();
    n.inputs.push_back(p.id);
  }
  return push(std::move(n));
}

Var Graph::mean_rows(Var a) {
  const Tensor& x = val(a.id);
  if (x.rows() == 0) throw ShapeError("mean_rows: no rows in " + x.shape_string());
  Node n;
  n.op = Op::kMeanRows;
  n.inputs = {a.id};
  n.owned = Tensor(1, x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) n.owned[c] += x(r, c);
  }
  for (double& v : n.owned.values()) v /= static_cast<double>(x.rows());
  return push(std::move(n));
}

Var Graph::sum(Var a) {
  const Tensor& x = val(a.id);
  Node n;
  n.op = Op::kSum;
  n.inputs = {a.id};
  double total = 0.0;
  for (double v : x.values()) total += v;
  n.owned = Tensor::scalar(total);
  return push(std::move(n));
}

Var Graph::l2_normalize(Var a) {
  const Tensor& x = val(a.id);
  Node n;
  n.op = Op::kL2Normalize;
  n.inputs = {a.id};
  n.owned = x;
  n.aux.resize(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = n.owned.row_values(r);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    const double norm = std::sqrt(sq);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericError("l2_normalize: row " + std::to_string(r) +
                         " has zero or non-finite norm");
    }
    for (double& v : row) v /= norm;
    n.aux[r] = norm;
  }
  return push(std::move(n));
}

Var Graph::dot(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  if (!x.same_shape(y)) shape_error("dot", x, y);
  Node n;
  n.op = Op::kDot;
  n.inputs = {a.id, b.id};
  n.owned = Tensor(x.rows(), 1);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) s += x(r, c) * y(r, c);
    n.owned[r] = s;
  }
  return push(std::move(n));
}

Var Graph::max(Var a) {
  const Tensor& x = val(a.id);
  if (x.empty()) throw ShapeError("max: empty input " + x.shape_string());
  Node n;
  n.op = Op::kMax;
  n.inputs = {a.id};
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[best]) best = i;
  }
  n.index = {best};
  n.owned = Tensor::scalar(x[best]);
  return push(std::move(n));
}

Var Graph::max_rows(Var a) {
  const Tensor& x = val(a.id);
  if (x.cols() == 0) throw ShapeError("max_rows: no columns in " + x.shape_string());
  Node n;
  n.op = Op::kMaxRows;
  n.inputs = {a.id};
  n.owned = Tensor(x.rows(), 1);
  n.index.resize(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < x.cols(); ++c) {
      if (x(r, c) > x(r, best)) best = c;
    }
    n.index[r] = best;
    n.owned[r] = x(r, best);
  }
  return push(std::move(n));
}

Var Graph::segment_max(Var a, std::span<const std::size_t> segment,
                       std::size_t segments, double empty_value) {
  const Tensor& x = val(a.id);
  if (x.cols() != 1 || segment.size() != x.rows()) {
    throw ShapeError("segment_max: expected a column of " +
                     std::to_string(segment.size()) + " rows, got " +
                     x.shape_string());
  }
  Node n;
  n.op = Op::kSegmentMax;
  n.inputs = {a.id};
  n.owned = Tensor(segments, 1, empty_value);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  n.index.assign(segments, kNone);
  for (std::size_t i = 0; i < segment.size(); ++i) {
    const std::size_t s = segment[i];
    if (s >= segments) throw ShapeError("segment_max: segment id out of range");
    if (n.index[s] == kNone || x[i] > x[n.index[s]]) {
      n.index[s] = i;
      n.owned[s] = x[i];
    }
  }
  return push(std::move(n));
}

Var Graph::diag(Var a) {
  const Tensor& x = val(a.id);
  if (x.rows() != x.cols()) {
    throw ShapeError("diag: expected a square matrix, got " + x.shape_string());
  }
  Node n;
  n.op = Op::kDiag;
  n.inputs = {a.id};
  n.owned = Tensor(x.rows(), 1);
  for (std::size_t i = 0; i < x.rows(); ++i) n.owned[i] = x(i, i);
  return push(std::move(n));
}

Var Graph::gather_rows(Var a, std::span<const std::size_t> rows) {
  const Tensor& x = val(a.id);
  Node n;
  n.op = Op::kGatherRows;
  n.inputs = {a.id};
  n.index.assign(rows.begin(), rows.end());
  n.owned = Tensor(rows.size(), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= x.rows()) {
      throw ShapeError("gather_rows: row " + std::to_string(rows[i]) +
                       " out of range for " + x.shape_string());
    }
    const auto src = x.row_values(rows[i]);
    std::copy(src.begin(), src.end(), n.owned.row_values(i).begin());
  }
  return push(std::move(n));
}

Var Graph::cosine_distance(Var a, Var b) {
  const Tensor& x = val(a.id);
  const Tensor& y = val(b.id);
  if (!x.same_shape(y)) shape_error("cosine_distance", x, y);
  Node n;
  n.op = Op::kCosineDistance;
  n.inputs = {a.id, b.id};
  n.owned = Tensor(x.rows(), 1);
  // aux holds (|a|, |b|, cos) per row.
  n.aux.resize(3 * x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      ab += x(r, c) * y(r, c);
      aa += x(r, c) * x(r, c);
      bb += y(r, c) * y(r, c);
    }
    const double na = std::sqrt(aa), nb = std::sqrt(bb);
    if (!(na > 0.0) || !(nb > 0.0)) {
      throw NumericError("cosine_distance: zero vector in row " +
                         std::to_string(r));
    }
    const double cosine = ab / (na * nb);
    n.aux[3 * r] = na;
    n.aux[3 * r + 1] = nb;
    n.aux[3 * r + 2] = cosine;
    n.owned[r] = 1.0 - cosine;
  }
  return push(std::move(n));
}

Var Graph::bce_with_logits(Var logits, std::span<const double> labels) {
  const Tensor& x = val(logits.id);
  if (x.cols() != 1 || x.rows() != labels.size()) {
    throw ShapeError("bce_with_logits: " + std::to_string(labels.size()) +
                     " labels for logits " + x.shape_string());
  }
  Node n;
  n.op = Op::kBceWithLogits;
  n.inputs = {logits.id};
  n.aux.assign(labels.begin(), labels.end());
  n.owned = Tensor(x.rows(), 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = x[i];
    n.owned[i] = std::max(z, 0.0) - z * labels[i] +
                 std::log1p(std::exp(-std::abs(z)));
  }
  return push(std::move(n));
}

void Graph::backward(Var loss) {
  const Tensor& out = val(loss.id);
  if (out.rows() != 1 || out.cols() != 1) {
    throw ShapeError("backward: loss must be [1x1], got " + out.shape_string());
  }
  for (std::size_t i = 0; i <= loss.id; ++i) {
    const Tensor& v = val(i);
    nodes_[i].grad = Tensor(v.rows(), v.cols(), 0.0);
  }
  nodes_[loss.id].grad[0] = 1.0;
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (node.op == Op::kLeaf) {
      if (node.param) node.param->grad += node.grad;
      continue;
    }
    propagate(node);
  }
}

void Graph::propagate(const Node& node) {
  const Tensor& g = node.grad;
  const Tensor& y = node.owned;
  auto grad_of = [&](std::size_t k) -> Tensor& {
    return nodes_[node.inputs[k]].grad;
  };
  switch (node.op) {
    case Op::kLeaf:
      break;
    case Op::kMatmul: {
      const Tensor& a = val(node.inputs[0]);
      const Tensor& b = val(node.inputs[1]);
      if (a.cols() == 0) break;
      as_matrix(grad_of(0)).noalias() += as_matrix(g) * as_matrix(b).transpose();
      as_matrix(grad_of(1)).noalias() += as_matrix(a).transpose() * as_matrix(g);
      break;
    }
    case Op::kTranspose:
      as_matrix(grad_of(0)) += as_matrix(g).transpose();
      break;
    case Op::kAdd:
    case Op::kSub: {
      const double sign = node.op == Op::kAdd ? 1.0 : -1.0;
      grad_of(0) += g;
      Tensor& gb = grad_of(1);
      if (node.broadcast) {
        for (std::size_t r = 0; r < g.rows(); ++r) {
          for (std::size_t c = 0; c < g.cols(); ++c) gb[c] += sign * g(r, c);
        }
      } else {
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += sign * g[i];
      }
      break;
    }
    case Op::kMul: {
      const Tensor& a = val(node.inputs[0]);
      const Tensor& b = val(node.inputs[1]);
      Tensor& ga = grad_of(0);
      Tensor& gb = grad_of(1);
      for (std::size_t i = 0; i < g.size(); ++i) {
        ga[i] += g[i] * b[i];
        gb[i] += g[i] * a[i];
      }
      break;
    }
    case Op::kScale: {
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += node.scalar * g[i];
      break;
    }
    case Op::kAddScalar:
      grad_of(0) += g;
      break;
    case Op::kTanh: {
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        ga[i] += g[i] * (1.0 - y[i] * y[i]);
      }
      break;
    }
    case Op::kSigmoid: {
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        ga[i] += g[i] * y[i] * (1.0 - y[i]);
      }
      break;
    }
    case Op::kRelu:
    case Op::kHinge: {
      const Tensor& a = val(node.inputs[0]);
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (a[i] > 0.0) ga[i] += g[i];
      }
      break;
    }
    case Op::kConcat: {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < node.inputs.size(); ++k) {
        Tensor& gk = grad_of(k);
        for (std::size_t r = 0; r < gk.rows(); ++r) {
          for (std::size_t c = 0; c < gk.cols(); ++c) {
            gk(r, c) += g(r, offset + c);
          }
        }
        offset += gk.cols();
      }
      break;
    }
    case Op::kMeanRows: {
      Tensor& ga = grad_of(0);
      const double inv = 1.0 / static_cast<double>(ga.rows());
      for (std::size_t r = 0; r < ga.rows(); ++r) {
        for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g[c] * inv;
      }
      break;
    }
    case Op::kSum: {
      Tensor& ga = grad_of(0);
      for (double& v : ga.values()) v += g[0];
      break;
    }
    case Op::kL2Normalize: {
      Tensor& ga = grad_of(0);
      for (std::size_t r = 0; r < y.rows(); ++r) {
        double proj = 0.0;
        for (std::size_t c = 0; c < y.cols(); ++c) proj += y(r, c) * g(r, c);
        const double inv = 1.0 / node.aux[r];
        for (std::size_t c = 0; c < y.cols(); ++c) {
          ga(r, c) += (g(r, c) - y(r, c) * proj) * inv;
        }
      }
      break;
    }
    case Op::kDot: {
      const Tensor& a = val(node.inputs[0]);
      const Tensor& b = val(node.inputs[1]);
      Tensor& ga = grad_of(0);
      Tensor& gb = grad_of(1);
      for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
          ga(r, c) += g[r] * b(r, c);
          gb(r, c) += g[r] * a(r, c);
        }
      }
      break;
    }
    case Op::kMax:
      grad_of(0)[node.index[0]] += g[0];
      break;
    case Op::kMaxRows: {
      Tensor& ga = grad_of(0);
      for (std::size_t r = 0; r < node.index.size(); ++r) {
        ga(r, node.index[r]) += g[r];
      }
      break;
    }
    case Op::kSegmentMax: {
      Tensor& ga = grad_of(0);
      for (std::size_t s = 0; s < node.index.size(); ++s) {
        if (node.index[s] != static_cast<std::size_t>(-1)) {
          ga[node.index[s]] += g[s];
        }
      }
      break;
    }
    case Op::kDiag: {
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < g.rows(); ++i) ga(i, i) += g[i];
      break;
    }
    case Op::kGatherRows: {
      Tensor& ga = grad_of(0);
      for (std::size_t i = 0; i < node.index.size(); ++i) {
        auto dst = ga.row_values(node.index[i]);
        const auto src = g.row_values(i);
        for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
      }
      break;
    }
    case Op::kCosineDistance: {
      const Tensor& a = val(node.inputs[0]);
      const Tensor& b = val(node.inputs[1]);
      Tensor& ga = grad_of(0);
      Tensor& gb = grad_of(1);
      for (std::size_t r = 0; r < a.rows(); ++r) {
        const double na = node.aux[3 * r];
        const double nb = node.aux[3 * r + 1];
        const double cosine = node.aux[3 * r + 2];
        // d(1 - cos)/da = -(b / (|a||b|) - cos * a / |a|^2)
        for (std::size_t c = 0; c < a.cols(); ++c) {
          ga(r, c) -= g[r] * (b(r, c) / (na * nb) - cosine * a(r, c) / (na * na));
          gb(r, c) -= g[r] * (a(r, c) / (na * nb) - cosine * b(r, c) / (nb * nb));
        }
      }
      break;
    }
    case Op::kBceWithLogits: {
      const Tensor& z = val(node.inputs[0]);
      Tensor& gz = grad_of(0);
      for (std::size_t i = 0; i < z.rows(); ++i) {
        gz[i] += g[i] * (sigmoid_of(z[i]) - node.aux[i]);
      }
      break;
    }
  }
}

}  // namespace vsec::nn
