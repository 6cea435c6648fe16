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


#include "vsec/vse/loss.hpp"

#include <stdexcept>
#include <string>

#include "vsec/error.hpp"

namespace vsec::vse {

using nn::Graph;
using nn::Tensor;
using nn::Var;

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kVse: return "vse";
    case LossKind::kVsePlusPlus: return "vsepp";
    case LossKind::kVseC: return "vsec";
  }
  return "?";
}

LossKind parse_loss(std::string_view name) {
  if (name == "vse") return LossKind::kVse;
  if (name == "vsepp") return LossKind::kVsePlusPlus;
  if (name == "vsec") return LossKind::kVseC;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

namespace {

struct Violations {
  Var caption;  // (i, j): margin + s(i, c_j) - s(i, c_i), hinged, diag zeroed
  Var image;    // (j, i): margin + s(i_i, c_j) - s(i_j, c_j), hinged, diag zeroed
};

Violations violations(Graph& g, Var scores, double margin) {
  const Tensor& s = g.value(scores);
  if (s.rows() != s.cols()) {
    throw ShapeError("contrastive loss: score matrix " + s.shape_string() +
                     " is not square");
  }
  if (!(margin > 0)) throw std::invalid_argument("margin must be positive");
  const std::size_t b = s.rows();
  Tensor off(b, b, 1.0);
  for (std::size_t i = 0; i < b; ++i) off(i, i) = 0.0;
  const Var mask = g.input(std::move(off));
  const Var d = g.transpose(g.diag(scores));  // 1 x B
  const Var st = g.transpose(scores);
  // Row broadcast subtracts d_j from column j, so the caption side is
  // formed on the transpose and flipped back.
  const Var cap = g.transpose(g.hinge(g.add_scalar(g.sub(st, d), margin)));
  const Var img = g.transpose(g.hinge(g.add_scalar(g.sub(scores, d), margin)));
  return {g.mul(cap, mask), g.mul(img, mask)};
}

Var zero(Graph& g) { return g.input(Tensor::scalar(0.0)); }

}  // namespace

Var loss_vse(Graph& g, Var scores, const LossOptions& opt) {
  const Violations v = violations(g, scores, opt.margin);
  Var total = zero(g);
  if (opt.caption_side) total = g.add(total, g.sum(v.caption));
  if (opt.image_side) total = g.add(total, g.sum(v.image));
  return total;
}

Var loss_vsepp(Graph& g, Var scores, const LossOptions& opt) {
  const Violations v = violations(g, scores, opt.margin);
  // Rows hold one pair each; the zeroed diagonal never exceeds a hinge.
  Var total = zero(g);
  if (opt.caption_side) total = g.add(total, g.sum(g.max_rows(v.caption)));
  if (opt.image_side) total = g.add(total, g.sum(g.max_rows(v.image)));
  return total;
}

Var intra_term(Graph& g, Var positive, Var negative,
               std::span<const std::size_t> owners, double margin) {
  const std::size_t pairs = g.value(positive).rows();
  if (g.value(negative).rows() != owners.size()) {
    throw ShapeError("intra_term: " + std::to_string(owners.size()) +
                     " owners for negatives " + g.value(negative).shape_string());
  }
  if (owners.empty()) return zero(g);
  const Var pos = g.gather_rows(positive, owners);
  const Var viol = g.hinge(g.add_scalar(g.sub(negative, pos), margin));
  return g.sum(g.segment_max(viol, owners, pairs, 0.0));
}

Var similarity_matrix(Graph& g, Var images, Var captions) {
  return g.matmul(images, g.transpose(captions));
}

Var batch_loss(Graph& g, LossKind kind, Var images, Var captions,
               Var negatives, std::span<const std::size_t> owners,
               const LossOptions& opt) {
  const Var scores = similarity_matrix(g, images, captions);
  if (kind == LossKind::kVse) return loss_vse(g, scores, opt);
  const Var base = loss_vsepp(g, scores, opt);
  if (kind == LossKind::kVsePlusPlus || owners.empty()) return base;
  const Var positive = g.diag(scores);
  const Var imgs = g.gather_rows(images, owners);
  const Var negative = g.dot(imgs, negatives);
  return g.add(base, intra_term(g, positive, negative, owners, opt.margin));
}

}  // namespace vsec::vse
