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


#ifndef VSEC_VSE_LOSS_HPP_
#define VSEC_VSE_LOSS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

#include "vsec/nn/graph.hpp"

namespace vsec::vse {

enum class LossKind { kVse, kVsePlusPlus, kVseC };

std::string_view to_string(LossKind kind);
// "vse", "vsepp" or "vsec"; anything else throws std::invalid_argument.
LossKind parse_loss(std::string_view name);

struct LossOptions {
  double margin = 0.2;
  // Contrastive captions for each image (rows of the score matrix).
  bool caption_side = true;
  // Contrastive images for each caption (columns).
  bool image_side = true;
};

// scores(i, j) = s(image i, caption j) for a batch whose pairs sit on the
// diagonal. Sum over pairs and over every other batch member of the hinged
// margin violation.
nn::Var loss_vse(nn::Graph& g, nn::Var scores, const LossOptions& opt = {});

// As loss_vse, but each pair keeps only its largest hinged violation per
// side.
nn::Var loss_vsepp(nn::Graph& g, nn::Var scores, const LossOptions& opt = {});

// Sum over pairs of max_k [margin + s(i, c''_k) - s(i, c)]_+ where the
// candidates of pair p are the entries of `negative` (M x 1) whose owner is
// p. `positive` is B x 1. Pairs without candidates contribute 0.
nn::Var intra_term(nn::Graph& g, nn::Var positive, nn::Var negative,
                   std::span<const std::size_t> owners, double margin);

// images and captions are B x d joint embeddings.
nn::Var similarity_matrix(nn::Graph& g, nn::Var images, nn::Var captions);

// Full objective from joint embeddings. `negatives` (M x d) may be empty
// (M = 0) in which case the VSE-C objective equals VSE++.
nn::Var batch_loss(nn::Graph& g, LossKind kind, nn::Var images,
                   nn::Var captions, nn::Var negatives,
                   std::span<const std::size_t> owners,
                   const LossOptions& opt = {});

}  // namespace vsec::vse

#endif  // VSEC_VSE_LOSS_HPP_
