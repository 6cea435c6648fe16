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


#ifndef VSEC_NN_GRU_HPP_
#define VSEC_NN_GRU_HPP_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "vsec/nn/binder.hpp"
#include "vsec/nn/checkpoint.hpp"
#include "vsec/nn/tensor.hpp"

namespace vsec::nn {

// Single-layer gated recurrent unit:
//   z = sigmoid(x Wz + h Uz + bz)
//   r = sigmoid(x Wr + h Ur + br)
//   n = tanh(x Wn + bn + r * (h Un))
//   h' = n + z * (h - n)
class Gru {
 public:
  Gru() = default;
  Gru(std::string name, std::size_t input_dim, std::size_t hidden_dim,
      std::mt19937_64& rng);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden_dim() const { return hidden_dim_; }

  // Final hidden states (B x hidden) of a batch of sequences. Sequence b
  // visits rows sequences[b][0], sequences[b][1], ... of `inputs`. Empty
  // sequences yield the zero state.
  Var run(Binder& bind, Var inputs,
          const std::vector<std::vector<std::size_t>>& sequences);

  std::vector<Parameter*> parameters();
  std::vector<NamedTensor> tensors() const;
  // Copies values from a checkpoint; throws DataError on missing tensors or
  // shape mismatch.
  void load(const Checkpoint& ckpt);

 private:
  std::string name_;
  std::size_t input_dim_ = 0;
  std::size_t hidden_dim_ = 0;
  Parameter wz_, wr_, wn_, uz_, ur_, un_, bz_, br_, bn_;
};

// Glorot-uniform initialised rows x cols matrix.
Tensor glorot(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace vsec::nn

#endif  // VSEC_NN_GRU_HPP_
