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


#ifndef VSEC_NN_MLP_HPP_
#define VSEC_NN_MLP_HPP_

#include <random>
#include <string>
#include <vector>

#include "vsec/nn/binder.hpp"
#include "vsec/nn/checkpoint.hpp"

namespace vsec::nn {

// Two affine layers with a tanh between them: tanh(x W1 + b1) W2 + b2.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::string name, std::size_t input_dim, std::size_t hidden_dim,
      std::size_t output_dim, std::mt19937_64& rng);

  std::size_t input_dim() const { return w1_.value.rows(); }
  std::size_t hidden_dim() const { return w1_.value.cols(); }
  std::size_t output_dim() const { return w2_.value.cols(); }

  Var forward(Binder& bind, Var x);

  std::vector<Parameter*> parameters();
  std::vector<NamedTensor> tensors() const;
  // Throws DataError on missing tensors or shape mismatch.
  void load(const Checkpoint& ckpt);

 private:
  Parameter w1_, b1_, w2_, b2_;
};

}  // namespace vsec::nn

#endif  // VSEC_NN_MLP_HPP_
