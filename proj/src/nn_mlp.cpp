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


#include "vsec/nn/mlp.hpp"

#include "vsec/error.hpp"
#include "vsec/nn/gru.hpp"

namespace vsec::nn {

Mlp::Mlp(std::string name, std::size_t input_dim, std::size_t hidden_dim,
         std::size_t output_dim, std::mt19937_64& rng)
    : w1_(name + ".w1", glorot(input_dim, hidden_dim, rng)),
      b1_(name + ".b1", Tensor(1, hidden_dim)),
      w2_(name + ".w2", glorot(hidden_dim, output_dim, rng)),
      b2_(name + ".b2", Tensor(1, output_dim)) {}

Var Mlp::forward(Binder& bind, Var x) {
  Graph& g = bind.graph();
  const Var h = g.tanh(g.add(g.matmul(x, bind(w1_)), bind(b1_)));
  return g.add(g.matmul(h, bind(w2_)), bind(b2_));
}

std::vector<Parameter*> Mlp::parameters() { return {&w1_, &b1_, &w2_, &b2_}; }

std::vector<NamedTensor> Mlp::tensors() const {
  return {{w1_.name, w1_.value}, {b1_.name, b1_.value},
          {w2_.name, w2_.value}, {b2_.name, b2_.value}};
}

void Mlp::load(const Checkpoint& ckpt) {
  for (Parameter* p : parameters()) {
    const Tensor& t = ckpt.at(p->name);
    if (!t.same_shape(p->value)) {
      throw DataError("checkpoint tensor '" + p->name + "' has shape " +
                      t.shape_string() + ", expected " +
                      p->value.shape_string());
    }
    p->value = t;
  }
}

}  // namespace vsec::nn
