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


#include "vsec/nn/gru.hpp"

#include <algorithm>
#include <cmath>

#include "vsec/error.hpp"

namespace vsec::nn {

Tensor glorot(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> u(-limit, limit);
  Tensor t(rows, cols);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

Gru::Gru(std::string name, std::size_t input_dim, std::size_t hidden_dim,
         std::mt19937_64& rng)
    : name_(std::move(name)), input_dim_(input_dim), hidden_dim_(hidden_dim) {
  auto w = [&](const char* n, std::size_t r) {
    return Parameter(name_ + "." + n, glorot(r, hidden_dim, rng));
  };
  wz_ = w("wz", input_dim);
  wr_ = w("wr", input_dim);
  wn_ = w("wn", input_dim);
  uz_ = w("uz", hidden_dim);
  ur_ = w("ur", hidden_dim);
  un_ = w("un", hidden_dim);
  bz_ = Parameter(name_ + ".bz", Tensor(1, hidden_dim));
  br_ = Parameter(name_ + ".br", Tensor(1, hidden_dim));
  bn_ = Parameter(name_ + ".bn", Tensor(1, hidden_dim));
}

Var Gru::run(Binder& bind, Var inputs,
             const std::vector<std::vector<std::size_t>>& sequences) {
  Graph& g = bind.graph();
  const std::size_t batch = sequences.size();
  std::size_t steps = 0;
  for (const auto& s : sequences) steps = std::max(steps, s.size());
  Var h = g.input(Tensor(batch, hidden_dim_));
  if (steps == 0) return h;

  // Input-side products for every row at once; each step gathers its rows.
  const Var xz = g.add(g.matmul(inputs, bind(wz_)), bind(bz_));
  const Var xr = g.add(g.matmul(inputs, bind(wr_)), bind(br_));
  const Var xn = g.add(g.matmul(inputs, bind(wn_)), bind(bn_));
  const Var uz = bind(uz_), ur = bind(ur_), un = bind(un_);

  std::vector<std::size_t> rows(batch);
  for (std::size_t t = 0; t < steps; ++t) {
    Tensor mask(batch, hidden_dim_);
    bool all_active = true;
    for (std::size_t b = 0; b < batch; ++b) {
      const bool active = t < sequences[b].size();
      rows[b] = active ? sequences[b][t] : 0;
      all_active = all_active && active;
      if (active) std::fill_n(&mask(b, 0), hidden_dim_, 1.0);
    }
    const Var z = g.sigmoid(g.add(g.gather_rows(xz, rows), g.matmul(h, uz)));
    const Var r = g.sigmoid(g.add(g.gather_rows(xr, rows), g.matmul(h, ur)));
    const Var n = g.tanh(
        g.add(g.gather_rows(xn, rows), g.mul(r, g.matmul(h, un))));
    const Var next = g.add(n, g.mul(z, g.sub(h, n)));
    h = all_active ? next
                   : g.add(h, g.mul(g.input(std::move(mask)), g.sub(next, h)));
  }
  return h;
}

std::vector<Parameter*> Gru::parameters() {
  return {&wz_, &wr_, &wn_, &uz_, &ur_, &un_, &bz_, &br_, &bn_};
}

std::vector<NamedTensor> Gru::tensors() const {
  std::vector<NamedTensor> out;
  for (const Parameter* p :
       {&wz_, &wr_, &wn_, &uz_, &ur_, &un_, &bz_, &br_, &bn_}) {
    out.push_back({p->name, p->value});
  }
  return out;
}

void Gru::load(const Checkpoint& ckpt) {
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
