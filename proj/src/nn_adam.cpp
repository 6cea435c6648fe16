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


#include "vsec/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "vsec/error.hpp"

namespace vsec::nn {

Adam::Adam(std::vector<Parameter*> params, AdamConfig config)
    : config_(config), params_(std::move(params)) {
  if (config_.decay_period <= 0) {
    throw std::invalid_argument("Adam: decay_period must be positive");
  }
  for (Parameter* p : params_) {
    first_.emplace_back(p->value.rows(), p->value.cols(), 0.0);
    second_.emplace_back(p->value.rows(), p->value.cols(), 0.0);
    if (!p->grad.same_shape(p->value)) {
      p->grad = Tensor(p->value.rows(), p->value.cols(), 0.0);
    }
  }
}

double Adam::learning_rate(int epoch) const {
  const int drops = epoch / config_.decay_period;
  return config_.learning_rate * std::pow(config_.decay, drops);
}

void Adam::step(int epoch) {
  for (const Parameter* p : params_) {
    if (!p->grad.all_finite()) {
      throw NumericError("Adam: non-finite gradient for parameter '" +
                         p->name + "'");
    }
  }
  ++steps_;
  const double lr = learning_rate(epoch);
  const double t = static_cast<double>(steps_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter& p = *params_[k];
    Tensor& m = first_[k];
    Tensor& v = second_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g * g;
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      p.value[i] -= lr * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

void Adam::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

}  // namespace vsec::nn
