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


#ifndef VSEC_NN_ADAM_HPP_
#define VSEC_NN_ADAM_HPP_

#include <cstdint>
#include <vector>

#include "vsec/nn/tensor.hpp"

namespace vsec::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // The rate is multiplied by `decay` once every `decay_period` epochs.
  double decay = 0.1;
  int decay_period = 15;
};

class Adam {
 public:
  // The parameters must outlive the optimizer.
  explicit Adam(std::vector<Parameter*> params, AdamConfig config = {});

  // base rate * decay^floor(epoch / decay_period)
  double learning_rate(int epoch) const;

  // Applies one update from the accumulated gradients. Throws NumericError
  // before touching any parameter if a gradient is not finite.
  void step(int epoch);
  void zero_grad();

  std::int64_t steps() const { return steps_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  std::vector<Parameter*> params_;
  std::vector<Tensor> first_;
  std::vector<Tensor> second_;
  std::int64_t steps_ = 0;
};

}  // namespace vsec::nn

#endif  // VSEC_NN_ADAM_HPP_
