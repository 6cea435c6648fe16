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


#ifndef VSEC_TESTS_SUPPORT_GRADCHECK_HPP_
#define VSEC_TESTS_SUPPORT_GRADCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vsec/nn/graph.hpp"

namespace vsec::testing {

// Builds a scalar loss from graph leaves standing for `inputs`.
using LossBuilder =
    std::function<nn::Var(nn::Graph&, const std::vector<nn::Var>&)>;

struct GradcheckResult {
  bool ok = true;
  double worst = 0.0;
  std::string detail;
};

inline double evaluate(const LossBuilder& build,
                       const std::vector<nn::Tensor>& inputs) {
  nn::Graph g;
  std::vector<nn::Var> leaves;
  for (const auto& t : inputs) leaves.push_back(g.input(t));
  return g.value(build(g, leaves)).item();
}

// Compares reverse-mode gradients with central differences.
inline GradcheckResult gradcheck(const LossBuilder& build,
                                 std::vector<nn::Tensor> inputs,
                                 double h = 1e-5, double rtol = 1e-4,
                                 double atol = 1e-7) {
  nn::Graph g;
  std::vector<nn::Var> leaves;
  for (const auto& t : inputs) leaves.push_back(g.input(t));
  g.backward(build(g, leaves));

  GradcheckResult r;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const nn::Tensor analytic = g.grad(leaves[k]);
    for (std::size_t i = 0; i < inputs[k].size(); ++i) {
      const double saved = inputs[k][i];
      inputs[k][i] = saved + h;
      const double up = evaluate(build, inputs);
      inputs[k][i] = saved - h;
      const double down = evaluate(build, inputs);
      inputs[k][i] = saved;
      const double numeric = (up - down) / (2 * h);
      const double err = std::abs(numeric - analytic[i]);
      const double bound =
          atol + rtol * std::max(std::abs(numeric), std::abs(analytic[i]));
      r.worst = std::max(r.worst, err);
      if (err > bound && r.ok) {
        r.ok = false;
        std::ostringstream os;
        os << "input " << k << " element " << i << ": analytic "
           << analytic[i] << " numeric " << numeric;
        r.detail = os.str();
      }
    }
  }
  return r;
}

// Entries drawn uniformly from [lo, hi], kept at least `gap` away from
// every value in `kinks`.
inline nn::Tensor random_tensor(std::size_t rows, std::size_t cols,
                                std::mt19937_64& rng, double lo = -1.0,
                                double hi = 1.0,
                                std::vector<double> kinks = {},
                                double gap = 1e-2) {
  std::uniform_real_distribution<double> u(lo, hi);
  nn::Tensor t(rows, cols);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double x;
    do {
      x = u(rng);
    } while (std::any_of(kinks.begin(), kinks.end(),
                         [&](double k) { return std::abs(x - k) < gap; }));
    t[i] = x;
  }
  return t;
}

}  // namespace vsec::testing

#endif  // VSEC_TESTS_SUPPORT_GRADCHECK_HPP_
