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


#ifndef VSEC_NN_BINDER_HPP_
#define VSEC_NN_BINDER_HPP_

#include <unordered_map>

#include "vsec/nn/graph.hpp"

namespace vsec::nn {

// Places parameters on a graph either as tracked leaves (gradients
// accumulate into Parameter::grad) or as constant views. Each parameter is
// bound at most once per graph.
class Binder {
 public:
  Binder(Graph& graph, bool track) : graph_(graph), track_(track) {}

  Graph& graph() { return graph_; }
  bool tracking() const { return track_; }

  Var operator()(Parameter& p) {
    const auto it = bound_.find(&p);
    if (it != bound_.end()) return it->second;
    const Var v = track_ ? graph_.param(p) : graph_.view(p.value);
    bound_.emplace(&p, v);
    return v;
  }

 private:
  Graph& graph_;
  bool track_;
  std::unordered_map<const Parameter*, Var> bound_;
};

}  // namespace vsec::nn

#endif  // VSEC_NN_BINDER_HPP_
