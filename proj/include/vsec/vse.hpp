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


#ifndef VSEC_VSE_HPP_
#define VSEC_VSE_HPP_

#include "vsec/vse/data.hpp"
#include "vsec/vse/loss.hpp"
#include "vsec/vse/model.hpp"
#include "vsec/vse/train.hpp"

#endif  // VSEC_VSE_HPP_
