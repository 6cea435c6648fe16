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


#ifndef VSEC_TASKS_HPP_
#define VSEC_TASKS_HPP_

#include "vsec/tasks/attack.hpp"
#include "vsec/tasks/fitb.hpp"
#include "vsec/tasks/saliency.hpp"
#include "vsec/tasks/word_object.hpp"

#endif  // VSEC_TASKS_HPP_
