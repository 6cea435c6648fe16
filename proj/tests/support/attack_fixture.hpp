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



#ifndef VSEC_TESTS_SUPPORT_ATTACK_FIXTURE_HPP_
#define VSEC_TESTS_SUPPORT_ATTACK_FIXTURE_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/nn/tensor.hpp"
#include "vsec/tasks/attack.hpp"
#include "vsec/vse/data.hpp"

namespace vsec::testing {

// Deterministic pseudo-random score per (image row, caption words).
class HashScorer : public tasks::CaptionImageScorer {
 public:
  nn::Tensor score(std::span<const std::size_t> images,
               std::span<const vse::Caption> captions) const override {
    nn::Tensor out(images.size(), captions.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t c = 0; c < captions.size(); ++c) out(i, c) = value(images[i], captions[c]);
    }
    return out;
  }

  static double value(std::size_t image, const vse::Caption& words) {
    std::string key = std::to_string(image);
    for (const auto& w : words) key += "|" + w;
    // FNV-1a keeps the value independent of the standard library's hash.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : key) h = (h ^ ch) * 1099511628211ull;
    return static_cast<double>(h % 1000003) / 1000003.0;
  }
};

inline vse::ImageFeatureStore store_for(const std::vector<std::string>& ids) {
  vse::ImageFeatureStore s(2);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    s.add(ids[i], std::vector<double>{1.0, static_cast<double>(i)});
  }
  return s;
}

inline lingua::AnnotatedCaption make(const std::string& image, const std::string& id,
                      const std::string& text, const knowledge::LexicalKB& kb) {
  auto a = lingua::annotate(text, kb);
  a.image_id = image;
  a.caption_id = id;
  return a;
}

// Each caption has three numerals, three noun phrases and two prepositions,
// enough for 20 adversaries of every kind under the fixture KB.
inline std::vector<lingua::AnnotatedCaption> rich_split(std::size_t images, const knowledge::LexicalKB& kb) {
  const std::vector<std::string> objects{"dog", "cat", "horse", "bus", "chair",
                                         "table", "apple", "box", "bench", "umbrella"};
  const std::vector<std::string> numbers{"two", "three", "four", "five"};
  std::vector<lingua::AnnotatedCaption> out;
  for (std::size_t i = 0; i < images; ++i) {
    for (std::size_t k = 0; k < 5; ++k) {
      const std::string& a = objects[(i + k) % objects.size()];
      const std::string& b = objects[(i + 2 * k + 3) % objects.size()];
      const std::string& c = objects[(i + k + 7) % objects.size()];
      const std::string text = numbers[k % 4] + " " + kb.pluralize(a) + " on a " + b +
                               " near " + numbers[(k + i) % 4] + " " + kb.pluralize(c);
      out.push_back(make("img" + std::to_string(i),
                         "img" + std::to_string(i) + "#" + std::to_string(k), text, kb));
    }
  }
  return out;
}

inline std::vector<std::string> image_ids(const std::vector<lingua::AnnotatedCaption>& caps) {
  std::vector<std::string> ids;
  for (const auto& c : caps) {
    if (std::find(ids.begin(), ids.end(), c.image_id) == ids.end()) ids.push_back(c.image_id);
  }
  return ids;
}

}  // namespace vsec::testing

#endif  // VSEC_TESTS_SUPPORT_ATTACK_FIXTURE_HPP_
