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


#ifndef VSEC_VSE_DATA_HPP_
#define VSEC_VSE_DATA_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vsec/nn/tensor.hpp"

namespace vsec::vse {

inline constexpr std::string_view kUnknownWord = "<unk>";

// Word -> row index. Row 0 is always the unknown-word row.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(std::span<const std::string> words);

  // Returns the row of `word`, adding it when new.
  std::size_t add(std::string_view word);
  // Row of `word`, or 0 when unknown.
  std::size_t index(std::string_view word) const;
  bool contains(std::string_view word) const;
  const std::string& word(std::size_t row) const { return words_.at(row); }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  std::vector<std::size_t> encode(std::span<const std::string> words) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Plain-text word vectors: one word per line followed by its components.
struct WordVectors {
  std::vector<std::string> words;
  nn::Tensor vectors;  // words.size() x dim
};

WordVectors read_word_vectors(const std::filesystem::path& path);
void write_word_vectors(const std::filesystem::path& path, const WordVectors& wv);

// Precomputed image features keyed by image id.
class ImageFeatureStore {
 public:
  ImageFeatureStore() = default;
  explicit ImageFeatureStore(std::size_t dim) : dim_(dim) {}

  // Throws DataError on duplicate ids or a dimension mismatch.
  std::size_t add(std::string id, std::span<const double> values);

  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  bool contains(std::string_view id) const;
  // Throws DataError naming the id when absent.
  std::size_t index(std::string_view id) const;
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> row(std::size_t i) const;
  // Rows stacked in insertion order.
  nn::Tensor gather(std::span<const std::size_t> rows) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads either format, detected by the binary magic.
ImageFeatureStore read_features(const std::filesystem::path& path);
// image_id<TAB>v1 v2 ...
void write_features_text(const std::filesystem::path& path,
                         const ImageFeatureStore& store);
// "VSEF", u32 count, u32 dim, then per record a u16 id length, the id bytes
// and dim little-endian float32 values.
void write_features_binary(const std::filesystem::path& path,
                           const ImageFeatureStore& store);

}  // namespace vsec::vse

#endif  // VSEC_VSE_DATA_HPP_
