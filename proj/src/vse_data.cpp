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


#include "vsec/vse/data.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tsv.hpp"
#include "vsec/error.hpp"

namespace vsec::vse {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

constexpr std::array<char, 4> kMagic = {'V', 'S', 'E', 'F'};

std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::ifstream& in, const std::filesystem::path& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw DataError(path.string() + ": truncated feature file");
  }
  return v;
}

std::vector<double> parse_values(std::istringstream& in,
                                 const std::filesystem::path& path,
                                 std::size_t line) {
  std::vector<double> values;
  std::string field;
  while (in >> field) {
    const double v = detail::parse_double(field, path, line);
    if (!std::isfinite(v)) detail::fail_at(path, line, "non-finite value");
    values.push_back(v);
  }
  return values;
}

}  // namespace

Vocabulary::Vocabulary() { add(kUnknownWord); }

Vocabulary::Vocabulary(std::span<const std::string> words) : Vocabulary() {
  for (const auto& w : words) add(w);
}

std::size_t Vocabulary::add(std::string_view word) {
  const auto [it, inserted] = rows_.emplace(std::string(word), words_.size());
  if (inserted) words_.emplace_back(word);
  return it->second;
}

std::size_t Vocabulary::index(std::string_view word) const {
  const auto it = rows_.find(std::string(word));
  return it == rows_.end() ? 0 : it->second;
}

bool Vocabulary::contains(std::string_view word) const {
  return rows_.count(std::string(word)) > 0;
}

std::vector<std::size_t> Vocabulary::encode(
    std::span<const std::string> words) const {
  std::vector<std::size_t> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(index(w));
  return ids;
}

WordVectors read_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word vectors " + path.string());
  WordVectors wv;
  std::vector<double> values;
  std::size_t dim = 0;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    std::istringstream fields(text);
    std::string word;
    if (!(fields >> word)) continue;
    const auto v = parse_values(fields, path, line);
    if (v.empty()) throw DataError(location(path, line) + "word without values");
    if (dim == 0) dim = v.size();
    if (v.size() != dim) {
      throw DataError(location(path, line) + "expected " + std::to_string(dim) +
                      " values, found " + std::to_string(v.size()));
    }
    wv.words.push_back(word);
    values.insert(values.end(), v.begin(), v.end());
  }
  wv.vectors = nn::Tensor(wv.words.size(), dim, std::move(values));
  return wv;
}

void write_word_vectors(const std::filesystem::path& path, const WordVectors& wv) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out.precision(9);
  for (std::size_t i = 0; i < wv.words.size(); ++i) {
    out << wv.words[i];
    for (double v : wv.vectors.row_values(i)) out << ' ' << v;
    out << '\n';
  }
}

std::size_t ImageFeatureStore::add(std::string id, std::span<const double> values) {
  if (dim_ == 0 && ids_.empty()) dim_ = values.size();
  if (values.size() != dim_) {
    throw DataError("image '" + id + "' has " + std::to_string(values.size()) +
                    " feature values, expected " + std::to_string(dim_));
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw DataError("duplicate image id '" + id + "'");
  }
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
  return ids_.size() - 1;
}

bool ImageFeatureStore::contains(std::string_view id) const {
  return index_.count(std::string(id)) > 0;
}

std::size_t ImageFeatureStore::index(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw DataError("no features for image '" + std::string(id) + "'");
  }
  return it->second;
}

std::span<const double> ImageFeatureStore::row(std::size_t i) const {
  return {values_.data() + i * dim_, dim_};
}

nn::Tensor ImageFeatureStore::gather(std::span<const std::size_t> rows) const {
  nn::Tensor t(rows.size(), dim_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = row(rows[r]);
    std::copy(src.begin(), src.end(), t.row_values(r).begin());
  }
  return t;
}

ImageFeatureStore read_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open features " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kMagic;
  ImageFeatureStore store;
  if (binary) {
    const auto count = take<std::uint32_t>(in, path);
    const auto dim = take<std::uint32_t>(in, path);
    store = ImageFeatureStore(dim);
    std::vector<double> values(dim);
    for (std::uint32_t r = 0; r < count; ++r) {
      const auto len = take<std::uint16_t>(in, path);
      std::string id(len, '\0');
      if (!in.read(id.data(), len)) {
        throw DataError(path.string() + ": truncated feature file");
      }
      for (auto& v : values) v = take<float>(in, path);
      store.add(std::move(id), values);
    }
    return store;
  }
  in.clear();
  in.seekg(0);
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.empty() || text[0] == '#') continue;
    const auto tab = text.find('\t');
    if (tab == std::string::npos) {
      throw DataError(location(path, line) + "expected image_id<TAB>values");
    }
    std::istringstream fields(text.substr(tab + 1));
    const auto values = parse_values(fields, path, line);
    try {
      store.add(text.substr(0, tab), values);
    } catch (const DataError& e) {
      throw DataError(location(path, line) + e.what());
    }
  }
  return store;
}

void write_features_text(const std::filesystem::path& path,
                         const ImageFeatureStore& store) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out.precision(17);
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.id(i) << '\t';
    const auto r = store.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? " " : "") << r[k];
    out << '\n';
  }
}

void write_features_binary(const std::filesystem::path& path,
                           const ImageFeatureStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put(out, static_cast<std::uint32_t>(store.size()));
  put(out, static_cast<std::uint32_t>(store.dim()));
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& id = store.id(i);
    if (id.size() > 0xFFFF) throw DataError("image id too long: " + id);
    put(out, static_cast<std::uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    for (double v : store.row(i)) put(out, static_cast<float>(v));
  }
}

}  // namespace vsec::vse
