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



#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "vsec/adversary.hpp"
#include "vsec/error.hpp"
#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/metrics.hpp"
#include "vsec/pipeline.hpp"
#include "vsec/synth.hpp"
#include "vsec/tasks.hpp"
#include "vsec/vse.hpp"

namespace vsec::cli {
namespace {

namespace fs = std::filesystem;

struct KbOptions {
  std::optional<fs::path> dir;
  std::int64_t frequency_threshold = 200;
  double concreteness_threshold = 0.6;

  void add(CLI::App* app) {
    app->add_option("--kb-dir", dir, "lexical resource directory")
        ->check(CLI::ExistingDirectory);
    app->add_option("--frequency-threshold", frequency_threshold,
                    "minimum corpus frequency for a replaceable noun")
        ->capture_default_str();
    app->add_option("--concreteness-threshold", concreteness_threshold,
                    "minimum concreteness for a replaceable noun")
        ->capture_default_str();
  }

  knowledge::LexicalKB load(RunContext& ctx,
                            const std::vector<lingua::CaptionRecord>& records) const {
    ctx.input(dir);
    knowledge::KnowledgeConfig cfg;
    cfg.frequency_threshold = frequency_threshold;
    cfg.concreteness_threshold = concreteness_threshold;
    return pipeline::load_kb_for(dir, records, cfg);
  }
};

std::vector<lingua::CaptionRecord> read_records(RunContext& ctx, const fs::path& p) {
  ctx.input(p);
  auto records = lingua::read_captions(p);
  spdlog::info("read {} captions from {}", records.size(), p.string());
  return records;
}

vse::ImageFeatureStore read_store(RunContext& ctx, const fs::path& p) {
  ctx.input(p);
  auto store = vse::read_features(p);
  spdlog::info("read {} feature vectors of dimension {}", store.size(), store.dim());
  return store;
}

template <typename T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---------------------------------------------------------------- annotate

Action add_annotate(CLI::App& root) {
  struct Opts {
    fs::path captions;
    KbOptions kb;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("annotate", "tag, chunk and detect numerals and relations");
  app->add_option("--captions", o->captions, "captions.jsonl")->required()->check(CLI::ExistingFile);
  o->kb.add(app);
  return [o](RunContext& ctx) {
    const auto records = read_records(ctx, o->captions);
    const auto kb = o->kb.load(ctx, records);
    const auto annotated = pipeline::annotate_all(records, kb);
    std::vector<lingua::CaptionRecord> out;
    std::size_t phrases = 0, numerals = 0, prepositions = 0;
    for (const auto& a : annotated) {
      lingua::CaptionRecord r{a.image_id, a.caption_id, a.text(), std::vector<lingua::TaggedToken>{}};
      for (const auto& t : a.tokens) r.tokens->push_back({t.text, std::string(lingua::to_string(t.pos))});
      out.push_back(std::move(r));
      phrases += a.noun_phrases.size();
      numerals += a.numerals.size();
      prepositions += a.prepositions.size();
    }
    lingua::write_captions(ctx.output("annotated.jsonl"), out);
    ctx.write_json(ctx.output("report.json"), {{"captions", annotated.size()},
                                               {"noun_phrases", phrases},
                                               {"numerals", numerals},
                                               {"prepositions", prepositions}});
  };
}

// ---------------------------------------------------------------- gen-adv

Action add_gen_adv(CLI::App& root) {
  struct Opts {
    fs::path captions;
    KbOptions kb;
    std::string caps = "noun=20,numeral=20,relation=20";
    std::size_t max_candidates = 1000;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("gen-adv", "generate contrastive adversarial captions");
  app->add_option("--captions", o->captions, "captions.jsonl")->required()->check(CLI::ExistingFile);
  o->kb.add(app);
  app->add_option("--caps", o->caps, "per-kind caps")->capture_default_str();
  app->add_option("--max-candidates", o->max_candidates, "candidates kept per caption")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  return [o](RunContext& ctx) {
    const KindCounts caps = parse_kind_counts(o->caps);
    const auto records = read_records(ctx, o->captions);
    const auto kb = o->kb.load(ctx, records);
    const auto annotated = pipeline::annotate_all(records, kb);
    adversary::GeneratorConfig cfg;
    cfg.noun_cap = caps.noun;
    cfg.numeral_cap = caps.numeral;
    cfg.relation_cap = caps.relation;
    cfg.max_candidates = o->max_candidates;
    cfg.shuffle_seed = ctx.seed;
    const auto sets = pipeline::candidate_sets(annotated, kb, cfg);

    std::vector<adversary::AdversarialCaption> all;
    std::map<std::string, std::size_t> per_kind;
    std::size_t without = 0;
    for (const auto& s : sets) {
      if (s.empty()) ++without;
      for (const auto& a : s.candidates) {
        ++per_kind[std::string(adversary::to_string(a.kind))];
        all.push_back(a);
      }
    }
    if (without > 0) spdlog::warn("{} captions have no adversarial candidate", without);
    adversary::write_adversarial(ctx.output("adversarial.jsonl"), all);
    ctx.write_json(ctx.output("report.json"),
                   {{"captions", sets.size()},
                    {"candidates", all.size()},
                    {"per_kind", per_kind},
                    {"captions_without_candidates", without}});
  };
}

// ---------------------------------------------------------------- train

Action add_train(CLI::App& root) {
  struct Opts {
    fs::path captions, features;
    std::optional<fs::path> candidates, word_vectors, val_captions, checkpoint_out;
    KbOptions kb;
    std::string loss = "vsec";
    double margin = 0.2;
    std::size_t intra_n = 8;
    std::size_t batch = 32;
    int epochs = 30;
    std::string encoder = "recurrent";
    std::string dims = "16,32,32";
    double lr = 1e-3;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("train", "train a joint embedding");
  app->add_option("--captions", o->captions, "training captions.jsonl")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--features", o->features, "image features (.tsv or .bin)")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--candidates", o->candidates, "adversarial.jsonl from gen-adv")
      ->check(CLI::ExistingFile);
  app->add_option("--word-vectors", o->word_vectors, "initial word vectors")
      ->check(CLI::ExistingFile);
  app->add_option("--val-captions", o->val_captions, "held-out captions for per-epoch R@1")
      ->check(CLI::ExistingFile);
  o->kb.add(app);
  app->add_option("--loss", o->loss, "vse, vsepp or vsec")
      ->capture_default_str()
      ->check(CLI::IsMember({"vse", "vsepp", "vsec"}));
  app->add_option("--margin", o->margin)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--intra-n", o->intra_n, "adversarial candidates sampled per pair")
      ->capture_default_str();
  app->add_option("--batch", o->batch)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--epochs", o->epochs)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--encoder", o->encoder, "average or recurrent")
      ->capture_default_str()
      ->check(CLI::IsMember({"average", "recurrent"}));
  app->add_option("--dims", o->dims, "word,hidden,joint dimensions")->capture_default_str();
  app->add_option("--lr", o->lr, "Adam learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--checkpoint-out", o->checkpoint_out, "model manifest path");
  return [o](RunContext& ctx) {
    const auto dims = parse_size_list(o->dims, 3);
    vse::TrainingConfig cfg;
    cfg.loss = vse::parse_loss(o->loss);
    cfg.margin = o->margin;
    cfg.intra_samples = o->intra_n;
    cfg.batch_size = o->batch;
    cfg.epochs = o->epochs;
    cfg.seed = ctx.seed;
    cfg.model.encoder = vse::parse_encoder(o->encoder);
    cfg.model.word_dim = dims[0];
    cfg.model.hidden_dim = dims[1];
    cfg.model.joint_dim = dims[2];
    cfg.adam.learning_rate = o->lr;
    cfg.validate();

    const auto records = read_records(ctx, o->captions);
    const auto kb = o->kb.load(ctx, records);
    const auto annotated = pipeline::annotate_all(records, kb);
    const auto features = read_store(ctx, o->features);

    pipeline::CandidateIndex index;
    if (o->candidates) {
      ctx.input(*o->candidates);
      const auto adv = adversary::read_adversarial(*o->candidates);
      index = pipeline::index_candidates(adv);
      spdlog::info("read {} adversarial candidates for {} captions", adv.size(), index.size());
    } else if (cfg.loss == vse::LossKind::kVseC) {
      spdlog::warn("--loss vsec without --candidates trains exactly as vsepp");
    }
    const auto examples =
        pipeline::training_examples(annotated, features, o->candidates ? &index : nullptr);

    std::optional<vse::ValidationSet> val;
    if (o->val_captions) {
      const auto val_records = read_records(ctx, *o->val_captions);
      val = pipeline::validation_set(pipeline::annotate_all(val_records, kb), features);
    }
    std::optional<vse::WordVectors> wv;
    if (o->word_vectors) {
      ctx.input(*o->word_vectors);
      wv = vse::read_word_vectors(*o->word_vectors);
    }

    vse::TrainingData data;
    data.examples = examples;
    data.features = &features;
    data.validation = val ? &*val : nullptr;
    data.word_vectors = wv ? &*wv : nullptr;

    nlohmann::json epochs = nlohmann::json::array();
    auto result = vse::train(data, cfg, [&](const vse::EpochLog& e) {
      nlohmann::json row = {{"epoch", e.epoch},
                            {"loss", e.loss},
                            {"learning_rate", e.learning_rate},
                            {"steps", e.steps}};
      if (e.validation_r1) {
        row["validation_r1"] = *e.validation_r1;
        spdlog::info("epoch {} loss {:.5f} val R@1 {:.2f}", e.epoch, e.loss, *e.validation_r1);
      } else {
        spdlog::info("epoch {} loss {:.5f}", e.epoch, e.loss);
      }
      epochs.push_back(std::move(row));
    });

    fs::path manifest;
    if (o->checkpoint_out) {
      manifest = *o->checkpoint_out;
      if (manifest.has_parent_path()) fs::create_directories(manifest.parent_path());
      ctx.outputs.push_back(manifest);
    } else {
      manifest = ctx.output("model.json");
    }
    result.model.save(manifest, {{"loss", o->loss}, {"seed", ctx.seed}});

    std::size_t candidates = 0;
    for (const auto& e : examples) candidates += e.negatives.size();
    ctx.write_json(ctx.output("train_log.json"),
                   {{"config", cfg.to_json()},
                    {"examples", examples.size()},
                    {"candidates", candidates},
                    {"vocabulary", result.model.vocabulary().size()},
                    {"epochs", epochs},
                    {"checkpoint", manifest.string()}});
  };
}

// ---------------------------------------------------------------- attack-eval

Action add_attack_eval(CLI::App& root) {
  struct Opts {
    fs::path checkpoint, captions, features;
    KbOptions kb;
    std::string counts = "noun=20,numeral=20,relation=20";
    std::string ks = "1,10";
    bool plural_split = false;
    std::optional<fs::path> queries_csv;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("attack-eval", "image-to-caption retrieval under attack");
  app->add_option("--checkpoint", o->checkpoint, "model manifest")->required()->check(CLI::ExistingFile);
  app->add_option("--captions", o->captions, "test captions.jsonl")->required()->check(CLI::ExistingFile);
  app->add_option("--features", o->features, "image features")->required()->check(CLI::ExistingFile);
  o->kb.add(app);
  app->add_option("--counts", o->counts, "adversaries per caption and kind")->capture_default_str();
  app->add_option("--ks", o->ks, "recall cut-offs")->capture_default_str();
  app->add_flag("--plural-split", o->plural_split, "plural subset, numeral attacks only");
  app->add_option("--queries-csv", o->queries_csv, "per-query ranks");
  return [o](RunContext& ctx) {
    const KindCounts counts = parse_kind_counts(o->counts);
    tasks::AttackSpec spec;
    spec.noun = counts.noun;
    spec.numeral = counts.numeral;
    spec.relation = counts.relation;
    spec.ks = parse_size_list(o->ks);
    spec.generator.shuffle_seed = ctx.seed;

    ctx.input(o->checkpoint);
    const auto model = vse::JointModel::load(o->checkpoint);
    const auto records = read_records(ctx, o->captions);
    const auto kb = o->kb.load(ctx, records);
    const auto annotated = pipeline::annotate_all(records, kb);
    const auto features = read_store(ctx, o->features);
    if (features.dim() != model.image_dim()) {
      throw ShapeError("features have dimension " + std::to_string(features.dim()) +
                       ", model expects " + std::to_string(model.image_dim()));
    }
    tasks::JointScorer scorer(model, features);
    const auto result = o->plural_split
                            ? tasks::plural_split_eval(scorer, annotated, features, kb, spec)
                            : tasks::attack_eval(scorer, annotated, features, kb, spec);
    nlohmann::json j = result.report.to_json();
    j["candidates_per_image"] = result.candidates_per_image;
    j["counts"] = {{"noun", spec.noun}, {"numeral", spec.numeral}, {"relation", spec.relation}};
    j["plural_split"] = o->plural_split;
    ctx.write_json(ctx.output("report.json"), std::move(j));
    if (o->queries_csv) {
      tasks::write_query_csv(*o->queries_csv, result);
      ctx.outputs.push_back(*o->queries_csv);
    }
    for (const auto& [name, r] : result.report.breakdown) {
      spdlog::info("{:>9}: R@1 {:.2f}", name, r.recall.count(1) ? r.recall.at(1) : 0.0);
    }
  };
}

// ---------------------------------------------------------------- word-retrieval

Action add_word_retrieval(CLI::App& root) {
  struct Opts {
    fs::path captions, test_captions, features;
    std::optional<fs::path> word_vectors, checkpoint, queries_csv;
    KbOptions kb;
    std::size_t hidden = 64;
    int epochs = 20;
    std::size_t batch = 32;
    double lr = 1e-3;
    std::string relatedness = "closure";
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("word-retrieval", "rank object words for each image");
  app->add_option("--captions", o->captions, "training captions")->required()->check(CLI::ExistingFile);
  app->add_option("--test-captions", o->test_captions, "evaluation captions")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--features", o->features, "image features")->required()->check(CLI::ExistingFile);
  auto* wv = app->add_option("--word-vectors", o->word_vectors, "word vectors file")
                 ->check(CLI::ExistingFile);
  auto* ck = app->add_option("--checkpoint", o->checkpoint, "take word vectors from a model")
                 ->check(CLI::ExistingFile);
  wv->excludes(ck);
  ck->excludes(wv);
  o->kb.add(app);
  app->add_option("--hidden", o->hidden)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--epochs", o->epochs)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--batch", o->batch)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--lr", o->lr)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--relatedness", o->relatedness, "closure or direct")
      ->capture_default_str()
      ->check(CLI::IsMember({"closure", "direct"}));
  app->add_option("--queries-csv", o->queries_csv, "per-image average precision");
  return [o](RunContext& ctx) {
    if (!o->word_vectors && !o->checkpoint) {
      throw std::invalid_argument("one of --word-vectors or --checkpoint is required");
    }
    tasks::ScorerConfig cfg;
    cfg.hidden = o->hidden;
    cfg.epochs = o->epochs;
    cfg.batch_size = o->batch;
    cfg.seed = ctx.seed;
    cfg.adam.learning_rate = o->lr;
    cfg.validate();
    const auto rel = parse_relatedness(o->relatedness);

    const auto train_records = read_records(ctx, o->captions);
    const auto test_records = read_records(ctx, o->test_captions);
    const auto kb = o->kb.load(ctx, concat(train_records, test_records));
    const auto features = read_store(ctx, o->features);

    vse::WordVectors vectors;
    if (o->word_vectors) {
      ctx.input(*o->word_vectors);
      vectors = vse::read_word_vectors(*o->word_vectors);
    } else {
      ctx.input(*o->checkpoint);
      vectors = vse::JointModel::load(*o->checkpoint).word_vectors();
    }
    const tasks::WordObjectInputs inputs(vectors, features);
    const auto train_set =
        tasks::build_word_object_dataset(pipeline::annotate_all(train_records, kb), kb, rel);
    const auto test_set =
        tasks::build_word_object_dataset(pipeline::annotate_all(test_records, kb), kb, rel);
    spdlog::info("{} training and {} test images, {} object words", train_set.images.size(),
                 test_set.images.size(), train_set.objects.size());

    const auto scorer = tasks::train_interaction_scorer(
        train_set, inputs, cfg,
        [](const tasks::ScorerEpoch& e) { spdlog::info("epoch {} loss {:.5f}", e.epoch, e.loss); });
    scorer.save(ctx.output("scorer.json"));

    metrics::MetricsReport report = tasks::word_retrieval_report(scorer, test_set, inputs);
    report.extra["train_images"] = train_set.images.size();
    report.extra["objects"] = test_set.objects.size();
    nlohmann::json j = report.to_json();
    j["config"] = cfg.to_json();
    j["relatedness"] = o->relatedness;
    ctx.write_json(ctx.output("report.json"), std::move(j));
    if (o->queries_csv) {
      const auto rankings = tasks::word_retrieval_rankings(scorer, test_set, inputs);
      metrics::write_query_csv(*o->queries_csv, rankings);
      ctx.outputs.push_back(*o->queries_csv);
    }
    spdlog::info("MAP {:.4f}", report.map.value_or(0.0));
  };
}

// ---------------------------------------------------------------- fitb

Action add_fitb(CLI::App& root) {
  struct Opts {
    fs::path captions, test_captions, features;
    std::optional<fs::path> word_vectors, queries_csv;
    std::string dims = "16,32,64";
    int epochs = 30;
    std::size_t batch = 32;
    double lr = 1e-3;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("fitb", "fill in a blanked noun or preposition");
  app->add_option("--captions", o->captions, "training captions")->required()->check(CLI::ExistingFile);
  app->add_option("--test-captions", o->test_captions, "evaluation captions")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--features", o->features, "image features")->required()->check(CLI::ExistingFile);
  app->add_option("--word-vectors", o->word_vectors, "fixed target word vectors")
      ->check(CLI::ExistingFile);
  app->add_option("--dims", o->dims, "word,gru_hidden,mlp_hidden dimensions")->capture_default_str();
  app->add_option("--epochs", o->epochs)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--batch", o->batch)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--lr", o->lr)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--queries-csv", o->queries_csv, "per-blank ranks");
  return [o](RunContext& ctx) {
    const auto dims = parse_size_list(o->dims, 3);
    tasks::FitbConfig cfg;
    cfg.word_dim = dims[0];
    cfg.hidden_dim = dims[1];
    cfg.mlp_hidden_dim = dims[2];
    cfg.epochs = o->epochs;
    cfg.batch_size = o->batch;
    cfg.seed = ctx.seed;
    cfg.adam.learning_rate = o->lr;
    cfg.validate();

    const auto train_records = read_records(ctx, o->captions);
    const auto test_records = read_records(ctx, o->test_captions);
    const auto kb = pipeline::load_kb_for(std::nullopt, concat(train_records, test_records));
    const auto train = tasks::build_fitb_dataset(pipeline::annotate_all(train_records, kb));
    const auto test = tasks::build_fitb_dataset(pipeline::annotate_all(test_records, kb));
    const auto features = read_store(ctx, o->features);
    std::optional<vse::WordVectors> wv;
    if (o->word_vectors) {
      ctx.input(*o->word_vectors);
      wv = vse::read_word_vectors(*o->word_vectors);
    }
    const vse::WordVectors* vectors = wv ? &*wv : nullptr;
    spdlog::info("{} training and {} test blanks", train.size(), test.size());

    const auto untrained = tasks::untrained_fitb(train, features, cfg, vectors);
    const auto baseline = tasks::fitb_eval(untrained, test, features);
    const auto model = tasks::train_fitb(train, features, cfg, vectors, [](const tasks::FitbEpoch& e) {
      spdlog::info("epoch {} loss {:.5f}", e.epoch, e.loss);
    });
    model.save(ctx.output("fitb_model.json"));

    std::vector<metrics::RankingResult> queries;
    metrics::MetricsReport report = tasks::fitb_eval(model, test, features, {1, 10}, &queries);
    report.extra["untrained"] = baseline.to_json();
    const std::size_t candidates = model.vocabulary().size() - 1;
    report.extra["random_r1"] = candidates > 0 ? 100.0 / static_cast<double>(candidates) : 0.0;
    nlohmann::json j = report.to_json();
    j["config"] = cfg.to_json();
    ctx.write_json(ctx.output("report.json"), std::move(j));
    if (o->queries_csv) {
      metrics::write_query_csv(*o->queries_csv, queries);
      ctx.outputs.push_back(*o->queries_csv);
    }
    spdlog::info("R@1 {:.2f} (untrained {:.2f})", report.recall.at(1), baseline.recall.at(1));
  };
}

// ---------------------------------------------------------------- saliency

Action add_saliency(CLI::App& root) {
  struct Opts {
    fs::path checkpoint, features;
    std::string image_id, text;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("saliency", "similarity gradients for one image and caption");
  app->add_option("--checkpoint", o->checkpoint, "model manifest")->required()->check(CLI::ExistingFile);
  app->add_option("--features", o->features, "image features")->required()->check(CLI::ExistingFile);
  app->add_option("--image-id", o->image_id, "image to explain")->required();
  app->add_option("--text", o->text, "caption text")->required();
  return [o](RunContext& ctx) {
    ctx.input(o->checkpoint);
    const auto model = vse::JointModel::load(o->checkpoint);
    const auto features = read_store(ctx, o->features);
    vse::Caption words = lingua::tokenize(o->text);
    if (words.empty()) throw std::invalid_argument("--text is empty");
    for (auto& w : words) {
      std::transform(w.begin(), w.end(), w.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    const auto map = tasks::saliency(model, features.row(features.index(o->image_id)), words);
    nlohmann::json j = map.to_json();
    j["image_id"] = o->image_id;
    j["text"] = o->text;
    ctx.write_json(ctx.output("saliency.json"), std::move(j));
  };
}

// ---------------------------------------------------------------- synth-gen

Action add_synth_gen(CLI::App& root) {
  struct Opts {
    std::size_t train = 500, test = 100;
    synth::SceneSpec spec;
    bool binary = false;
  };
  auto o = std::make_shared<Opts>();
  auto* app = root.add_subcommand("synth-gen", "generate a synthetic grounded corpus");
  app->add_option("--train", o->train, "training images")->capture_default_str();
  app->add_option("--test", o->test, "test images")->capture_default_str();
  app->add_option("--sigma", o->spec.sigma, "feature noise")->capture_default_str();
  app->add_option("--captions-per-image", o->spec.captions_per_image)->capture_default_str();
  app->add_option("--count-scale", o->spec.count_scale)->capture_default_str();
  app->add_option("--relation-scale", o->spec.relation_scale)->capture_default_str();
  app->add_flag("--binary", o->binary, "write features.bin instead of features.tsv");
  return [o](RunContext& ctx) {
    synth::SceneSpec spec = o->spec;
    spec.seed = ctx.seed;
    spec.validate();
    const auto corpus = synth::generate(spec, o->train, o->test);
    synth::write_corpus(ctx.out_dir, corpus, o->binary);
    for (const auto& e : fs::directory_iterator(ctx.out_dir)) {
      if (e.path().filename() != "repro.json") ctx.outputs.push_back(e.path());
    }
    std::sort(ctx.outputs.begin(), ctx.outputs.end());
    spdlog::info("wrote {} training and {} test captions to {}", corpus.train_captions.size(),
                 corpus.test_captions.size(), ctx.out_dir.string());
  };
}

}  // namespace

std::map<std::string, Action> register_commands(CLI::App& app) {
  std::map<std::string, Action> actions;
  actions["annotate"] = add_annotate(app);
  actions["gen-adv"] = add_gen_adv(app);
  actions["train"] = add_train(app);
  actions["attack-eval"] = add_attack_eval(app);
  actions["word-retrieval"] = add_word_retrieval(app);
  actions["fitb"] = add_fitb(app);
  actions["saliency"] = add_saliency(app);
  actions["synth-gen"] = add_synth_gen(app);
  return actions;
}

}  // namespace vsec::cli
