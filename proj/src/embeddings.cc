// Copyright 2026 The attrank Authors.
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

#include "attrank/embeddings.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "attrank/common.h"
#include "attrank/utf8.h"

namespace attrank {

void EmbeddingConfig::validate() const {
  auto fail = [](const std::string &what) {
    throw std::invalid_argument("invalid embedding config: " + what);
  };
  if (dim <= 0) fail("dim must be positive");
  if (ngram_min <= 0 || ngram_max < ngram_min) {
    fail("need 0 < ngram_min <= ngram_max");
  }
  if (window <= 0) fail("window must be positive");
  if (negatives <= 0) fail("negatives must be positive");
  if (epochs <= 0) fail("epochs must be positive");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
  if (min_count == 0) fail("min_count must be positive");
  if (threads == 0) fail("threads must be positive");
}

std::uint32_t fnv1a32(std::string_view bytes) {
  std::uint32_t hash = 2166136261u;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 16777619u;
  }
  return hash;
}

std::vector<std::string> char_ngrams(std::string_view word, int ngram_min,
                                     int ngram_max) {
  std::u32string marked = U"<" + utf8::decode(word) + U">";
  std::vector<std::string> ngrams;
  for (std::size_t start = 0; start < marked.size(); ++start) {
    for (int n = ngram_min; n <= ngram_max; ++n) {
      if (start + static_cast<std::size_t>(n) > marked.size()) break;
      ngrams.push_back(utf8::encode(marked.substr(start, n)));
    }
  }
  return ngrams;
}

std::vector<std::size_t> extract_ngrams(std::string_view word,
                                        const EmbeddingConfig &config) {
  std::vector<std::size_t> rows;
  if (config.bucket_count == 0) return rows;
  for (const std::string &ngram :
       char_ngrams(word, config.ngram_min, config.ngram_max)) {
    rows.push_back(fnv1a32(ngram) % config.bucket_count);
  }
  return rows;
}

EmbeddingModel::EmbeddingModel(EmbeddingConfig config,
                               std::vector<VocabEntry> vocabulary,
                               bool with_output)
    : config_(config), vocabulary_(std::move(vocabulary)) {
  const auto dim = static_cast<std::size_t>(config_.dim);
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i].word, i).second) {
      throw std::invalid_argument("duplicate vocabulary word \"" +
                                  vocabulary_[i].word + "\"");
    }
  }
  word_rows_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    std::vector<std::size_t> rows =
        extract_ngrams(vocabulary_[i].word, config_);
    rows.push_back(config_.bucket_count + i);
    word_rows_.push_back(std::move(rows));
  }
  input_ = Matrix(config_.bucket_count + vocabulary_.size(), dim);
  if (with_output) output_ = Matrix(vocabulary_.size(), dim);
}

std::optional<std::size_t> EmbeddingModel::word_index(
    std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> EmbeddingModel::input_rows(
    std::string_view word) const {
  if (auto index = word_index(word)) return word_rows_[*index];
  return extract_ngrams(word, config_);
}

Vector EmbeddingModel::word_vector(std::string_view word) const {
  Vector out(static_cast<std::size_t>(config_.dim), 0.0);
  for (std::size_t r : input_rows(word)) {
    std::span<const double> row = input_.row(r);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += row[k];
  }
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

Vector hidden(const EmbeddingModel &model,
              const std::vector<std::size_t> &rows) {
  Vector h(static_cast<std::size_t>(model.dim()), 0.0);
  for (std::size_t r : rows) {
    std::span<const double> row = model.input().row(r);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] += row[k];
  }
  return h;
}

void check_example(const TrainingExample &example,
                   const EmbeddingModel &model) {
  if (!model.has_output_vectors()) {
    throw std::invalid_argument("model has no output vectors");
  }
  auto in_range = [&](std::size_t i) { return i < model.vocab_size(); };
  if (!in_range(example.target) || !in_range(example.context) ||
      !std::all_of(example.negatives.begin(), example.negatives.end(),
                   in_range)) {
    throw std::invalid_argument("training example index out of vocabulary");
  }
}

}  // namespace

double score(std::string_view word, std::string_view context,
             const EmbeddingModel &model) {
  std::optional<std::size_t> c = model.word_index(context);
  if (!c) {
    throw std::invalid_argument("context word \"" + std::string(context) +
                                "\" is not in the vocabulary");
  }
  if (!model.has_output_vectors()) {
    throw std::invalid_argument("model has no output vectors");
  }
  std::span<const double> v = model.output().row(*c);
  double sum = 0.0;
  for (std::size_t r : model.input_rows(word)) {
    sum += dot(model.input().row(r), v);
  }
  return sum;
}

double logistic_loss(double x) {
  if (x >= 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double instance_loss(const TrainingExample &example,
                     const EmbeddingModel &model) {
  check_example(example, model);
  Vector h = hidden(model, model.word_rows(example.target));
  double loss = logistic_loss(dot(h, model.output().row(example.context)));
  for (std::size_t n : example.negatives) {
    loss += logistic_loss(-dot(h, model.output().row(n)));
  }
  return loss;
}

InstanceGradient instance_gradient(const TrainingExample &example,
                                   const EmbeddingModel &model) {
  check_example(example, model);
  const auto dim = static_cast<std::size_t>(model.dim());
  const std::vector<std::size_t> &rows = model.word_rows(example.target);
  Vector h = hidden(model, rows);
  Vector grad_h(dim, 0.0);
  InstanceGradient gradient;
  auto accumulate = [&](std::size_t c, double coefficient) {
    std::span<const double> v = model.output().row(c);
    Vector &gv = gradient.output.try_emplace(c, dim, 0.0).first->second;
    for (std::size_t k = 0; k < dim; ++k) {
      gv[k] += coefficient * h[k];
      grad_h[k] += coefficient * v[k];
    }
  };
  // d/ds l(s) = sigmoid(s) - 1 and d/ds l(-s) = sigmoid(s).
  accumulate(example.context,
             sigmoid(dot(h, model.output().row(example.context))) - 1.0);
  for (std::size_t n : example.negatives) {
    accumulate(n, sigmoid(dot(h, model.output().row(n))));
  }
  for (std::size_t r : rows) {
    Vector &gz = gradient.input.try_emplace(r, dim, 0.0).first->second;
    for (std::size_t k = 0; k < dim; ++k) gz[k] += grad_h[k];
  }
  return gradient;
}

NegativeSampler::NegativeSampler(const std::vector<VocabEntry> &vocabulary,
                                 double power) {
  double total = 0.0;
  for (const VocabEntry &entry : vocabulary) {
    double weight = std::pow(static_cast<double>(entry.count), power);
    probabilities_.push_back(weight);
    total += weight;
  }
  double running = 0.0;
  for (double &p : probabilities_) {
    p /= total;
    running += p;
    cumulative_.push_back(running);
  }
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

std::size_t NegativeSampler::sample(Rng &rng) const {
  double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

namespace {

// Relaxed atomic access for lock-free multi-threaded updates; plain access
// otherwise.
template <bool Shared>
double load(const double &x) {
  if constexpr (Shared) {
    return std::atomic_ref<double>(const_cast<double &>(x))
        .load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool Shared>
void add(double &x, double delta) {
  if constexpr (Shared) {
    std::atomic_ref<double> ref(x);
    ref.store(ref.load(std::memory_order_relaxed) + delta,
              std::memory_order_relaxed);
  } else {
    x += delta;
  }
}

struct Trainer {
  EmbeddingModel &model;
  const EmbeddingConfig &config;
  const NegativeSampler &sampler;
  const std::vector<std::vector<std::size_t>> &streams;
  std::size_t total_tokens;
  std::atomic<std::size_t> processed{0};

  struct Scratch {
    Vector h;
    Vector grad_h;
    std::vector<double> coefficients;
    std::vector<std::size_t> outputs;
  };

  // One SGD step on (target, context, negatives); returns the loss before
  // the step.
  template <bool Shared>
  double step(std::size_t target, std::size_t context,
              const std::vector<std::size_t> &negatives, double lr,
              Scratch &scratch) {
    const auto dim = static_cast<std::size_t>(config.dim);
    const std::vector<std::size_t> &rows = model.word_rows(target);
    Matrix &input = model.input();
    Matrix &output = model.output();
    scratch.h.assign(dim, 0.0);
    for (std::size_t r : rows) {
      std::span<const double> row = input.row(r);
      for (std::size_t k = 0; k < dim; ++k) {
        scratch.h[k] += load<Shared>(row[k]);
      }
    }
    scratch.outputs.clear();
    scratch.outputs.push_back(context);
    scratch.outputs.insert(scratch.outputs.end(), negatives.begin(),
                           negatives.end());
    scratch.coefficients.resize(scratch.outputs.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < scratch.outputs.size(); ++i) {
      std::span<const double> v = output.row(scratch.outputs[i]);
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        s += scratch.h[k] * load<Shared>(v[k]);
      }
      if (i == 0) {
        loss += logistic_loss(s);
        scratch.coefficients[i] = sigmoid(s) - 1.0;
      } else {
        loss += logistic_loss(-s);
        scratch.coefficients[i] = sigmoid(s);
      }
    }
    scratch.grad_h.assign(dim, 0.0);
    for (std::size_t i = 0; i < scratch.outputs.size(); ++i) {
      std::span<const double> v = output.row(scratch.outputs[i]);
      double g = scratch.coefficients[i];
      for (std::size_t k = 0; k < dim; ++k) {
        scratch.grad_h[k] += g * load<Shared>(v[k]);
      }
    }
    for (std::size_t i = 0; i < scratch.outputs.size(); ++i) {
      std::span<double> v = output.row(scratch.outputs[i]);
      double g = lr * scratch.coefficients[i];
      for (std::size_t k = 0; k < dim; ++k) {
        add<Shared>(v[k], -g * scratch.h[k]);
      }
    }
    double scale = lr / static_cast<double>(rows.size());
    for (std::size_t r : rows) {
      std::span<double> z = input.row(r);
      for (std::size_t k = 0; k < dim; ++k) {
        add<Shared>(z[k], -scale * scratch.grad_h[k]);
      }
    }
    return loss;
  }

  // Trains over streams [begin, end) for all epochs.
  template <bool Shared>
  void run(std::size_t begin, std::size_t end, std::uint64_t seed,
           std::vector<double> &epoch_loss,
           std::vector<std::size_t> &epoch_examples) {
    Rng rng(seed);
    Scratch scratch;
    std::vector<std::size_t> negatives;
    const std::size_t vocab_size = model.vocab_size();
    const double budget =
        static_cast<double>(config.epochs) * static_cast<double>(total_tokens);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (std::size_t s = begin; s < end; ++s) {
        const std::vector<std::size_t> &stream = streams[s];
        for (std::size_t t = 0; t < stream.size(); ++t) {
          double progress =
              static_cast<double>(processed.load(std::memory_order_relaxed)) /
              budget;
          double lr = config.learning_rate * std::max(0.0, 1.0 - progress);
          auto radius = static_cast<std::size_t>(
              1 + rng.below(static_cast<std::uint64_t>(config.window)));
          std::size_t lo = t >= radius ? t - radius : 0;
          std::size_t hi = std::min(stream.size() - 1, t + radius);
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == t) continue;
            negatives.clear();
            if (vocab_size > 1) {
              for (int n = 0; n < config.negatives; ++n) {
                std::size_t draw;
                do {
                  draw = sampler.sample(rng);
                } while (draw == stream[c]);
                negatives.push_back(draw);
              }
            }
            epoch_loss[epoch] +=
                step<Shared>(stream[t], stream[c], negatives, lr, scratch);
            ++epoch_examples[epoch];
          }
          processed.fetch_add(1, std::memory_order_relaxed);
        }
      }
    }
  }
};

}  // namespace

EmbeddingModel train(const std::vector<std::vector<std::string>> &corpus,
                     const EmbeddingConfig &config, TrainStats *stats) {
  config.validate();
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto &sentence : corpus) {
    for (const std::string &token : sentence) ++counts[token];
  }
  std::vector<VocabEntry> vocabulary;
  for (const auto &[word, count] : counts) {
    if (count >= config.min_count) vocabulary.push_back({word, count});
  }
  if (vocabulary.empty()) {
    throw std::invalid_argument("empty vocabulary after min_count filtering");
  }
  std::sort(vocabulary.begin(), vocabulary.end(),
            [](const VocabEntry &a, const VocabEntry &b) {
              if (a.count != b.count) return a.count > b.count;
              return a.word < b.word;
            });

  EmbeddingModel model(config, vocabulary);
  Rng init(config.seed);
  const double bound = 1.0 / static_cast<double>(config.dim);
  for (double &x : model.input().data()) x = init.uniform(-bound, bound);

  std::vector<std::vector<std::size_t>> streams;
  std::size_t total_tokens = 0;
  for (const auto &sentence : corpus) {
    std::vector<std::size_t> stream;
    for (const std::string &token : sentence) {
      if (auto index = model.word_index(token)) stream.push_back(*index);
    }
    total_tokens += stream.size();
    if (!stream.empty()) streams.push_back(std::move(stream));
  }

  NegativeSampler sampler(model.vocabulary());
  Trainer trainer{model, config, sampler, streams, total_tokens};
  const auto epochs = static_cast<std::size_t>(config.epochs);
  const unsigned workers = std::max(
      1u, std::min<unsigned>(config.threads,
                             static_cast<unsigned>(streams.size())));
  std::vector<std::vector<double>> losses(workers,
                                          std::vector<double>(epochs, 0.0));
  std::vector<std::vector<std::size_t>> examples(
      workers, std::vector<std::size_t>(epochs, 0));
  const std::uint64_t base_seed = config.seed * 0x9E3779B97F4A7C15ull + 1;
  if (workers == 1) {
    trainer.run<false>(0, streams.size(), base_seed, losses[0], examples[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t begin = streams.size() * w / workers;
      std::size_t end = streams.size() * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        trainer.run<true>(begin, end, base_seed + w, losses[w], examples[w]);
      });
    }
    for (std::thread &t : threads) t.join();
  }

  if (stats != nullptr) {
    stats->epoch_mean_loss.assign(epochs, 0.0);
    stats->examples = 0;
    for (std::size_t e = 0; e < epochs; ++e) {
      double loss = 0.0;
      std::size_t n = 0;
      for (unsigned w = 0; w < workers; ++w) {
        loss += losses[w][e];
        n += examples[w][e];
      }
      stats->epoch_mean_loss[e] = n > 0 ? loss / static_cast<double>(n) : 0.0;
      stats->examples += n;
    }
  }
  return model;
}

namespace {

// "label v1 ... vD", or just the values when label is empty.
void write_row(std::ostream &out, std::string_view label,
               std::span<const double> row) {
  char buffer[32];
  out << label;
  for (std::size_t k = 0; k < row.size(); ++k) {
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), row[k]);
    if (k > 0 || !label.empty()) out << ' ';
    out.write(buffer, result.ptr - buffer);
  }
  out << '\n';
}

void parse_row(std::string_view text, std::span<double> row,
               std::size_t line) {
  std::vector<std::string> fields = split_whitespace(text);
  if (fields.size() != row.size()) {
    throw DataError("expected " + std::to_string(row.size()) +
                        " values, found " + std::to_string(fields.size()),
                    line);
  }
  for (std::size_t k = 0; k < row.size(); ++k) {
    const std::string &f = fields[k];
    auto result = std::from_chars(f.data(), f.data() + f.size(), row[k]);
    if (result.ec != std::errc() || result.ptr != f.data() + f.size()) {
      throw DataError("malformed number \"" + f + "\"", line);
    }
  }
}

std::pair<std::size_t, std::size_t> parse_header(
    const std::vector<std::string> &fields, std::size_t offset,
    std::size_t line) {
  if (fields.size() != offset + 2) throw DataError("malformed header", line);
  std::size_t values[2];
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string &f = fields[offset + i];
    auto result = std::from_chars(f.data(), f.data() + f.size(), values[i]);
    if (result.ec != std::errc() || result.ptr != f.data() + f.size()) {
      throw DataError("malformed header", line);
    }
  }
  return {values[0], values[1]};
}

}  // namespace

void save(const EmbeddingModel &model, std::ostream &out) {
  const EmbeddingConfig &config = model.config();
  out << model.vocab_size() << ' ' << config.dim << '\n';
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    write_row(out, model.vocabulary()[i].word,
              model.input().row(config.bucket_count + i));
  }
  if (config.bucket_count > 0) {
    out << "BUCKETS " << config.bucket_count << ' ' << config.dim << '\n';
    for (std::size_t g = 0; g < config.bucket_count; ++g) {
      write_row(out, {}, model.input().row(g));
    }
  }
}

void save(const EmbeddingModel &model, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  save(model, out);
  if (!out) throw DataError("failed writing file: " + path);
}

EmbeddingModel load_pretrained(std::istream &in, const EmbeddingConfig &base) {
  std::string line;
  std::size_t line_number = 1;
  if (!std::getline(in, line)) throw DataError("empty vector file", 1);
  auto [vocab_size, dim] = parse_header(split_whitespace(line), 0, 1);
  if (dim == 0) throw DataError("dimension must be positive", 1);

  std::vector<VocabEntry> vocabulary;
  std::vector<double> word_rows;
  word_rows.reserve(vocab_size * dim);
  Vector row(dim);
  while (vocabulary.size() < vocab_size) {
    if (!std::getline(in, line)) {
      throw DataError("header declares " + std::to_string(vocab_size) +
                          " vectors, file has " +
                          std::to_string(vocabulary.size()),
                      line_number);
    }
    ++line_number;
    std::string_view text = trim(line);
    if (text.rfind("BUCKETS ", 0) == 0) {
      throw DataError("header declares " + std::to_string(vocab_size) +
                          " vectors, file has " +
                          std::to_string(vocabulary.size()),
                      line_number);
    }
    std::size_t space = text.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw DataError("expected " + std::to_string(dim) + " values, found 0",
                      line_number);
    }
    parse_row(text.substr(space + 1), row, line_number);
    vocabulary.push_back({std::string(text.substr(0, space)), 1});
    word_rows.insert(word_rows.end(), row.begin(), row.end());
  }

  std::size_t buckets = 0;
  std::vector<std::string> section;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    section = split_whitespace(line);
    if (section.empty() || section[0] != "BUCKETS") {
      throw DataError("more vectors than the header declares", line_number);
    }
    auto [count, bucket_dim] = parse_header(section, 1, line_number);
    if (bucket_dim != dim) {
      throw DataError("bucket dimension " + std::to_string(bucket_dim) +
                          " does not match " + std::to_string(dim),
                      line_number);
    }
    buckets = count;
    break;
  }

  EmbeddingConfig config = base;
  config.dim = static_cast<int>(dim);
  config.bucket_count = buckets;
  EmbeddingModel model(config, std::move(vocabulary), false);
  for (std::size_t g = 0; g < buckets; ++g) {
    if (!std::getline(in, line)) {
      throw DataError("bucket section declares " + std::to_string(buckets) +
                          " rows, file has " + std::to_string(g),
                      line_number);
    }
    ++line_number;
    parse_row(line, model.input().row(g), line_number);
  }
  std::copy(word_rows.begin(), word_rows.end(),
            model.input().data().begin() +
                static_cast<std::ptrdiff_t>(buckets * dim));
  while (std::getline(in, line)) {
    ++line_number;
    if (!trim(line).empty()) {
      throw DataError("trailing data after bucket section", line_number);
    }
  }
  return model;
}

EmbeddingModel load_pretrained(const std::string &path,
                               const EmbeddingConfig &base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path);
  return load_pretrained(in, base);
}

}  // namespace attrank
