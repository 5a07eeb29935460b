// Times index_corpus (OpenMP) against index_corpus_serial on a synthetic corpus.
// usage: bench_index [documents] [words-per-document] [terms]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "arkvoc/indexer.hpp"
#include "arkvoc/vocabulary.hpp"
#include "json.hpp"

using namespace arkvoc;

namespace {

std::string word(std::mt19937_64& rng) {
  static const char* syllables[] = {"ab", "bey", "ca", "the", "dral", "con", "vent", "mo", "nas", "ter",
                                    "y",  "ar",  "mo", "ry",  "school", "law", "judge", "in", "of", "and"};
  std::uniform_int_distribution<int> n(1, 3), pick(0, 19);
  std::string w;
  for (int i = n(rng); i > 0; --i) w += syllables[pick(rng)];
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  const int docs = argc > 1 ? std::atoi(argv[1]) : 400;
  const int words = argc > 2 ? std::atoi(argv[2]) : 2000;
  const int terms = argc > 3 ? std::atoi(argv[3]) : 2000;

  std::mt19937_64 rng(2020);
  nlohmann::json doc{{"id", "bench"}, {"naan", "99152"}, {"shoulder", "b4"}, {"terms", nlohmann::json::array()}};
  std::set<std::string> labels;
  while (static_cast<int>(labels.size()) < terms) {
    std::string l = word(rng);
    if (rng() % 3 == 0) l += " " + word(rng);
    labels.insert(l);
  }
  int i = 0;
  for (const auto& l : labels) doc["terms"].push_back({{"name", "t" + std::to_string(i++)}, {"pref_label", l}});
  const auto vocab = load_vocabulary(doc.dump()).vocabulary;

  std::vector<Document> corpus;
  for (int d = 0; d < docs; ++d) {
    std::string text;
    for (int w = 0; w < words; ++w) text += word(rng) + (w % 12 == 11 ? ". " : " ");
    corpus.push_back({"d" + std::to_string(d), text});
  }

  const IndexOptions opts{3, 10};
  auto time = [&](auto fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = fn();
    return std::make_pair(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), r);
  };
  const auto [ts, serial] = time([&] { return index_corpus_serial(corpus, {&vocab}, opts); });
  const auto [tp, parallel] = time([&] { return index_corpus(corpus, {&vocab}, opts); });

  std::printf("documents %d, words/doc %d, terms %d, threads %d\n", docs, words, terms, omp_get_max_threads());
  std::printf("serial   %.3fs\nparallel %.3fs\nspeedup  %.2fx\nidentical %s\n", ts, tp, ts / tp,
              serial == parallel ? "yes" : "no");
  return serial == parallel ? 0 : 1;
}
