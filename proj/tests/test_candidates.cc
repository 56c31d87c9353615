#include <doctest.h>

#include <random>
#include <set>

#include "coherex/candidates.h"
#include "coherex/error.h"
#include "oracles.h"

using namespace coherex;

namespace {

std::set<std::string> keys_of(const std::vector<CandidatePhrase>& c) {
  std::set<std::string> out;
  for (const auto& x : c) out.insert(x.key.text());
  return out;
}

TextProcessor processor_with(std::vector<std::string> stops) {
  return TextProcessor(std::make_shared<PorterStemmer>(), std::make_shared<StopwordList>(stops));
}

// Random token sequence with stopwords and punctuation sprinkled in.
std::string random_text(std::mt19937& rng, std::size_t max_words, const std::vector<std::string>& vocab) {
  const char* seps[] = {" ", " ", " ", ", ", ". ", "; ", " - "};
  const std::size_t n = 1 + rng() % max_words;
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    s += vocab[rng() % vocab.size()];
    s += seps[rng() % 7];
  }
  return s;
}

}  // namespace

TEST_CASE("generate_candidates: the cat sat on the mat") {
  const auto tp = processor_with({"the", "on"});
  const auto doc = Document::FromText("d", "the cat sat on the mat");
  CHECK(keys_of(generate_candidates(doc, tp)) == std::set<std::string>{"cat", "sat", "mat", "cat sat"});
}

TEST_CASE("generate_candidates: interior stopwords allowed") {
  const auto tp = processor_with({"of"});
  const auto c = keys_of(generate_candidates(Document::FromText("d", "state of art"), tp));
  CHECK(c.count("state of art") == 1);
  CHECK(c.count("state of") == 0);
  CHECK(c.count("of art") == 0);
}

TEST_CASE("generate_candidates: merging, surface forms and first occurrence") {
  const auto tp = processor_with({"the"});
  const auto doc = Document::FromText("d", "Neural networks. The neural network, neural networks again");
  const auto cands = generate_candidates(doc, tp);
  const auto it = std::find_if(cands.begin(), cands.end(), [](const auto& c) { return c.key.text() == "neural network"; });
  REQUIRE(it != cands.end());
  CHECK(it->term_frequency == 3);
  CHECK(it->first_occurrence_word_index == 0);
  CHECK(it->surface_forms.at("neural networks") == 1);
  CHECK(it->surface_forms.at("Neural networks") == 1);
  CHECK(it->surface_forms.at("neural network") == 1);
  // Three forms tie on count; the earliest wins.
  CHECK(it->surface() == "Neural networks");
  for (const auto& c : cands) {
    int sum = 0;
    for (const auto& [f, n] : c.surface_forms) sum += n;
    CHECK(sum == c.term_frequency);
    CHECK(c.first_occurrence_word_index < doc.word_count);
  }
}

TEST_CASE("generate_candidates: random sequences equal the brute-force enumerator") {
  const std::vector<std::string> vocab{"the", "of", "And", "network", "Networks", "learning", "theory", "to",
                                       "machine", "shop", "state", "art", "he", "graph", "models"};
  const std::set<std::string> stops{"the", "of", "and", "to", "he"};
  const auto tp = processor_with({"the", "of", "and", "to", "he"});
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const auto doc = Document::FromText("d", random_text(rng, 12, vocab));
    const auto got = generate_candidates(doc, tp);
    const auto want = oracle::enumerate_windows(doc.tokens, stops, tp.stemmer());
    REQUIRE(got.size() == want.size());
    std::size_t windows = 0;
    for (const auto& c : got) {
      const auto w = want.find(c.key.text());
      REQUIRE(w != want.end());
      CHECK(c.term_frequency == w->second.count);
      CHECK(c.first_occurrence_word_index == w->second.first);
      windows += static_cast<std::size_t>(c.term_frequency);
    }
    std::size_t want_windows = 0;
    for (const auto& [k, s] : want) want_windows += static_cast<std::size_t>(s.count);
    CHECK(windows == want_windows);
  }
}

TEST_CASE("normalize") {
  CHECK(normalize("Neural Networks").stems() == std::vector<std::string>{"neural", "network"});
  CHECK(normalize("cat").stems() == std::vector<std::string>{"cat"});
  // The hyphenated word stays one token; Porter only strips the final suffix.
  CHECK(normalize("Machine-Learning Methods").stems() == std::vector<std::string>{"machine-learn", "method"});
  CHECK_THROWS_AS(normalize(""), ContractViolation);
  CHECK_THROWS_AS(normalize("one two three four"), ContractViolation);
  CHECK_THROWS_AS(NormalizedPhrase(std::vector<std::string>{}), ContractViolation);
}

TEST_CASE("label_candidates") {
  auto cands = generate_candidates(Document::FromText("d", "neural network and a cat"));
  const auto diag = label_candidates(cands, {"Neural Networks", "dog", "a very long author keyphrase"});
  for (const auto& c : cands) {
    REQUIRE(c.label);
    CHECK(*c.label == (c.key.text() == "neural network"));
  }
  CHECK(diag.author_keyphrases == 3);
  CHECK(diag.unmatchable == 1);
  CHECK(diag.matched == 1);

  auto cats = generate_candidates(Document::FromText("d", "cat"));
  label_candidates(cats, {"dog"});
  CHECK_FALSE(*cats[0].label);
}

TEST_CASE("label_candidates: coverage diagnostic tracks body coverage") {
  // 3 of 4 author keyphrases occur in the body.
  auto cands = generate_candidates(Document::FromText("d", "genetic algorithms evolve neural networks for graph coloring"));
  const auto diag = label_candidates(cands, {"genetic algorithm", "neural network", "graph coloring", "quantum foam"});
  CHECK(static_cast<double>(diag.matched) / diag.author_keyphrases == doctest::Approx(0.75));
}

TEST_CASE("label_candidates: invariant to author case and inflection") {
  auto a = generate_candidates(Document::FromText("d", "the neural network learns"));
  auto b = a;
  label_candidates(a, {"neural network"});
  label_candidates(b, {"NEURAL NETWORKS"});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].label == b[i].label);
}
