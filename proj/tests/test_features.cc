#include <doctest.h>

#include <cmath>
#include <random>

#include "coherex/error.h"
#include "coherex/features.h"

using namespace coherex;

namespace {

CandidatePhrase cand_at(std::size_t first, int tf = 1) {
  CandidatePhrase c;
  c.key = NormalizedPhrase({"x"});
  c.term_frequency = tf;
  c.first_occurrence_word_index = first;
  return c;
}

Document doc_of_length(std::size_t n, std::string id = "d") {
  Document d;
  d.id = std::move(id);
  d.word_count = n;
  return d;
}

}  // namespace

TEST_CASE("tfidf_value: arithmetic") {
  CHECK(tfidf_value(2, 100, 1, 8) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(tfidf_value(3, 40, 5, 5) == 0.0);
  CHECK_THROWS_AS(tfidf_value(1, 0, 1, 2), ContractViolation);
}

TEST_CASE("tfidf_value: random tuples against an independent evaluation") {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    const int tf = 1 + static_cast<int>(rng() % 20);
    const std::size_t wc = 50 + rng() % 5000;
    const std::size_t n = 2 + rng() % 500;
    const std::size_t df = 1 + rng() % n;
    const double want = (static_cast<double>(tf) / wc) * (std::log(static_cast<double>(n)) - std::log(static_cast<double>(df))) /
                        std::log(2.0);
    CHECK(std::abs(tfidf_value(tf, wc, df, n) - want) <= 1e-12);
  }
}

TEST_CASE("tfidf: in-corpus and held-out documents") {
  Corpus c;
  c.documents.push_back(Document::FromText("a", "neural networks learn"));
  c.documents.push_back(Document::FromText("b", "neural networks and trees"));
  c.documents.push_back(Document::FromText("c", "decision trees"));
  c.documents.push_back(Document::FromText("d", "graphs"));
  const TextProcessor tp;
  const auto stats = CorpusStats::Build(c, tp, 2);
  CHECK(stats.document_count == 4);
  CHECK(stats.df(normalize("neural networks")) == 2);
  CHECK(stats.df(normalize("tree")) == 2);
  CHECK(stats.df(normalize("absent")) == 0);

  const auto cands = generate_candidates(c.documents[0], tp);
  const auto& nn = *std::find_if(cands.begin(), cands.end(), [](const auto& x) { return x.key.text() == "neural network"; });
  // In the stats: df = 2, N = 4.
  CHECK(tfidf(nn, c.documents[0], stats) == doctest::Approx((1.0 / 3.0) * 1.0));
  // A held-out document with the same text: df' = 3, N' = 5.
  const auto held = Document::FromText("zzz", "neural networks learn");
  CHECK(tfidf(nn, held, stats) == doctest::Approx((1.0 / 3.0) * -std::log2(3.0 / 5.0)));
  CHECK_THROWS_AS(tfidf(nn, doc_of_length(0), stats), ContractViolation);
}

TEST_CASE("tfidf: phrase in every document scores zero") {
  Corpus c;
  for (const char* id : {"a", "b", "c"}) c.documents.push_back(Document::FromText(id, "common phrase here"));
  const TextProcessor tp;
  const auto stats = CorpusStats::Build(c, tp);
  for (const auto& cand : generate_candidates(c.documents[0], tp)) CHECK(tfidf(cand, c.documents[0], stats) == 0.0);
}

TEST_CASE("distance") {
  CHECK(distance(cand_at(10), doc_of_length(250)) == doctest::Approx(0.04));
  CHECK(distance(cand_at(0), doc_of_length(250)) == 0.0);
  CHECK(distance(cand_at(49), doc_of_length(50)) == doctest::Approx(0.98));
  CHECK_THROWS_AS(distance(cand_at(0), doc_of_length(0)), ContractViolation);
}

TEST_CASE("keyphrase_frequency: leave the current document out") {
  Corpus c;
  for (int i = 0; i < 7; ++i) {
    auto d = Document::FromText("k" + std::to_string(i), "text");
    d.author_keyphrases = std::vector<std::string>{"Genetic Algorithms", "genetic algorithm"};
    c.documents.push_back(std::move(d));
  }
  auto other = Document::FromText("o", "text");
  other.author_keyphrases = std::vector<std::string>{"one two three four", "neural nets"};
  c.documents.push_back(other);
  const auto table = KeyfreqTable::Build(c, TextProcessor());
  const auto key = normalize("genetic algorithm");
  // Two surface variants in one document count once.
  CHECK(keyphrase_frequency(key, table, "k0") == 6);
  CHECK(keyphrase_frequency(key, table, "outside") == 7);
  CHECK(keyphrase_frequency(normalize("never used"), table, "k0") == 0);
  CHECK(keyphrase_frequency(normalize("neural nets"), table, "o") == 0);
  CHECK(keyphrase_frequency(normalize("neural nets"), table, "k3") == 1);
}

TEST_CASE("keyphrase_frequency: current doc outside the keyfreq corpus") {
  Corpus c;
  for (int i = 0; i < 4; ++i) {
    auto d = Document::FromText("k" + std::to_string(i), "text");
    d.author_keyphrases = std::vector<std::string>{"support vector machine"};
    c.documents.push_back(std::move(d));
  }
  const auto table = KeyfreqTable::Build(c, TextProcessor());
  CHECK(keyphrase_frequency(normalize("support vector machines"), table, "test-doc") == 4);
}

TEST_CASE("tfidf_value: monotone in tf and df") {
  std::mt19937 rng(6);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + rng() % 300, wc = 10 + rng() % 1000;
    const std::size_t df = 1 + rng() % (n - 1);
    const int tf = 1 + static_cast<int>(rng() % 30);
    CHECK(tfidf_value(tf + 1, wc, df, n) >= tfidf_value(tf, wc, df, n));
    CHECK(tfidf_value(tf, wc, df + 1, n) <= tfidf_value(tf, wc, df, n));
  }
}

TEST_CASE("distance: in [0, 1) and blind to text after the first occurrence") {
  std::mt19937 rng(12);
  const TextProcessor tp;
  for (int i = 0; i < 50; ++i) {
    std::string prefix;
    for (std::size_t k = rng() % 20; k > 0; --k) prefix += "filler" + std::to_string(rng() % 5) + " ";
    std::string tail1, tail2;
    for (std::size_t k = rng() % 20; k > 0; --k) tail1 += " tail" + std::to_string(rng() % 9);
    for (std::size_t k = rng() % 20; k > 0; --k) tail2 += " other" + std::to_string(rng() % 9);
    const auto d1 = Document::FromText("a", prefix + "target" + tail1);
    const auto d2 = Document::FromText("b", prefix + "target" + tail2);
    auto find = [&](const Document& d) {
      for (const auto& c : generate_candidates(d, tp)) {
        if (c.key.text() == "target") return c;
      }
      FAIL("target missing");
      return CandidatePhrase{};
    };
    const auto c1 = find(d1), c2 = find(d2);
    const double x1 = distance(c1, d1), x2 = distance(c2, d2);
    CHECK(x1 >= 0.0);
    CHECK(x1 < 1.0);
    CHECK(x1 * d1.word_count == doctest::Approx(x2 * d2.word_count));
  }
}
