#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmner/corpus.hpp"
#include "fmner/error.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace fmner;

namespace {

std::vector<Sentence> parse(const std::string& text, std::size_t token_col = 0,
                            std::size_t tag_col = 3) {
  std::istringstream in(text);
  return parse_columns(in, "memory", token_col, tag_col);
}

Sentence sentence(std::vector<std::pair<std::string, std::string>> tokens) {
  Sentence s;
  for (auto& [surface, tag] : tokens) {
    s.push_back({surface, tag});
  }
  return s;
}

Candidate named(std::string surface, std::string tag) {
  Candidate c;
  std::istringstream words(surface);
  for (std::string w; words >> w;) {
    c.span_tokens.push_back(w);
  }
  c.gold_tag = std::move(tag);
  return c;
}

} // namespace

TEST_CASE("parse_columns") {
  SUBCASE("column selection") {
    const auto s = parse("EU NNP B-NP B-ORG\n");
    REQUIRE(s.size() == 1);
    CHECK(s[0][0] == TaggedToken{"EU", "B-ORG"});
  }
  SUBCASE("blank lines split sentences, DOCSTART is skipped") {
    const auto s = parse("-DOCSTART- -X- -X- O\n\nA x x O\nB x x O\n\n\nC x x O\n");
    REQUIRE(s.size() == 2);
    CHECK(s[0].size() == 2);
    CHECK(s[1].size() == 1);
  }
  SUBCASE("I- at sentence start is repaired") {
    const auto s = parse("Jo x x I-PER\nSmith x x I-PER\nsaid x x O\nParis x x I-LOC\n");
    CHECK(s[0][0].tag == "B-PER");
    CHECK(s[0][1].tag == "I-PER");
    CHECK(s[0][3].tag == "B-LOC");
  }
  SUBCASE("type change inside a run starts a new span") {
    std::vector<std::string> tags{"B-PER", "I-LOC", "I-LOC", "O"};
    repair_bio(tags);
    CHECK(tags == std::vector<std::string>{"B-PER", "B-LOC", "I-LOC", "O"});
  }
  SUBCASE("ragged row reports its line") {
    try {
      parse("EU NNP B-NP B-ORG\nrejects VBZ\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("malformed tag") {
    CHECK_THROWS_AS(parse("EU NNP B-NP ORG\n"), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_column_file("/nonexistent/file.conll", 0, 3), IoError);
  }
}

TEST_CASE("extract_candidates") {
  SUBCASE("BIO span decoding") {
    const std::vector<Sentence> s{sentence({{"John", "B-PER"}, {"Smith", "I-PER"}, {"spoke", "O"}})};
    const auto c = extract_candidates(s);
    REQUIRE(c.size() == 1);
    CHECK(c[0].span_tokens == std::vector<std::string>{"John", "Smith"});
    CHECK(c[0].left_context.empty());
    CHECK(c[0].right_context == std::vector<std::string>{"spoke"});
    CHECK(c[0].gold_tag == "PER");
  }
  SUBCASE("capitalized non-entity tokens become O candidates") {
    const std::vector<Sentence> s{
        sentence({{"on", "O"}, {"Monday", "O"}, {"Kohl", "B-PER"}, {"spoke", "O"}})};
    const auto c = extract_candidates(s);
    REQUIRE(c.size() == 2);
    CHECK(c[0].surface() == "Monday");
    CHECK(c[0].gold_tag == "O");
    CHECK(c[0].left_context == std::vector<std::string>{"on"});
    CHECK(c[0].right_context == std::vector<std::string>{"Kohl", "spoke"});
    CHECK(c[1].surface() == "Kohl");
  }
  SUBCASE("adjacent spans of different type") {
    const std::vector<Sentence> s{
        sentence({{"EU", "B-ORG"}, {"German", "B-MISC"}, {"call", "O"}})};
    const auto c = extract_candidates(s);
    REQUIRE(c.size() == 2);
    CHECK(c[0].gold_tag == "ORG");
    CHECK(c[1].gold_tag == "MISC");
    CHECK(c[1].left_context == std::vector<std::string>{"EU"});
  }
}

TEST_CASE("property: spans are contiguous and contexts partition the sentence") {
  std::mt19937_64 rng(44);
  const std::vector<std::string> tags{"O", "O", "B-PER", "I-PER", "B-LOC", "I-LOC", "I-ORG"};
  const std::vector<std::string> words{"the", "Paris", "x", "Bank", "of", "IBM", ","};
  std::uniform_int_distribution<std::size_t> pick(0, 6);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> tag_seq;
    Sentence s;
    for (std::size_t i = len(rng); i > 0; --i) {
      s.push_back({words[pick(rng)], ""});
      tag_seq.push_back(tags[pick(rng)]);
    }
    repair_bio(tag_seq);
    std::vector<std::string> surfaces;
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i].tag = tag_seq[i];
      surfaces.push_back(s[i].surface);
    }
    const std::vector<Sentence> one{s};
    for (const auto& c : extract_candidates(one)) {
      std::vector<std::string> rebuilt = c.left_context;
      rebuilt.insert(rebuilt.end(), c.span_tokens.begin(), c.span_tokens.end());
      rebuilt.insert(rebuilt.end(), c.right_context.begin(), c.right_context.end());
      CHECK(rebuilt == surfaces);
    }
  }
}

TEST_CASE("filter_unknown") {
  const std::vector<Candidate> training{named("john", "PER"), named("paris", "LOC")};
  const std::vector<Candidate> eval{named("John", "PER"), named("Berlin", "LOC")};
  const auto kept = filter_unknown(eval, training);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].surface() == "Berlin");

  CHECK(filter_unknown(std::vector<Candidate>{named("JOHN", "PER")},
                       std::vector<Candidate>{named("John", "PER")})
            .empty());
  CHECK(filter_unknown(eval, {}) == eval);
  // Multi-token surfaces match as a whole.
  CHECK(filter_unknown(std::vector<Candidate>{named("New York", "LOC")},
                       std::vector<Candidate>{named("York", "LOC")})
            .size() == 1);
  // Idempotent.
  CHECK(filter_unknown(kept, training) == kept);
}

TEST_CASE("corpus_stats") {
  const std::vector<Candidate> c{named("A", "PER"), named("a", "PER"), named("B", "LOC")};
  const auto stats = corpus_stats(c);
  CHECK(stats.at("PER") == TagCounts{2, 1});
  CHECK(stats.at("LOC") == TagCounts{1, 1});
  CHECK(corpus_stats({}).empty());
  std::size_t total = 0;
  for (const auto& [tag, counts] : stats) {
    total += counts.tokens;
    CHECK(counts.types <= counts.tokens);
  }
  CHECK(total == c.size());
}

TEST_CASE("stats table layout") {
  CorpusStats train{{"PER", {6516, 3489}}, {"O", {36673, 5821}}, {"LOC", {6159, 987}}};
  CorpusStats dev{{"PER", {1040, 762}}};
  const auto table = format_stats_table({{"training", train}, {"development", dev}});
  std::istringstream lines(table);
  std::string header, per, loc, o;
  std::getline(lines, header);
  std::getline(lines, per);
  std::getline(lines, loc);
  std::getline(lines, o);
  CHECK(per.starts_with("PER"));
  CHECK(per.find("6,516 (3,489)") != std::string::npos);
  CHECK(per.find("1,040 (762)") != std::string::npos);
  CHECK(loc.starts_with("LOC"));
  CHECK(loc.find("0 (0)") != std::string::npos);
  CHECK(o.starts_with("O "));
  CHECK(o.find("36,673 (5,821)") != std::string::npos);
}

TEST_CASE("candidates file round trip") {
  std::vector<Candidate> c{
      Candidate{{"New", "York"}, {"in"}, {",", "said"}, std::string("LOC")},
      Candidate{{"Monday"}, {}, {}, std::string("O")},
      Candidate{{"X"}, {"a", "b"}, {}, std::nullopt},
  };
  std::stringstream ss;
  write_candidates(ss, c);
  CHECK(ss.str() == "LOC\tNew York\tin\t, said\nO\tMonday\t\t\n\tX\ta b\t\n");
  CHECK(read_candidates(ss, "memory") == c);

  std::istringstream bad("LOC\tNew York\tin\n");
  CHECK_THROWS_AS(read_candidates(bad, "bad"), ParseError);
}

TEST_CASE("synthetic corpus goes through parse, extract and filter") {
  fmner::testing::TempDir dir("fmner-corpus");
  fmner::testing::write_xor_corpus(dir.path(), 3);
  const auto train = extract_candidates(parse_column_file(dir.path() / "train.conll", 0, 3));
  const auto dev = extract_candidates(parse_column_file(dir.path() / "dev.conll", 0, 3));
  CHECK(train.size() == 500);
  CHECK(dev.size() == 150);
  const auto kept = filter_unknown(dev, train);
  CHECK(kept.size() <= dev.size());
  for (const auto& c : kept) {
    CHECK(std::none_of(train.begin(), train.end(), [&](const Candidate& t) {
      return normalized_surface(t) == normalized_surface(c);
    }));
  }
  const auto stats = corpus_stats(train);
  CHECK(stats.at("O").tokens == 100);
}
