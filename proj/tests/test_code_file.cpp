#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "zpr/code_file.hpp"

using namespace zpr;

namespace {

const char* z25_text =
    "zpr-code 1\n"
    "p 5\n"
    "r 2\n"
    "kind convolutional\n"
    "role p-encoder\n"
    "rows 2\n"
    "cols 2\n"
    "[1,1] [1,2]\n"
    "[5,5] [5,10]\n";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

std::string parse_error(const std::string& text) {
  try {
    parse_code_text(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("text format round trip") {
  const CodeFile f = parse_code_text(z25_text);
  CHECK(f.kind == CodeKind::convolutional);
  CHECK(f.role == MatrixRole::p_encoder);
  CHECK(f.matrix == PolyMatrix::from_entries(RingParams(5, 2), {{{1, 1}, {1, 2}}, {{5, 5}, {5, 10}}}, 2));
  CHECK(write_code_text(f) == z25_text);
  CHECK(parse_code_json(write_code_json(f)) == f);
}

TEST_CASE("comments, blank lines and non-canonical cells") {
  const std::string text =
      "# lifted code\n"
      "zpr-code 1\n\n"
      "p 5   # prime\n"
      "r 2\n"
      "kind convolutional\n"
      "role p-encoder\n"
      "rows 2\n"
      "cols 2\n"
      "[1, 1,0,0]\t[ 1,2 ]\n"
      "[5,5]   [5,10]  # second row\n";
  const CodeFile f = parse_code_text(text);
  CHECK(write_code_text(f) == z25_text);
  const CodeFile zero = parse_code_text(replace(z25_text, "[5,5]", "[0,0]"));
  CHECK(write_code_text(zero) == replace(z25_text, "[5,5]", "[0]"));
}

TEST_CASE("parse errors name the position") {
  const std::string bad = parse_error(replace(z25_text, "[5,10]", "[5,27]"));
  CHECK(bad.find("line 9") != std::string::npos);
  CHECK(bad.find("cell (2,2)") != std::string::npos);
  CHECK(bad.find("entry 27") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[1,2]\n", "\n")).find("cell (1,2) is missing") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[1,2]\n", "[1,2] [3]\n")).find("more than 2 cells") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[5,5] [5,10]\n", "")).find("end of file") != std::string::npos);
  CHECK(parse_error(std::string(z25_text) + "[1] [1]\n").find("unexpected content") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "p 5", "p 6")).find("line 2") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "kind convolutional", "kind trellis")).find("kind") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "zpr-code 1", "zpr-code 2")).find("version") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[1,1]", "[1,x]")).find("column 4") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[1,1]", "[]")).find("empty") != std::string::npos);
  CHECK(parse_error(replace(z25_text, "[1,1]", "(1,1)")).find("'['") != std::string::npos);
  CHECK(parse_error(replace(replace(z25_text, "convolutional", "block"), "[1,1]", "[1]"))
            .find("constant") != std::string::npos);
  try {
    parse_code_text(replace(z25_text, "[5,10]", "[5,27]"));
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("JSON errors") {
  const std::string json = write_code_json(parse_code_text(z25_text));
  CHECK_THROWS_AS(parse_code_json("{"), ParseError);
  CHECK_THROWS_AS(parse_code_json(replace(json, "\"p\": 5", "\"p\": \"5\"")), ParseError);
  try {
    parse_code_json(replace(json, "10", "27"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("matrix[1][1]") != std::string::npos);
  }
}

TEST_CASE("random round trips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const RingParams ring(trial % 2 ? 3 : 2, 1 + trial % 3);
    CodeFile f;
    f.kind = trial % 4 == 0 ? CodeKind::block : CodeKind::convolutional;
    f.role = trial % 3 == 0 ? MatrixRole::generator : MatrixRole::p_encoder;
    f.matrix = oracle::random_matrix(ring, 1 + trial % 3, 1 + trial % 4, f.kind == CodeKind::block ? 0 : 2, rng);
    const std::string text = write_code_text(f);
    CHECK(parse_code_text(text) == f);
    CHECK(write_code_text(parse_code_text(text)) == text);
    const std::string js = write_code_json(f);
    CHECK(parse_code_json(js) == f);
    CHECK(write_code_json(parse_code_json(js)) == js);
  }
}

TEST_CASE("files select the reader by extension") {
  const auto dir = std::filesystem::temp_directory_path();
  const CodeFile f = parse_code_text(z25_text);
  const std::string text_path = (dir / "zpr_test_code.txt").string();
  const std::string json_path = (dir / "zpr_test_code.json").string();
  write_code_file(text_path, f);
  write_code_file(json_path, f);
  CHECK(read_code_file(text_path) == f);
  CHECK(read_code_file(json_path) == f);
  std::remove(text_path.c_str());
  std::remove(json_path.c_str());
  CHECK_THROWS_AS(read_code_file((dir / "zpr_missing.txt").string()), InvalidArgument);
}
