#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "salsa/trace.hpp"

using namespace salsa;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& body) {
    static int counter = 0;
    path = "trace_test_tmp_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path, std::ios::binary);
    out << body;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("parseTrace reads tokens, skipping blanks and comments") {
  TempFile f("alpha\n\n# a comment\n  beta  \nalpha\r\n");
  auto keys = parseTrace(f.path);
  REQUIRE(keys.size() == 3);
  CHECK(keys[0] == stableId("alpha"));
  CHECK(keys[1] == stableId("beta"));
  CHECK(keys[2] == keys[0]);
  CHECK(keys[0] != keys[1]);
}

TEST_CASE("parseTrace rejects missing and empty inputs") {
  CHECK_THROWS_AS(parseTrace("definitely_not_here_48151623.txt"), TraceIoError);
  TempFile empty("# only a comment\n\n");
  CHECK_THROWS_AS(parseTrace(empty.path), TraceIoError);
}

TEST_CASE("generateZipf is deterministic in the seed") {
  auto a = generateZipf(100, 0.9, 2000, 5);
  auto b = generateZipf(100, 0.9, 2000, 5);
  auto c = generateZipf(100, 0.9, 2000, 6);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == 2000);
}

TEST_CASE("generateZipf degenerate universe of one") {
  auto keys = generateZipf(1, 1.0, 10, 3);
  for (uint64_t k : keys) CHECK(k == keys[0]);
}

TEST_CASE("generateZipf rank-1 frequency matches 1/H_n") {
  // n=10, s=1: P(rank 1) = 1/H_10 ~ 0.341417
  auto keys = generateZipf(10, 1.0, 200000, 77);
  uint64_t top = mix64(1);
  uint64_t hits = 0;
  for (uint64_t k : keys) hits += (k == top);
  double freq = static_cast<double>(hits) / keys.size();
  CHECK(freq == doctest::Approx(0.341417).epsilon(0.02));
}

TEST_CASE("generateZipf argument validation") {
  CHECK_THROWS_AS(generateZipf(0, 1.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(generateZipf(10, 0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(generateZipf(10, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("traceStats hand-computed example") {
  // a b a b : gaps are 2 and 2
  std::vector<uint64_t> seq{1, 2, 1, 2};
  auto st = traceStats(seq);
  CHECK(st.length == 4);
  CHECK(st.distinctKeys == 2);
  REQUIRE(st.meanInterArrival.has_value());
  CHECK(*st.meanInterArrival == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(*st.stdevInterArrival == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(st.singularRatio == 0.0);
}

TEST_CASE("traceStats with unequal gaps") {
  // a a a x : gaps 1, 1; one singular key out of 4 requests
  std::vector<uint64_t> seq{7, 7, 7, 9};
  auto st = traceStats(seq);
  CHECK(st.distinctKeys == 2);
  REQUIRE(st.meanInterArrival.has_value());
  CHECK(*st.meanInterArrival == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.singularRatio == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("traceStats with no repeats has no inter-arrival stats") {
  std::vector<uint64_t> seq{1, 2, 3, 4, 5};
  auto st = traceStats(seq);
  CHECK(st.distinctKeys == 5);
  CHECK_FALSE(st.meanInterArrival.has_value());
  CHECK_FALSE(st.stdevInterArrival.has_value());
  CHECK(st.singularRatio == 1.0);
}
