#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rfuq/csv.hpp"

using namespace rfuq;

namespace {

struct TempCsv {
  std::filesystem::path path;
  explicit TempCsv(const std::string& contents) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("rfuq_csv_test_" + std::to_string(counter++) + ".csv");
    std::ofstream out(path);
    out << contents;
  }
  ~TempCsv() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("all-numeric files keep their feature count") {
  TempCsv f("a,b,y\n1,2,3\n4,5,6\n7,8,9\n");
  Dataset d = load_csv(f.path.string(), "y", Task::regression);
  CHECK(d.n_features() == 2);
  CHECK(d.n_rows() == 3);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(d.features(1, 0) == 4.0);
  CHECK(d.features(2, 1) == 8.0);
  CHECK(d.response == std::vector<double>{3, 6, 9});
}

TEST_CASE("a 3-level categorical grows the feature count by two") {
  TempCsv f("color,x,y\nred,1,0.5\ngreen,2,1.5\nblue,3,2.5\nred,4,3.5\n");
  Dataset d = load_csv(f.path.string(), "y", Task::regression);
  CHECK(d.n_features() == 4);  // 3 indicators replace 1 column, plus x
  CHECK(d.feature_names ==
        std::vector<std::string>{"color=red", "color=green", "color=blue", "x"});
  // First-appearance order: red, green, blue.
  CHECK(d.features(0, 0) == 1.0);
  CHECK(d.features(1, 1) == 1.0);
  CHECK(d.features(2, 2) == 1.0);
  CHECK(d.features(3, 0) == 1.0);
  CHECK(d.features(3, 1) == 0.0);
}

TEST_CASE("fixture matches a hand-built matrix") {
  TempCsv f("x1,cat,y\n0.5,u,10\n1.5,v,20\n2.5,u,30\n");
  Dataset d = load_csv(f.path.string(), "y", Task::regression);
  // Expected columns: x1, cat=u, cat=v.
  double expected[3][3] = {{0.5, 1, 0}, {1.5, 0, 1}, {2.5, 1, 0}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(d.features(r, c) == expected[r][c]);
}

TEST_CASE("classification targets map to dense first-appearance indices") {
  TempCsv f("x,label\n1,cat\n2,dog\n3,cat\n4,bird\n");
  Dataset d = load_csv(f.path.string(), "label", Task::classification);
  CHECK(d.class_labels == std::vector<std::string>{"cat", "dog", "bird"});
  CHECK(d.response == std::vector<double>{0, 1, 0, 2});
}

TEST_CASE("missing values raise errors with the line number") {
  TempCsv f("a,y\n1,2\n,3\n");
  try {
    load_csv(f.path.string(), "y", Task::regression);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  TempCsv g("a,y\n1,2\nNA,3\n");
  CHECK_THROWS_AS(load_csv(g.path.string(), "y", Task::regression), std::runtime_error);
}

TEST_CASE("malformed rows raise errors with the line number") {
  TempCsv f("a,b,y\n1,2,3\n4,5\n");
  try {
    load_csv(f.path.string(), "y", Task::regression);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("absent target column and non-numeric regression target are rejected") {
  TempCsv f("a,y\n1,2\n3,4\n");
  CHECK_THROWS_AS(load_csv(f.path.string(), "missing", Task::regression), std::runtime_error);
  TempCsv g("a,y\n1,hi\n3,lo\n");
  CHECK_THROWS_AS(load_csv(g.path.string(), "y", Task::regression), std::runtime_error);
}

TEST_CASE("quoted fields with commas parse") {
  TempCsv f("name,y\n\"a,b\",1\n\"c\"\"d\",2\n");
  Dataset d = load_csv(f.path.string(), "y", Task::regression);
  CHECK(d.feature_names == std::vector<std::string>{"name=a,b", "name=c\"d"});
}

TEST_CASE("standardize maps {0,2} to {-1,1} with population sd") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(2, 1);
  d.features(0, 0) = 0;
  d.features(1, 0) = 1;
  d.response = {0.0, 2.0};
  ResponseTransform t = standardize_response(d);
  CHECK(t.mean == 1.0);
  CHECK(t.sd == 1.0);  // population sd, not sample sd
  CHECK(d.response == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("standardize rejects constant responses") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(3, 1);
  d.response = {5.0, 5.0, 5.0};
  CHECK_THROWS_AS(standardize_response(d), std::invalid_argument);
}

TEST_CASE("standardize round-trips through the stored transform") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(4, 1);
  d.response = {1.0, 3.0, -2.0, 7.5};
  std::vector<double> original = d.response;
  ResponseTransform t = standardize_response(d);

  double mean = 0.0;
  for (double y : d.response) mean += y;
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));
  double var = 0.0;
  for (double y : d.response) var += y * y;
  CHECK(var / 4.0 == doctest::Approx(1.0).epsilon(1e-12));

  for (std::size_t i = 0; i < 4; ++i)
    CHECK(t.invert(d.response[i]) == doctest::Approx(original[i]).epsilon(1e-12));
}
