#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <string>

#include "holo/cones.hpp"
#include "holo/matrix_io.hpp"
#include "holo/suites.hpp"

using namespace holo;

namespace {

Json strip_time(Json j) {
  j.erase("wall_time_seconds");
  return j;
}

}  // namespace

TEST_CASE("complex matrix json round trips exactly") {
  MatrixXcd m(2, 3);
  m << Complex(0.1, -2.5), Complex(3.25, 0), Complex(1.0 / 3.0, 7),
      Complex(-1e-12, 4e8), Complex(0, 0), Complex(-0.625, 0.3);
  const Json j = complex_matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["entries"].size() == 6);
  CHECK(complex_matrix_from_json(j) == m);

  // through a serialized string as well
  const Json reparsed = Json::parse(j.dump());
  CHECK(complex_matrix_from_json(reparsed) == m);

  // field order is part of the format
  const Json small = complex_matrix_to_json(MatrixXcd::Zero(1, 1));
  CHECK(small.dump() == R"({"rows":1,"cols":1,"entries":[[0.0,0.0]]})");

  const MatrixXcd empty(0, 0);
  CHECK(complex_matrix_from_json(complex_matrix_to_json(empty)) == empty);
}

TEST_CASE("integer matrix json round trips exactly") {
  IntMatrix m(2, 2);
  m << 0, -9, std::int64_t(1) << 62, 12345678901234567LL;
  const Json j = integer_matrix_to_json(m);
  CHECK(integer_matrix_from_json(j) == m);
  CHECK(integer_matrix_from_json(Json::parse(j.dump())) == m);
}

TEST_CASE("complex entries accept scalar and one or two component forms") {
  Json j;
  j["rows"] = 1;
  j["cols"] = 3;
  j["entries"] = Json::array({2, Json::array({3}), Json::array({4, 5})});
  const MatrixXcd m = complex_matrix_from_json(j);
  CHECK(m(0, 0) == Complex(2, 0));
  CHECK(m(0, 1) == Complex(3, 0));
  CHECK(m(0, 2) == Complex(4, 5));
}

TEST_CASE("malformed matrix json is rejected") {
  Json ok;
  ok["rows"] = 1;
  ok["cols"] = 2;
  ok["entries"] = Json::array({1, 2});

  Json j = ok;
  j.erase("rows");
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["rows"] = 2.5;
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["rows"] = "1";
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["rows"] = -1;
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["rows"] = 4097;
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["entries"] = Json::array({1});
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["entries"] = "nope";
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["entries"] = Json::array({1, Json::array({1, 2, 3})});
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["entries"] = Json::array({1, Json::array({"a"})});
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  j = ok;
  j["entries"] = Json::array({1, std::numeric_limits<double>::infinity()});
  CHECK_THROWS_AS(complex_matrix_from_json(j), InvalidInputError);

  // the integer reader takes bare integers only
  j = ok;
  CHECK(integer_matrix_from_json(j) == IntMatrix((IntMatrix(1, 2) << 1, 2).finished()));
  j["entries"] = Json::array({1, 2.5});
  CHECK_THROWS_AS(integer_matrix_from_json(j), InvalidInputError);
  j["entries"] = Json::array({1, Json::array({2, 0})});
  CHECK_THROWS_AS(integer_matrix_from_json(j), InvalidInputError);
}

TEST_CASE("matrix files round trip") {
  const std::string cpath = "/tmp/holo_io_complex.json";
  MatrixXcd m(2, 2);
  m << Complex(1, 2), Complex(-0.5, 0), Complex(0, 3.75), Complex(4, -4);
  write_complex_matrix(cpath, m);
  CHECK(read_complex_matrix(cpath) == m);

  const std::string ipath = "/tmp/holo_io_int.json";
  IntMatrix im(2, 1);
  im << 6, -7;
  write_integer_matrix(ipath, im);
  CHECK(read_integer_matrix(ipath) == im);

  // files carry pretty-printed json with a trailing newline
  std::ifstream in(cpath);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  CHECK(text == complex_matrix_to_json(m).dump(2) + "\n");

  std::remove(cpath.c_str());
  std::remove(ipath.c_str());
}

TEST_CASE("json file errors map to invalid input") {
  const std::string path = "/tmp/holo_io_garbage.json";
  std::ofstream(path) << "{not json at all";
  CHECK_THROWS_AS(read_json_file(path), InvalidInputError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file("/tmp/holo_io_missing_file.json"),
                  InvalidInputError);
  CHECK_THROWS_AS(write_json_file("/tmp/no_such_dir_holo/x.json", Json::object()),
                  InvalidInputError);
}

TEST_CASE("run config validation") {
  RunConfig cfg;
  cfg.group = "sl";
  cfg.n = 5;
  cfg.validate();
  CHECK(cfg.group == "sl:5");
  CHECK(cfg.n == 5);

  RunConfig def;
  def.validate();
  CHECK(def.group == "gl+:3");
  CHECK(def.n == 3);

  RunConfig bad = def;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);

  bad = def;
  bad.deltas = {0.2};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
  bad.deltas = {0.0};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
  bad.deltas = {};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
  bad.deltas = {0.1};
  CHECK_NOTHROW(bad.validate());

  bad = def;
  bad.tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);

  bad = def;
  bad.radius = 3.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);

  bad = def;
  bad.group = "xx";
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("suite reports are deterministic and carry the schema") {
  RunConfig cfg;
  cfg.suite = Suite::Cones;
  cfg.group = "sl:3";
  cfg.trials = 8;
  cfg.deltas = {0.02, 0.05};
  cfg.seed = 9;

  const Report a = run_suite(cfg);
  const Report b = run_suite(cfg);
  CHECK(strip_time(a.json).dump() == strip_time(b.json).dump());

  setenv("HOLO_THREADS", "4", 1);
  const Report c = run_suite(cfg);
  setenv("HOLO_THREADS", "1", 1);
  const Report d = run_suite(cfg);
  unsetenv("HOLO_THREADS");
  CHECK(strip_time(a.json).dump() == strip_time(c.json).dump());
  CHECK(strip_time(a.json).dump() == strip_time(d.json).dump());

  CHECK(a.json["schema"] == 1);
  CHECK(a.json["mode"] == "verify");
  CHECK(a.json["suite"] == "cones");
  CHECK(a.json["config"]["group"] == "sl:3");
  CHECK(a.json["config"]["trials"] == 8);
  CHECK(a.failures == 0);
  CHECK(a.json["failures_total"] == 0);

  std::set<std::string> ids;
  for (const Json& claim : a.json["claims"])
    ids.insert(claim["claim"].get<std::string>());
  CHECK(ids == std::set<std::string>{"quadratic-form-cone", "tube-gram-cone",
                                     "cone-scale-invariance",
                                     "cone-monotonicity"});
}

TEST_CASE("run_suite writes the report file when asked") {
  RunConfig cfg;
  cfg.suite = Suite::Cones;
  cfg.trials = 4;
  cfg.seed = 3;
  cfg.out = "/tmp/holo_io_report.json";
  const Report rep = run_suite(cfg);
  const Json loaded = read_json_file(cfg.out);
  CHECK(loaded["schema"] == 1);
  CHECK(loaded["suite"] == "cones");
  CHECK(strip_time(loaded).dump() == strip_time(rep.json).dump());
  std::remove(cfg.out.c_str());
}

TEST_CASE("counterexample search validates its arguments") {
  CHECK_THROWS_AS(find_counterexample("no-such-claim", {0.1}, 10, 1),
                  InvalidInputError);
  CHECK_THROWS_AS(find_counterexample("B2-not-psd", {0.1}, 0, 1),
                  InvalidInputError);
  CHECK_THROWS_AS(find_counterexample("B2-not-psd", {}, 10, 1),
                  InvalidInputError);
  CHECK_THROWS_AS(find_counterexample("B2-not-psd", {0.5}, 10, 1),
                  InvalidInputError);
}

TEST_CASE("counterexample witnesses replay from their json") {
  const Report rep = find_counterexample("B2-not-psd", {0.1}, 1000, 7);
  CHECK(rep.failures == 0);
  CHECK(rep.json["found"] == true);
  CHECK(rep.json["delta_used"] == 0.1);
  CHECK(rep.json["witness"]["source"] == "targeted-family");

  const MatrixXcd b = complex_matrix_from_json(rep.json["witness"]["B"]);
  CHECK(b.rows() == 2);
  CHECK(b(1, 1).real() == doctest::Approx(150.0));
  CHECK(symmetric_cone_margin(b, ConeParams(0.1)) > 0.0);
  const MatrixXcd b2 = b * b;
  const double min_eig = min_symmetric_eigenvalue(real_part(b2));
  CHECK(min_eig < 0.0);
  CHECK(min_eig ==
        doctest::Approx(rep.json["witness"]["re_B2_min_eig"].get<double>()));

  const Report prod = find_counterexample("product-not-in-M", {0.1}, 1000, 7);
  CHECK(prod.json["found"] == true);
  const MatrixXcd pa = complex_matrix_from_json(prod.json["witness"]["A"]);
  const MatrixXcd pb = complex_matrix_from_json(prod.json["witness"]["B"]);
  const ConeParams params(0.1);
  CHECK(in_matrix_cone(pa, params));
  CHECK(in_matrix_cone(pb, params));
  const double m_ab = matrix_cone_margin(pa * pb, params);
  const double m_ba = matrix_cone_margin(pb * pa, params);
  CHECK(std::min(m_ab, m_ba) < 0.0);
}
