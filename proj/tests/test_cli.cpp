#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "holo/matrix_io.hpp"

using namespace holo;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + HOLOVERIFY_BIN + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("verify bogus-suite") == 2);
  CHECK(run_cli("verify cones --delta 0.3 --trials 2") == 2);
  CHECK(run_cli("counterexample --claim no-such-claim") == 2);
  CHECK(run_cli("decompose --mode sqrt") == 2);
  CHECK(run_cli("cover --demo bogus") == 2);
}

TEST_CASE("cli help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("verify --help") == 0);
}

TEST_CASE("cli verify runs a small suite and writes the report") {
  const std::string out = "/tmp/holo_cli_report.json";
  CHECK(run_cli("verify cones --trials 4 --delta 0.02 --seed 3 --out " + out) ==
        0);
  const Json j = read_json_file(out);
  CHECK(j["schema"] == 1);
  CHECK(j["mode"] == "verify");
  CHECK(j["suite"] == "cones");
  CHECK(j["config"]["trials"] == 4);
  CHECK(j["failures_total"] == 0);
  std::remove(out.c_str());
}

TEST_CASE("cli counterexample finds a witness") {
  const std::string out = "/tmp/holo_cli_cex.json";
  CHECK(run_cli("counterexample --claim B2-not-psd --delta 0.1 --budget 50 "
                "--seed 5 --out " +
                out) == 0);
  const Json j = read_json_file(out);
  CHECK(j["mode"] == "counterexample");
  CHECK(j["found"] == true);
  std::remove(out.c_str());

  // default delta grid kicks in when --delta is omitted
  CHECK(run_cli("counterexample --claim hTh-not-in-Mplus --budget 10") == 0);
}

TEST_CASE("cli decompose modes") {
  const std::string in = "/tmp/holo_cli_dec_in.json";
  const std::string out = "/tmp/holo_cli_dec_out.json";
  MatrixXcd m(2, 2);
  m << Complex(4, 0), Complex(0, 0), Complex(0, 0), Complex(9, 0);
  write_complex_matrix(in, m);

  CHECK(run_cli("decompose --input " + in + " --mode sqrt --out " + out) == 0);
  Json j = read_json_file(out);
  const MatrixXcd s = complex_matrix_from_json(j["S"]);
  CHECK(std::abs(s(0, 0) - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(s(1, 1) - Complex(3, 0)) < 1e-12);
  CHECK(j["residual"].get<double>() < 1e-12);

  CHECK(run_cli("decompose --input " + in + " --mode complex-polar --out " +
                out) == 0);
  j = read_json_file(out);
  CHECK(j.contains("Q"));
  CHECK(j["residual_orth"].get<double>() < 1e-10);

  CHECK(run_cli("decompose --input " + in + " --mode real-polar --out " + out) ==
        0);

  CHECK(run_cli("decompose --input " + in + " --mode bogus") == 2);
  CHECK(run_cli("decompose --input /tmp/holo_cli_no_file.json --mode sqrt") ==
        2);

  // complex input has no real polar form
  MatrixXcd c = m;
  c(0, 1) = Complex(0, 0.5);
  c(1, 0) = Complex(0, 0.5);
  write_complex_matrix(in, c);
  CHECK(run_cli("decompose --input " + in + " --mode real-polar") == 2);

  // spectrum on the branch cut maps to a domain failure, not usage
  MatrixXcd swap(2, 2);
  swap << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  write_complex_matrix(in, swap);
  CHECK(run_cli("decompose --input " + in + " --mode sqrt") == 1);

  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST_CASE("cli snf emits the full factorization") {
  const std::string in = "/tmp/holo_cli_snf_in.json";
  const std::string out = "/tmp/holo_cli_snf_out.json";
  IntMatrix m(2, 2);
  m << 2, 4, 6, 8;
  write_integer_matrix(in, m);
  CHECK(run_cli("snf --input " + in + " --out " + out) == 0);
  const Json j = read_json_file(out);
  const IntMatrix d = integer_matrix_from_json(j["D"]);
  CHECK(d(0, 0) == 2);
  CHECK(d(1, 1) == 4);
  const IntMatrix u = integer_matrix_from_json(j["U"]);
  const IntMatrix v = integer_matrix_from_json(j["V"]);
  CHECK(IntMatrix(u * m * v) == d);
  CHECK(j["torsion_invariants"] == Json::array({2, 4}));
  CHECK(j["free_rank"] == 0);
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST_CASE("cli cover demos self-check") {
  CHECK(run_cli("cover --demo winding --seed 3") == 0);
  CHECK(run_cli("cover --demo multiply --seed 4") == 0);
  CHECK(run_cli("cover") == 0);
}
