#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "mcbf/channel.hpp"
#include "mcbf/io.hpp"

using namespace mcbf;

TEST_CASE("instance JSON round trip") {
  ChannelModelParams params;
  params.N = 4;
  params.M = 3;
  params.rng_seed = 5;
  for (auto power : {PowerConstraint::sum(10.0), PowerConstraint::per_antenna_uniform(4, 0.5)}) {
    auto inst = generate_instance(params, power);
    auto back = instance_from_json(instance_to_json(inst));
    CHECK(back.N == inst.N);
    CHECK(back.M == inst.M);
    CHECK((back.noise_vars - inst.noise_vars).norm() == 0.0);
    CHECK(back.power.kind == inst.power.kind);
    for (int m = 0; m < inst.M; ++m)
      CHECK((back.channels[m] - inst.channels[m]).norm() == 0.0);
  }
}

TEST_CASE("instance JSON rejects bad power type") {
  CHECK_THROWS(instance_from_json(
      R"({"N":1,"M":1,"sigma2":[1.0],"power":{"type":"bogus","P":1.0},"H":[[[1.0,0.0]]]})"));
}

TEST_CASE("CSV golden format") {
  CsvRow row;
  row.trial = 3;
  row.n = 10;
  row.m = 50;
  row.k = 4;
  row.solver = "spmp";
  row.lambda_final = 0.125;
  row.t_repeat = 7;
  row.min_snr_db = 12.3456789;
  row.wall_ms = 81.5;
  row.sca_iters = 42;
  row.converged = true;
  std::ostringstream os;
  write_csv({row}, os);
  CHECK(os.str() ==
        "trial,N,M,K,solver,lambda_final,t_repeat,min_snr_db,wall_ms,sca_iters,converged\n"
        "3,10,50,4,spmp,0.125,7,12.3456789,81.5,42,true\n");
}

TEST_CASE("CSV rows deterministic except wall_ms by construction") {
  CsvRow a, b;
  a.min_snr_db = b.min_snr_db = 1.0;
  a.wall_ms = 5.0;
  b.wall_ms = 9.0;
  auto strip_wall = [](std::string s) {
    // wall_ms is column 9 of 11
    std::size_t pos = 0;
    for (int c = 0; c < 8; ++c) pos = s.find(',', pos) + 1;
    std::size_t end = s.find(',', pos);
    return s.substr(0, pos) + s.substr(end);
  };
  CHECK(strip_wall(csv_row_to_string(a)) == strip_wall(csv_row_to_string(b)));
}
