#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ataheat/io.hpp"
#include "ataheat/rng.hpp"
#include "test_support.hpp"

using namespace ataheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "ataheat_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("pauli sum json round trip with ascending masks") {
  DiagonalPauliSum p(4);
  p.add_term(9, -0.375);
  p.add_term(2, 1.5);
  p.add_term(0, 0.125);

  const nlohmann::json j = io::to_json(p);
  CHECK(j.at("n") == 4);
  REQUIRE(j.at("terms").size() == 3);
  CHECK(j.at("terms")[0][0] == 0);
  CHECK(j.at("terms")[1][0] == 2);
  CHECK(j.at("terms")[2][0] == 9);

  const DiagonalPauliSum back = io::pauli_sum_from_json(j);
  CHECK(back.n == p.n);
  CHECK(back.terms == p.terms);

  CHECK_THROWS_AS(io::pauli_sum_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("tree json carries masks, weights and the loss history") {
  AnsatzTree tree;
  tree.masks = {0, 5};
  tree.alphas = {{1.5, 0.0}, {-0.25, 0.5}};
  tree.loss_history = {1.0, 0.25};
  const nlohmann::json j = io::to_json(tree);
  CHECK(j.at("masks") == nlohmann::json::array({0, 5}));
  CHECK(j.at("alphas")[1][0] == -0.25);
  CHECK(j.at("alphas")[1][1] == 0.5);
  CHECK(j.at("loss_history")[1] == 0.25);
}

TEST_CASE("csv writers use the fixed dialect") {
  TempDir tmp;

  SUBCASE("statevector snapshot") {
    Statevector s = Statevector::from_complex({{1.0, -2.0}, {0.5, 0.0}}, Domain::position);
    io::write_statevector_csv(tmp.path / "sv.csv", s);
    CHECK(slurp(tmp.path / "sv.csv") == "index,real,imag\n0,1,-2\n1,0.5,0\n");
  }

  SUBCASE("trajectory columns") {
    EvolveState state;
    state.step = 3;
    state.diag.loss = 0.5;
    state.diag.depth = 7;
    state.diag.fidelity = 0.75;
    state.diag.dropped_mass = 0.0;
    state.diag.reality_leakage = 0.125;
    state.diag.term_count = 9;
    const std::vector<EvolveState> steps{state};
    io::write_trajectory_csv(tmp.path / "traj.csv", steps);
    CHECK(slurp(tmp.path / "traj.csv") ==
          "step,loss,depth,fidelity,dropped_mass,reality_leakage,term_count\n"
          "3,0.5,7,0.75,0,0.125,9\n");
  }

  SUBCASE("double formatting round-trips and stays locale-free") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(-3.0) == "-3");
    const double v = 1.0 / 3.0;
    CHECK(std::stod(io::format_double(v)) == v);
  }
}
