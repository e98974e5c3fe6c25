#include <doctest.h>

#include <sstream>

#include "qcw/errors.hpp"
#include "qcw/grid_io.hpp"

using namespace qcw;

TEST_CASE("grid round trip is exact") {
  const auto mu = sample_coefficient([](cplx z) { return 0.3 * z * std::conj(z) + cplx(0.0, 0.1) * z; }, 16);
  std::stringstream buf;
  write_grid(buf, mu);
  const auto back = read_grid(buf);
  CHECK(back.size() == 16);
  CHECK((back.samples() - mu.samples()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("comments and blank lines are skipped") {
  std::stringstream in("# header comment\nqcw-beltrami-grid 1\n\nM 2\ncell_size 1\n0 0\n0 0\n# mid\n0 0\n0 0\n");
  CHECK(read_grid(in).size() == 2);
}

TEST_CASE("malformed input") {
  auto fails = [](const std::string& text) {
    std::stringstream in(text);
    CHECK_THROWS_AS(read_grid(in), UsageError);
  };
  fails("");
  fails("something-else 1\nM 2\ncell_size 1\n");
  fails("qcw-beltrami-grid 2\nM 2\ncell_size 1\n");
  fails("qcw-beltrami-grid 1\nN 2\ncell_size 1\n");
  fails("qcw-beltrami-grid 1\nM 2\ncell_size 0.5\n0 0\n0 0\n0 0\n0 0\n");
  fails("qcw-beltrami-grid 1\nM 2\ncell_size 1\n0 0\n0 0\n0 0\n");
  fails("qcw-beltrami-grid 1\nM 2\ncell_size 1\n0 0\n0 x\n0 0\n0 0\n");
  std::stringstream big("qcw-beltrami-grid 1\nM 2\ncell_size 1\n0 0\n0 0\n0 0\n1.5 0\n");
  CHECK_THROWS_AS(read_grid(big), DomainError);
  CHECK_THROWS_AS(read_grid_file("/nonexistent/grid.txt"), UsageError);
}
