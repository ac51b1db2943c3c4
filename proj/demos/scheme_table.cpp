// Prints, for IMEX-BDF1..6 and the sixth-order scheme, the minima of the two
// generating polynomials, whether an energy certificate exists, and the
// A(theta) angle of the implicit part.

#include "imexlmm/certify.hpp"
#include "imexlmm/schemes.hpp"
#include "imexlmm/stability.hpp"

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

int main() {
  using namespace imexlmm;
  std::vector<std::pair<std::string, SchemeCoefficients>> schemes;
  for (int k = 1; k <= 6; ++k) schemes.emplace_back("BDF" + std::to_string(k), bdf_coefficients(k));
  schemes.emplace_back("LMM6", lmm6_scheme());

  std::printf("%-6s %3s %12s %12s %12s %10s\n", "scheme", "k", "min T(x;a)", "min T(x;b)", "certified", "angle");
  for (const auto& [name, s] : schemes) {
    const auto rep = certify_scheme(s, {1.0, 1.0, 1.0});
    const double angle = stability_angle(s);
    std::printf("%-6s %3d %12.6f %12.6f %12s %9.3f\n", name.c_str(), s.k, rep.alpha_max, rep.beta_max,
                rep.refused ? "no" : "yes", angle);
  }
}
