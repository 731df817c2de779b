// Distance from c = -3 - i to the numerical range of [[0, -4i], [2, 0]],
// computed by the SDP route and by the support-function sweep.
#include <cstdio>

#include "crawford/crawford.hpp"

int main() {
  using namespace crawford;
  ComplexMatrix C(2);
  C(0, 1) = GaussianRational::parse("-4i");
  C(1, 0) = GaussianRational(2);

  CrawfordQuery q{C, GaussianRational::parse("-3-i"), 1e-5, Method::Both};
  const auto r = crawford_number(q);
  std::printf("chi (sdp)    = %.9f\n", *r.sdp_chi);
  std::printf("chi (oracle) = %.9f\n", *r.oracle_chi);
  std::printf("nearest point z = %.6f %+.6fi\n", r.nearest_point.real(), r.nearest_point.imag());
  std::printf("ellipsoid iterations = %zu (chart dimension %zu)\n", r.solver->iterations, r.solver->chart_dimension);
  return 0;
}
