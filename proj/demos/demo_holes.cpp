// Walk one hole system end to end: digit streams of the endpoints, the
// normalized wedge, the translated survivor problem and the dimension of the
// set that never falls into the hole.

#include <cstdio>

#include "bsurv/holes.hpp"

using namespace bsurv;

int main() {
    HoleSystem h = hole_system(3, Rat(2, 9), Rat(31, 90));
    std::printf("hole (a, b) = (2/9, 31/90) under the 3-adic map:\n");
    std::printf("  a digits : %s\n", seq_string(h.a_stream).c_str());
    std::printf("  b digits : %s\n", seq_string(h.b_stream).c_str());

    HoleReport rep = hole_report(h);
    const BridgeResult& br = rep.bridge;
    std::printf("\ntranslated survivor problem:\n");
    std::printf("  lower bound : %s\n", seq_string(br.lower).c_str());
    std::printf("  upper bound : %s\n", seq_string(br.upper).c_str());
    std::printf("  base  in [%.12f, %.12f]\n", br.beta.lo.convert_to<double>(),
                br.beta.hi.convert_to<double>());
    std::printf("  hole  in [%.12f, %.12f]\n", br.t.lo.convert_to<double>(),
                br.t.hi.convert_to<double>());

    std::printf("\ndimension of the survivor set, three routes:\n");
    std::printf("  suffix strips : [%.12f, %.12f]\n", rep.omega_lo, rep.omega_hi);
    std::printf("  raw wedge     : [%.12f, %.12f]\n", rep.sigma_lo, rep.sigma_hi);
    std::printf("  via bridge    : [%.12f, %.12f]\n", br.dim.lo, br.dim.hi);
    std::printf("  routes %s\n", rep.agree ? "agree" : "DISAGREE");
    return 0;
}
