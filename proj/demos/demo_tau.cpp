// Classify a few bases and print certified enclosures of the critical value,
// the threshold below which the survivor set of the hole [0, t) keeps full
// Hausdorff dimension.

#include <cstdio>

#include "bsurv/critical.hpp"

using namespace bsurv;

namespace {

const Rat kEps = Rat(1, Int(1) << 64);

void show(const char* label, const Beta& b) {
    TauResult r = tau(b, 8, 40, kEps);
    std::printf("  beta = %-8s %-20s S = %-6s tau in [%.12f, %.12f]\n", label,
                region_name(r.cls.kind), word_string(r.cls.product).c_str(),
                r.certified.lo.convert_to<double>(), r.certified.hi.convert_to<double>());
}

}  // namespace

int main() {
    std::printf("critical values across the spectrum of regions:\n");
    show("2", beta_from_rational(Rat(2)));
    show("11/5", beta_from_rational(Rat(11, 5)));
    show("17/10", beta_from_rational(Rat(17, 10)));
    show("3", beta_from_rational(Rat(3)));

    // at the right endpoint of the first matching interval the staircase
    // jumps: the value there and the limit from above differ
    JumpResult j = jump_at(Word{1}, kEps);
    std::printf("\njump at beta in [%.9f, %.9f]:\n", j.right.lo.convert_to<double>(),
                j.right.hi.convert_to<double>());
    std::printf("  value there : %.9f\n", j.at.hi.convert_to<double>());
    std::printf("  limit above : %.9f\n", j.above.lo.convert_to<double>());

    // the smallest base whose expansion of 1 is unique; descent never
    // terminates there, only a shrinking bracket is available
    KLResult kl = komornik_loreti(1, kEps);
    ValueEnclosure br = kl_tower_bracket(1, kl.beta, 6);
    std::printf("\nsmallest base with a unique expansion of 1:\n");
    std::printf("  beta in [%.17f, %.17f]\n", kl.beta.lo.convert_to<double>(),
                kl.beta.hi.convert_to<double>());
    std::printf("  tau  in [%.17f, %.17f]\n", br.lo.convert_to<double>(),
                br.hi.convert_to<double>());
    return 0;
}
