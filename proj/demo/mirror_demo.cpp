// Walks through the bundled systems: Landau verdict, the first terms of F and
// of the canonical coordinate q_1, and whether q_1 is integral.

#include <iostream>

#include <mirrorint/mirrorint.hpp>

int main()
{
    using namespace mirrorint;

    for (const auto& [name, sys] : catalog::systems()) {
        std::cout << "== " << name << " (d = " << sys.dim() << ")\n";
        const CriterionVerdict v = classify(sys);
        std::cout << "Landau: " << to_string(v.tag);
        if (v.witness) {
            std::cout << " at " << to_string(*v.witness);
        }
        std::cout << '\n';
        if (sys.is_raw()) {
            continue;
        }

        const std::int64_t N = sys.dim() == 1 ? 6 : 4;
        const MirrorBundle b = build_bundle(sys, N, false);
        std::cout << "F   = " << b.F.str() << '\n';
        std::cout << "q_1 = " << b.q[0].str() << '\n';
        if (auto deg = first_violation_degree(b.q[0])) {
            std::cout << "q_1 is not integral from degree " << *deg << '\n';
        } else {
            std::cout << "q_1 is integral to degree " << N << '\n';
        }
    }

    // the case30 specialization collapses to one variable
    const auto [F, G] = specialized_series(case30_record(), 5);
    std::cout << "== case30 specialized\nF(z) = " << F.str() << '\n';
    std::cout << "q(z) = " << canonical_coordinate(F, G, 1).str() << '\n';
}
