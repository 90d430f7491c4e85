// Library tour: standard bases, exact monomial thresholds and one numerical estimate.

#include <iostream>

#include "wlct/hironaka.hpp"
#include "wlct/newton_lct.hpp"
#include "wlct/numeric_threshold.hpp"
#include "wlct/poly_io.hpp"
#include "wlct/weight_io.hpp"

using namespace wlct;

int main() {
    // Standard basis of (z1*z2, z1^2 + z2^3) in O_2, exact modulo degree > 6.
    std::vector<Polynomial> gens{parse_polynomial("z1*z2", 2), parse_polynomial("z1^2 + z2^3", 2)};
    StandardBasis sb = standard_basis(gens, 6);
    std::cout << "standard basis:";
    for (const auto& g : sb.gens)
        std::cout << "  " << to_string(g);
    std::cout << "\ninitial ideal: " << sb.im_ideal.to_string() << "\n";

    Polynomial f = parse_polynomial("z1^2*z2 + z2^4 + 3*z1", 2);
    std::cout << "normal form of " << to_string(f) << ": " << to_string(normal_form(f, sb)) << "\n";

    // Cusp weight log max(|z1|^2, |z2|^3): threshold 5/6 from the Newton polyhedron.
    MonomialWeight cusp({Exponent{2, 0}, Exponent{0, 3}});
    LctValue exact = newton_lct(cusp, Exponent{0, 0});
    std::cout << "exact threshold: " << exact.to_string() << "\n";
    std::cout << "I(1/2 phi) up to degree 4: " << multiplier_ideal_monomials(cusp, Rational(1, 2), 4).to_string()
              << "\n";
    if (auto eps = openness_witness(cusp, Exponent{0, 0}, Rational(3, 4)))
        std::cout << "openness witness at c=3/4: eps = " << to_string(*eps) << "\n";

    // The same threshold by Monte Carlo: bisect on the divergence verdict.
    SampleConfig cfg;
    cfg.samples = 1 << 18;
    cfg.seed = 7;
    ThresholdEstimate est =
        estimate_threshold(parse_polynomial("1", 2), parse_weight("logmax((2,0),(0,3))", 2), 0.1, 4.0, 0.02, cfg);
    std::cout << "numerical threshold: " << est.to_string() << "\n";
}
