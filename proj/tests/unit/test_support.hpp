// Shared helpers for the unit suites: seeded random polynomials and exponents.
#pragma once

#include <random>
#include <vector>

#include "wlct/polynomial.hpp"

namespace wlct::testing {

inline Exponent random_exponent(std::mt19937_64& rng, std::size_t n, unsigned max_deg) {
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    unsigned d = deg(rng);
    Exponent e(n);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    for (unsigned k = 0; k < d; ++k)
        e[var(rng)] += 1;
    return e;
}

/// Small integer (occasionally Gaussian) coefficients, up to `max_terms` terms.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, unsigned max_deg, unsigned max_terms,
                                    bool gaussian = false) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<unsigned> count(1, max_terms);
    std::vector<Term> terms;
    unsigned k = count(rng);
    for (unsigned t = 0; t < k; ++t) {
        int re = coef(rng), im = gaussian ? coef(rng) : 0;
        if (re == 0 && im == 0)
            re = 1;
        terms.push_back({Coefficient(Rational(re), Rational(im)), random_exponent(rng, n, max_deg)});
    }
    return Polynomial::from_terms(n, std::move(terms));
}

inline Polynomial random_nonzero_polynomial(std::mt19937_64& rng, std::size_t n, unsigned max_deg,
                                            unsigned max_terms, bool gaussian = false) {
    for (;;) {
        Polynomial p = random_polynomial(rng, n, max_deg, max_terms, gaussian);
        if (!p.is_zero())
            return p;
    }
}

} // namespace wlct::testing
