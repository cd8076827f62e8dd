// Truncated Laurent series: precision tracking, products, inversion, U_p.
#include <iostream>

#include "qmod/qmod.hpp"

int main()
{
    using namespace qmod;

    const int_series a = int_series::from_terms(-1, 5, {1, 1});  // q^-1 + 1 + O(q^5)
    const int_series b = int_series::from_terms(0, 3, {-1, 1});  // -1 + q + O(q^3)
    std::cout << "a + b = " << (a + b).to_string() << "\n";
    std::cout << "a * b = " << (a * b).to_string() << "\n";

    const int_series geometric = invert(int_series::from_terms(0, 8, {1, -1}));
    std::cout << "1/(1-q) = " << geometric.to_string() << "\n";

    const int_series e = euler_series(30);
    std::cout << "prod (1-q^n) = " << e.to_string(8) << "\n";
    std::cout << "U_2 of it    = " << u_p(e, 2).to_string(8) << "\n";

    // Integer mode refuses to invent denominators.
    try {
        invert(int_series::from_terms(0, 4, {2, 1}));
    } catch (const non_unit_leading& err) {
        std::cout << "invert(2 + q): " << err.what() << "\n";
    }
    std::cout << "in rationals: " << invert(to_rational(int_series::from_terms(0, 4, {2, 1}))).to_string() << "\n";
}
