// Coefficients of j, the basis j_m, and a few Lehner-type divisibilities.
#include <iostream>

#include "qmod/qmod.hpp"

int main()
{
    using namespace qmod;

    const int_series j = j_series(130);
    std::cout << "j = " << j.to_string(4) << "\n";

    const basis_table t = build_j_basis(3, 12);
    for (std::int64_t m = 1; m <= 3; ++m)
        std::cout << "j_" << m << " = " << t.element(m).to_string(3) << "\n";

    // b(2) is divisible by 2^11, b(7) by 7, b(121) by 11^2.
    std::cout << "b(2)   mod 2^11 = " << residue(j.coeff(2), ipow(2, 11)).get_str() << "\n";
    std::cout << "b(7)   mod 7    = " << residue(j.coeff(7), 7).get_str() << "\n";
    std::cout << "b(121) mod 121  = " << residue(j.coeff(121), 121).get_str() << "\n";
    std::cout << "b(11)  mod 121  = " << residue(j.coeff(11), 121).get_str() << " (nonzero)\n";
}
