// Level 11: newform, Weierstrass model, coordinate functions and f_{11,m}.
#include <iostream>

#include "qmod/qmod.hpp"

int main()
{
    using namespace qmod;

    const int_series f = newform_series(11, 60);
    std::cout << "f     = " << f.to_string(8) << "\n";

    const weierstrass_model model = find_model(f, 11);
    std::cout << "model = " << model.to_string() << "\n";

    const generator_pair g = solve_xy(f, model, 12);
    std::cout << "x     = " << g.x.to_string(8) << "\n";
    std::cout << "y     = " << g.y.to_string(8) << "\n";

    const basis_table t = build_genus1_basis(g, 11, 5, 6);
    for (std::int64_t m = 0; m <= 5; ++m)
        std::cout << "f_11," << m << " = " << t.element(m).to_string() << "\n";
}
