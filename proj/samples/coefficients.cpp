#include <cstdio>

#include <isingmaps/critical.hpp>

using namespace isingmaps;

int main() {
    const auto Z = solve_Z_symbolic(4);
    for (int n = 1; n <= 4; ++n) std::printf("Z_%d = %s\n", n, Z[n].str().c_str());

    const auto params = IsingParams::numeric(2, 1);
    const auto seq = coefficient_sequence(params, 10);
    for (std::size_t i = 0; i < seq.size(); ++i) std::printf("Z_%zu(2,1) = %s\n", i + 1, seq[i].str(20).c_str());

    const auto r = radius_numeric(IsingParams::point(4, 1));
    std::printf("rho(4,1) = %s, S(rho) = %s, exponent = %s\n", r.rho.str().c_str(), r.s_at_rho.str().c_str(),
                to_string(*r.exponent).c_str());
    std::printf("M0(5) = %s\n", m0_closed(5).str().c_str());
}
