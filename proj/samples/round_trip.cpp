// Plant I_2 + NT_2 inside M~_alt^(7) over F_5, scramble it by a random
// congruence, and recover the canonical form.

#include <iostream>

#include "altrank/altrank.hpp"

using namespace altrank;

int main()
{
    const PrimeField f(5);
    const auto planted = build_m_tilde_alt(7, 2, f);

    ScalarSampler<PrimeField> rng(f, 2024);
    const auto scrambled = congruence_act(planted, random_invertible(f, 7, rng));

    const auto cert = reduce(scrambled, 4);
    for (const auto& [name, ok] : cert.verdicts.named()) std::cout << name << ": " << (ok ? "yes" : "no") << "\n";
    if (!cert.ok()) return 1;

    const auto back = congruence_act(scrambled, *cert.p);
    std::cout << "canonical form reached: " << same_set(back, build_m_tilde_alt(7, 2, *cert.recovered_m)) << "\n";
    std::cout << "inner family equivalent to the planted one: "
              << brute_equivalence_test(*cert.recovered_m, build_identity_plus_nt(2, f)).has_value() << "\n";
}
