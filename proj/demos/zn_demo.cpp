// Build the Z^3 spine tuple with x0 payloads, print the pairs, their caret
// counts and the sphere they land in, then classify a few random tuples.

#include "thompson/constructions.hpp"
#include "thompson/density.hpp"

#include <iostream>

using namespace thompson;

int main() {
    std::vector<TreePair> payloads(3, Element::x0().pair());
    GeneratorTuple t = zn_generators(payloads);
    std::cout << "Z^3 generators on the right spine (x0 payloads):\n";
    for (const auto& g : t.gens)
        std::cout << "  " << to_string(g) << "   carets=" << g.carets() << "\n";
    std::cout << "sum of carets: " << t.sum_carets() << ", max: " << t.max_carets() << "\n";
    std::cout << "classified as: " << to_string(classify(t.gens)) << "\n\n";

    BigSeq r = rn_table(20);
    RngStream rng(0);
    TupleSampler sampler(StratumSpec{2, 8, StratumKind::Max}, r);
    std::cout << "five random 2-tuples from the max sphere at n = 8:\n";
    for (int i = 0; i < 5; ++i) {
        TupleSample s = sampler.draw(rng);
        std::cout << "  " << to_string(s) << "  -> " << to_string(classify(s)) << "\n";
    }
    return 0;
}
