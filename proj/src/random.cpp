#include "resolvent/random.hpp"

namespace resolvent {

std::uint64_t uniform(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }

FpModule random_module(Rng& rng, Modulus m, std::size_t max_rank) {
    std::vector<Residue> divs;
    for (Residue d = 2; d <= m.value(); ++d)
        if (m.value() % d == 0) divs.push_back(d);
    std::vector<Residue> orders;
    const std::size_t r = uniform(rng, max_rank + 1);
    for (std::size_t i = 0; i < r; ++i) orders.push_back(divs[uniform(rng, divs.size())]);
    return canonical_module(m, orders);
}

ModuleMap random_map(Rng& rng, const FpModule& dom, const FpModule& cod) {
    ResidueMatrix a(dom.modulus(), cod.rank(), dom.rank());
    for (std::size_t j = 0; j < cod.rank(); ++j)
        for (std::size_t i = 0; i < dom.rank(); ++i) {
            const Residue e = cod.factors()[j];
            const Residue step = e / zmod::gcd(dom.factors()[i], e);
            a.set(j, i, uniform(rng, e) * step % e);
        }
    return ModuleMap(dom, cod, a);
}

ChainComplex random_chain_complex(Rng& rng, Modulus m, int len, std::size_t max_rank) {
    ChainComplex c;
    c.lo = 0;
    c.objects.push_back(random_module(rng, m, max_rank));
    for (int n = 1; n <= len; ++n) {
        const FpModule cn = random_module(rng, m, max_rank);
        if (n == 1) {
            c.boundaries.push_back(random_map(rng, cn, c.objects.back()));
        } else {
            // Land inside the kernel of the previous boundary.
            const Subobject k = kernel(c.boundaries.back());
            c.boundaries.push_back(k.embedding * random_map(rng, cn, k.object()));
        }
        c.objects.push_back(cn);
    }
    return c;
}

AugSimplicialObject random_simplicial_module(Rng& rng, Modulus m, std::size_t max_rank, int top) {
    return dold_kan(random_chain_complex(rng, m, 2, max_rank), top);
}

}  // namespace resolvent
