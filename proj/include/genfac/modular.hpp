#ifndef GENFAC_MODULAR_HPP
#define GENFAC_MODULAR_HPP

#include <cstdint>
#include <vector>

#include "genfac/bigint.hpp"

namespace genfac {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);
bool is_prime_u64(uint64_t n);

// One word-size prime p = c * (M+1) * 2^t + 1 together with principal roots
// of unity of order M+1 (cyclic degree dimension) and 2^t (non-cyclic
// dimensions after power-of-two padding).
struct BasisPrime {
    uint64_t p = 0;
    int cyclic_len = 1;       // M+1
    uint64_t cyclic_root = 1; // exact multiplicative order cyclic_len
    int two_exp = 0;          // t
    uint64_t pow2_root = 1;   // exact multiplicative order 2^t
};

// Primes chosen so the product exceeds 2^count_bits (unique CRT
// reconstruction of subset counts) and every required transform length
// divides p - 1. Deterministic search from the top of the 62-bit range.
struct PrimeBasis {
    std::vector<BasisPrime> primes;

    BigUint product() const;

    static PrimeBasis build(int max_degree, int count_bits, int max_pow2_len);
};

// Reconstructs the unique x < prod(p_i) with x = residues[i] mod p_i (Garner).
BigUint crt_reconstruct(const std::vector<uint64_t>& residues, const PrimeBasis& basis);

// One dimension of a multi-dimensional array: cyclic dimensions convolve
// modulo their size, non-cyclic dimensions convolve over the integers
// (internally zero-padded to a power of two >= 2*size-1). bounded_sum
// promises that index sums of nonzero input cells stay below size, which
// allows the tighter pad of a power of two >= size.
struct ConvDim {
    int size = 1;
    bool cyclic = false;
    bool bounded_sum = false;
};

// Combined (partially cyclic, partially non-cyclic) convolution of f and g
// over F_p. Inputs and output are dense row-major arrays over the given
// logical dimensions; the output is truncated back to the same shape.
// All cyclic dimensions must have size prime.cyclic_len.
std::vector<uint64_t> multidim_convolution(const std::vector<uint64_t>& f,
                                           const std::vector<uint64_t>& g,
                                           const std::vector<ConvDim>& dims,
                                           const BasisPrime& prime);

}  // namespace genfac

#endif
