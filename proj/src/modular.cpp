#include "genfac/modular.hpp"

#include <algorithm>
#include <string>

#include "genfac/errors.hpp"

namespace genfac {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((unsigned __int128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a, p - 2, p); }

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic Miller-Rabin bases for 64-bit integers.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            fs.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Element of exact multiplicative order `ord` in F_p; requires ord | p-1.
uint64_t element_of_order(uint64_t ord, uint64_t p) {
    auto fs = prime_factors(ord);
    for (uint64_t y = 2; y < p; ++y) {
        uint64_t x = powmod(y, (p - 1) / ord, p);
        bool ok = x != 0;
        for (uint64_t q : fs)
            if (powmod(x, ord / q, p) == 1) { ok = false; break; }
        if (ok) return x;
    }
    throw internal_error("no element of order " + std::to_string(ord));
}

}  // namespace

BigUint PrimeBasis::product() const {
    BigUint r(1);
    for (const auto& bp : primes) r *= bp.p;
    return r;
}

PrimeBasis PrimeBasis::build(int max_degree, int count_bits, int max_pow2_len) {
    require(max_degree >= 0, "negative max degree");
    const uint64_t cyc = static_cast<uint64_t>(max_degree) + 1;
    int t = 1;
    while ((1 << t) < max_pow2_len) ++t;
    const uint64_t block = cyc << t;
    require(block < (uint64_t(1) << 61), "transform length too large for 62-bit primes");

    PrimeBasis basis;
    // Smallest number of ~2^62 primes whose product certainly exceeds
    // 2^count_bits, minimum two.
    uint64_t c = ((uint64_t(1) << 62) - 1) / block;
    BigUint prod(1);
    const BigUint bound = BigUint::pow2(count_bits);
    while (basis.primes.size() < 2 || prod <= bound) {
        require(c > 0, "prime search exhausted");
        uint64_t p = c * block + 1;
        --c;
        if (!is_prime_u64(p)) continue;
        BasisPrime bp;
        bp.p = p;
        bp.cyclic_len = static_cast<int>(cyc);
        bp.two_exp = t;
        bp.cyclic_root = cyc == 1 ? 1 : element_of_order(cyc, p);
        bp.pow2_root = element_of_order(uint64_t(1) << t, p);
        basis.primes.push_back(bp);
        prod *= p;
    }
    return basis;
}

BigUint crt_reconstruct(const std::vector<uint64_t>& residues, const PrimeBasis& basis) {
    check_internal(residues.size() == basis.primes.size(), "CRT residue count mismatch");
    const size_t k = residues.size();
    // Garner: mixed-radix digits c[i], x = c0 + c1*p0 + c2*p0*p1 + ...
    std::vector<uint64_t> digits(k);
    for (size_t i = 0; i < k; ++i) {
        uint64_t pi = basis.primes[i].p;
        uint64_t cur = residues[i] % pi;
        // subtract the value of the prefix, divide by the prefix product, all mod pi
        uint64_t prefix = 0, prefix_prod = 1;
        for (size_t j = 0; j < i; ++j) {
            prefix = (prefix + mulmod(digits[j], prefix_prod, pi)) % pi;
            prefix_prod = mulmod(prefix_prod, basis.primes[j].p, pi);
        }
        uint64_t diff = (cur + pi - prefix) % pi;
        digits[i] = mulmod(diff, invmod(prefix_prod, pi), pi);
    }
    BigUint x;
    for (size_t i = k; i-- > 0;) {
        x *= basis.primes[i].p;
        x += digits[i];
    }
    return x;
}

namespace {

// Montgomery arithmetic mod an odd 62-bit prime: multiplication without the
// 128-bit division that dominates the transforms otherwise.
struct Mont {
    uint64_t p = 0, pinv = 0, r2 = 0;

    explicit Mont(uint64_t prime) : p(prime) {
        uint64_t inv = prime;  // Newton iteration for p^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - prime * inv;
        pinv = ~inv + 1;  // -p^{-1} mod 2^64
        uint64_t r1 = static_cast<uint64_t>(((unsigned __int128)1 << 64) % p);
        r2 = static_cast<uint64_t>((unsigned __int128)r1 * r1 % p);
    }

    uint64_t redc(unsigned __int128 t) const {
        uint64_t m = static_cast<uint64_t>(t) * pinv;
        uint64_t r = static_cast<uint64_t>((t + (unsigned __int128)m * p) >> 64);
        return r >= p ? r - p : r;
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return redc((unsigned __int128)a * b); }
    uint64_t to(uint64_t x) const { return mul(x % p, r2); }
    uint64_t from(uint64_t x) const { return redc(x); }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
};

// In-place transform along one dimension of a dense row-major array.
// op transforms one line of length dims[d] with stride `stride`.
template <typename F>
void for_each_line(std::vector<uint64_t>&, const std::vector<int>& shape, int d, F&& op) {
    int stride = 1;
    for (size_t i = d + 1; i < shape.size(); ++i) stride *= shape[i];
    int block = stride * shape[d];
    int total = 1;
    for (int s : shape) total *= s;
    for (int base = 0; base < total; base += block)
        for (int off = 0; off < stride; ++off) op(base + off, stride);
}

// Naive length-r DFT from a power table in Montgomery form. Cost r^2;
// r = M+1 is tiny.
void dft_line(std::vector<uint64_t>& a, int start, int stride, int r,
              const std::vector<uint64_t>& pows, const Mont& mont,
              std::vector<uint64_t>& scratch) {
    scratch.assign(r, 0);
    for (int j = 0; j < r; ++j) {
        uint64_t acc = 0;
        for (int i = 0; i < r; ++i)
            acc = mont.add(acc, mont.mul(a[start + i * stride], pows[i * j % r]));
        scratch[j] = acc;
    }
    for (int j = 0; j < r; ++j) a[start + j * stride] = scratch[j];
}

// Iterative radix-2 NTT on one strided line; len is a power of two, twiddles
// holds w^0..w^(len/2-1) in Montgomery form for w of order exactly len.
void ntt_line(std::vector<uint64_t>& a, int start, int stride, int len,
              const std::vector<uint64_t>& twiddles, const Mont& mont) {
    const uint64_t p = mont.p;
    for (int i = 1, j = 0; i < len; ++i) {
        int bit = len >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[start + i * stride], a[start + j * stride]);
    }
    for (int half = 1; half < len; half <<= 1) {
        int tstep = len / (2 * half);
        for (int i = 0; i < len; i += 2 * half) {
            for (int j = 0; j < half; ++j) {
                uint64_t u = a[start + (i + j) * stride];
                uint64_t v = mont.mul(a[start + (i + j + half) * stride], twiddles[j * tstep]);
                a[start + (i + j) * stride] = u + v < p ? u + v : u + v - p;
                a[start + (i + j + half) * stride] = u >= v ? u - v : u + p - v;
            }
        }
    }
}

}  // namespace

std::vector<uint64_t> multidim_convolution(const std::vector<uint64_t>& f,
                                           const std::vector<uint64_t>& g,
                                           const std::vector<ConvDim>& dims,
                                           const BasisPrime& prime) {
    const uint64_t p = prime.p;
    // Padded shape: cyclic dims stay, non-cyclic dims pad to pow2 >= 2*size-1.
    std::vector<int> shape;
    int total = 1, logical = 1;
    for (const auto& d : dims) {
        require(d.size >= 1, "empty convolution dimension");
        int s;
        if (d.cyclic) {
            require(d.size == prime.cyclic_len, "cyclic dimension size != basis cyclic length");
            s = d.size;
        } else {
            s = 1;
            int target = d.bounded_sum ? d.size : 2 * d.size - 1;
            while (s < target) s <<= 1;
            require((uint64_t(1) << prime.two_exp) >= static_cast<uint64_t>(s),
                    "missing roots of unity for padded length " + std::to_string(s));
        }
        shape.push_back(s);
        total *= s;
        logical *= d.size;
    }
    check_internal(static_cast<int>(f.size()) == logical && static_cast<int>(g.size()) == logical,
                   "convolution input size mismatch");

    const Mont mont(p);
    auto embed = [&](const std::vector<uint64_t>& src) {
        std::vector<uint64_t> out(total, 0);
        std::vector<int> idx(dims.size(), 0);
        for (int flat = 0; flat < logical; ++flat) {
            int pos = 0;
            for (size_t d = 0; d < dims.size(); ++d) pos = pos * shape[d] + idx[d];
            out[pos] = mont.to(src[flat]);
            for (int d = static_cast<int>(dims.size()) - 1; d >= 0; --d) {
                if (++idx[d] < dims[d].size) break;
                idx[d] = 0;
            }
        }
        return out;
    };

    std::vector<uint64_t> fa = embed(f), ga = embed(g);
    std::vector<uint64_t> scratch;
    auto power_table = [&](uint64_t w, int count) {
        std::vector<uint64_t> t(count);
        uint64_t cur = 1;
        for (int i = 0; i < count; ++i) {
            t[i] = mont.to(cur);
            cur = mulmod(cur, w, p);
        }
        return t;
    };
    std::vector<uint64_t> seg_scratch;
    auto transform = [&](std::vector<uint64_t>& a, bool inverse) {
        for (size_t d = 0; d < dims.size(); ++d) {
            if (shape[d] == 1) continue;
            if (dims[d].cyclic) {
                uint64_t w = inverse ? invmod(prime.cyclic_root, p) : prime.cyclic_root;
                auto pows = power_table(w, shape[d]);
                int stride = 1;
                for (size_t i = d + 1; i < shape.size(); ++i) stride *= shape[i];
                if (stride >= 64) {
                    // Contiguous-segment form: streams memory instead of
                    // striding, r^2 passes of length `stride`.
                    const int r = shape[d];
                    const int block = r * stride;
                    seg_scratch.assign(block, 0);
                    for (size_t base = 0; base < a.size(); base += block) {
                        std::fill(seg_scratch.begin(), seg_scratch.end(), 0);
                        for (int j = 0; j < r; ++j) {
                            uint64_t* dst = seg_scratch.data() + size_t(j) * stride;
                            for (int i = 0; i < r; ++i) {
                                uint64_t wij = pows[i * j % r];
                                const uint64_t* src = a.data() + base + size_t(i) * stride;
                                for (int t = 0; t < stride; ++t)
                                    dst[t] = mont.add(dst[t], mont.mul(src[t], wij));
                            }
                        }
                        std::copy(seg_scratch.begin(), seg_scratch.end(), a.begin() + base);
                    }
                    continue;
                }
                for_each_line(a, shape, static_cast<int>(d), [&](int start, int stride2) {
                    dft_line(a, start, stride2, shape[d], pows, mont, scratch);
                });
            } else {
                uint64_t w = powmod(prime.pow2_root,
                                    (uint64_t(1) << prime.two_exp) / shape[d], p);
                if (inverse) w = invmod(w, p);
                auto twiddles = power_table(w, shape[d] / 2);
                for_each_line(a, shape, static_cast<int>(d), [&](int start, int stride) {
                    ntt_line(a, start, stride, shape[d], twiddles, mont);
                });
            }
        }
        if (inverse) {
            uint64_t scale = 1;
            for (size_t d = 0; d < dims.size(); ++d) scale = mulmod(scale, shape[d], p);
            uint64_t scale_m = mont.to(invmod(scale, p));
            for (auto& x : a) x = mont.mul(x, scale_m);
        }
    };

    transform(fa, false);
    transform(ga, false);
    for (int i = 0; i < total; ++i) fa[i] = mont.mul(fa[i], ga[i]);
    transform(fa, true);

    // Truncate back to the logical shape, out of Montgomery form.
    std::vector<uint64_t> out(logical);
    std::vector<int> idx(dims.size(), 0);
    for (int flat = 0; flat < logical; ++flat) {
        int pos = 0;
        for (size_t d = 0; d < dims.size(); ++d) pos = pos * shape[d] + idx[d];
        out[flat] = mont.from(fa[pos]);
        for (int d = static_cast<int>(dims.size()) - 1; d >= 0; --d) {
            if (++idx[d] < dims[d].size) break;
            idx[d] = 0;
        }
    }
    return out;
}

}  // namespace genfac
