#include "genfac/bigint.hpp"

#include <algorithm>

#include "genfac/errors.hpp"

namespace genfac {

void BigUint::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        unsigned __int128 s = carry + limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        limbs_[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    return *this;
}

BigUint& BigUint::operator+=(uint64_t v) {
    unsigned __int128 carry = v;
    for (size_t i = 0; carry && i < limbs_.size(); ++i) {
        unsigned __int128 s = carry + limbs_[i];
        limbs_[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    check_internal(compare(o) >= 0, "BigUint underflow");
    unsigned __int128 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        unsigned __int128 sub = borrow + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        if (limbs_[i] >= sub) {
            limbs_[i] -= static_cast<uint64_t>(sub);
            borrow = 0;
        } else {
            limbs_[i] = static_cast<uint64_t>(((unsigned __int128)1 << 64) + limbs_[i] - sub);
            borrow = 1;
        }
    }
    normalize();
    return *this;
}

BigUint& BigUint::operator*=(uint64_t v) {
    if (v == 0 || limbs_.empty()) { limbs_.clear(); return *this; }
    unsigned __int128 carry = 0;
    for (auto& l : limbs_) {
        unsigned __int128 p = (unsigned __int128)l * v + carry;
        l = static_cast<uint64_t>(p);
        carry = p >> 64;
    }
    if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    BigUint r;
    if (a.limbs_.empty() || b.limbs_.empty()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        unsigned __int128 carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            unsigned __int128 cur = carry + r.limbs_[i + j] +
                                    (unsigned __int128)a.limbs_[i] * b.limbs_[j];
            r.limbs_[i + j] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        r.limbs_[i + b.limbs_.size()] += static_cast<uint64_t>(carry);
    }
    r.normalize();
    return r;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

uint64_t BigUint::div_u64(uint64_t v) {
    check_internal(v != 0, "BigUint division by zero");
    unsigned __int128 rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 64) | limbs_[i];
        limbs_[i] = static_cast<uint64_t>(cur / v);
        rem = cur % v;
    }
    normalize();
    return static_cast<uint64_t>(rem);
}

uint64_t BigUint::mod_u64(uint64_t v) const {
    check_internal(v != 0, "BigUint modulo by zero");
    unsigned __int128 rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        rem = ((rem << 64) | limbs_[i]) % v;
    }
    return static_cast<uint64_t>(rem);
}

std::string BigUint::to_string() const {
    if (limbs_.empty()) return "0";
    BigUint tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        uint64_t r = tmp.div_u64(10000000000000000000ULL);  // 10^19
        char buf[20];
        int len = 0;
        for (int k = 0; k < 19; ++k) { buf[len++] = char('0' + r % 10); r /= 10; }
        out.append(buf, buf + len);
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
}

BigUint BigUint::from_string(const std::string& s) {
    BigUint r;
    require(!s.empty(), "empty integer literal");
    for (char c : s) {
        if (c < '0' || c > '9') throw parse_error("bad digit in integer literal: " + s);
        r *= 10;
        r += uint64_t(c - '0');
    }
    return r;
}

BigUint BigUint::pow2(unsigned e) {
    BigUint r;
    r.limbs_.assign(e / 64 + 1, 0);
    r.limbs_[e / 64] = uint64_t(1) << (e % 64);
    return r;
}

}  // namespace genfac
