#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cubics/errors.hpp"

namespace cubics {

// Field element, encoded as an index in [0, q). The index is the base-p
// packing of the element's coordinate vector (c0, c1, ..., c_{k-1}) in the
// power basis of the modulus: index = sum c_i * p^i. For p = 2 this makes
// addition a plain XOR.
using Elt = std::uint16_t;

inline constexpr Elt kNoElt = 0xFFFF;

/// Exact arithmetic context for GF(p^k), q = p^k <= 2^16.
///
/// Immutable after construction and safe to share across threads. All
/// operations are table-driven: multiplication uses log/antilog tables over
/// a fixed generator, addition uses XOR (p = 2), native arithmetic (k = 1)
/// or Zech logarithms (odd p, k > 1).
class Field {
public:
    // Built-in (or deterministically generated) modulus for (p, k).
    // The modulus is verified irreducible at construction.
    static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t k);

    // Explicit modulus, given as k+1 coefficients (constant term first,
    // monic). Throws ReducibleModulus if the polynomial is not irreducible.
    static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t k,
                                             std::vector<std::uint16_t> modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint16_t>& modulus() const { return modulus_; }

    bool same(const Field& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    Elt add(Elt a, Elt b) const {
        if (p_ == 2) return static_cast<Elt>(a ^ b);
        if (k_ == 1) {
            std::uint32_t s = std::uint32_t(a) + b;
            if (s >= q_) s -= q_;
            return static_cast<Elt>(s);
        }
        return add_zech(a, b);
    }

    Elt neg(Elt a) const {
        if (p_ == 2 || a == 0) return a;
        return exp_[log_[a] + half_];
    }

    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }

    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::uint32_t(log_[a]) + log_[b]];
    }

    Elt square(Elt a) const { return sq_[a]; }

    Elt inv(Elt a) const {
        if (a == 0) throw DivisionByZero("inv(0) in GF(" + std::to_string(q_) + ")");
        return inv_[a];
    }

    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    // a^p, the generating automorphism of GF(p^k)/GF(p).
    Elt frobenius(Elt a) const { return frob_[a]; }

    Elt pow(Elt a, std::uint64_t n) const;

    // Canonical square root (the root with the smaller index), or kNoElt if
    // a is a non-residue. In characteristic 2 every element has exactly one.
    Elt sqrt(Elt a) const { return sqrt_[a]; }

    // p = 2 only: the smaller solution y of y^2 + y = c, or kNoElt when the
    // equation has none (absolute trace 1).
    Elt artin_schreier_root(Elt c) const { return as_root_[c]; }

    // Scalar c in [0, p) as a field element of the prime subfield.
    Elt from_int(std::uint64_t v) const { return static_cast<Elt>(v % p_); }

    std::uint8_t digit(Elt a, std::uint32_t i) const {
        return static_cast<std::uint8_t>((a / pwer_[i]) % p_);
    }
    std::vector<std::uint8_t> digits(Elt a) const;
    Elt from_digits(const std::vector<std::uint8_t>& d) const;

    // "GF(q)" tag used in messages and serialized headers.
    std::string name() const;

private:
    Field() = default;
    void build(std::uint32_t p, std::uint32_t k, std::vector<std::uint16_t> modulus);
    Elt add_zech(Elt a, Elt b) const;

    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::uint32_t half_ = 0; // (q-1)/2 for odd q: log of -1
    std::vector<std::uint16_t> modulus_;
    std::vector<std::uint32_t> pwer_; // p^i, i in [0, k]

    std::vector<Elt> exp_;  // size 2(q-1): exp_[i] = g^i, doubled to skip a mod
    std::vector<Elt> log_;  // size q, log_[0] unused
    std::vector<Elt> inv_;
    std::vector<Elt> sq_;
    std::vector<Elt> sqrt_;
    std::vector<Elt> frob_;
    std::vector<Elt> as_root_;     // p = 2
    std::vector<Elt> zech_;        // odd p, k > 1; kNoElt marks 1 + g^s = 0
};

using FieldPtr = std::shared_ptr<const Field>;

// Process-wide cache of contexts with the default modulus, keyed by (p, k).
// Contexts are immutable, so sharing them is safe; repeated census and
// search calls must not rebuild tables.
FieldPtr field_create(std::uint32_t p, std::uint32_t k);
FieldPtr field_create(std::uint32_t p, std::uint32_t k, std::vector<std::uint16_t> modulus);

/// Ring embedding GF(p^k) -> GF(p^{k*d}), fixed once per context pair by
/// mapping the source generator to the root of the source modulus whose
/// coordinate vector is lexicographically smallest.
class Embedding {
public:
    Embedding(FieldPtr src, FieldPtr tgt);

    Elt operator()(Elt a) const { return map_[a]; }
    const Field& src() const { return *src_; }
    const Field& tgt() const { return *tgt_; }

private:
    FieldPtr src_, tgt_;
    std::vector<Elt> map_;
};

// Cached embedding between two registry contexts.
std::shared_ptr<const Embedding> embedding_create(const FieldPtr& src, const FieldPtr& tgt);

} // namespace cubics
