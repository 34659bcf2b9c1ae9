#include "cubics/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace cubics {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0 mod p
    std::uint32_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = std::uint64_t(r) * b % p;
        b = std::uint64_t(b) * b % p;
        e >>= 1;
    }
    return r;
}

// Dense univariate polynomials over F_p, little-endian coefficients.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    trim(c);
    return c;
}

// f monic
void poly_mod_inplace(Poly& a, const Poly& f, std::uint32_t p) {
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (std::size_t i = 0; i < df; ++i)
                a[shift + i] = (a[shift + i] + std::uint64_t(lead) * (p - f[i] % p)) % p;
        }
        a.pop_back();
        trim(a);
        if (a.empty()) return;
    }
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r{1};
    poly_mod_inplace(base, f, p);
    while (e) {
        if (e & 1) {
            r = poly_mul(r, base, p);
            poly_mod_inplace(r, f, p);
        }
        base = poly_mul(base, base, p);
        poly_mod_inplace(base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // normalize b monic, then reduce a mod b
        std::uint32_t il = inv_mod_p(b.back(), p);
        for (auto& c : b) c = std::uint64_t(c) * il % p;
        poly_mod_inplace(a, b, p);
        std::swap(a, b);
    }
    return a;
}

Poly modulus_to_poly(const std::vector<std::uint16_t>& m) {
    Poly f(m.begin(), m.end());
    return f;
}

// Complete irreducibility test for a monic degree-k polynomial over F_p:
// x^(p^k) == x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
bool poly_irreducible(const std::vector<std::uint16_t>& modulus, std::uint32_t p) {
    const std::uint32_t k = static_cast<std::uint32_t>(modulus.size() - 1);
    if (k == 1) return true;
    Poly f = modulus_to_poly(modulus);
    Poly x{0, 1};

    auto frob_iterate = [&](std::uint32_t times) {
        Poly t = x;
        for (std::uint32_t i = 0; i < times; ++i) t = poly_powmod(t, p, f, p);
        return t;
    };

    Poly xqk = frob_iterate(k);
    // x^(p^k) - x must be 0 mod f
    Poly diff = xqk;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;

    for (std::uint32_t r : prime_factors(k)) {
        Poly t = frob_iterate(k / r);
        Poly d = t;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        Poly g = poly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Spec-pinned moduli, verified at startup like everything else.
const std::vector<std::uint16_t>* builtin_modulus(std::uint32_t p, std::uint32_t k) {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint16_t>>
        table = {
            {{2, 2}, {1, 1, 1}},                // x^2+x+1
            {{2, 3}, {1, 1, 0, 1}},             // x^3+x+1
            {{2, 4}, {1, 1, 0, 0, 1}},          // x^4+x+1
            {{2, 8}, {1, 1, 0, 1, 1, 0, 0, 0, 1}}, // x^8+x^4+x^3+x+1
            {{3, 2}, {1, 0, 1}},                // x^2+1
            {{3, 4}, {2, 1, 0, 0, 1}},          // x^4+x+2
            {{5, 2}, {1, 1, 1}},                // x^2+x+1
            {{7, 2}, {1, 0, 1}},                // x^2+1
        };
    auto it = table.find({p, k});
    return it == table.end() ? nullptr : &it->second;
}

// First irreducible monic polynomial in ascending order of the packed
// low-coefficient vector. Deterministic, so generated contexts are as
// reproducible as the pinned ones.
std::vector<std::uint16_t> generate_modulus(std::uint32_t p, std::uint32_t k) {
    std::uint64_t span = 1;
    for (std::uint32_t i = 0; i < k; ++i) span *= p;
    for (std::uint64_t c = 0; c < span; ++c) {
        std::vector<std::uint16_t> m(k + 1, 0);
        std::uint64_t v = c;
        for (std::uint32_t i = 0; i < k; ++i) {
            m[i] = static_cast<std::uint16_t>(v % p);
            v /= p;
        }
        m[k] = 1;
        if (poly_irreducible(m, p)) return m;
    }
    throw UnsupportedField("no irreducible modulus found for p=" + std::to_string(p) +
                           ", k=" + std::to_string(k));
}

} // namespace

void Field::build(std::uint32_t p, std::uint32_t k, std::vector<std::uint16_t> modulus) {
    if (!is_prime(p)) throw UnsupportedField("p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw UnsupportedField("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 65536) throw UnsupportedField("p^k exceeds 2^16");
    }
    if (modulus.size() != k + 1)
        throw ReducibleModulus("modulus must have degree k = " + std::to_string(k));
    for (auto c : modulus)
        if (c >= p) throw ReducibleModulus("modulus coefficient out of range");
    if (modulus.back() != 1) throw ReducibleModulus("modulus must be monic");
    if (!poly_irreducible(modulus, p))
        throw ReducibleModulus("modulus is reducible over F_" + std::to_string(p));

    p_ = p;
    k_ = k;
    q_ = static_cast<std::uint32_t>(q);
    half_ = (q_ - 1) / 2;
    modulus_ = std::move(modulus);

    pwer_.resize(k_ + 1);
    pwer_[0] = 1;
    for (std::uint32_t i = 1; i <= k_; ++i) pwer_[i] = pwer_[i - 1] * p_;

    // slow reference arithmetic on digit vectors, used only to build tables
    Poly fpoly = modulus_to_poly(modulus_);
    auto to_poly = [&](Elt a) {
        Poly v(k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i) v[i] = (a / pwer_[i]) % p_;
        trim(v);
        return v;
    };
    auto to_elt = [&](const Poly& v) {
        std::uint32_t a = 0;
        for (std::size_t i = 0; i < v.size(); ++i) a += v[i] * pwer_[i];
        return static_cast<Elt>(a);
    };
    auto slow_mul = [&](Elt a, Elt b) {
        Poly v = poly_mul(to_poly(a), to_poly(b), p_);
        poly_mod_inplace(v, fpoly, p_);
        return to_elt(v);
    };
    auto slow_add = [&](Elt a, Elt b) {
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            std::uint32_t d = ((a / pwer_[i]) % p_ + (b / pwer_[i]) % p_) % p_;
            r += d * pwer_[i];
        }
        return static_cast<Elt>(r);
    };
    auto slow_pow = [&](Elt a, std::uint32_t e) {
        Elt r = 1, b = a;
        while (e) {
            if (e & 1) r = slow_mul(r, b);
            b = slow_mul(b, b);
            e >>= 1;
        }
        return r;
    };

    // smallest-index generator of the multiplicative group
    Elt gen = 1;
    if (q_ > 2) {
        auto fac = prime_factors(q_ - 1);
        for (std::uint32_t a = 2; a < q_; ++a) {
            bool ok = true;
            for (auto r : fac) {
                if (slow_pow(static_cast<Elt>(a), (q_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen = static_cast<Elt>(a);
                break;
            }
        }
    }

    const std::uint32_t n = q_ - 1;
    exp_.assign(2 * n, 0);
    log_.assign(q_, 0);
    exp_[0] = 1;
    for (std::uint32_t i = 1; i < n; ++i) exp_[i] = slow_mul(exp_[i - 1], gen);
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[n + i] = exp_[i];
        log_[exp_[i]] = static_cast<Elt>(i);
    }

    inv_.assign(q_, kNoElt);
    for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = exp_[(n - log_[a]) % n];

    if (p_ != 2 && k_ > 1) {
        zech_.assign(n, kNoElt);
        for (std::uint32_t s = 0; s < n; ++s) {
            Elt e = slow_add(1, exp_[s]);
            zech_[s] = (e == 0) ? kNoElt : log_[e];
        }
    }

    sq_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) sq_[a] = mul(static_cast<Elt>(a), static_cast<Elt>(a));

    sqrt_.assign(q_, kNoElt);
    sqrt_[0] = 0;
    for (std::uint32_t a = 1; a < q_; ++a) {
        Elt s = sq_[a];
        if (sqrt_[s] == kNoElt || a < sqrt_[s]) sqrt_[s] = static_cast<Elt>(a);
    }

    frob_.resize(q_);
    frob_[0] = 0;
    for (std::uint32_t a = 1; a < q_; ++a)
        frob_[a] = exp_[(std::uint64_t(log_[a]) * p_) % n];

    if (p_ == 2) {
        as_root_.assign(q_, kNoElt);
        for (std::uint32_t y = 0; y < q_; ++y) {
            Elt c = static_cast<Elt>(sq_[y] ^ y);
            if (as_root_[c] == kNoElt || y < as_root_[c]) as_root_[c] = static_cast<Elt>(y);
        }
    }
}

Elt Field::add_zech(Elt a, Elt b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t n = q_ - 1;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t s = lb + n - la;
    if (s >= n) s -= n;
    Elt z = zech_[s];
    if (z == kNoElt) return 0;
    return exp_[la + z];
}

Elt Field::pow(Elt a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint32_t n = q_ - 1;
    if (n == 1) return 1;
    return exp_[(std::uint64_t(log_[a]) * (e % n)) % n];
}

std::vector<std::uint8_t> Field::digits(Elt a) const {
    std::vector<std::uint8_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) d[i] = digit(a, i);
    return d;
}

Elt Field::from_digits(const std::vector<std::uint8_t>& d) const {
    std::uint32_t a = 0;
    for (std::uint32_t i = 0; i < k_ && i < d.size(); ++i) a += std::uint32_t(d[i] % p_) * pwer_[i];
    return static_cast<Elt>(a);
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t k) {
    if (const auto* m = builtin_modulus(p, k)) return make(p, k, *m);
    if (k == 1) return make(p, k, {0, 1});
    if (!is_prime(p)) throw UnsupportedField("p = " + std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 65536) throw UnsupportedField("p^k exceeds 2^16");
    }
    return make(p, k, generate_modulus(p, k));
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t k,
                                         std::vector<std::uint16_t> modulus) {
    auto f = std::shared_ptr<Field>(new Field());
    f->build(p, k, std::move(modulus));
    return f;
}

FieldPtr field_create(std::uint32_t p, std::uint32_t k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = Field::make(p, k);
    cache.emplace(key, f);
    return f;
}

FieldPtr field_create(std::uint32_t p, std::uint32_t k, std::vector<std::uint16_t> modulus) {
    return Field::make(p, k, std::move(modulus));
}

Embedding::Embedding(FieldPtr src, FieldPtr tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
    const Field& s = *src_;
    const Field& t = *tgt_;
    if (s.p() != t.p())
        throw IncompatibleFields("cannot embed " + s.name() + " into " + t.name() +
                                 ": different characteristic");
    if (t.k() % s.k() != 0)
        throw IncompatibleFields("cannot embed " + s.name() + " into " + t.name() +
                                 ": degree " + std::to_string(s.k()) + " does not divide " +
                                 std::to_string(t.k()));

    // Roots of the source modulus in the target field; the modulus is
    // irreducible of degree dividing k_tgt, so exactly k_src roots exist.
    const auto& m = s.modulus();
    std::vector<Elt> roots;
    for (std::uint32_t a = 0; a < t.q(); ++a) {
        Elt acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            acc = t.add(t.mul(acc, static_cast<Elt>(a)), t.from_int(m[i]));
        }
        if (acc == 0) roots.push_back(static_cast<Elt>(a));
    }
    if (roots.size() != s.k())
        throw IncompatibleFields("root scan failed for " + s.name() + " -> " + t.name());

    auto lex_less = [&](Elt x, Elt y) {
        for (std::uint32_t i = 0; i < t.k(); ++i) {
            auto dx = t.digit(x, i), dy = t.digit(y, i);
            if (dx != dy) return dx < dy;
        }
        return false;
    };
    Elt root = *std::min_element(roots.begin(), roots.end(), lex_less);

    std::vector<Elt> rpow(s.k());
    rpow[0] = 1;
    for (std::uint32_t i = 1; i < s.k(); ++i) rpow[i] = t.mul(rpow[i - 1], root);

    map_.resize(s.q());
    for (std::uint32_t a = 0; a < s.q(); ++a) {
        Elt acc = 0;
        for (std::uint32_t i = 0; i < s.k(); ++i) {
            std::uint8_t c = s.digit(static_cast<Elt>(a), i);
            if (c) acc = t.add(acc, t.mul(t.from_int(c), rpow[i]));
        }
        map_[a] = acc;
    }
}

std::shared_ptr<const Embedding> embedding_create(const FieldPtr& src, const FieldPtr& tgt) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                    std::shared_ptr<const Embedding>>
        cache;
    // only registry-default contexts are cached; ad-hoc moduli get a fresh map
    bool cacheable = false;
    try {
        cacheable = (src == field_create(src->p(), src->k()) && tgt == field_create(tgt->p(), tgt->k()));
    } catch (const Error&) {
        cacheable = false;
    }
    if (!cacheable) return std::make_shared<Embedding>(src, tgt);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(src->p(), src->k(), tgt->k());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto e = std::make_shared<Embedding>(src, tgt);
    cache.emplace(key, e);
    return e;
}

} // namespace cubics
