#include "qr/field.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace qr {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense polynomials over F_p (prime), low-to-high; used only for the modulus
// search, so simple modular arithmetic suffices.
using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
    FpPoly r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod the monic polynomial `mod`
    std::size_t dm = mod.size() - 1;
    for (std::size_t i = r.size(); i-- > dm;) {
        std::uint64_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (std::size_t j = 0; j < dm; ++j)
            r[i - dm + j] = (r[i - dm + j] + (p - mod[j] % p) % p * c) % p;
    }
    r.resize(dm);
    fp_trim(r);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t lead_inv = 1;
        {
            // Fermat inverse of b's leading coefficient
            std::uint64_t base = b.back(), e = p - 2, r = 1;
            while (e) {
                if (e & 1) r = r * base % p;
                base = base * base % p;
                e >>= 1;
            }
            lead_inv = r;
        }
        while (a.size() >= b.size()) {
            std::uint64_t c = a.back() * lead_inv % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + (p - b[j] * c % p)) % p;
            fp_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
    std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // f of degree m is irreducible iff gcd(f, x^{p^k} - x) = 1 for k <= m/2.
    FpPoly xp = {0, 1};  // will hold x^{p^k} mod f
    for (std::size_t k = 1; k <= m / 2; ++k) {
        // raise to the p-th power: xp = xp^p mod f
        FpPoly acc = {1};
        FpPoly base = xp;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = fp_mulmod(acc, base, f, p);
            base = fp_mulmod(base, base, f, p);
            e >>= 1;
        }
        xp = acc;
        FpPoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        FpPoly g = fp_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

Field Field::make(std::uint64_t p, unsigned m) {
    if (!is_prime_u64(p)) fail("NonPrime", "p = " + std::to_string(p) + " is not prime");
    if (p == 2) fail("EvenCharacteristic", "characteristic 2 is not supported");
    if (m < 1) fail("Overflow", "extension degree must be >= 1");
    // q = p^m must fit comfortably in a 64-bit word.
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > std::numeric_limits<std::uint32_t>::max() / p)
            fail("Overflow", "p^m does not fit the element index range");
        q *= p;
    }

    std::vector<std::uint32_t> modulus(m + 1, 0);
    modulus[m] = 1;
    if (m > 1) {
        // Scan lower coefficients as a base-p counter, constant coefficient
        // fastest, and take the first irreducible candidate.
        std::vector<std::uint32_t> low(m, 0);
        bool found = false;
        while (!found) {
            FpPoly cand(m + 1);
            for (unsigned i = 0; i < m; ++i) cand[i] = low[i];
            cand[m] = 1;
            if (fp_irreducible(cand, p)) {
                for (unsigned i = 0; i < m; ++i) modulus[i] = low[i];
                found = true;
                break;
            }
            unsigned i = 0;
            while (i < m && ++low[i] == p) low[i++] = 0;
            if (i == m) fail("Overflow", "no irreducible modulus found");  // unreachable
        }
    } else {
        modulus[0] = 0;  // degenerate: x
    }
    return with_modulus(p, std::move(modulus));
}

Field Field::with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime_u64(p) || p == 2) fail("NonPrime", "bad characteristic");
    if (modulus.size() < 2 || modulus.back() != 1)
        fail("Overflow", "modulus must be monic of degree >= 1");
    Field F;
    F.p_ = p;
    F.m_ = static_cast<unsigned>(modulus.size() - 1);
    F.q_ = 1;
    for (unsigned i = 0; i < F.m_; ++i) F.q_ *= p;
    F.modulus_ = std::move(modulus);
    return F;
}

std::vector<std::uint32_t> Field::coeffs(elem a) const {
    std::vector<std::uint32_t> c(m_);
    std::uint64_t v = a;
    for (unsigned i = 0; i < m_; ++i) {
        c[i] = static_cast<std::uint32_t>(v % p_);
        v /= p_;
    }
    return c;
}

elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    std::uint64_t v = 0;
    for (unsigned i = m_; i-- > 0;) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
    return static_cast<elem>(v);
}

elem Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<elem>(r);
}

elem Field::add(elem a, elem b) const {
    if (m_ == 1) {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        return static_cast<elem>(s >= q_ ? s - q_ : s);
    }
    auto ca = coeffs(a), cb = coeffs(b);
    for (unsigned i = 0; i < m_; ++i) {
        ca[i] += cb[i];
        if (ca[i] >= p_) ca[i] -= static_cast<std::uint32_t>(p_);
    }
    return from_coeffs(ca);
}

elem Field::neg(elem a) const {
    if (m_ == 1) return a == 0 ? 0 : static_cast<elem>(q_ - a);
    auto c = coeffs(a);
    for (auto& x : c) x = x == 0 ? 0 : static_cast<std::uint32_t>(p_ - x);
    return from_coeffs(c);
}

elem Field::sub(elem a, elem b) const { return add(a, neg(b)); }

elem Field::mul(elem a, elem b) const {
    if (m_ == 1) return static_cast<elem>(static_cast<std::uint64_t>(a) * b % p_);
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (!ca[i]) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_;
    }
    for (unsigned i = 2 * m_ - 1; i-- > m_;) {
        std::uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < m_; ++j) {
            std::uint64_t mj = modulus_[j];
            if (mj) prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - mj) * c) % p_;
        }
    }
    std::vector<std::uint32_t> out(m_);
    for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_coeffs(out);
}

elem Field::pow(elem a, std::uint64_t e) const {
    elem r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

elem Field::inv(elem a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero");
    return pow(a, q_ - 2);
}

std::string Field::to_json() const {
    std::string s = "{\"p\":" + std::to_string(p_) + ",\"m\":" + std::to_string(m_) + ",\"modulus\":[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
    }
    s += "]}";
    return s;
}

CharTable quadratic_character(const Field& F) {
    CharTable t;
    std::uint64_t q = F.q();
    t.chi.assign(q, 0);
    t.is_square.assign(q, 0);
    t.is_square[0] = 1;
    t.square_count = 1;
    elem minus_one = F.neg(1);
    std::uint64_t e = (q - 1) / 2;
    for (std::uint64_t a = 1; a < q; ++a) {
        elem v = F.pow(static_cast<elem>(a), e);
        if (v == 1) {
            t.chi[a] = 1;
            t.is_square[a] = 1;
            ++t.square_count;
        } else if (v == minus_one) {
            t.chi[a] = -1;
        } else {
            fail("Overflow", "character value not in {1,-1}; modulus is not irreducible");
        }
    }
    return t;
}

}  // namespace qr
