#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qr/common.hpp"

namespace qr {

// Field elements are canonical integer indices in [0, q): the base-p digit
// encoding of the coefficient vector over F_p.
using elem = std::uint32_t;

// F_q for an odd prime power q = p^m.  For m > 1 the field is F_p[t]/(modulus)
// where modulus is the lexicographically smallest monic irreducible of degree
// m over F_p (scan the constant coefficient upward, then the next one, so the
// representation is reproducible across runs and machines).
class Field {
public:
    Field() = default;  // empty placeholder; use make()/with_modulus() for a real field
    static Field make(std::uint64_t p, unsigned m);
    static Field with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus_low_to_high);

    std::uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    std::uint64_t q() const { return q_; }
    // Monic, length m+1, low-to-high.  For m == 1 this is {0,1}, i.e. x.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    elem add(elem a, elem b) const;
    elem sub(elem a, elem b) const;
    elem neg(elem a) const;
    elem mul(elem a, elem b) const;
    elem inv(elem a) const;  // throws DivisionByZero for a == 0
    elem pow(elem a, std::uint64_t e) const;

    // Reduce an integer mod p and embed as a constant.
    elem from_int(std::int64_t v) const;
    elem one() const { return 1; }

    std::vector<std::uint32_t> coeffs(elem a) const;
    elem from_coeffs(const std::vector<std::uint32_t>& c) const;

    // Index of the adjoined root t (only meaningful for m > 1; equals p).
    elem generator_t() const { return static_cast<elem>(p_); }

    std::string to_json() const;

    bool operator==(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

private:
    std::uint64_t p_ = 0;
    unsigned m_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
};

// chi[a] = a^{(q-1)/2} interpreted in {-1,0,+1}; zero counts as a square.
struct CharTable {
    std::vector<std::int8_t> chi;
    std::vector<std::uint8_t> is_square;
    std::uint64_t square_count = 0;  // including zero: (q+1)/2
};

CharTable quadratic_character(const Field& F);

bool is_prime_u64(std::uint64_t n);

}  // namespace qr
