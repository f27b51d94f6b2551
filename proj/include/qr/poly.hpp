#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qr/field.hpp"

namespace qr {

// Dense univariate polynomial, coefficients low-to-high, no trailing zeros.
// The zero polynomial has empty coeffs.
struct UniPoly {
    std::vector<elem> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    elem lead() const { return c.back(); }
    bool operator==(const UniPoly& o) const { return c == o.c; }
};

UniPoly uni_trim(UniPoly a);
UniPoly uni_const(elem v);
UniPoly uni_x();
UniPoly uni_add(const Field& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const Field& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const Field& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const Field& F, const UniPoly& a, elem s);
// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> uni_divrem(const Field& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_gcd(const Field& F, UniPoly a, UniPoly b);  // monic (or zero)
UniPoly uni_derivative(const Field& F, const UniPoly& a);
elem uni_eval(const Field& F, const UniPoly& a, elem x);
UniPoly uni_pow(const Field& F, const UniPoly& a, unsigned e);

// Sparse bivariate polynomial: (i,j) -> nonzero coefficient of x^i y^j.
struct BivarPoly {
    std::map<std::pair<int, int>, elem> t;

    bool is_zero() const { return t.empty(); }
    int total_degree() const;
    int degree_x() const;
    int degree_y() const;
    bool operator==(const BivarPoly& o) const { return t == o.t; }
};

BivarPoly biv_from_terms(const Field& F, std::map<std::pair<int, int>, elem> terms);
BivarPoly biv_add(const Field& F, const BivarPoly& a, const BivarPoly& b);
BivarPoly biv_sub(const Field& F, const BivarPoly& a, const BivarPoly& b);
BivarPoly biv_mul(const Field& F, const BivarPoly& a, const BivarPoly& b);
BivarPoly biv_scale(const Field& F, const BivarPoly& a, elem s);
BivarPoly biv_swap_xy(const BivarPoly& a);

// Expression grammar (CLI-facing):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := 'x' | 'y' | 't' | uint | '(' expr ')'
// Integer literals reduce mod p; 't' is the adjoined root (m > 1 only).
BivarPoly parse_poly(const std::string& expr, const Field& F);

// Canonical rendering: monomials sorted by (i+j, i) descending.  Reparsing the
// rendered string yields an equal polynomial; this string keys the cache.
std::string render_poly(const BivarPoly& f, const Field& F);

elem biv_eval(const Field& F, const BivarPoly& f, elem a, elem b);
UniPoly specialize_y(const Field& F, const BivarPoly& f, elem u);  // f(x, u)
UniPoly specialize_x(const Field& F, const BivarPoly& f, elem u);  // f(u, y)

struct SquarefreeFactor {
    UniPoly factor;  // monic, squarefree
    unsigned multiplicity;
};

struct SquarefreeDecomposition {
    std::vector<SquarefreeFactor> factors;  // pairwise coprime
    elem unit;                              // g = unit * prod factor^mult
};

// Yun/Musser adapted to characteristic p: the g' = 0 branch extracts an exact
// p-th root of the coefficients (a -> a^{p^{m-1}}) and recurses with
// multiplicities multiplied by p.
SquarefreeDecomposition uni_squarefree_decomposition(const Field& F, const UniPoly& g);

bool is_const_times_square_uni(const Field& F, const UniPoly& g);

// f = unit * Fx * Gy * H with Fx, Gy monic and H primitive in both variables.
struct KernelDecomposition {
    UniPoly Fx;   // in x
    UniPoly Gy;   // in y
    BivarPoly H;  // primitive kernel
    elem unit;
};

KernelDecomposition primitive_kernel(const Field& F, const BivarPoly& f);

// Specialization-count square test for the primitive kernel: H (primitive in
// both variables) is a constant times a square iff H(x,u) is for d^2+d+1
// distinct u.  Requires q > d^2 + d.
bool is_const_times_square_biv(const Field& F, const BivarPoly& H);

struct AdmissibilityReport {
    bool undirected = false;
    bool kernel_square = false;
    bool admissible = false;
    std::optional<std::pair<elem, elem>> witness;  // violating (u,v) when directed
};

AdmissibilityReport check_admissible(const Field& F, const BivarPoly& f);

// Number of u with f(x,u) identically zero or a constant times a square.
int count_degenerate_rows(const Field& F, const BivarPoly& f);

// Number of ordered pairs (u,v) in C x C with f(x,u) f(x,v) identically zero
// or a constant times a square.
int count_degenerate_pairs(const Field& F, const BivarPoly& f, const std::vector<elem>& C);

enum class ComposeVariant { plain, tilde };

// plain: f(g(x), g(y)); tilde: g(x) g(y) f(g(x), g(y)).
BivarPoly compose(const Field& F, const BivarPoly& f, const UniPoly& g, ComposeVariant v);

}  // namespace qr
