#include "qr/poly.hpp"

#include <algorithm>
#include <cctype>

namespace qr {

UniPoly uni_trim(UniPoly a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    return a;
}

UniPoly uni_const(elem v) {
    UniPoly r;
    if (v != 0) r.c = {v};
    return r;
}

UniPoly uni_x() { return UniPoly{{0, 1}}; }

UniPoly uni_add(const Field& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        elem x = i < a.c.size() ? a.c[i] : 0;
        elem y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = F.add(x, y);
    }
    return uni_trim(std::move(r));
}

UniPoly uni_sub(const Field& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        elem x = i < a.c.size() ? a.c[i] : 0;
        elem y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = F.sub(x, y);
    }
    return uni_trim(std::move(r));
}

UniPoly uni_mul(const Field& F, const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return uni_trim(std::move(r));
}

UniPoly uni_scale(const Field& F, const UniPoly& a, elem s) {
    if (s == 0) return {};
    UniPoly r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    return r;
}

std::pair<UniPoly, UniPoly> uni_divrem(const Field& F, const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) fail("ZeroPolynomial", "division by the zero polynomial");
    UniPoly rem = a, quot;
    if (a.c.size() < b.c.size()) return {quot, rem};
    quot.c.assign(a.c.size() - b.c.size() + 1, 0);
    elem lead_inv = F.inv(b.lead());
    for (std::size_t i = a.c.size(); i-- >= b.c.size();) {
        if (i >= rem.c.size() || rem.c[i] == 0) {
            if (i == b.c.size() - 1) break;
            continue;
        }
        elem q = F.mul(rem.c[i], lead_inv);
        std::size_t shift = i - (b.c.size() - 1);
        quot.c[shift] = q;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            rem.c[shift + j] = F.sub(rem.c[shift + j], F.mul(q, b.c[j]));
        if (i == b.c.size() - 1) break;
    }
    return {uni_trim(std::move(quot)), uni_trim(std::move(rem))};
}

UniPoly uni_gcd(const Field& F, UniPoly a, UniPoly b) {
    a = uni_trim(std::move(a));
    b = uni_trim(std::move(b));
    while (!b.is_zero()) {
        auto [q, r] = uni_divrem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.lead() != 1) a = uni_scale(F, a, F.inv(a.lead()));
    return a;
}

UniPoly uni_derivative(const Field& F, const UniPoly& a) {
    UniPoly r;
    if (a.c.size() < 2) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = F.mul(a.c[i], F.from_int(static_cast<std::int64_t>(i)));
    return uni_trim(std::move(r));
}

elem uni_eval(const Field& F, const UniPoly& a, elem x) {
    elem v = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) v = F.add(F.mul(v, x), a.c[i]);
    return v;
}

UniPoly uni_pow(const Field& F, const UniPoly& a, unsigned e) {
    UniPoly r = uni_const(1), base = a;
    while (e) {
        if (e & 1) r = uni_mul(F, r, base);
        base = uni_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

int BivarPoly::total_degree() const {
    int d = 0;
    for (const auto& [ij, c] : t) d = std::max(d, ij.first + ij.second);
    return d;
}

int BivarPoly::degree_x() const {
    int d = 0;
    for (const auto& [ij, c] : t) d = std::max(d, ij.first);
    return d;
}

int BivarPoly::degree_y() const {
    int d = 0;
    for (const auto& [ij, c] : t) d = std::max(d, ij.second);
    return d;
}

BivarPoly biv_from_terms(const Field& F, std::map<std::pair<int, int>, elem> terms) {
    BivarPoly r;
    (void)F;
    for (auto& [ij, c] : terms)
        if (c != 0) r.t[ij] = c;
    return r;
}

static void biv_accum(const Field& F, BivarPoly& r, std::pair<int, int> ij, elem c) {
    if (c == 0) return;
    auto it = r.t.find(ij);
    if (it == r.t.end()) {
        r.t.emplace(ij, c);
    } else {
        it->second = F.add(it->second, c);
        if (it->second == 0) r.t.erase(it);
    }
}

BivarPoly biv_add(const Field& F, const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r = a;
    for (const auto& [ij, c] : b.t) biv_accum(F, r, ij, c);
    return r;
}

BivarPoly biv_sub(const Field& F, const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r = a;
    for (const auto& [ij, c] : b.t) biv_accum(F, r, ij, F.neg(c));
    return r;
}

BivarPoly biv_mul(const Field& F, const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ij, c] : a.t)
        for (const auto& [kl, d] : b.t)
            biv_accum(F, r, {ij.first + kl.first, ij.second + kl.second}, F.mul(c, d));
    return r;
}

BivarPoly biv_scale(const Field& F, const BivarPoly& a, elem s) {
    BivarPoly r;
    if (s == 0) return r;
    for (const auto& [ij, c] : a.t) r.t[ij] = F.mul(c, s);
    return r;
}

BivarPoly biv_swap_xy(const BivarPoly& a) {
    BivarPoly r;
    for (const auto& [ij, c] : a.t) r.t[{ij.second, ij.first}] = c;
    return r;
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const std::string& s, const Field& F) : s_(s), F_(F) {}

    BivarPoly run() {
        BivarPoly e = expr();
        skip();
        if (pos_ != s_.size()) syntax("unexpected character");
        return e;
    }

private:
    const std::string& s_;
    const Field& F_;
    std::size_t pos_ = 0;

    [[noreturn]] void syntax(const std::string& what) {
        fail("SyntaxError", what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    BivarPoly expr() {
        BivarPoly acc = term();
        for (;;) {
            if (eat('+')) {
                acc = biv_add(F_, acc, term());
            } else if (eat('-')) {
                acc = biv_sub(F_, acc, term());
            } else {
                return acc;
            }
        }
    }

    BivarPoly term() {
        BivarPoly acc = factor();
        while (eat('*')) acc = biv_mul(F_, acc, factor());
        return acc;
    }

    BivarPoly factor() {
        BivarPoly base = atom();
        if (eat('^')) {
            unsigned e = parse_uint();
            BivarPoly r;
            r.t[{0, 0}] = 1;
            BivarPoly b = base;
            while (e) {
                if (e & 1) r = biv_mul(F_, r, b);
                b = biv_mul(F_, b, b);
                e >>= 1;
            }
            return r;
        }
        return base;
    }

    unsigned parse_uint() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            syntax("expected exponent");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
            if (v > 100000) syntax("exponent too large");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    BivarPoly atom() {
        char c = peek();
        BivarPoly r;
        if (c == 'x') {
            ++pos_;
            r.t[{1, 0}] = 1;
            return r;
        }
        if (c == 'y') {
            ++pos_;
            r.t[{0, 1}] = 1;
            return r;
        }
        if (c == 't') {
            if (F_.m() == 1)
                fail("GeneratorInPrimeField",
                     "'t' denotes the adjoined root and is only legal when m > 1 (offset " +
                         std::to_string(pos_) + ")");
            ++pos_;
            r.t[{0, 0}] = F_.generator_t();
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = (v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0')) % F_.p();
                ++pos_;
            }
            elem e = static_cast<elem>(v);
            if (e != 0) r.t[{0, 0}] = e;
            return r;
        }
        if (c == '(') {
            ++pos_;
            BivarPoly e = expr();
            if (!eat(')')) syntax("expected ')'");
            return e;
        }
        syntax("expected atom");
    }
};

}  // namespace

BivarPoly parse_poly(const std::string& expr, const Field& F) { return Parser(expr, F).run(); }

static std::string render_elem(const Field& F, elem c) {
    if (F.m() == 1) return std::to_string(c);
    auto d = F.coeffs(c);
    bool only_const = true;
    for (std::size_t k = 1; k < d.size(); ++k)
        if (d[k]) only_const = false;
    if (only_const) return std::to_string(d[0]);
    std::string s = "(";
    bool first = true;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (!d[k]) continue;
        if (!first) s += "+";
        first = false;
        if (k == 0) {
            s += std::to_string(d[0]);
        } else {
            if (d[k] != 1) s += std::to_string(d[k]) + "*";
            s += "t";
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s + ")";
}

std::string render_poly(const BivarPoly& f, const Field& F) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<std::pair<int, int>, elem>> terms(f.t.begin(), f.t.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::string s;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        auto [ij, c] = terms[k];
        if (k) s += "+";
        std::vector<std::string> parts;
        bool has_mono = ij.first > 0 || ij.second > 0;
        if (c != 1 || !has_mono) parts.push_back(render_elem(F, c));
        if (ij.first == 1) parts.push_back("x");
        else if (ij.first > 1) parts.push_back("x^" + std::to_string(ij.first));
        if (ij.second == 1) parts.push_back("y");
        else if (ij.second > 1) parts.push_back("y^" + std::to_string(ij.second));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += "*";
            s += parts[i];
        }
    }
    return s;
}

elem biv_eval(const Field& F, const BivarPoly& f, elem a, elem b) {
    return uni_eval(F, specialize_y(F, f, b), a);
}

UniPoly specialize_y(const Field& F, const BivarPoly& f, elem u) {
    int dy = f.degree_y();
    std::vector<elem> upow(static_cast<std::size_t>(dy) + 1);
    upow[0] = 1;
    for (int j = 1; j <= dy; ++j) upow[j] = F.mul(upow[j - 1], u);
    UniPoly r;
    r.c.assign(static_cast<std::size_t>(f.degree_x()) + 1, 0);
    for (const auto& [ij, c] : f.t)
        r.c[ij.first] = F.add(r.c[ij.first], F.mul(c, upow[ij.second]));
    return uni_trim(std::move(r));
}

UniPoly specialize_x(const Field& F, const BivarPoly& f, elem u) {
    return specialize_y(F, biv_swap_xy(f), u);
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (Musser, characteristic p)
// ---------------------------------------------------------------------------

static UniPoly pth_root_poly(const Field& F, const UniPoly& g) {
    // g must be of the form h(x^p); coefficients get an exact p-th root via
    // a -> a^{p^{m-1}} (inverse of the Frobenius).
    std::uint64_t p = F.p();
    std::uint64_t e = 1;
    for (unsigned i = 1; i < F.m(); ++i) e *= p;
    UniPoly h;
    h.c.assign((g.c.size() + p - 1) / p, 0);
    for (std::size_t i = 0; i < g.c.size(); ++i) {
        if (!g.c[i]) continue;
        if (i % p != 0) fail("ZeroPolynomial", "internal: not a p-th power");
        h.c[i / p] = F.pow(g.c[i], e);
    }
    return uni_trim(std::move(h));
}

SquarefreeDecomposition uni_squarefree_decomposition(const Field& F, const UniPoly& g0) {
    if (g0.is_zero()) fail("ZeroPolynomial", "squarefree decomposition of the zero polynomial");
    SquarefreeDecomposition out;
    out.unit = g0.lead();
    if (g0.degree() == 0) return out;
    UniPoly g = uni_scale(F, g0, F.inv(g0.lead()));

    UniPoly d = uni_derivative(F, g);
    if (d.is_zero()) {
        auto sub = uni_squarefree_decomposition(F, pth_root_poly(F, g));
        for (auto& fm : sub.factors)
            out.factors.push_back({fm.factor, fm.multiplicity * static_cast<unsigned>(F.p())});
        return out;
    }

    UniPoly c = uni_gcd(F, g, d);
    UniPoly w = uni_divrem(F, g, c).first;
    unsigned i = 1;
    while (w.degree() > 0) {
        UniPoly y = uni_gcd(F, w, c);
        UniPoly z = uni_divrem(F, w, y).first;
        if (z.degree() > 0) out.factors.push_back({z, i});
        ++i;
        w = std::move(y);
        c = uni_divrem(F, c, w).first;
    }
    if (c.degree() > 0) {
        auto sub = uni_squarefree_decomposition(F, pth_root_poly(F, c));
        for (auto& fm : sub.factors)
            out.factors.push_back({fm.factor, fm.multiplicity * static_cast<unsigned>(F.p())});
    }
    return out;
}

bool is_const_times_square_uni(const Field& F, const UniPoly& g) {
    if (g.is_zero()) fail("ZeroPolynomial", "square test on the zero polynomial");
    auto d = uni_squarefree_decomposition(F, g);
    for (const auto& fm : d.factors)
        if (fm.multiplicity % 2 != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Primitive kernel
// ---------------------------------------------------------------------------

static std::vector<UniPoly> coeffs_in_x_of_y(const BivarPoly& f) {
    // coefficient of y^j as a polynomial in x
    std::vector<UniPoly> v(static_cast<std::size_t>(f.degree_y()) + 1);
    int dx = f.degree_x();
    for (auto& u : v) u.c.assign(static_cast<std::size_t>(dx) + 1, 0);
    for (const auto& [ij, c] : f.t) v[ij.second].c[ij.first] = c;
    for (auto& u : v) u = uni_trim(std::move(u));
    return v;
}

static BivarPoly rebuild_from_y_coeffs(const std::vector<UniPoly>& v) {
    BivarPoly r;
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t i = 0; i < v[j].c.size(); ++i)
            if (v[j].c[i]) r.t[{static_cast<int>(i), static_cast<int>(j)}] = v[j].c[i];
    return r;
}

KernelDecomposition primitive_kernel(const Field& F, const BivarPoly& f) {
    if (f.is_zero()) fail("ZeroPolynomial", "primitive kernel of the zero polynomial");
    KernelDecomposition out;

    // content in (F_q[x])[y]
    auto ycoeffs = coeffs_in_x_of_y(f);
    UniPoly fx;
    for (const auto& u : ycoeffs)
        if (!u.is_zero()) fx = uni_gcd(F, fx, u);
    out.Fx = fx;
    for (auto& u : ycoeffs) {
        if (u.is_zero()) continue;
        auto [q, r] = uni_divrem(F, u, fx);
        u = std::move(q);
    }
    BivarPoly g = rebuild_from_y_coeffs(ycoeffs);

    // content in (F_q[y])[x]
    auto xcoeffs = coeffs_in_x_of_y(biv_swap_xy(g));
    UniPoly gy;
    for (const auto& u : xcoeffs)
        if (!u.is_zero()) gy = uni_gcd(F, gy, u);
    out.Gy = gy;
    for (auto& u : xcoeffs) {
        if (u.is_zero()) continue;
        auto [q, r] = uni_divrem(F, u, gy);
        u = std::move(q);
    }
    BivarPoly h = biv_swap_xy(rebuild_from_y_coeffs(xcoeffs));

    // normalize H by its leading coefficient in the canonical monomial order
    elem lead = 1;
    {
        bool first = true;
        std::pair<int, int> bk;
        for (const auto& [ij, c] : h.t) {
            std::pair<int, int> key{ij.first + ij.second, ij.first};
            if (first || key > bk) {
                bk = key;
                lead = c;
                first = false;
            }
        }
    }
    out.unit = lead;
    out.H = biv_scale(F, h, F.inv(lead));
    return out;
}

bool is_const_times_square_biv(const Field& F, const BivarPoly& H) {
    if (H.is_zero()) fail("ZeroPolynomial", "square test on the zero polynomial");
    int d = H.total_degree();
    if (d == 0) return true;
    if (H.degree_x() == 0) {
        // univariate in y
        return is_const_times_square_uni(F, specialize_x(F, H, 0));
    }
    // A single non-square specialization refutes squareness outright; the
    // d^2+d+1 distinct-u count is needed only to *conclude* squareness.
    std::uint64_t needed = static_cast<std::uint64_t>(d) * d + d + 1;
    std::uint64_t tested = 0;
    for (std::uint64_t u = 0; u < F.q() && tested < needed; ++u) {
        UniPoly s = specialize_y(F, H, static_cast<elem>(u));
        if (s.is_zero()) continue;  // cannot happen for a primitive kernel
        if (!is_const_times_square_uni(F, s)) return false;
        ++tested;
    }
    if (tested < needed)
        fail("FieldTooSmall", "specialization-count square test needs q > d^2 + d (q = " +
                                  std::to_string(F.q()) + ", d = " + std::to_string(d) + ")");
    return true;
}

AdmissibilityReport check_admissible(const Field& F, const BivarPoly& f) {
    if (f.is_zero()) fail("ZeroPolynomial", "admissibility of the zero polynomial");
    AdmissibilityReport rep;
    CharTable chi = quadratic_character(F);
    std::uint64_t q = F.q();

    // exhaustive undirectedness: is_square(f(u,v)) == is_square(f(v,u))
    std::vector<std::uint8_t> sq(q * q);
    for (std::uint64_t v = 0; v < q; ++v) {
        UniPoly gv = specialize_y(F, f, static_cast<elem>(v));
        for (std::uint64_t u = 0; u < q; ++u)
            sq[u * q + v] = chi.is_square[uni_eval(F, gv, static_cast<elem>(u))];
    }
    rep.undirected = true;
    for (std::uint64_t u = 0; u < q && rep.undirected; ++u)
        for (std::uint64_t v = u + 1; v < q; ++v)
            if (sq[u * q + v] != sq[v * q + u]) {
                rep.undirected = false;
                rep.witness = {static_cast<elem>(u), static_cast<elem>(v)};
                break;
            }

    rep.kernel_square = is_const_times_square_biv(F, primitive_kernel(F, f).H);
    rep.admissible = rep.undirected && !rep.kernel_square;
    return rep;
}

int count_degenerate_rows(const Field& F, const BivarPoly& f) {
    int n = 0;
    for (std::uint64_t u = 0; u < F.q(); ++u) {
        UniPoly s = specialize_y(F, f, static_cast<elem>(u));
        if (s.is_zero() || is_const_times_square_uni(F, s)) ++n;
    }
    return n;
}

int count_degenerate_pairs(const Field& F, const BivarPoly& f, const std::vector<elem>& C) {
    std::vector<UniPoly> spec;
    spec.reserve(C.size());
    for (elem u : C) spec.push_back(specialize_y(F, f, u));
    int n = 0;
    for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = 0; j < C.size(); ++j) {
            UniPoly prod = uni_mul(F, spec[i], spec[j]);
            if (prod.is_zero() || is_const_times_square_uni(F, prod)) ++n;
        }
    return n;
}

BivarPoly compose(const Field& F, const BivarPoly& f, const UniPoly& g, ComposeVariant variant) {
    if (g.degree() < 1) fail("ConstantG", "composition requires a nonconstant g");
    int dx = f.degree_x(), dy = f.degree_y();
    int dmax = std::max(dx, dy);
    std::vector<UniPoly> gpow(static_cast<std::size_t>(dmax) + 1);
    gpow[0] = uni_const(1);
    for (int i = 1; i <= dmax; ++i) gpow[i] = uni_mul(F, gpow[i - 1], g);

    BivarPoly h;
    for (const auto& [ij, c] : f.t) {
        const UniPoly& gx = gpow[ij.first];
        const UniPoly& gy = gpow[ij.second];
        for (std::size_t a = 0; a < gx.c.size(); ++a) {
            if (!gx.c[a]) continue;
            elem ca = F.mul(c, gx.c[a]);
            for (std::size_t b = 0; b < gy.c.size(); ++b)
                if (gy.c[b])
                    biv_accum(F, h, {static_cast<int>(a), static_cast<int>(b)}, F.mul(ca, gy.c[b]));
        }
    }
    if (variant == ComposeVariant::tilde) {
        BivarPoly gx, gy;
        for (std::size_t a = 0; a < g.c.size(); ++a) {
            if (!g.c[a]) continue;
            gx.t[{static_cast<int>(a), 0}] = g.c[a];
            gy.t[{0, static_cast<int>(a)}] = g.c[a];
        }
        h = biv_mul(F, biv_mul(F, gx, gy), h);
    }
    return h;
}

}  // namespace qr
