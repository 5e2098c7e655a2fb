#include "tilekit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tilekit {

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1 || nvars > kMaxVars)
        throw std::invalid_argument("LaurentPoly: variable count must be 1..4");
}

LaurentPoly LaurentPoly::one(int nvars) {
    LaurentPoly p(nvars);
    p.terms_.push_back(Mono{});
    return p;
}

LaurentPoly LaurentPoly::monomial(const Mono& m, int nvars) {
    LaurentPoly p(nvars);
    p.terms_.push_back(m);
    return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Mono> terms, int nvars) {
    LaurentPoly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void LaurentPoly::normalize() {
    std::sort(terms_.begin(), terms_.end());
    // Over GF(2) a monomial appearing twice cancels.
    std::vector<Mono> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i;
        while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
        if ((j - i) & 1) out.push_back(terms_[i]);
        i = j;
    }
    terms_ = std::move(out);
}

bool LaurentPoly::contains(const Mono& m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("poly add: variable count mismatch");
    LaurentPoly p(nvars_);
    p.terms_ = terms_;
    p.terms_.insert(p.terms_.end(), o.terms_.begin(), o.terms_.end());
    p.normalize();
    return p;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("poly mul: variable count mismatch");
    LaurentPoly p(nvars_);
    p.terms_.reserve(terms_.size() * o.terms_.size());
    for (const Mono& a : terms_)
        for (const Mono& b : o.terms_) p.terms_.push_back(a + b);
    p.normalize();
    return p;
}

LaurentPoly LaurentPoly::shifted(const Mono& by) const {
    LaurentPoly p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const Mono& t : terms_) p.terms_.push_back(t + by);
    // Shifting preserves sorted order.
    return p;
}

LaurentPoly LaurentPoly::reversed(int width, unsigned axes_mask) const {
    LaurentPoly p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const Mono& t : terms_) {
        Mono m = t;
        for (int i = 0; i < nvars_; ++i)
            if (axes_mask & (1u << i)) m.e[i] = width - m.e[i];
        p.terms_.push_back(m);
    }
    p.normalize();
    return p;
}

LaurentPoly LaurentPoly::inverted(unsigned axes_mask) const {
    LaurentPoly p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const Mono& t : terms_) {
        Mono m = t;
        for (int i = 0; i < nvars_; ++i)
            if (axes_mask & (1u << i)) m.e[i] = -m.e[i];
        p.terms_.push_back(m);
    }
    p.normalize();
    return p;
}

DegreeBox LaurentPoly::degree_box() const {
    if (terms_.empty())
        throw std::invalid_argument("degree_box: zero polynomial has no degree box");
    DegreeBox b;
    b.lo = b.hi = terms_[0].e;
    for (const Mono& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) {
            b.lo[i] = std::min(b.lo[i], t.e[i]);
            b.hi[i] = std::max(b.hi[i], t.e[i]);
        }
    return b;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const Mono& t : terms_) {
        if (!out.empty()) out += "+";
        std::string term;
        for (int i = 0; i < nvars_; ++i) {
            if (t.e[i] == 0) continue;
            if (!term.empty()) term += "*";
            term += kVarNames[i];
            if (t.e[i] != 1) term += "^" + std::to_string(t.e[i]);
        }
        out += term.empty() ? "1" : term;
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    int nvars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer exponent");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) { pos = start; fail("exponent out of range"); }
            ++pos;
        }
        return int(neg ? -v : v);
    }

    // factor := variable ('^' integer)?
    void parse_factor(Mono& m) {
        skip_ws();
        if (pos >= s.size()) fail("expected variable");
        char c = s[pos];
        int var = -1;
        for (int i = 0; i < kMaxVars; ++i)
            if (c == kVarNames[i]) var = i;
        if (var < 0) fail(std::string("unknown variable '") + c + "'");
        if (var >= nvars)
            fail(std::string("variable '") + c + "' not available with " +
                 std::to_string(nvars) + " variables");
        ++pos;
        int exp = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            exp = parse_int();
        }
        m.e[var] += exp;
    }

    // term := '1' | factor ('*' factor)*
    Mono parse_term() {
        skip_ws();
        if (pos >= s.size()) fail("expected term");
        Mono m;
        if (s[pos] == '1') {
            ++pos;
            return m;
        }
        parse_factor(m);
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                parse_factor(m);
            } else {
                break;
            }
        }
        return m;
    }

    LaurentPoly parse() {
        std::vector<Mono> terms;
        terms.push_back(parse_term());
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') {
                ++pos;
                terms.push_back(parse_term());
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size()) fail("unexpected trailing input");
        return LaurentPoly::from_terms(std::move(terms), nvars);
    }
};

}  // namespace

LaurentPoly parse_poly(const std::string& text, int nvars) {
    if (nvars < 1 || nvars > kMaxVars)
        throw std::invalid_argument("parse_poly: variable count must be 1..4");
    Parser p{text, nvars};
    return p.parse();
}

TilePair make_tile_pair(const LaurentPoly& f, const LaurentPoly& g, int D) {
    if (D < 1) throw std::invalid_argument("tile pair: width must be at least 1");
    if (f.nvars() != 2 || g.nvars() != 2)
        throw std::invalid_argument("tile pair: tiles are bivariate");
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("tile pair: tile polynomial is zero");
    int max_x = 0, max_y = 0;
    for (const LaurentPoly* p : {&f, &g}) {
        DegreeBox b = p->degree_box();
        if (b.lo[0] < 0 || b.lo[1] < 0 || b.hi[0] > D || b.hi[1] > D)
            throw std::invalid_argument(
                "tile pair: support leaves the box [0," + std::to_string(D) + "]^2");
        max_x = std::max(max_x, b.hi[0]);
        max_y = std::max(max_y, b.hi[1]);
    }
    if (max_x != D)
        throw std::invalid_argument("tile pair: neither tile reaches x-degree " + std::to_string(D));
    if (max_y != D)
        throw std::invalid_argument("tile pair: neither tile reaches y-degree " + std::to_string(D));
    return TilePair{f, g, D};
}

int infer_tile_width(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("tile pair: tile polynomial is zero");
    DegreeBox bf = f.degree_box(), bg = g.degree_box();
    int D = std::max({bf.hi[0], bf.hi[1], bg.hi[0], bg.hi[1]});
    make_tile_pair(f, g, D);  // validates
    return D;
}

}  // namespace tilekit
