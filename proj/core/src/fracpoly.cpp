#include <fracdyn/fracpoly.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace fracdyn {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

// ---------------------------------------------------------------------------
// VarId

std::string VarId::name() const {
    switch (kind) {
        case VarKind::time: return "t";
        case VarKind::position: return "x_" + std::to_string(index);
        case VarKind::velocity: return "y_" + std::to_string(index);
        case VarKind::accel: return "y2_" + std::to_string(index);
        case VarKind::momentum: return "p_" + std::to_string(index);
        case VarKind::multiplier: return "lambda";
        case VarKind::multiplier_rate: return "dlambda";
        case VarKind::discount: return "E";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Exponent

Exponent Exponent::real(double v) {
    if (std::floor(v) == v && std::abs(v) < 1.0e9) {
        return Exponent(static_cast<int>(v), 0);
    }
    Exponent e(0, 0);
    e.lattice_ = false;
    e.value_ = v;
    return e;
}

bool Exponent::same(const Exponent& o) const {
    if (lattice_ != o.lattice_) return false;
    if (lattice_) return m_ == o.m_ && k_ == o.k_;
    return value_ == o.value_;
}

Exponent Exponent::plus(const Exponent& o, double alpha) const {
    if (lattice_ && o.lattice_) return Exponent(m_ + o.m_, k_ + o.k_);
    return real(value(alpha) + o.value(alpha));
}

Exponent Exponent::minus_alpha(double alpha) const {
    if (lattice_) return Exponent(m_, k_ - 1);
    return real(value_ - alpha);
}

std::string Exponent::str() const {
    if (!lattice_) return fmt_double(value_);
    if (k_ == 0) return std::to_string(m_);
    std::string alpha_part;
    int ak = std::abs(k_);
    if (ak == 1) {
        alpha_part = "a";
    } else {
        alpha_part = std::to_string(ak) + "*a";
    }
    if (m_ == 0) {
        return (k_ < 0 ? "-" : "") + alpha_part;
    }
    return std::to_string(m_) + (k_ < 0 ? "-" : "+") + alpha_part;
}

namespace {

// Strict total order on exponents: numeric value first (deterministic term
// layout), exact lattice coordinates as tie-breakers so that numerically
// coincident but formally distinct exponents stay apart.
int cmp_exponent(const Exponent& a, const Exponent& b, double alpha) {
    const double va = a.value(alpha);
    const double vb = b.value(alpha);
    if (va < vb) return -1;
    if (va > vb) return 1;
    if (a.is_lattice() != b.is_lattice()) return a.is_lattice() ? -1 : 1;
    if (a.is_lattice()) {
        if (a.m() != b.m()) return a.m() < b.m() ? -1 : 1;
        if (a.k() != b.k()) return a.k() < b.k() ? -1 : 1;
        return 0;
    }
    return 0;
}

int cmp_exps(const std::vector<std::pair<VarId, Exponent>>& a,
             const std::vector<std::pair<VarId, Exponent>>& b, double alpha) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
        const int c = cmp_exponent(a[i].second, b[i].second, alpha);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

bool same_exps(const std::vector<std::pair<VarId, Exponent>>& a,
               const std::vector<std::pair<VarId, Exponent>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].first != b[i].first || !a[i].second.same(b[i].second)) return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// Monomial / FracPoly

std::optional<Exponent> Monomial::exponent_of(const VarId& v) const {
    for (const auto& [var, e] : exps) {
        if (var == v) return e;
    }
    return std::nullopt;
}

FracPoly FracPoly::constant(FracOrder order, double c) {
    FracPoly p(order);
    if (c != 0.0) p.terms_.push_back(Monomial{c, {}});
    return p;
}

FracPoly FracPoly::monomial(FracOrder order, double c,
                            std::vector<std::pair<VarId, Exponent>> exps) {
    FracPoly p(order);
    p.terms_.push_back(Monomial{c, std::move(exps)});
    p.canonicalize();
    return p;
}

FracPoly FracPoly::var(FracOrder order, VarId v) {
    return monomial(order, 1.0, {{v, Exponent::integer(1)}});
}

FracPoly FracPoly::var_pow(FracOrder order, VarId v, Exponent e) {
    return monomial(order, 1.0, {{v, e}});
}

FracOrder FracPoly::order() const {
    return alpha_ == 1.0 ? FracOrder::classical_limit() : FracOrder::of(alpha_);
}

bool FracPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.empty());
}

double FracPoly::constant_value() const {
    if (terms_.empty()) return 0.0;
    if (!is_constant()) throw input_error("FracPoly: not a constant polynomial");
    return terms_[0].coeff;
}

void FracPoly::canonicalize() {
    for (auto& t : terms_) {
        // combine repeated variables inside a term, drop zero exponents
        std::sort(t.exps.begin(), t.exps.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<VarId, Exponent>> packed;
        for (const auto& [v, e] : t.exps) {
            if (!packed.empty() && packed.back().first == v) {
                packed.back().second = packed.back().second.plus(e, alpha_);
            } else {
                packed.emplace_back(v, e);
            }
        }
        std::erase_if(packed, [&](const auto& ve) { return ve.second.value(alpha_) == 0.0; });
        t.exps = std::move(packed);
    }

    std::sort(terms_.begin(), terms_.end(), [&](const Monomial& a, const Monomial& b) {
        return cmp_exps(a.exps, b.exps, alpha_) < 0;
    });

    std::vector<Monomial> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && same_exps(merged.back().exps, t.exps)) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Monomial& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

namespace {

void require_same_alpha(const FracPoly& p, const FracPoly& q) {
    if (p.alpha() != q.alpha()) {
        throw input_error("FracPoly: operands built for different alpha (" +
                          fmt_double(p.alpha()) + " vs " + fmt_double(q.alpha()) + ")");
    }
}

} // namespace

FracPoly FracPoly::add(const FracPoly& q) const {
    require_same_alpha(*this, q);
    FracPoly r(order());
    r.terms_ = terms_;
    r.terms_.insert(r.terms_.end(), q.terms_.begin(), q.terms_.end());
    r.canonicalize();
    return r;
}

FracPoly FracPoly::sub(const FracPoly& q) const { return add(q.scale(-1.0)); }

FracPoly FracPoly::mul(const FracPoly& q) const {
    require_same_alpha(*this, q);
    FracPoly r(order());
    r.terms_.reserve(terms_.size() * q.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : q.terms_) {
            Monomial m;
            m.coeff = a.coeff * b.coeff;
            m.exps = a.exps;
            m.exps.insert(m.exps.end(), b.exps.begin(), b.exps.end());
            r.terms_.push_back(std::move(m));
        }
    }
    r.canonicalize();
    return r;
}

FracPoly FracPoly::scale(double c) const {
    FracPoly r(order());
    if (c == 0.0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

bool FracPoly::singular_at_origin() const {
    for (const auto& t : terms_) {
        for (const auto& [v, e] : t.exps) {
            if (e.value(alpha_) < 0.0) return true;
        }
    }
    return false;
}

std::pair<FracPoly, FracPoly> FracPoly::split_linear(const VarId& v) const {
    FracPoly linear(order());
    FracPoly rest(order());
    for (const auto& t : terms_) {
        auto e = t.exponent_of(v);
        if (!e) {
            rest.terms_.push_back(t);
            continue;
        }
        if (e->value(alpha_) != 1.0) {
            throw input_error("FracPoly: nonlinear power " + e->str() + " of " + v.name() +
                              " where a linear occurrence was required");
        }
        Monomial stripped = t;
        std::erase_if(stripped.exps, [&](const auto& ve) { return ve.first == v; });
        linear.terms_.push_back(std::move(stripped));
    }
    linear.canonicalize();
    rest.canonicalize();
    return {linear, rest};
}

double FracPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

bool operator==(const FracPoly& p, const FracPoly& q) {
    if (p.alpha_ != q.alpha_ || p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i) {
        if (p.terms_[i].coeff != q.terms_[i].coeff) return false;
        if (!same_exps(p.terms_[i].exps, q.terms_[i].exps)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Calculus

FracPoly frac_partial(const FracPoly& p, VarId v, FracOrder order) {
    if (p.alpha() != order.alpha()) {
        throw input_error("frac_partial: order alpha differs from the polynomial's alpha");
    }
    const double alpha = p.alpha();
    FracPoly out(p.order());
    std::vector<Monomial> result;
    for (const auto& t : p.terms()) {
        auto e = t.exponent_of(v);
        if (!e) continue; // constant in v
        const double g = e->value(alpha);
        if (g < 0.0) {
            throw input_error("frac_partial: term is singular in " + v.name() +
                              " (exponent " + e->str() + "); differentiation not defined");
        }
        // power rule: Gamma(1+g)/Gamma(1+g-alpha) v^{g-alpha}
        const double factor = gamma_fn(1.0 + g) / gamma_fn(1.0 + g - alpha);
        Monomial m;
        m.coeff = t.coeff * factor;
        for (const auto& [var, ex] : t.exps) {
            if (var == v) {
                Exponent reduced = ex.minus_alpha(alpha);
                if (reduced.value(alpha) != 0.0) m.exps.emplace_back(var, reduced);
            } else {
                m.exps.emplace_back(var, ex);
            }
        }
        result.push_back(std::move(m));
    }
    for (auto& m : result) out = out.add(FracPoly::monomial(p.order(), m.coeff, std::move(m.exps)));
    return out;
}

FracPoly dt_alpha_total(const FracPoly& p, int n) {
    FracPoly out = frac_partial(p, VarId::time(), p.order());
    for (int i = 1; i <= n; ++i) {
        FracPoly yi = FracPoly::var(p.order(), VarId::vel(i));
        out = out.add(yi.mul(frac_partial(p, VarId::pos(i), p.order())));
    }
    return out;
}

FracPoly dt_2alpha_total(const FracPoly& p, int n) {
    FracPoly out = dt_alpha_total(p, n);
    for (int i = 1; i <= n; ++i) {
        FracPoly y2i = FracPoly::var(p.order(), VarId::accel(i));
        out = out.add(y2i.mul(frac_partial(p, VarId::vel(i), p.order())));
    }
    return out;
}

FracPoly taylor_reconstruct(const FracPoly& p, FracOrder order, int k_max) {
    if (p.alpha() != order.alpha()) {
        throw input_error("taylor_reconstruct: order alpha differs from the polynomial's alpha");
    }
    const VarId t = VarId::time();
    for (const auto& term : p.terms()) {
        for (const auto& [v, e] : term.exps) {
            if (v != t) {
                throw input_error("taylor_reconstruct: polynomial must be over t only, found " +
                                  v.name());
            }
            if (!e.is_lattice() || e.m() != 0 || e.k() < 0 || e.k() > k_max) {
                throw input_error("taylor_reconstruct: exponent " + e.str() +
                                  " is not on the alpha lattice {0..k_max}");
            }
        }
    }

    const double alpha = order.alpha();
    FracPoly out(order);
    FracPoly cur = p;
    for (int a = 0; a <= k_max; ++a) {
        // D_t^{alpha a} p at t = 0 is the t-free part of the a-fold derivative.
        double coeff_a = 0.0;
        for (const auto& term : cur.terms()) {
            if (term.exps.empty()) coeff_a = term.coeff;
        }
        if (coeff_a != 0.0) {
            const double scale = coeff_a / gamma_fn(1.0 + alpha * a);
            out = out.add(FracPoly::monomial(order, scale, {{t, Exponent::alpha_multiple(a)}}));
        }
        if (a < k_max) cur = frac_partial(cur, t, order);
    }
    return out;
}

double eval(const FracPoly& p, const std::map<VarId, double>& point) {
    const double alpha = p.alpha();
    double sum = 0.0;
    for (const auto& t : p.terms()) {
        double prod = t.coeff;
        for (const auto& [v, e] : t.exps) {
            auto it = point.find(v);
            if (it == point.end()) {
                throw input_error("eval: no assignment for variable " + v.name());
            }
            const double base = it->second;
            const double ev = e.value(alpha);
            const bool integer_exp = std::floor(ev) == ev;
            if (!integer_exp && base < 0.0) {
                throw input_error("eval: negative base " + fmt_double(base) +
                                  " under non-integer exponent " + e.str() + " of " + v.name());
            }
            if (ev < 0.0 && base == 0.0) {
                throw input_error("eval: singular-at-origin term evaluated at " + v.name() +
                                  " = 0");
            }
            prod *= std::pow(base, ev);
        }
        sum += prod;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string display_name(const VarId& v, const NameTable& names) {
    for (const auto& [var, name] : names) {
        if (var == v) return name;
    }
    return v.name();
}

} // namespace

std::string to_string(const FracPoly& p, const NameTable& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) out += " + ";
        first = false;
        out += fmt_double(t.coeff);
        for (const auto& [v, e] : t.exps) {
            out += " * " + display_name(v, names);
            if (!(e.is_lattice() && e.m() == 1 && e.k() == 0)) {
                out += "^" + e.str();
            }
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    double alpha;
    FracOrder order;
    const NameTable& names;

    Parser(const std::string& s, FracOrder o, const NameTable& nt)
        : text(s), alpha(o.alpha()), order(o), names(nt) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw input_error("parse error at offset " + std::to_string(pos) + ": " + what);
    }

    bool try_number(double& out) {
        skip_ws();
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) return false;
        // reject a bare sign consumed as part of a number when it is actually
        // the term separator followed by a variable
        pos += static_cast<std::size_t>(end - start);
        out = v;
        return true;
    }

    bool try_identifier(std::string& out) {
        skip_ws();
        std::size_t p = pos;
        if (p >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[p])))) return false;
        std::size_t q = p;
        while (q < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[q])) || text[q] == '_'))
            ++q;
        out = text.substr(p, q - p);
        pos = q;
        return true;
    }

    VarId lookup_var(const std::string& name) {
        for (const auto& [var, alias] : names) {
            if (alias == name) return var;
        }
        if (name == "t") return VarId::time();
        if (name == "lambda") return VarId::multiplier();
        if (name == "dlambda") return VarId::multiplier_rate();
        if (name == "E") return VarId::discount();
        auto indexed = [&](const std::string& prefix, auto make) -> std::optional<VarId> {
            if (name.size() > prefix.size() && name.compare(0, prefix.size(), prefix) == 0) {
                const std::string idx = name.substr(prefix.size());
                if (!idx.empty() && idx.find_first_not_of("0123456789") == std::string::npos) {
                    return make(std::stoi(idx));
                }
            }
            return std::nullopt;
        };
        if (auto v = indexed("x_", [](int i) { return VarId::pos(i); })) return *v;
        if (auto v = indexed("y2_", [](int i) { return VarId::accel(i); })) return *v;
        if (auto v = indexed("y_", [](int i) { return VarId::vel(i); })) return *v;
        if (auto v = indexed("p_", [](int i) { return VarId::mom(i); })) return *v;
        fail("unknown variable '" + name + "'");
    }

    // Lattice exponent continuation after '^'. Longest match with backtrack:
    // "a", "k*a", "m+a", "m-a", "m+k*a", "m-k*a", or a plain number.
    Exponent parse_exponent() {
        skip_ws();
        // leading 'a' (possibly signed)
        std::size_t save = pos;
        int sign = 1;
        if (peek() == '-') {
            ++pos;
            sign = -1;
        } else if (peek() == '+') {
            ++pos;
        }
        std::string id;
        std::size_t save_after_sign = pos;
        if (try_identifier(id)) {
            if (id == "a") return Exponent::alpha_multiple(sign);
            pos = save_after_sign;
        }
        pos = save;

        double n1;
        if (!try_number(n1)) fail("expected exponent");

        auto as_int = [&](double v) -> std::optional<int> {
            if (std::floor(v) == v && std::abs(v) < 1.0e9) return static_cast<int>(v);
            return std::nullopt;
        };

        // "k*a" form
        save = pos;
        if (peek() == '*') {
            ++pos;
            if (try_identifier(id) && id == "a") {
                auto k = as_int(n1);
                if (!k) fail("lattice multiple of a must be an integer");
                return Exponent::alpha_multiple(*k);
            }
            pos = save;
        }

        // "m+k*a" / "m-k*a" / "m+a" / "m-a" forms
        save = pos;
        char op = peek();
        if (op == '+' || op == '-') {
            ++pos;
            const int ksign = op == '-' ? -1 : 1;
            std::size_t inner = pos;
            double n2;
            if (try_number(n2)) {
                std::size_t after_n2 = pos;
                if (peek() == '*') {
                    ++pos;
                    if (try_identifier(id) && id == "a") {
                        auto m = as_int(n1);
                        auto k = as_int(n2);
                        if (!m || !k) fail("lattice exponent parts must be integers");
                        return Exponent::lattice(*m, ksign * *k);
                    }
                }
                pos = after_n2;
                (void)inner;
            }
            if (try_identifier(id) && id == "a") {
                auto m = as_int(n1);
                if (!m) fail("lattice exponent parts must be integers");
                return Exponent::lattice(*m, ksign);
            }
            pos = save; // not a lattice tail; hand '+/-' back to the poly level
        }
        return Exponent::real(n1);
    }

    // factor := number | var ['^' exponent]
    // term   := factor ('*' factor)*
    Monomial parse_term() {
        Monomial m;
        m.coeff = 1.0;
        bool want_factor = true;
        while (want_factor) {
            skip_ws();
            std::string id;
            double num;
            std::size_t save = pos;
            if (try_identifier(id)) {
                VarId v = lookup_var(id);
                Exponent e = Exponent::integer(1);
                if (peek() == '^') {
                    ++pos;
                    e = parse_exponent();
                }
                m.exps.emplace_back(v, e);
            } else if (try_number(num)) {
                m.coeff *= num;
            } else {
                pos = save;
                fail("expected a coefficient or variable");
            }
            if (peek() == '*') {
                ++pos;
            } else {
                want_factor = false;
            }
        }
        return m;
    }

    FracPoly parse_poly() {
        FracPoly out(order);
        bool first = true;
        while (!at_end()) {
            double sign = 1.0;
            char c = peek();
            if (c == '+') {
                ++pos;
            } else if (c == '-') {
                ++pos;
                sign = -1.0;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            Monomial m = parse_term();
            m.coeff *= sign;
            out = out.add(FracPoly::monomial(order, m.coeff, std::move(m.exps)));
            first = false;
        }
        if (first) fail("empty polynomial");
        return out;
    }
};

} // namespace

FracPoly parse_fracpoly(const std::string& text, FracOrder order, const NameTable& names) {
    Parser p(text, order, names);
    return p.parse_poly();
}

} // namespace fracdyn
