#include "coprime/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace coprime {

namespace {

using NodePtr = std::shared_ptr<const HardyExpr::Node>;
using Kind = HardyExpr::Kind;

NodePtr make_node(Kind k, ExactReal v = ExactReal(), int depth = 0, NodePtr a = nullptr,
                  NodePtr b = nullptr) {
    auto n = std::make_shared<HardyExpr::Node>();
    n->kind = k;
    n->value = std::move(v);
    n->log_depth = depth;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool node_equal(const HardyExpr::Node* x, const HardyExpr::Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->log_depth != y->log_depth) return false;
    if (!(x->value == y->value)) return false;
    return node_equal(x->a.get(), y->a.get()) && node_equal(x->b.get(), y->b.get());
}

constexpr double kLogMargin = 2.7182818284590456;  // just above e

PreciseValue eval_node(const HardyExpr::Node* n, const PreciseValue& t, mpfr_prec_t wb,
                       bool enforce_log_margin) {
    switch (n->kind) {
        case Kind::Const:
            return PreciseValue::from_writer(
                wb, [&](mpfr_ptr lo, mpfr_ptr hi) { n->value.enclose(lo, hi, wb); });
        case Kind::Var:
            return t;
        case Kind::Add:
            return eval_node(n->a.get(), t, wb, enforce_log_margin) +
                   eval_node(n->b.get(), t, wb, enforce_log_margin);
        case Kind::Sub:
            return eval_node(n->a.get(), t, wb, enforce_log_margin) -
                   eval_node(n->b.get(), t, wb, enforce_log_margin);
        case Kind::Mul:
            return eval_node(n->a.get(), t, wb, enforce_log_margin) *
                   eval_node(n->b.get(), t, wb, enforce_log_margin);
        case Kind::Div:
            return eval_node(n->a.get(), t, wb, enforce_log_margin) /
                   eval_node(n->b.get(), t, wb, enforce_log_margin);
        case Kind::Pow: {
            PreciseValue base = eval_node(n->a.get(), t, wb, enforce_log_margin);
            if (auto ei = n->value.as_integer()) return base.pow_integer(*ei);
            PreciseValue e = PreciseValue::from_writer(
                wb, [&](mpfr_ptr lo, mpfr_ptr hi) { n->value.enclose(lo, hi, wb); });
            return base.pow(e);
        }
        case Kind::LogIter: {
            PreciseValue v = eval_node(n->a.get(), t, wb, enforce_log_margin);
            for (int i = 0; i < n->log_depth; ++i) {
                if (enforce_log_margin && mpfr_cmp_d(v.lower(), kLogMargin) <= 0)
                    throw DomainError("log argument does not exceed e");
                v = v.log();
            }
            return v;
        }
    }
    throw std::logic_error("eval: bad node");
}

}  // namespace

HardyExpr::HardyExpr(NodePtr r) : root_(std::move(r)) {
    // threshold: least power of two where evaluation succeeds with every log
    // argument above e
    t0_ = uint64_t(1) << 62;
    t0_capped_ = true;
    for (int j = 0; j <= 62; ++j) {
        uint64_t t = uint64_t(1) << j;
        try {
            PreciseValue tv = PreciseValue::exact((unsigned long)t, 96);
            (void)eval_node(root_.get(), tv, 128, true);
            t0_ = t;
            t0_capped_ = false;
            break;
        } catch (const DomainError&) {
            continue;
        }
    }
}

bool HardyExpr::operator==(const HardyExpr& o) const {
    return node_equal(root_.get(), o.root_.get());
}

HardyExpr HardyExpr::constant(ExactReal v) { return HardyExpr(make_node(Kind::Const, std::move(v))); }
HardyExpr HardyExpr::variable() { return HardyExpr(make_node(Kind::Var)); }
HardyExpr HardyExpr::add(HardyExpr x, HardyExpr y) {
    return HardyExpr(make_node(Kind::Add, ExactReal(), 0, x.root_, y.root_));
}
HardyExpr HardyExpr::sub(HardyExpr x, HardyExpr y) {
    return HardyExpr(make_node(Kind::Sub, ExactReal(), 0, x.root_, y.root_));
}
HardyExpr HardyExpr::mul(HardyExpr x, HardyExpr y) {
    return HardyExpr(make_node(Kind::Mul, ExactReal(), 0, x.root_, y.root_));
}
HardyExpr HardyExpr::div(HardyExpr x, HardyExpr y) {
    return HardyExpr(make_node(Kind::Div, ExactReal(), 0, x.root_, y.root_));
}
HardyExpr HardyExpr::pow(HardyExpr base, ExactReal exponent) {
    return HardyExpr(make_node(Kind::Pow, std::move(exponent), 0, base.root_));
}
HardyExpr HardyExpr::log_iter(int depth, HardyExpr arg) {
    if (depth < 1) throw std::invalid_argument("log_iter: depth must be >= 1");
    // collapse onto an inner iterated log of the bare variable
    if (arg.root_ && arg.root_->kind == Kind::LogIter && arg.root_->a &&
        arg.root_->a->kind == Kind::Var)
        return HardyExpr(make_node(Kind::LogIter, ExactReal(), depth + arg.root_->log_depth,
                                   arg.root_->a));
    return HardyExpr(make_node(Kind::LogIter, ExactReal(), depth, arg.root_));
}

// --- parser -----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(std::string("expected ") + what, i);
    }

    static bool ident_char(char c) {
        return std::isalnum((unsigned char)c) || c == '_';
    }

    std::string scan_number() {
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i < s.size() && s[i] == '.') {
            ++i;
            if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
                throw ParseError("digits required after decimal point", i);
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            size_t mark = i;
            ++i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
            if (i < s.size() && std::isdigit((unsigned char)s[i])) {
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            } else {
                i = mark;  // the 'e' belongs to an identifier, not this number
            }
        }
        return s.substr(start, i - start);
    }

    HardyExpr parse_expr() {
        HardyExpr acc = parse_term();
        for (;;) {
            if (eat('+'))
                acc = HardyExpr::add(acc, parse_term());
            else if (eat('-'))
                acc = HardyExpr::sub(acc, parse_term());
            else
                return acc;
        }
    }

    HardyExpr parse_term() {
        HardyExpr acc = parse_factor();
        for (;;) {
            if (eat('*'))
                acc = HardyExpr::mul(acc, parse_factor());
            else if (eat('/'))
                acc = HardyExpr::div(acc, parse_factor());
            else
                return acc;
        }
    }

    HardyExpr parse_factor() {
        HardyExpr base = parse_atom();
        if (eat('^')) return HardyExpr::pow(base, parse_exponent());
        return base;
    }

    ExactReal parse_exponent() {
        skip_ws();
        size_t pos = i;
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
            skip_ws();
        }
        ExactReal e;
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            e = ExactReal::from_decimal(scan_number());
        } else if (i < s.size() && s[i] == '(') {
            ++i;
            HardyExpr inner = parse_expr();
            expect(')', "')'");
            auto folded = const_fold(inner.root());
            if (!folded) throw ParseError("exponent must be a constant", pos);
            e = *folded;
        } else if (i < s.size() && std::isalpha((unsigned char)s[i])) {
            size_t start = i;
            while (i < s.size() && ident_char(s[i])) ++i;
            std::string name = s.substr(start, i - start);
            try {
                e = ExactReal::named(name);
            } catch (const std::invalid_argument&) {
                throw ParseError("unknown constant in exponent: " + name, start);
            }
        } else {
            throw ParseError("expected exponent", pos);
        }
        return neg ? -e : e;
    }

    static std::optional<ExactReal> const_fold(const HardyExpr::Node* n) {
        switch (n->kind) {
            case Kind::Const:
                return n->value;
            case Kind::Var:
                return std::nullopt;
            case Kind::Add: {
                auto a = const_fold(n->a.get()), b = const_fold(n->b.get());
                if (a && b) return *a + *b;
                return std::nullopt;
            }
            case Kind::Sub: {
                auto a = const_fold(n->a.get()), b = const_fold(n->b.get());
                if (a && b) return *a - *b;
                return std::nullopt;
            }
            case Kind::Mul: {
                auto a = const_fold(n->a.get()), b = const_fold(n->b.get());
                if (a && b) return a->try_mul(*b);
                return std::nullopt;
            }
            case Kind::Div: {
                auto a = const_fold(n->a.get()), b = const_fold(n->b.get());
                if (a && b) return a->try_div(*b);
                return std::nullopt;
            }
            case Kind::Pow: {
                auto a = const_fold(n->a.get());
                if (a) return a->try_pow(n->value);
                return std::nullopt;
            }
            case Kind::LogIter: {
                auto a = const_fold(n->a.get());
                if (a && n->log_depth == 1) return ExactReal::log_of(*a);
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    HardyExpr parse_atom() {
        skip_ws();
        if (i >= s.size()) throw ParseError("unexpected end of input", i);
        char c = s[i];
        if (c == '(') {
            ++i;
            HardyExpr inner = parse_expr();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c))
            return HardyExpr::constant(ExactReal::from_decimal(scan_number()));
        if (std::isalpha((unsigned char)c)) {
            size_t start = i;
            while (i < s.size() && ident_char(s[i])) ++i;
            std::string name = s.substr(start, i - start);
            if (name == "t") return HardyExpr::variable();
            if (name == "log" || name == "log2" || name == "log3" || name == "log4") {
                int depth = name.size() == 3 ? 1 : name[3] - '0';
                expect('(', "'(' after log");
                HardyExpr inner = parse_expr();
                expect(')', "')'");
                return HardyExpr::log_iter(depth, inner);
            }
            try {
                return HardyExpr::constant(ExactReal::named(name));
            } catch (const std::invalid_argument&) {
                throw ParseError("unsupported function or constant: " + name, start);
            }
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
};

}  // namespace

HardyExpr parse(const std::string& source) {
    Parser p{source};
    HardyExpr e = p.parse_expr();
    p.skip_ws();
    if (p.i != source.size()) throw ParseError("trailing input", p.i);
    return e;
}

// --- formatter ---------------------------------------------------------------

namespace {

// precedence levels: 1 additive, 2 multiplicative, 3 power/atom
std::string fmt_node(const HardyExpr::Node* n, int parent_prec);

std::string fmt_paren_if(const std::string& txt, bool need) {
    return need ? "(" + txt + ")" : txt;
}

std::string fmt_node(const HardyExpr::Node* n, int parent_prec) {
    switch (n->kind) {
        case Kind::Const:
            return n->value.to_text();
        case Kind::Var:
            return "t";
        case Kind::Add:
            return fmt_paren_if(fmt_node(n->a.get(), 1) + " + " + fmt_node(n->b.get(), 2),
                                parent_prec > 1);
        case Kind::Sub:
            return fmt_paren_if(fmt_node(n->a.get(), 1) + " - " + fmt_node(n->b.get(), 2),
                                parent_prec > 1);
        case Kind::Mul:
            return fmt_paren_if(fmt_node(n->a.get(), 2) + "*" + fmt_node(n->b.get(), 3),
                                parent_prec > 2);
        case Kind::Div:
            return fmt_paren_if(fmt_node(n->a.get(), 2) + "/" + fmt_node(n->b.get(), 3),
                                parent_prec > 2);
        case Kind::Pow: {
            std::string base = fmt_node(n->a.get(), 4);
            if (n->a->kind != Kind::Var && n->a->kind != Kind::LogIter &&
                n->a->kind != Kind::Const)
                base = "(" + fmt_node(n->a.get(), 0) + ")";
            std::string e;
            auto q = n->value.as_rational();
            if (q && *q < 0)
                e = "-" + rational_to_text(mpq_class(-*q));
            else
                e = n->value.to_text();
            return base + "^" + e;
        }
        case Kind::LogIter: {
            int depth = n->log_depth;
            std::string inner = fmt_node(n->a.get(), 0);
            while (depth > 4) {
                inner = "log(" + inner + ")";
                --depth;
            }
            std::string head = depth == 1 ? "log" : "log" + std::to_string(depth);
            return head + "(" + inner + ")";
        }
    }
    return "?";
}

}  // namespace

std::string format(const HardyExpr& f) { return fmt_node(f.root(), 0); }

// --- evaluation ---------------------------------------------------------------

PreciseValue eval(const HardyExpr& f, const PreciseValue& t) {
    return eval_node(f.root(), t, t.work_bits() + 32, false);
}

PreciseValue eval_at(const HardyExpr& f, uint64_t n, mpfr_prec_t bits) {
    return eval(f, PreciseValue::exact((unsigned long)n, bits));
}

// --- differentiation ------------------------------------------------------------

namespace {

HardyExpr fold_add(HardyExpr x, HardyExpr y);
HardyExpr fold_mul(HardyExpr x, HardyExpr y);

bool is_const_val(const HardyExpr& x, long v) {
    return x.root()->kind == Kind::Const && x.root()->value == ExactReal(v);
}
bool is_const(const HardyExpr& x) { return x.root()->kind == Kind::Const; }

HardyExpr fold_add(HardyExpr x, HardyExpr y) {
    if (is_const_val(x, 0)) return y;
    if (is_const_val(y, 0)) return x;
    if (is_const(x) && is_const(y))
        return HardyExpr::constant(x.root()->value + y.root()->value);
    return HardyExpr::add(x, y);
}

HardyExpr fold_sub(HardyExpr x, HardyExpr y) {
    if (is_const_val(y, 0)) return x;
    if (is_const(x) && is_const(y))
        return HardyExpr::constant(x.root()->value - y.root()->value);
    return HardyExpr::sub(x, y);
}

HardyExpr fold_mul(HardyExpr x, HardyExpr y) {
    if (is_const_val(x, 0) || is_const_val(y, 0)) return HardyExpr::constant(ExactReal(0L));
    if (is_const_val(x, 1)) return y;
    if (is_const_val(y, 1)) return x;
    if (is_const(x) && is_const(y)) {
        auto p = x.root()->value.try_mul(y.root()->value);
        if (p) return HardyExpr::constant(*p);
    }
    return HardyExpr::mul(x, y);
}

HardyExpr fold_div(HardyExpr x, HardyExpr y) {
    if (is_const_val(x, 0)) return HardyExpr::constant(ExactReal(0L));
    if (is_const_val(y, 1)) return x;
    if (is_const(x) && is_const(y)) {
        auto q = x.root()->value.try_div(y.root()->value);
        if (q) return HardyExpr::constant(*q);
    }
    return HardyExpr::div(x, y);
}

HardyExpr fold_pow(HardyExpr base, const ExactReal& e) {
    if (e == ExactReal(0L)) return HardyExpr::constant(ExactReal(1L));
    if (e == ExactReal(1L)) return base;
    if (is_const(base)) {
        auto p = base.root()->value.try_pow(e);
        if (p) return HardyExpr::constant(*p);
    }
    return HardyExpr::pow(base, e);
}

HardyExpr rewrap(NodePtr n);

HardyExpr d1(const HardyExpr::Node* n) {
    switch (n->kind) {
        case Kind::Const:
            return HardyExpr::constant(ExactReal(0L));
        case Kind::Var:
            return HardyExpr::constant(ExactReal(1L));
        case Kind::Add:
            return fold_add(d1(n->a.get()), d1(n->b.get()));
        case Kind::Sub:
            return fold_sub(d1(n->a.get()), d1(n->b.get()));
        case Kind::Mul:
            return fold_add(fold_mul(d1(n->a.get()), rewrap(n->b)),
                            fold_mul(rewrap(n->a), d1(n->b.get())));
        case Kind::Div:
            return fold_div(fold_sub(fold_mul(d1(n->a.get()), rewrap(n->b)),
                                     fold_mul(rewrap(n->a), d1(n->b.get()))),
                            fold_pow(rewrap(n->b), ExactReal(2L)));
        case Kind::Pow: {
            HardyExpr u = rewrap(n->a);
            HardyExpr coeff = HardyExpr::constant(n->value);
            HardyExpr inner = fold_pow(u, n->value - ExactReal(1L));
            return fold_mul(fold_mul(coeff, inner), d1(n->a.get()));
        }
        case Kind::LogIter: {
            // d/dt log_m(u) = u' / (u * log(u) * ... * log_{m-1}(u))
            HardyExpr u = rewrap(n->a);
            HardyExpr denom = u;
            for (int j = 1; j < n->log_depth; ++j)
                denom = fold_mul(denom, HardyExpr::log_iter(j, u));
            return fold_div(d1(n->a.get()), denom);
        }
    }
    throw std::logic_error("differentiate: bad node");
}

HardyExpr rewrap(NodePtr n) {
    // wrap an existing (immutable, shared) subtree back into a handle
    switch (n->kind) {
        case Kind::Const:
            return HardyExpr::constant(n->value);
        case Kind::Var:
            return HardyExpr::variable();
        case Kind::Add:
            return HardyExpr::add(rewrap(n->a), rewrap(n->b));
        case Kind::Sub:
            return HardyExpr::sub(rewrap(n->a), rewrap(n->b));
        case Kind::Mul:
            return HardyExpr::mul(rewrap(n->a), rewrap(n->b));
        case Kind::Div:
            return HardyExpr::div(rewrap(n->a), rewrap(n->b));
        case Kind::Pow:
            return HardyExpr::pow(rewrap(n->a), n->value);
        case Kind::LogIter:
            return HardyExpr::log_iter(n->log_depth, rewrap(n->a));
    }
    throw std::logic_error("rewrap: bad node");
}

}  // namespace

HardyExpr differentiate(const HardyExpr& f, int order) {
    if (order < 1) throw std::invalid_argument("differentiate: order must be >= 1");
    HardyExpr g = d1(f.root());
    for (int i = 1; i < order; ++i) g = d1(g.root());
    return g;
}

// --- normal form ----------------------------------------------------------------

namespace {

using Key = std::vector<ExactReal>;

void trim_key(Key& k) {
    while (!k.empty() && k.back().is_zero()) k.pop_back();
}

std::strong_ordering key_compare(const Key& x, const Key& y) {
    size_t n = std::max(x.size(), y.size());
    static const ExactReal zero;
    for (size_t i = 0; i < n; ++i) {
        const ExactReal& a = i < x.size() ? x[i] : zero;
        const ExactReal& b = i < y.size() ? y[i] : zero;
        auto c = a.compare(b);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

struct KeyLess {
    bool operator()(const Key& x, const Key& y) const {
        return key_compare(x, y) == std::strong_ordering::less;
    }
};

using Form = std::map<Key, ExactReal, KeyLess>;

void form_add_term(Form& f, Key k, const ExactReal& c) {
    if (c.is_zero()) return;
    trim_key(k);
    auto it = f.find(k);
    if (it == f.end()) {
        f.emplace(std::move(k), c);
    } else {
        ExactReal s = it->second + c;
        if (s.is_zero())
            f.erase(it);
        else
            it->second = s;
    }
}

std::optional<Form> form_mul(const Form& x, const Form& y) {
    Form r;
    for (const auto& [kx, cx] : x) {
        for (const auto& [ky, cy] : y) {
            auto c = cx.try_mul(cy);
            if (!c) return std::nullopt;
            Key k(std::max(kx.size(), ky.size()));
            for (size_t i = 0; i < k.size(); ++i) {
                ExactReal a = i < kx.size() ? kx[i] : ExactReal();
                ExactReal b = i < ky.size() ? ky[i] : ExactReal();
                k[i] = a + b;
            }
            form_add_term(r, std::move(k), *c);
        }
    }
    return r;
}

std::optional<Form> normalize_node(const HardyExpr::Node* n);

// log of a single monomial c * t^k0 * log^k1 * ... =
//   log(c) + k0*log(t) + k1*log2(t) + ...
std::optional<Form> log_of_monomial(const Key& k, const ExactReal& c) {
    auto lc = ExactReal::log_of(c);
    if (!lc) return std::nullopt;
    Form r;
    form_add_term(r, {}, *lc);
    for (size_t i = 0; i < k.size(); ++i) {
        Key unit(i + 2);
        unit[i + 1] = ExactReal(1L);
        form_add_term(r, std::move(unit), k[i]);
    }
    return r;
}

std::optional<Form> normalize_node(const HardyExpr::Node* n) {
    switch (n->kind) {
        case Kind::Const: {
            Form r;
            form_add_term(r, {}, n->value);
            return r;
        }
        case Kind::Var: {
            Form r;
            form_add_term(r, {ExactReal(1L)}, ExactReal(1L));
            return r;
        }
        case Kind::Add: {
            auto a = normalize_node(n->a.get()), b = normalize_node(n->b.get());
            if (!a || !b) return std::nullopt;
            for (const auto& [k, c] : *b) form_add_term(*a, k, c);
            return a;
        }
        case Kind::Sub: {
            auto a = normalize_node(n->a.get()), b = normalize_node(n->b.get());
            if (!a || !b) return std::nullopt;
            for (const auto& [k, c] : *b) form_add_term(*a, k, -c);
            return a;
        }
        case Kind::Mul: {
            auto a = normalize_node(n->a.get()), b = normalize_node(n->b.get());
            if (!a || !b) return std::nullopt;
            return form_mul(*a, *b);
        }
        case Kind::Div: {
            auto a = normalize_node(n->a.get()), b = normalize_node(n->b.get());
            if (!a || !b) return std::nullopt;
            if (b->size() != 1) return std::nullopt;
            const auto& [kd, cd] = *b->begin();
            auto inv = ExactReal(1L).try_div(cd);
            if (!inv) return std::nullopt;
            Form divisor;
            Key nk = kd;
            for (auto& e : nk) e = -e;
            form_add_term(divisor, std::move(nk), *inv);
            return form_mul(*a, divisor);
        }
        case Kind::Pow: {
            auto a = normalize_node(n->a.get());
            if (!a) return std::nullopt;
            const ExactReal& e = n->value;
            if (a->size() == 1) {
                const auto& [k, c] = *a->begin();
                auto ce = c.try_pow(e);
                if (!ce) return std::nullopt;
                Key nk = k;
                for (auto& x : nk) {
                    auto m = x.try_mul(e);
                    if (!m) return std::nullopt;
                    x = *m;
                }
                Form r;
                form_add_term(r, std::move(nk), *ce);
                return r;
            }
            // multi-term base: expand positive integer powers only (budget 16)
            auto ei = e.as_integer();
            if (!ei || *ei < 0 || *ei > 16) return std::nullopt;
            Form acc;
            form_add_term(acc, {}, ExactReal(1L));
            for (long i = 0; i < *ei; ++i) {
                auto m = form_mul(acc, *a);
                if (!m) return std::nullopt;
                acc = *m;
            }
            return acc;
        }
        case Kind::LogIter: {
            auto a = normalize_node(n->a.get());
            if (!a) return std::nullopt;
            for (int step = 0; step < n->log_depth; ++step) {
                if (a->size() != 1) return std::nullopt;
                const auto& [k, c] = *a->begin();
                auto next = log_of_monomial(k, c);
                if (!next) return std::nullopt;
                a = *next;
            }
            return a;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<NormalForm> normalize(const HardyExpr& f) {
    auto form = normalize_node(f.root());
    if (!form) return std::nullopt;
    NormalForm nf;
    for (const auto& [k, c] : *form) nf.terms.push_back({k, c});
    return nf;
}

std::strong_ordering GrowthVector::compare(const GrowthVector& o) const {
    return key_compare(exponents, o.exponents);
}

std::optional<GrowthVector> growth_vector(const HardyExpr& f) {
    auto nf = normalize(f);
    if (!nf || nf->terms.empty()) return std::nullopt;
    return GrowthVector{nf->terms.back().key};
}

// --- growth comparison -------------------------------------------------------

GrowthComparison growth_compare(const HardyExpr& f, const HardyExpr& g, int sample_lo,
                                int sample_hi) {
    if (f == g) return {Ordering::Comparable, Method::Symbolic, "identical expressions"};
    auto nf = normalize(f), ng = normalize(g);
    if (nf && ng && !nf->terms.empty() && !ng->terms.empty()) {
        auto c = key_compare(nf->terms.back().key, ng->terms.back().key);
        if (c == std::strong_ordering::less)
            return {Ordering::Precedes, Method::Symbolic, "leading-monomial order"};
        if (c == std::strong_ordering::greater)
            return {Ordering::Dominates, Method::Symbolic, "leading-monomial order"};
        return {Ordering::Comparable, Method::Symbolic, "equal leading monomials"};
    }
    if (nf && ng)
        return {Ordering::Inconclusive, Method::Symbolic, "zero normal form"};

    // numeric fallback: |g/f| at t = 2^j must move monotonically for 8
    // consecutive steps
    const int needed = 8;
    int inc = 0, dec = 0;
    bool have_prev = false;
    PreciseValue prev(192);
    int last_j = 0;
    for (int j = sample_lo; j <= sample_hi; ++j) {
        PreciseValue ratio(192);
        try {
            PreciseValue t = PreciseValue::exact((unsigned long)((uint64_t)1 << j), 192);
            PreciseValue fv = eval(f, t), gv = eval(g, t);
            if (mpfr_sgn(fv.lower()) <= 0 && mpfr_sgn(fv.upper()) >= 0) continue;
            ratio = gv / fv;
        } catch (const DomainError&) {
            continue;
        }
        // compare |ratio| midpoints
        mpfr_t cur, prv;
        mpfr_inits2(224, cur, prv, (mpfr_ptr) nullptr);
        mpfr_add(cur, ratio.lower(), ratio.upper(), MPFR_RNDN);
        mpfr_abs(cur, cur, MPFR_RNDN);
        if (have_prev) {
            mpfr_add(prv, prev.lower(), prev.upper(), MPFR_RNDN);
            mpfr_abs(prv, prv, MPFR_RNDN);
            int cmp = mpfr_cmp(cur, prv);
            if (cmp > 0) {
                ++inc;
                dec = 0;
            } else if (cmp < 0) {
                ++dec;
                inc = 0;
            } else {
                inc = dec = 0;
            }
        }
        mpfr_clears(cur, prv, (mpfr_ptr) nullptr);
        prev = ratio;
        have_prev = true;
        last_j = j;
        if (inc >= needed)
            return {Ordering::Precedes, Method::NumericSampled,
                    "|g/f| increased over " + std::to_string(needed) +
                        " consecutive dyadic samples ending at t=2^" + std::to_string(last_j)};
        if (dec >= needed)
            return {Ordering::Dominates, Method::NumericSampled,
                    "|g/f| decreased over " + std::to_string(needed) +
                        " consecutive dyadic samples ending at t=2^" + std::to_string(last_j)};
    }
    return {Ordering::Inconclusive, Method::NumericSampled,
            "no monotone trend within the sample budget"};
}

// --- conditions ----------------------------------------------------------------

namespace {

bool is_integer(const ExactReal& e) {
    auto q = e.as_rational();
    return q && q->get_den() == 1;
}

long floor_exact(const ExactReal& e) {
    long c = (long)std::floor(e.to_double());
    while (ExactReal(c + 1).compare(e) != std::strong_ordering::greater) ++c;
    while (ExactReal(c).compare(e) == std::strong_ordering::greater) --c;
    return c;
}

ConditionVerdict check_b_one(const HardyExpr& f) {
    ConditionVerdict v{Condition::B, false, std::nullopt, Method::Symbolic, false, ""};
    auto nf = normalize(f);
    if (nf && !nf->terms.empty()) {
        const auto& lead = nf->terms.back();
        if (lead.coeff.sign() < 0) {
            v.note = "leading coefficient negative: eventually negative";
            return v;
        }
        ExactReal e0 = lead.key.empty() ? ExactReal() : lead.key[0];
        Key tail(lead.key.begin() + (lead.key.empty() ? 0 : 1), lead.key.end());
        trim_key(tail);
        auto tail_sign = key_compare(tail, {});
        long j;
        if (!is_integer(e0)) {
            j = floor_exact(e0) + 1;
        } else {
            long m = *e0.as_integer();
            if (tail_sign == std::strong_ordering::greater)
                j = m + 1;
            else if (tail_sign == std::strong_ordering::less)
                j = m;
            else {
                v.note = "comparable to an integer power of t";
                return v;
            }
        }
        if (j >= 1) {
            v.holds = true;
            v.witness = (int)j;
        } else {
            v.note = "growth below t^0";
        }
        return v;
    }
    if (nf) {
        v.note = "zero normal form";
        return v;
    }
    // numeric: estimate the leading exponent from high dyadic samples, then
    // verify both sides of the window
    v.method = Method::NumericSampled;
    double slope = 0;
    bool have = false;
    for (int j = 58; j >= 12; --j) {
        try {
            PreciseValue f1 = eval_at(f, uint64_t(1) << j, 192);
            PreciseValue f2 = eval_at(f, uint64_t(1) << (j + 1), 192);
            double l1 = std::log(std::fabs(f1.mid_double()));
            double l2 = std::log(std::fabs(f2.mid_double()));
            if (!std::isfinite(l1) || !std::isfinite(l2)) continue;
            slope = (l2 - l1) / std::log(2.0);
            have = true;
            break;
        } catch (const DomainError&) {
            continue;
        }
    }
    if (!have || std::fabs(slope - std::round(slope)) < 0.01) {
        v.inconclusive = true;
        v.note = "leading exponent indistinguishable from an integer by sampling";
        return v;
    }
    long j = (long)std::floor(slope) + 1;
    if (j < 1) {
        v.note = "sampled growth below t^0";
        return v;
    }
    HardyExpr lowpow = HardyExpr::pow(HardyExpr::variable(), ExactReal(j - 1));
    HardyExpr highpow = HardyExpr::pow(HardyExpr::variable(), ExactReal(j));
    auto lo = growth_compare(lowpow, f);
    auto hi = growth_compare(f, highpow);
    if (lo.order == Ordering::Inconclusive || hi.order == Ordering::Inconclusive) {
        v.inconclusive = true;
        v.note = "window verification inconclusive";
        return v;
    }
    if (lo.order == Ordering::Precedes && hi.order == Ordering::Precedes) {
        v.holds = true;
        v.witness = (int)j;
        v.note = "sampled exponent " + std::to_string(slope);
    }
    return v;
}

ConditionVerdict from_comparison(Condition cond, const GrowthComparison& cmp) {
    ConditionVerdict v{cond, cmp.order == Ordering::Precedes, std::nullopt, cmp.method,
                       cmp.order == Ordering::Inconclusive, cmp.note};
    return v;
}

}  // namespace

std::vector<ConditionVerdict> check_condition(const std::vector<HardyExpr>& fs,
                                              Condition which) {
    if (fs.empty()) throw std::invalid_argument("check_condition: empty function list");
    std::vector<ConditionVerdict> out;
    switch (which) {
        case Condition::A: {
            HardyExpr ref = HardyExpr::mul(HardyExpr::log_iter(1, HardyExpr::variable()),
                                           HardyExpr::log_iter(4, HardyExpr::variable()));
            for (const auto& f : fs) {
                auto nf = normalize(f);
                if (nf && !nf->terms.empty() && nf->terms.back().coeff.sign() < 0) {
                    ConditionVerdict v{Condition::A, false, std::nullopt, Method::Symbolic,
                                       false, "leading coefficient negative"};
                    out.push_back(v);
                    continue;
                }
                out.push_back(from_comparison(Condition::A, growth_compare(ref, f)));
            }
            break;
        }
        case Condition::B:
            for (const auto& f : fs) out.push_back(check_b_one(f));
            break;
        case Condition::C: {
            if (fs.size() < 2)
                throw std::invalid_argument("condition C needs at least two functions");
            HardyExpr ref = HardyExpr::pow(HardyExpr::log_iter(2, HardyExpr::variable()),
                                           ExactReal(4L));
            for (size_t i = 0; i + 1 < fs.size(); ++i) {
                HardyExpr ratio = HardyExpr::div(fs[i + 1], fs[i]);
                out.push_back(from_comparison(Condition::C, growth_compare(ref, ratio)));
            }
            break;
        }
    }
    return out;
}

GrowthComparison polynomial_gap_vs_log(const HardyExpr& f,
                                       const std::vector<mpq_class>& coeffs) {
    HardyExpr p = HardyExpr::constant(ExactReal(0L));
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        HardyExpr term = HardyExpr::constant(ExactReal(coeffs[i]));
        if (i >= 1)
            term = HardyExpr::mul(term,
                                  HardyExpr::pow(HardyExpr::variable(), ExactReal((long)i)));
        p = HardyExpr::add(p, term);
    }
    HardyExpr gap = HardyExpr::sub(f, p);
    HardyExpr ref = HardyExpr::log_iter(1, HardyExpr::variable());
    return growth_compare(ref, gap);
}

}  // namespace coprime
