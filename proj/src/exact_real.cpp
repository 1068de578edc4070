#include "coprime/exact_real.hpp"

#include <cctype>
#include <stdexcept>

namespace coprime {

namespace {

// n = s^2 * m with m squarefree; returns {s, m}.
std::pair<mpz_class, unsigned long> square_split(unsigned long n) {
    mpz_class s = 1;
    unsigned long m = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
        if (e & 1) m *= p;
    }
    if (n > 1) m *= n;
    return {s, m};
}

void atom_enclose(const Atom& a, mpfr_t lo, mpfr_t hi) {
    switch (a.kind) {
        case Atom::Sqrt:
            mpfr_sqrt_ui(lo, a.arg, MPFR_RNDD);
            mpfr_sqrt_ui(hi, a.arg, MPFR_RNDU);
            break;
        case Atom::Pi:
            mpfr_const_pi(lo, MPFR_RNDD);
            mpfr_const_pi(hi, MPFR_RNDU);
            break;
        case Atom::E:
            mpfr_set_ui(lo, 1, MPFR_RNDN);
            mpfr_exp(lo, lo, MPFR_RNDD);
            mpfr_set_ui(hi, 1, MPFR_RNDN);
            mpfr_exp(hi, hi, MPFR_RNDU);
            break;
        case Atom::EulerGamma:
            mpfr_const_euler(lo, MPFR_RNDD);
            mpfr_const_euler(hi, MPFR_RNDU);
            break;
        case Atom::LogPrime:
            mpfr_set_ui(lo, a.arg, MPFR_RNDN);
            mpfr_log(lo, lo, MPFR_RNDD);
            mpfr_set_ui(hi, a.arg, MPFR_RNDN);
            mpfr_log(hi, hi, MPFR_RNDU);
            break;
        case Atom::LogPi:
            mpfr_const_pi(lo, MPFR_RNDD);
            mpfr_log(lo, lo, MPFR_RNDD);
            mpfr_const_pi(hi, MPFR_RNDU);
            mpfr_log(hi, hi, MPFR_RNDU);
            break;
        case Atom::LogEulerGamma:
            mpfr_const_euler(lo, MPFR_RNDD);
            mpfr_log(lo, lo, MPFR_RNDD);
            mpfr_const_euler(hi, MPFR_RNDU);
            mpfr_log(hi, hi, MPFR_RNDU);
            break;
    }
}

// acc += q * [lo, hi] with directed rounding (acc_lo toward -inf, acc_hi toward +inf).
void accumulate_scaled(mpfr_t acc_lo, mpfr_t acc_hi, const mpq_class& q,
                       mpfr_t lo, mpfr_t hi, mpfr_prec_t bits) {
    mpfr_t ql, qh, t;
    mpfr_inits2(bits, ql, qh, t, (mpfr_ptr) nullptr);
    mpfr_set_q(ql, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(qh, q.get_mpq_t(), MPFR_RNDU);
    if (sgn(q) >= 0) {
        mpfr_mul(t, ql, lo, MPFR_RNDD);
        mpfr_add(acc_lo, acc_lo, t, MPFR_RNDD);
        mpfr_mul(t, qh, hi, MPFR_RNDU);
        mpfr_add(acc_hi, acc_hi, t, MPFR_RNDU);
    } else {
        mpfr_mul(t, ql, hi, MPFR_RNDD);
        mpfr_add(acc_lo, acc_lo, t, MPFR_RNDD);
        mpfr_mul(t, qh, lo, MPFR_RNDU);
        mpfr_add(acc_hi, acc_hi, t, MPFR_RNDU);
    }
    mpfr_clears(ql, qh, t, (mpfr_ptr) nullptr);
}

// Exact q-th root of a rational, if both numerator and denominator are
// perfect q-th powers.
std::optional<mpq_class> exact_root(const mpq_class& a, unsigned long q) {
    if (sgn(a) < 0) return std::nullopt;
    mpz_class num, den;
    if (!mpz_root(num.get_mpz_t(), a.get_num().get_mpz_t(), q)) return std::nullopt;
    if (!mpz_root(den.get_mpz_t(), a.get_den().get_mpz_t(), q)) return std::nullopt;
    return mpq_class(num, den);
}

}  // namespace

void ExactReal::set_term(const Atom& a, const mpq_class& c) {
    if (c == 0)
        terms_.erase(a);
    else
        terms_[a] = c;
}

ExactReal ExactReal::from_decimal(const std::string& text) {
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0, exponent = 0;
    bool any = false;
    for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i) {
        digits += text[i];
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i) {
            digits += text[i];
            ++frac_digits;
            any = true;
        }
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) throw std::invalid_argument("bad numeric literal: " + text);
        long ev = 0;
        for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i)
            ev = ev * 10 + (text[i] - '0');
        exponent = eneg ? -ev : ev;
    }
    if (!any || i != text.size())
        throw std::invalid_argument("bad numeric literal: " + text);
    // explicit base 10: the string constructor auto-detects and would read a
    // leading zero (as in the digits of "0.25") as octal
    mpz_class mantissa;
    if (mpz_set_str(mantissa.get_mpz_t(), digits.empty() ? "0" : digits.c_str(), 10) != 0)
        throw std::invalid_argument("bad numeric literal: " + text);
    mpq_class q(mantissa);
    long shift = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, (unsigned long)(shift < 0 ? -shift : shift));
    if (shift >= 0)
        q *= pow10;
    else
        q /= pow10;
    q.canonicalize();
    if (neg) q = -q;
    return ExactReal(q);
}

ExactReal ExactReal::named(const std::string& name) {
    ExactReal r;
    if (name == "sqrt2")
        r.set_term({Atom::Sqrt, 2}, 1);
    else if (name == "sqrt3")
        r.set_term({Atom::Sqrt, 3}, 1);
    else if (name == "pi")
        r.set_term({Atom::Pi, 0}, 1);
    else if (name == "e")
        r.set_term({Atom::E, 0}, 1);
    else if (name == "euler_gamma")
        r.set_term({Atom::EulerGamma, 0}, 1);
    else
        throw std::invalid_argument("unknown named constant: " + name);
    return r;
}

ExactReal ExactReal::sqrt_of(unsigned long n) {
    if (n == 0) return ExactReal(0L);
    auto [s, m] = square_split(n);
    ExactReal r;
    if (m == 1) {
        r.rat_ = mpq_class(s);
    } else {
        r.set_term({Atom::Sqrt, m}, mpq_class(s));
    }
    return r;
}

ExactReal ExactReal::log_of_atom(Atom::Kind kind) {
    ExactReal r;
    r.set_term({kind, 0}, 1);
    return r;
}

std::optional<ExactReal> ExactReal::log_of(const ExactReal& x) {
    // log of: positive rational (-> sum of v_p log p), q*sqrt(m), q*pi, q*e,
    // q*euler_gamma where the rational factor also decomposes.
    if (x.sign() <= 0) return std::nullopt;
    ExactReal acc;
    mpq_class q;
    std::optional<Atom> atom;
    if (x.is_rational()) {
        q = x.rat_;
    } else if (x.rat_ == 0 && x.terms_.size() == 1) {
        atom = x.terms_.begin()->first;
        q = x.terms_.begin()->second;
    } else {
        return std::nullopt;
    }
    if (sgn(q) <= 0) return std::nullopt;
    // factor q = prod p^v over primes (numerator and denominator)
    auto add_factor = [&acc](mpz_class z, int s) -> bool {
        for (unsigned long p = 2; mpz_class(p) * p <= z; ++p) {
            long v = 0;
            while (z % p == 0) { z /= p; ++v; }
            if (v) {
                ExactReal term;
                term.set_term({Atom::LogPrime, p}, mpq_class(s * v));
                acc = acc + term;
            }
        }
        if (z > 1) {
            if (!z.fits_ulong_p()) return false;
            ExactReal term;
            term.set_term({Atom::LogPrime, z.get_ui()}, mpq_class(s));
            acc = acc + term;
        }
        return true;
    };
    if (!add_factor(q.get_num(), 1) || !add_factor(q.get_den(), -1)) return std::nullopt;
    if (atom) {
        switch (atom->kind) {
            case Atom::Sqrt: {  // log sqrt(m) = sum (1/2) log p over p | m (m squarefree)
                unsigned long rest = atom->arg;
                for (unsigned long p = 2; p * p <= rest; ++p) {
                    if (rest % p == 0) {
                        ExactReal term;
                        term.set_term({Atom::LogPrime, p}, mpq_class(1, 2));
                        acc = acc + term;
                        rest /= p;
                    }
                }
                if (rest > 1) {
                    ExactReal term;
                    term.set_term({Atom::LogPrime, rest}, mpq_class(1, 2));
                    acc = acc + term;
                }
                break;
            }
            case Atom::Pi:
                acc = acc + log_of_atom(Atom::LogPi);
                break;
            case Atom::E:
                acc = acc + ExactReal(1L);
                break;
            case Atom::EulerGamma:
                acc = acc + log_of_atom(Atom::LogEulerGamma);
                break;
            default:
                return std::nullopt;  // log of a log-kind atom: not representable
        }
    }
    return acc;
}

std::optional<mpq_class> ExactReal::as_rational() const {
    if (!terms_.empty()) return std::nullopt;
    return rat_;
}

std::optional<long> ExactReal::as_integer() const {
    if (!terms_.empty() || rat_.get_den() != 1) return std::nullopt;
    if (!rat_.get_num().fits_slong_p()) return std::nullopt;
    return rat_.get_num().get_si();
}

std::optional<std::pair<mpq_class, unsigned long>> ExactReal::as_sqrt_multiple() const {
    if (rat_ != 0 || terms_.size() != 1) return std::nullopt;
    const auto& [atom, c] = *terms_.begin();
    if (atom.kind != Atom::Sqrt) return std::nullopt;
    return std::make_pair(c, atom.arg);
}

ExactReal ExactReal::operator-() const {
    ExactReal r;
    r.rat_ = -rat_;
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
    return r;
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
    ExactReal r = *this;
    r.rat_ += o.rat_;
    for (const auto& [a, c] : o.terms_) {
        auto it = r.terms_.find(a);
        if (it == r.terms_.end()) {
            r.terms_.emplace(a, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

std::optional<ExactReal> ExactReal::mul_atoms(const Atom& a, const Atom& b) {
    if (a.kind == Atom::Sqrt && b.kind == Atom::Sqrt) {
        // sqrt(m) * sqrt(n) = g * sqrt(mn / g^2)
        unsigned long prod = a.arg * b.arg;  // radicands are small squarefree ints
        return sqrt_of(prod);
    }
    return std::nullopt;
}

std::optional<ExactReal> ExactReal::try_mul(const ExactReal& o) const {
    ExactReal r;
    r.rat_ = rat_ * o.rat_;
    for (const auto& [a, c] : terms_) {
        mpq_class scaled = c * o.rat_;
        if (scaled != 0) {
            auto it = r.terms_.find(a);
            if (it == r.terms_.end())
                r.terms_.emplace(a, scaled);
            else {
                it->second += scaled;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    for (const auto& [b, c] : o.terms_) {
        mpq_class scaled = c * rat_;
        if (scaled != 0) {
            auto it = r.terms_.find(b);
            if (it == r.terms_.end())
                r.terms_.emplace(b, scaled);
            else {
                it->second += scaled;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : o.terms_) {
            auto prod = mul_atoms(a, b);
            if (!prod) return std::nullopt;
            ExactReal scaled;
            scaled.rat_ = prod->rat_ * ca * cb;
            for (const auto& [pa, pc] : prod->terms_) scaled.set_term(pa, pc * ca * cb);
            r = r + scaled;
        }
    }
    return r;
}

std::optional<ExactReal> ExactReal::try_div(const ExactReal& o) const {
    if (o.is_zero()) return std::nullopt;
    if (o.is_rational()) {
        ExactReal inv{mpq_class(o.rat_.get_den(), o.rat_.get_num())};
        return try_mul(inv);
    }
    if (o.rat_ == 0 && o.terms_.size() == 1 && o.terms_.begin()->first.kind == Atom::Sqrt) {
        // 1 / (q sqrt(m)) = sqrt(m) / (q m)
        const Atom& a = o.terms_.begin()->first;
        const mpq_class& q = o.terms_.begin()->second;
        ExactReal inv;
        inv.set_term(a, mpq_class(1) / (q * (long)a.arg));
        return try_mul(inv);
    }
    return std::nullopt;
}

std::optional<ExactReal> ExactReal::try_pow(const ExactReal& exponent) const {
    auto eq = exponent.as_rational();
    if (!eq) return std::nullopt;
    mpz_class num = eq->get_num(), den = eq->get_den();
    if (is_zero()) {
        if (sgn(num) <= 0) return std::nullopt;
        return ExactReal(0L);
    }
    bool invert = sgn(num) < 0;
    if (invert) num = -num;
    if (!num.fits_ulong_p() || !den.fits_ulong_p()) return std::nullopt;
    unsigned long p = num.get_ui(), q = den.get_ui();

    // root step first: x^(1/q)
    ExactReal root;
    if (q == 1) {
        root = *this;
    } else if (is_rational()) {
        if (q % 2 == 0) {
            // exact even root via sqrt atoms: x^(1/q) = (x^(1/(q/2)))^(1/2)
            auto half = try_pow(ExactReal(mpq_class(2, (long)q)));
            if (!half) return std::nullopt;
            // sqrt of a rational r = sqrt(num*den) / den
            auto hr = half->as_rational();
            if (!hr) return std::nullopt;  // nested radicals not representable
            if (sgn(*hr) < 0) return std::nullopt;
            mpz_class prod = hr->get_num() * hr->get_den();
            if (!prod.fits_ulong_p()) return std::nullopt;
            ExactReal s = sqrt_of(prod.get_ui());
            auto scaled = s.try_mul(ExactReal(mpq_class(1, hr->get_den())));
            if (!scaled) return std::nullopt;
            root = *scaled;
        } else {
            auto r = exact_root(rat_, q);
            if (!r) return std::nullopt;
            root = ExactReal(*r);
        }
    } else {
        return std::nullopt;  // q-th roots of irrational combinations
    }
    // power step: root^p by repeated multiplication
    ExactReal acc(1L);
    for (unsigned long i = 0; i < p; ++i) {
        auto m = acc.try_mul(root);
        if (!m) return std::nullopt;
        acc = *m;
    }
    if (invert) {
        auto inv = ExactReal(1L).try_div(acc);
        if (!inv) return std::nullopt;
        acc = *inv;
    }
    return acc;
}

void ExactReal::enclose(mpfr_t lo, mpfr_t hi, mpfr_prec_t bits) const {
    mpfr_set_q(lo, rat_.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, rat_.get_mpq_t(), MPFR_RNDU);
    if (terms_.empty()) return;
    mpfr_t alo, ahi;
    mpfr_inits2(bits, alo, ahi, (mpfr_ptr) nullptr);
    for (const auto& [a, c] : terms_) {
        atom_enclose(a, alo, ahi);
        accumulate_scaled(lo, hi, c, alo, ahi, bits);
    }
    mpfr_clears(alo, ahi, (mpfr_ptr) nullptr);
}

std::strong_ordering ExactReal::compare(const ExactReal& o) const {
    if (*this == o) return std::strong_ordering::equal;
    ExactReal diff = *this - o;
    int s = diff.sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;  // unreachable: sign() certifies nonzero
}

int ExactReal::sign() const {
    if (terms_.empty()) return sgn(rat_);
    for (mpfr_prec_t bits = 128; bits <= 1 << 14; bits *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(bits, lo, hi, (mpfr_ptr) nullptr);
        enclose(lo, hi, bits);
        int slo = mpfr_sgn(lo), shi = mpfr_sgn(hi);
        mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
        if (slo > 0) return 1;
        if (shi < 0) return -1;
    }
    throw std::runtime_error("ExactReal::sign: value numerically indistinguishable from zero");
}

double ExactReal::to_double() const {
    mpfr_t lo, hi;
    mpfr_inits2(128, lo, hi, (mpfr_ptr) nullptr);
    enclose(lo, hi, 128);
    mpfr_add(lo, lo, hi, MPFR_RNDN);
    mpfr_div_ui(lo, lo, 2, MPFR_RNDN);
    double d = mpfr_get_d(lo, MPFR_RNDN);
    mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
    return d;
}

std::string rational_to_text(const mpq_class& q) {
    if (sgn(q) < 0) return "(0 - " + rational_to_text(-q) + ")";
    mpz_class den = q.get_den();
    // exact decimal iff den = 2^a 5^b
    mpz_class d = den;
    long a2 = 0, a5 = 0;
    while (d % 2 == 0) { d /= 2; ++a2; }
    while (d % 5 == 0) { d /= 5; ++a5; }
    if (d == 1) {
        long shift = std::max(a2, a5);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, (unsigned long)shift);
        mpz_class scaled = q.get_num() * (scale / den);
        std::string digits = scaled.get_str();
        if (shift == 0) return digits;
        while ((long)digits.size() <= shift) digits.insert(digits.begin(), '0');
        digits.insert(digits.size() - shift, ".");
        return digits;
    }
    return "(" + q.get_num().get_str() + "/" + den.get_str() + ")";
}

std::string ExactReal::to_text() const {
    auto atom_text = [](const Atom& a) -> std::string {
        switch (a.kind) {
            case Atom::Sqrt:
                if (a.arg == 2) return "sqrt2";
                if (a.arg == 3) return "sqrt3";
                return std::to_string(a.arg) + "^0.5";
            case Atom::Pi: return "pi";
            case Atom::E: return "e";
            case Atom::EulerGamma: return "euler_gamma";
            case Atom::LogPrime: return "log(" + std::to_string(a.arg) + ")";
            case Atom::LogPi: return "log(pi)";
            case Atom::LogEulerGamma: return "log(euler_gamma)";
        }
        return "?";
    };
    if (terms_.empty()) return rational_to_text(rat_);
    if (rat_ == 0 && terms_.size() == 1 && terms_.begin()->second == 1)
        return atom_text(terms_.begin()->first);
    std::string out = "(";
    bool first = true;
    if (rat_ != 0) {
        out += rational_to_text(rat_);
        first = false;
    }
    for (const auto& [a, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        if (c == 1)
            out += atom_text(a);
        else
            out += rational_to_text(c) + "*" + atom_text(a);
    }
    out += ")";
    return out;
}

}  // namespace coprime
