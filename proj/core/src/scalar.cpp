#include "stokes/scalar.hpp"

#include <cctype>

namespace stokes {

namespace {

// Complex literals come as one or two signed terms; a term is a number
// optionally followed by 'i', or a bare 'i'. Numbers are "p" / "p/q" in the
// exact backend and decimals (with exponent) in the float backend.

struct Term {
    std::string num;  // may be empty for a bare "i"
    bool imag = false;
    bool neg = false;
};

std::vector<Term> split_terms(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail(Err::BadInput, "empty scalar literal");

    std::vector<Term> terms;
    size_t pos = 0;
    while (pos < s.size()) {
        Term t;
        if (s[pos] == '+' || s[pos] == '-') {
            t.neg = (s[pos] == '-');
            pos++;
        } else if (!terms.empty()) {
            fail(Err::BadInput, "expected '+' or '-' between scalar terms");
        }
        size_t start = pos;
        while (pos < s.size()) {
            char c = s[pos];
            if ((c == '+' || c == '-') && pos > start) {
                char prev = s[pos - 1];
                if (prev == 'e' || prev == 'E') { pos++; continue; }  // exponent sign
                break;
            }
            pos++;
        }
        std::string body = s.substr(start, pos - start);
        if (!body.empty() && (body.back() == 'i' || body.back() == 'I')) {
            t.imag = true;
            body.pop_back();
        }
        t.num = body;
        if (t.num.empty() && !t.imag)
            fail(Err::BadInput, "malformed scalar literal \"" + input + "\"");
        terms.push_back(t);
    }
    if (terms.size() > 2) fail(Err::BadInput, "too many terms in scalar literal \"" + input + "\"");
    return terms;
}

mpq_class parse_mpq(const std::string& s, const std::string& ctx) {
    if (s.empty()) return mpq_class(1);  // bare "i"
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-')
            fail(Err::BadInput, "bad rational \"" + s + "\" in \"" + ctx + "\"");
    mpq_class q;
    if (q.set_str(s, 10) != 0 || s.back() == '/' || s.front() == '/')
        fail(Err::BadInput, "bad rational \"" + s + "\" in \"" + ctx + "\"");
    if (q.get_den() == 0) fail(Err::BadInput, "zero denominator in \"" + ctx + "\"");
    q.canonicalize();
    return q;
}

Real parse_decimal(const std::string& s, unsigned prec, const std::string& ctx) {
    if (s.empty()) return Real(1.0, prec);  // bare "i"
    try {
        return Real(s, prec);
    } catch (const std::invalid_argument&) {
        fail(Err::BadInput, "bad decimal \"" + s + "\" in \"" + ctx + "\"");
    }
}

} // namespace

Rat parse_rat(const std::string& s) {
    Rat out;
    for (const Term& t : split_terms(s)) {
        mpq_class q = parse_mpq(t.num, s);
        if (t.neg) q = -q;
        if (t.imag) {
            if (out.im != 0) fail(Err::BadInput, "two imaginary terms in \"" + s + "\"");
            out.im = q;
        } else {
            if (out.re != 0) fail(Err::BadInput, "two real terms in \"" + s + "\"");
            out.re = q;
        }
    }
    return out;
}

Cplx parse_cplx(const std::string& s, unsigned prec) {
    Cplx out(prec);
    bool have_re = false, have_im = false;
    for (const Term& t : split_terms(s)) {
        Real v = parse_decimal(t.num, prec, s);
        if (t.neg) v = -v;
        if (t.imag) {
            if (have_im) fail(Err::BadInput, "two imaginary terms in \"" + s + "\"");
            out.im = v;
            have_im = true;
        } else {
            if (have_re) fail(Err::BadInput, "two real terms in \"" + s + "\"");
            out.re = v;
            have_re = true;
        }
    }
    return out;
}

Scalar parse_scalar(const std::string& s, Backend backend, unsigned prec) {
    if (backend == Backend::exact) return Scalar(parse_rat(s));
    return Scalar(parse_cplx(s, prec));
}

} // namespace stokes
