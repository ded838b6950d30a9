#ifndef DIFFALG_IO_HPP
#define DIFFALG_IO_HPP

#include <json.hpp>

#include "certificates.hpp"
#include "relations.hpp"
#include "special_functions.hpp"

namespace diffalg {

using Json = nlohmann::ordered_json;

// ---- expression parser ---------------------------------------------------
//
// Rational function expressions over Q(i): integers, 'i', 'x', + - * / ^,
// parentheses. "(x^2+1)/(x^3-2)" evaluates exactly; parse(print) = identity.

namespace pdetail {

struct Parser {
    std::string_view s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }

    RationalFunction parse_expr() {
        RationalFunction acc = parse_term();
        for (;;) {
            if (eat('+'))
                acc += parse_term();
            else if (eat('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    RationalFunction parse_term() {
        RationalFunction acc = parse_factor();
        for (;;) {
            if (eat('*')) {
                acc *= parse_factor();
            } else if (eat('/')) {
                RationalFunction d = parse_factor();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction parse_factor() {
        int sign = 1;
        skip();
        while (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
            skip();
        }
        RationalFunction base = parse_primary();
        skip();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            skip();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("exponent expected");
            long e = std::stol(std::string(s.substr(start, pos - start)));
            base = base.pow(neg ? -e : e);
        }
        return sign < 0 ? -base : base;
    }

    RationalFunction parse_primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RationalFunction inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos;
            return RationalFunction::x();
        }
        if (c == 'i') {
            ++pos;
            return RationalFunction(GaussianRational::i());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return RationalFunction(GaussianRational(parse_rational(s.substr(start, pos - start))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace pdetail

inline RationalFunction parse_rational_function(std::string_view text) {
    pdetail::Parser p{text};
    RationalFunction r = p.parse_expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

inline GaussianRational parse_constant(std::string_view text) {
    RationalFunction r = parse_rational_function(text);
    if (!r.is_constant()) throw std::invalid_argument("expected a constant, got " + r.str());
    return r.constant_value();
}

// ---- JSON serialization ----------------------------------------------------

template <Locus L>
Json to_json(const BasicSeries<L>& s) {
    Json j;
    j["at"] = L == Locus::at_zero ? "zero" : "infinity";
    j["ramification"] = s.ram();
    j["valuation"] = s.val_index();
    j["order"] = s.order_index();
    Json coeffs = Json::array();
    for (const auto& c : s.coeff_window()) coeffs.push_back(c.str());
    j["coeffs"] = std::move(coeffs);
    return j;
}

template <Locus L>
BasicSeries<L> series_from_json(const Json& j) {
    std::string at = j.at("at").get<std::string>();
    if ((at == "zero") != (L == Locus::at_zero)) throw std::invalid_argument("series locus mismatch");
    std::vector<GaussianRational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_field_elem(c.get<std::string>()));
    return BasicSeries<L>(j.at("ramification").get<long>(), j.at("valuation").get<long>(), std::move(coeffs),
                          j.at("order").get<long>());
}

inline Json to_json(const OperatorPair& p) {
    Json j;
    j["case"] = to_string(p.op_case());
    j["phi"] = p.phi_param().str();
    j["sigma"] = p.sigma_param().str();
    return j;
}

inline OperatorPair pair_from_json(const Json& j) {
    std::string c = j.at("case").get<std::string>();
    GaussianRational phi = parse_field_elem(j.at("phi").get<std::string>());
    GaussianRational sigma = parse_field_elem(j.at("sigma").get<std::string>());
    if (c == "2S") return OperatorPair(OpCase::shift_2s, phi, sigma);
    if (c == "2Q") return OperatorPair(OpCase::qdiff_2q, phi, sigma);
    if (c == "2M") return OperatorPair(OpCase::mahler_2m, phi, sigma);
    throw std::invalid_argument("unknown case " + c);
}

inline Json to_json(const ScalarEquation& eq) {
    Json j;
    j["op"] = to_string(eq.role);
    j["pair"] = to_json(eq.pair);
    Json coeffs = Json::array();
    for (const auto& c : eq.coeffs) coeffs.push_back(c.str());
    j["coeffs"] = std::move(coeffs);
    j["rhs"] = eq.rhs.str();
    return j;
}

inline ScalarEquation equation_from_json(const Json& j) {
    OperatorPair pair = pair_from_json(j.at("pair"));
    OpRole role = j.at("op").get<std::string>() == "phi" ? OpRole::phi : OpRole::sigma;
    std::vector<RationalFunction> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational_function(c.get<std::string>()));
    return ScalarEquation(role, pair, std::move(coeffs), parse_rational_function(j.at("rhs").get<std::string>()));
}

inline Json to_json(const DiffSystem& sys) {
    Json j;
    j["op"] = to_string(sys.role);
    j["pair"] = to_json(sys.pair);
    Json rows = Json::array();
    for (long r = 0; r < sys.dim(); ++r) {
        Json row = Json::array();
        for (long c = 0; c < sys.dim(); ++c) row.push_back(sys.A.at(r, c).str());
        rows.push_back(std::move(row));
    }
    j["A"] = std::move(rows);
    return j;
}

inline Json to_json(const Certificate& cert) {
    Json j;
    j["c"] = cert.c.str();
    j["n"] = rational_str(cert.n);
    j["b"] = cert.b.str();
    j["b_ramification"] = cert.b_ramification;
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    return Certificate{parse_field_elem(j.at("c").get<std::string>()), parse_rational(j.at("n").get<std::string>()),
                       parse_rational_function(j.at("b").get<std::string>()), j.at("b_ramification").get<long>()};
}

inline Json to_json(const ShiftDivisor& d) {
    Json arr = Json::array();
    for (const auto& [rep, m] : d.classes) {
        Json e;
        e["class_rep"] = rep.str();
        e["multiplicity"] = m;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Json to_json(const ValidationReport& rep) {
    Json j;
    Json conds = Json::array();
    for (const auto& c : rep.conditions) {
        Json e;
        e["condition"] = c.name;
        e["passed"] = c.passed;
        e["severity"] = c.warning_only ? "warning" : "hard";
        if (!c.detail.empty()) e["detail"] = c.detail;
        conds.push_back(std::move(e));
    }
    j["conditions"] = std::move(conds);
    j["hard_ok"] = rep.hard_ok();
    j["hypotheses_ok"] = rep.hypotheses_ok();
    return j;
}

inline Json to_json(const RelationResult& res) {
    Json j;
    j["verdict"] = res.found ? "RelationFound" : "NoRelationAtBound";
    Json bounds;
    bounds["D"] = res.total_degree;
    bounds["Dx"] = res.x_degree;
    bounds["N"] = rational_str(res.effective_truncation);
    j["bounds"] = std::move(bounds);
    if (res.found) {
        j["relation"] = res.relation->poly.str(res.names);
        j["verified_order"] = rational_str(res.relation->verified_order);
        j["extended_verification"] = res.relation->extended_verification;
    }
    j["note"] = res.note;
    Json names = Json::array();
    for (const auto& n : res.names) names.push_back(n);
    j["names"] = std::move(names);
    return j;
}

inline Json to_json(const DimensionProfile& p) {
    Json j;
    Json d = Json::array();
    for (long v : p.d) d.push_back(v);
    j["profile"] = std::move(d);
    j["D"] = p.total_degree;
    j["Dx"] = p.x_degree;
    j["N"] = p.truncation;
    return j;
}

} // namespace diffalg

#endif
