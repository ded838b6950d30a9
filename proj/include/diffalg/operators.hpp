#ifndef DIFFALG_OPERATORS_HPP
#define DIFFALG_OPERATORS_HPP

#include <string>
#include <vector>

#include "gaussian_integers.hpp"
#include "series.hpp"

namespace diffalg {

enum class OpCase { shift_2s, qdiff_2q, mahler_2m };
enum class OpRole { phi, sigma };

inline std::string to_string(OpCase c) {
    switch (c) {
        case OpCase::shift_2s: return "2S";
        case OpCase::qdiff_2q: return "2Q";
        default: return "2M";
    }
}
inline std::string to_string(OpRole r) { return r == OpRole::phi ? "phi" : "sigma"; }

// The pair of commuting automorphisms (phi, sigma):
//   2S: x -> x + h1,  x -> x + h2     on C((1/x))
//   2Q: x -> q1*x,    x -> q2*x       on the Puiseux field
//   2M: x -> x^p1,    x -> x^p2       on the Puiseux field
class OperatorPair {
public:
    OperatorPair(OpCase c, GaussianRational phi_param, GaussianRational sigma_param)
        : case_(c), phi_(std::move(phi_param)), sigma_(std::move(sigma_param)) {
        if (phi_.is_zero() || sigma_.is_zero()) throw std::invalid_argument("operator parameters must be nonzero");
        if (case_ == OpCase::mahler_2m) {
            for (const GaussianRational* p : {&phi_, &sigma_})
                if (!p->is_integer() || p->re() < 2)
                    throw std::invalid_argument("Mahler parameters must be integers >= 2");
        }
    }

    static OperatorPair shifts(GaussianRational h1, GaussianRational h2) {
        return {OpCase::shift_2s, std::move(h1), std::move(h2)};
    }
    static OperatorPair q_difference(GaussianRational q1, GaussianRational q2) {
        return {OpCase::qdiff_2q, std::move(q1), std::move(q2)};
    }
    static OperatorPair mahler(long p1, long p2) {
        return {OpCase::mahler_2m, GaussianRational(p1), GaussianRational(p2)};
    }

    OpCase op_case() const { return case_; }
    const GaussianRational& param(OpRole r) const { return r == OpRole::phi ? phi_ : sigma_; }
    const GaussianRational& phi_param() const { return phi_; }
    const GaussianRational& sigma_param() const { return sigma_; }

    long mahler_exponent(OpRole r) const {
        if (case_ != OpCase::mahler_2m) throw std::domain_error("mahler_exponent on a non-Mahler pair");
        return static_cast<long>(param(r).re().get_num().get_si());
    }

    // pair whose `role` operator is replaced by its r-th iterate
    OperatorPair iterated(OpRole role, long r) const {
        if (r < 1) throw std::invalid_argument("iterate count must be >= 1");
        GaussianRational np = phi_, ns = sigma_;
        GaussianRational& t = (role == OpRole::phi) ? np : ns;
        switch (case_) {
            case OpCase::shift_2s: t = t * GaussianRational(r); break;
            default: t = t.pow(r); break; // q^r and p^r
        }
        return {case_, np, ns};
    }

    friend bool operator==(const OperatorPair& a, const OperatorPair& b) {
        return a.case_ == b.case_ && a.phi_ == b.phi_ && a.sigma_ == b.sigma_;
    }
    friend bool operator!=(const OperatorPair& a, const OperatorPair& b) { return !(a == b); }

    std::string str() const {
        return "(" + to_string(case_) + ": phi=" + phi_.str() + ", sigma=" + sigma_.str() + ")";
    }

private:
    OpCase case_;
    GaussianRational phi_, sigma_;
};

// ---- hypothesis validation -------------------------------------------------

struct ValidationCondition {
    std::string name;
    bool passed = true;
    bool warning_only = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCondition> conditions;

    bool hard_ok() const {
        for (const auto& c : conditions)
            if (!c.passed && !c.warning_only) return false;
        return true;
    }
    bool hypotheses_ok() const {
        for (const auto& c : conditions)
            if (!c.passed) return false;
        return true;
    }
};

inline bool is_root_of_unity(const GaussianRational& q) {
    // the only roots of unity in Q(i)
    return q == GaussianRational(1) || q == GaussianRational(-1) || q == GaussianRational::i() ||
           q == -GaussianRational::i();
}

inline ValidationReport validate_pair(const OperatorPair& pair) {
    ValidationReport rep;
    switch (pair.op_case()) {
        case OpCase::shift_2s: {
            GaussianRational r = pair.phi_param() / pair.sigma_param();
            ValidationCondition c{"h1/h2 not rational (Z-linear independence)"};
            if (r.is_real()) {
                c.passed = false;
                c.detail = "h1/h2 = " + r.str() + ": witness " + rational_str(r.re().get_den()) + "*h1 = " +
                           rational_str(r.re().get_num()) + "*h2";
            }
            rep.conditions.push_back(std::move(c));
            break;
        }
        case OpCase::qdiff_2q: {
            for (OpRole role : {OpRole::phi, OpRole::sigma}) {
                ValidationCondition c{to_string(role) + " parameter not a root of unity"};
                if (is_root_of_unity(pair.param(role))) {
                    c.passed = false;
                    c.detail = pair.param(role).str() + " is a root of unity";
                }
                rep.conditions.push_back(std::move(c));
            }
            {
                ValidationCondition c{"multiplicative independence of q1, q2"};
                auto rel = multiplicative_relation(pair.phi_param(), pair.sigma_param());
                if (rel.dependent) {
                    c.passed = false;
                    c.detail = "witness q1^(" + rel.n1.get_str() + ") * q2^(" + rel.n2.get_str() + ") = 1";
                }
                rep.conditions.push_back(std::move(c));
            }
            {
                // excluded case: both parameters algebraic of modulus one with all
                // conjugates of modulus one; in Q(i) that is exactly norm = 1.
                // Believed removable, hence warning severity.
                ValidationCondition c{"modulus-one exclusion"};
                c.warning_only = true;
                if (pair.phi_param().norm() == 1 && pair.sigma_param().norm() == 1) {
                    c.passed = false;
                    c.detail = "both q1 and q2 have norm 1 in Q(i), the excluded modulus-one case";
                }
                rep.conditions.push_back(std::move(c));
            }
            break;
        }
        case OpCase::mahler_2m: {
            ValidationCondition c{"multiplicative independence of p1, p2"};
            Integer p1 = pair.phi_param().re().get_num(), p2 = pair.sigma_param().re().get_num();
            auto f1 = factor_integer(p1), f2 = factor_integer(p2);
            std::map<Integer, std::pair<long, long>> vec;
            for (auto& [p, e] : f1) vec[p].first = e;
            for (auto& [p, e] : f2) vec[p].second = e;
            bool parallel = true;
            for (auto i1 = vec.begin(); i1 != vec.end() && parallel; ++i1)
                for (auto i2 = std::next(i1); i2 != vec.end() && parallel; ++i2)
                    if (Integer(i1->second.first) * i2->second.second != Integer(i1->second.second) * i2->second.first)
                        parallel = false;
            if (parallel) {
                // exponent vectors proportional: p1^{e2/g} = p2^{e1/g} for any prime
                auto it = f1.begin();
                long e1 = it->second, e2 = vec[it->first].second;
                long g = std::gcd(e1, e2);
                c.passed = false;
                c.detail = "witness " + p1.get_str() + "^" + std::to_string(e2 / g) + " = " + p2.get_str() + "^" +
                           std::to_string(e1 / g);
            }
            rep.conditions.push_back(std::move(c));
            break;
        }
    }
    return rep;
}

// ---- applying the operators -------------------------------------------------

inline RationalFunction apply_op(OpRole role, const OperatorPair& pair, const RationalFunction& f) {
    switch (pair.op_case()) {
        case OpCase::shift_2s: return f.shift_arg(pair.param(role));
        case OpCase::qdiff_2q: return f.scale_arg(pair.param(role));
        default: return f.dilate_arg(pair.mahler_exponent(role));
    }
}

inline PuiseuxSeries apply_op(OpRole role, const OperatorPair& pair, const PuiseuxSeries& f,
                              const std::optional<GaussianRational>& q_root = std::nullopt) {
    switch (pair.op_case()) {
        case OpCase::shift_2s:
            throw std::invalid_argument("case 2S acts on series at infinity, not Puiseux series at 0");
        case OpCase::qdiff_2q: return substitute_scale(f, pair.param(role), q_root);
        default: return substitute_power(f, pair.mahler_exponent(role));
    }
}

inline InfinitySeries apply_op(OpRole role, const OperatorPair& pair, const InfinitySeries& f) {
    if (pair.op_case() != OpCase::shift_2s)
        throw std::invalid_argument("series at infinity are acted on by case 2S only");
    return substitute_shift(f, pair.param(role));
}

} // namespace diffalg

#endif
