#ifndef DIFFALG_SERIES_HPP
#define DIFFALG_SERIES_HPP

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational_function.hpp"

namespace diffalg {

enum class Locus { at_zero, at_infinity };

// Truncated series with an explicit order of validity.
//
// A value models sum_{k} coeffs[k] * u^{(val+k)/ram} where u is x for
// Locus::at_zero and t = 1/x for Locus::at_infinity, and is trusted modulo
// u^{order/ram}: every grid exponent below order/ram not stored is exactly 0.
//
// Canonical form: the first and last stored coefficients are nonzero (or the
// window is empty and val == order, the zero series), and
// gcd(ram, order, all nonzero positions) = 1. At infinity ram is always 1.
template <Locus L>
class BasicSeries {
public:
    BasicSeries() : ram_(1), val_(0), order_(0) {}

    BasicSeries(long ram, long val, std::vector<GaussianRational> coeffs, long order)
        : ram_(ram), val_(val), coeffs_(std::move(coeffs)), order_(order) {
        if (ram_ < 1) throw std::invalid_argument("ramification must be >= 1");
        if constexpr (L == Locus::at_infinity) {
            if (ram_ != 1) throw std::invalid_argument("series at infinity have ramification 1");
        }
        normalize();
    }

    static BasicSeries zero(long order_units, long ram = 1) { return BasicSeries(ram, order_units * ram, {}, order_units * ram); }

    // c * u^e, trusted to u^order (both rationals on a common grid).
    static BasicSeries monomial(const GaussianRational& c, const Rational& e, const Rational& o) {
        long j = std::lcm(e.get_den().get_si(), o.get_den().get_si());
        long vi = static_cast<long>(Rational(e * j).get_num().get_si());
        long oi = static_cast<long>(Rational(o * j).get_num().get_si());
        if (vi >= oi) throw std::invalid_argument("monomial exponent at or beyond trusted order");
        return BasicSeries(j, vi, {c}, oi);
    }

    static BasicSeries one(long order_units) {
        return BasicSeries(1, 0, {GaussianRational(1)}, order_units);
    }

    long ram() const { return ram_; }
    long val_index() const { return val_; }
    long order_index() const { return order_; }
    const std::vector<GaussianRational>& coeff_window() const { return coeffs_; }

    bool is_zero_to_order() const { return coeffs_.empty(); }

    Rational valuation() const {
        if (is_zero_to_order()) throw std::domain_error("valuation of a series that is zero to its order");
        return Rational(val_) / ram_;
    }
    Rational order() const { return Rational(order_) / ram_; }

    const GaussianRational& leading_coeff() const {
        if (is_zero_to_order()) throw std::domain_error("leading coefficient of zero series");
        return coeffs_.front();
    }

    // Exact coefficient at exponent e; throws InsufficientOrder past the trusted range.
    GaussianRational coeff_at(const Rational& e) const {
        if (e >= order()) throw InsufficientOrder("coefficient at " + rational_str(e) + " is beyond trusted order");
        Rational idx = e * ram_;
        if (idx.get_den() != 1) return GaussianRational(0);
        long k = static_cast<long>(idx.get_num().get_si());
        return coeff_index(k);
    }

    // Raw coefficient at grid index k (exponent k/ram); 0 outside the window.
    GaussianRational coeff_index(long k) const {
        long rel = k - val_;
        if (rel < 0 || rel >= static_cast<long>(coeffs_.size())) return GaussianRational(0);
        return coeffs_[static_cast<size_t>(rel)];
    }

    // Spread onto a ramification multiplied by m, without re-normalizing.
    BasicSeries re_ramified(long m) const {
        if (m < 1) throw std::invalid_argument("re_ramified needs m >= 1");
        if (m == 1) return *this;
        BasicSeries r;
        r.ram_ = ram_ * m;
        r.val_ = val_ * m;
        r.order_ = order_ * m;
        if (!coeffs_.empty()) {
            r.coeffs_.assign((coeffs_.size() - 1) * m + 1, GaussianRational(0));
            for (size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k * m] = coeffs_[k];
        }
        return r;
    }

    BasicSeries normalized() const {
        BasicSeries r = *this;
        r.normalize();
        return r;
    }

    BasicSeries truncated(const Rational& new_order) const {
        long oi = static_cast<long>(rational_floor(new_order * ram_).get_si());
        BasicSeries r = *this;
        if (oi < r.order_) {
            r.order_ = oi;
            r.normalize();
        }
        return r;
    }

    friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
        long j = std::lcm(a.ram_, b.ram_);
        long ma = j / a.ram_, mb = j / b.ram_;
        long order = std::min(a.order_ * ma, b.order_ * mb);
        long val = std::min(a.val_ * ma, b.val_ * mb);
        std::vector<GaussianRational> w(static_cast<size_t>(std::max<long>(order - val, 0)));
        for (size_t k = 0; k < a.coeffs_.size(); ++k) {
            long idx = a.val_ * ma + static_cast<long>(k) * ma;
            if (idx < order) w[static_cast<size_t>(idx - val)] += a.coeffs_[k];
        }
        for (size_t k = 0; k < b.coeffs_.size(); ++k) {
            long idx = b.val_ * mb + static_cast<long>(k) * mb;
            if (idx < order) w[static_cast<size_t>(idx - val)] += b.coeffs_[k];
        }
        return BasicSeries(j, val, std::move(w), order);
    }

    BasicSeries operator-() const {
        BasicSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) { return a + (-b); }

    friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
        long j = std::lcm(a.ram_, b.ram_);
        long ma = j / a.ram_, mb = j / b.ram_;
        // trusted order of the product: min(Na + vb, Nb + va) on the common grid
        long order = std::min(a.order_ * ma + b.val_ * mb, b.order_ * mb + a.val_ * ma);
        if (a.coeffs_.empty() || b.coeffs_.empty()) return BasicSeries(j, order, {}, order);
        long val = a.val_ * ma + b.val_ * mb;
        long len = order - val;
        if (len <= 0) return BasicSeries(j, order, {}, order);
        std::vector<GaussianRational> w(static_cast<size_t>(len));
        for (size_t ka = 0; ka < a.coeffs_.size(); ++ka) {
            if (a.coeffs_[ka].is_zero()) continue;
            long base = static_cast<long>(ka) * ma;
            if (base >= len) break;
            for (size_t kb = 0; kb < b.coeffs_.size(); ++kb) {
                long idx = base + static_cast<long>(kb) * mb;
                if (idx >= len) break;
                if (!b.coeffs_[kb].is_zero()) w[static_cast<size_t>(idx)] += a.coeffs_[ka] * b.coeffs_[kb];
            }
        }
        return BasicSeries(j, val, std::move(w), order);
    }

    friend BasicSeries operator*(const GaussianRational& s, BasicSeries f) {
        if (s.is_zero()) return BasicSeries(f.ram_, f.order_, {}, f.order_);
        for (auto& c : f.coeffs_) c = c * s;
        return f;
    }

    // Multiplicative inverse modulo the trusted order.
    BasicSeries inverse() const {
        if (is_zero_to_order()) throw InvertZeroSeries();
        long m = order_ - val_; // relative precision of the unit part
        std::vector<GaussianRational> w(static_cast<size_t>(m));
        GaussianRational lead_inv = coeffs_[0].inverse();
        w[0] = lead_inv;
        for (long k = 1; k < m; ++k) {
            GaussianRational s(0);
            for (long i = 1; i <= k; ++i) {
                GaussianRational u = unit_coeff(i);
                if (!u.is_zero()) s += u * w[static_cast<size_t>(k - i)];
            }
            w[static_cast<size_t>(k)] = -(s * lead_inv);
        }
        return BasicSeries(ram_, -val_, std::move(w), order_ - 2 * val_);
    }

    friend BasicSeries operator/(const BasicSeries& a, const BasicSeries& b) { return a * b.inverse(); }

    BasicSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        if (e == 0) {
            // x^0 = 1 with the honest order of a 0-fold product: unlimited; cap by our own window
            return BasicSeries(1, 0, {GaussianRational(1)}, std::max<long>((order_ - val_) + 1, 1));
        }
        BasicSeries acc = *this;
        for (long k = 1; k < e; ++k) acc = acc * *this;
        return acc;
    }

    // Structural equality of canonical forms.
    friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
        return a.ram_ == b.ram_ && a.val_ == b.val_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const BasicSeries& a, const BasicSeries& b) { return !(a == b); }

    // Exact agreement of all coefficients below the common trusted order.
    bool agrees_with(const BasicSeries& o) const {
        long j = std::lcm(ram_, o.ram_);
        long ma = j / ram_, mb = j / o.ram_;
        long order = std::min(order_ * ma, o.order_ * mb);
        long lo = std::min(coeffs_.empty() ? order : val_ * ma, o.coeffs_.empty() ? order : o.val_ * mb);
        for (long k = lo; k < order; ++k) {
            GaussianRational ca = (k % ma == 0) ? coeff_index(k / ma) : GaussianRational(0);
            GaussianRational cb = (k % mb == 0) ? o.coeff_index(k / mb) : GaussianRational(0);
            if (ca != cb) return false;
        }
        return true;
    }

    // First exponent (below the common trusted order) where the two disagree.
    std::optional<Rational> first_difference(const BasicSeries& o) const {
        long j = std::lcm(ram_, o.ram_);
        long ma = j / ram_, mb = j / o.ram_;
        long order = std::min(order_ * ma, o.order_ * mb);
        long lo = std::min(coeffs_.empty() ? order : val_ * ma, o.coeffs_.empty() ? order : o.val_ * mb);
        for (long k = lo; k < order; ++k) {
            GaussianRational ca = (k % ma == 0) ? coeff_index(k / ma) : GaussianRational(0);
            GaussianRational cb = (k % mb == 0) ? o.coeff_index(k / mb) : GaussianRational(0);
            if (ca != cb) return Rational(k) / j;
        }
        return std::nullopt;
    }

    std::string str(const std::string& var) const {
        std::string out;
        for (size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[k].str() + ")*" + var + "^(" + rational_str(Rational(val_ + static_cast<long>(k)) / ram_) + ")";
        }
        if (out.empty()) out = "0";
        out += " + O(" + var + "^(" + rational_str(order()) + "))";
        return out;
    }
    std::string str() const { return str(L == Locus::at_zero ? "x" : "t"); }

private:
    // coefficient i steps above the valuation (unit-part coefficient)
    GaussianRational unit_coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(coeffs_.size())) return GaussianRational(0);
        return coeffs_[static_cast<size_t>(i)];
    }

    void normalize() {
        // clip anything at or beyond the trusted order
        if (!coeffs_.empty() && val_ + static_cast<long>(coeffs_.size()) > order_) {
            long keep = order_ - val_;
            coeffs_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
        }
        size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            val_ = order_;
        } else {
            if (lead > 0) {
                coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
                val_ += static_cast<long>(lead);
            }
            while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
        }
        if (ram_ > 1) {
            long g = std::gcd(ram_, std::gcd(order_, val_));
            for (size_t k = 0; k < coeffs_.size() && g > 1; ++k)
                if (!coeffs_[k].is_zero()) g = std::gcd(g, val_ + static_cast<long>(k));
            if (g > 1) {
                ram_ /= g;
                order_ /= g;
                val_ /= g;
                if (!coeffs_.empty()) {
                    std::vector<GaussianRational> w((coeffs_.size() - 1) / static_cast<size_t>(g) + 1);
                    for (size_t k = 0; k < coeffs_.size(); k += static_cast<size_t>(g))
                        w[k / static_cast<size_t>(g)] = std::move(coeffs_[k]);
                    coeffs_ = std::move(w);
                }
            }
        }
    }

    long ram_;
    long val_;
    std::vector<GaussianRational> coeffs_;
    long order_;
};

using PuiseuxSeries = BasicSeries<Locus::at_zero>;
using InfinitySeries = BasicSeries<Locus::at_infinity>;

// exponent map e -> p*e; the trusted order is multiplied by p as well
inline PuiseuxSeries substitute_power(const PuiseuxSeries& f, long p) {
    if (p < 2) throw std::invalid_argument("substitute_power needs p >= 2");
    std::vector<GaussianRational> w;
    if (!f.coeff_window().empty()) {
        w.assign((f.coeff_window().size() - 1) * static_cast<size_t>(p) + 1, GaussianRational(0));
        for (size_t k = 0; k < f.coeff_window().size(); ++k) w[k * static_cast<size_t>(p)] = f.coeff_window()[k];
    }
    return PuiseuxSeries(f.ram(), f.val_index() * p, std::move(w), f.order_index() * p);
}

// coefficient at exponent e is multiplied by q^e; for ramification j > 1 the
// caller must declare a j-th root of q in Q(i) (the field is not root-closed).
inline PuiseuxSeries substitute_scale(const PuiseuxSeries& f, const GaussianRational& q,
                                      const std::optional<GaussianRational>& q_root = std::nullopt) {
    if (q.is_zero()) throw std::invalid_argument("substitute_scale needs q != 0");
    GaussianRational s = q;
    if (f.ram() > 1) {
        if (!q_root)
            throw RootUnavailable("scaling a ramification-" + std::to_string(f.ram()) +
                                  " series requires a declared " + std::to_string(f.ram()) + "-th root of q");
        if (q_root->pow(f.ram()) != q) throw std::invalid_argument("declared q_root is not a root of q");
        s = *q_root;
    }
    std::vector<GaussianRational> w(f.coeff_window().size());
    GaussianRational power = s.pow(f.val_index());
    for (size_t k = 0; k < w.size(); ++k) {
        w[k] = f.coeff_window()[k] * power;
        power *= s;
    }
    return PuiseuxSeries(f.ram(), f.val_index(), std::move(w), f.order_index());
}

// t -> t/(1+ht), the expansion at infinity of x -> x + h. Exact composition:
// [t^g] f(s) = sum_e c_e * C(-e, g-e) * h^{g-e}.
inline InfinitySeries substitute_shift(const InfinitySeries& f, const GaussianRational& h) {
    if (h.is_zero() || f.is_zero_to_order()) return f;
    long val = f.val_index(), order = f.order_index();
    std::vector<GaussianRational> out(static_cast<size_t>(order - val));
    for (long e = val; e < order; ++e) {
        GaussianRational ce = f.coeff_index(e);
        if (ce.is_zero()) continue;
        // binom = C(-e, m) * h^m, accumulated incrementally
        GaussianRational binom(1);
        for (long m = 0; e + m < order; ++m) {
            if (!binom.is_zero()) out[static_cast<size_t>(e + m - val)] += ce * binom;
            binom *= GaussianRational(make_rational(-e - m, m + 1)) * h;
        }
    }
    return InfinitySeries(1, val, std::move(out), order);
}

namespace detail {

// window division helper: (num coeffs) / (den coeffs), den[0] != 0, len terms
inline std::vector<GaussianRational> power_series_div(const std::vector<GaussianRational>& num,
                                                      const std::vector<GaussianRational>& den, long len) {
    std::vector<GaussianRational> w(static_cast<size_t>(std::max<long>(len, 0)));
    if (len <= 0) return w;
    GaussianRational d0 = den[0].inverse();
    for (long k = 0; k < len; ++k) {
        GaussianRational s = k < static_cast<long>(num.size()) ? num[static_cast<size_t>(k)] : GaussianRational(0);
        for (long i = 1; i <= k && i < static_cast<long>(den.size()); ++i)
            if (!den[static_cast<size_t>(i)].is_zero()) s -= den[static_cast<size_t>(i)] * w[static_cast<size_t>(k - i)];
        w[static_cast<size_t>(k)] = s * d0;
    }
    return w;
}

} // namespace detail

// Exact expansion of r at x = 0, trusted modulo x^order.
inline PuiseuxSeries to_series_at_zero(const RationalFunction& r, long order) {
    if (r.is_zero()) return PuiseuxSeries::zero(order);
    long vn = r.num().valuation_at_zero(), vd = r.den().valuation_at_zero();
    long v = vn - vd;
    std::vector<GaussianRational> num(r.num().coeffs().begin() + vn, r.num().coeffs().end());
    std::vector<GaussianRational> den(r.den().coeffs().begin() + vd, r.den().coeffs().end());
    return PuiseuxSeries(1, v, detail::power_series_div(num, den, order - v), order);
}

// Exact expansion of r at x = infinity in t = 1/x, trusted modulo t^order.
inline InfinitySeries to_series_at_infinity(const RationalFunction& r, long order) {
    if (r.is_zero()) return InfinitySeries::zero(order);
    std::vector<GaussianRational> num(r.num().coeffs().rbegin(), r.num().coeffs().rend());
    std::vector<GaussianRational> den(r.den().coeffs().rbegin(), r.den().coeffs().rend());
    long v = r.valuation_at_infinity();
    return InfinitySeries(1, v, detail::power_series_div(num, den, order - v), order);
}

template <Locus L>
BasicSeries<L> to_series(const RationalFunction& r, long order) {
    if constexpr (L == Locus::at_zero)
        return to_series_at_zero(r, order);
    else
        return to_series_at_infinity(r, order);
}

} // namespace diffalg

#endif
