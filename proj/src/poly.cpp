#include "weilzeta/poly.hpp"

#include "weilzeta/errors.hpp"

#include <sstream>

namespace wz {

PolyQ::PolyQ(std::vector<mpq_class> c) : c_(std::move(c)) { trim(); }

PolyQ PolyQ::constant(const mpq_class& a) { return PolyQ({a}); }

PolyQ PolyQ::monomial(const mpq_class& a, int k) {
    std::vector<mpq_class> c(k + 1);
    c[k] = a;
    return PolyQ(std::move(c));
}

void PolyQ::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpq_class PolyQ::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-() const {
    std::vector<mpq_class> r(c_);
    for (auto& x : r) x = -x;
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const mpq_class& a) const {
    std::vector<mpq_class> r(c_);
    for (auto& x : r) x *= a;
    return PolyQ(std::move(r));
}

void PolyQ::divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<mpq_class> rem = a.c_;
    int db = b.degree();
    std::vector<mpq_class> quo(std::max(0, a.degree() - db + 1));
    mpq_class lead = b.leading();
    for (int k = a.degree(); k >= db; --k) {
        if (sgn(rem[k]) == 0) continue;
        mpq_class f = rem[k] / lead;
        quo[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
    }
    q = PolyQ(std::move(quo));
    r = PolyQ(std::move(rem));
}

PolyQ PolyQ::mod(const PolyQ& m) const {
    PolyQ q, r;
    divmod(*this, m, q, r);
    return r;
}

PolyQ PolyQ::inverse_mod(const PolyQ& a, const PolyQ& m) {
    PolyQ r0 = m, r1 = a.mod(m);
    PolyQ s0, s1 = constant(1);
    while (!r1.is_zero()) {
        PolyQ q, r;
        divmod(r0, r1, q, r);
        PolyQ s = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if (r0.degree() != 0) throw DivisionByZero("element not invertible");
    mpq_class inv = 1 / r0.c_[0];
    return (s0 * inv).mod(m);
}

mpq_class PolyQ::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string PolyQ::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k].get_str();
        if (k >= 1) os << "*" << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

}  // namespace wz
