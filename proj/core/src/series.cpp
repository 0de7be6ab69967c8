#include <cyclebv/series.hpp>

#include <sstream>

namespace cyclebv {

std::string SeriesKey::to_string() const {
  std::ostringstream os;
  bool any = false;
  if (hbar != 0) {
    os << "h";
    if (hbar != 1) os << "^" << hbar;
    any = true;
  }
  for (const auto& [sym, exp] : couplings) {
    if (any) os << "*";
    os << sym;
    if (exp != 1) os << "^" << exp;
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

CouplingSeries CouplingSeries::constant(const RatFunc& c) {
  CouplingSeries s;
  s.add_term(SeriesKey{}, c);
  return s;
}

CouplingSeries CouplingSeries::constant(const Rational& c) {
  return constant(RatFunc(c));
}

CouplingSeries CouplingSeries::monomial(
    const RatFunc& c, int hbar_exp,
    const std::map<std::string, int>& couplings) {
  CouplingSeries s;
  SeriesKey key;
  key.hbar = hbar_exp;
  for (const auto& [sym, e] : couplings) {
    if (e < 0) throw std::invalid_argument("negative coupling exponent");
    if (e > 0) key.couplings[sym] = e;
  }
  s.add_term(key, c);
  return s;
}

RatFunc CouplingSeries::coefficient(const SeriesKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? RatFunc() : it->second;
}

void CouplingSeries::admit(const SeriesKey& key, const RatFunc& value) {
  if (value.is_zero()) return;
  if (key.hbar < h_min_ || key.hbar > h_max_ ||
      (coupling_cutoff_ >= 0 && key.coupling_degree() > coupling_cutoff_)) {
    truncated_ = true;
    return;
  }
  auto [it, inserted] = terms_.emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void CouplingSeries::add_term(const SeriesKey& key, const RatFunc& value) {
  admit(key, value);
}

CouplingSeries CouplingSeries::restricted(int h_min, int h_max,
                                          int coupling_cutoff) const {
  CouplingSeries out(h_min, h_max, coupling_cutoff);
  out.truncated_ = truncated_;
  for (const auto& [key, val] : terms_) {
    if (key.hbar < h_min || key.hbar > h_max) continue;
    if (coupling_cutoff >= 0 && key.coupling_degree() > coupling_cutoff)
      continue;
    out.terms_[key] = val;
  }
  return out;
}

namespace {
int min_cutoff(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return a < b ? a : b;
}
}  // namespace

CouplingSeries CouplingSeries::operator-() const {
  CouplingSeries out = *this;
  for (auto& [key, val] : out.terms_) val = -val;
  return out;
}

CouplingSeries CouplingSeries::operator+(const CouplingSeries& o) const {
  CouplingSeries out(std::max(h_min_, o.h_min_), std::min(h_max_, o.h_max_),
                     min_cutoff(coupling_cutoff_, o.coupling_cutoff_));
  out.truncated_ = truncated_ || o.truncated_;
  for (const auto& [key, val] : terms_) out.admit(key, val);
  for (const auto& [key, val] : o.terms_) out.admit(key, val);
  return out;
}

CouplingSeries CouplingSeries::operator-(const CouplingSeries& o) const {
  return *this + (-o);
}

CouplingSeries CouplingSeries::operator*(const CouplingSeries& o) const {
  CouplingSeries out(std::max(h_min_, o.h_min_), std::min(h_max_, o.h_max_),
                     min_cutoff(coupling_cutoff_, o.coupling_cutoff_));
  out.truncated_ = truncated_ || o.truncated_;
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : o.terms_) {
      SeriesKey key;
      key.hbar = ka.hbar + kb.hbar;
      key.couplings = ka.couplings;
      for (const auto& [sym, e] : kb.couplings) {
        auto [it, inserted] = key.couplings.emplace(sym, e);
        if (!inserted) it->second += e;
      }
      out.admit(key, va * vb);
    }
  }
  return out;
}

CouplingSeries CouplingSeries::operator*(const RatFunc& c) const {
  CouplingSeries out(h_min_, h_max_, coupling_cutoff_);
  out.truncated_ = truncated_;
  if (c.is_zero()) return out;
  for (const auto& [key, val] : terms_) out.terms_[key] = val * c;
  return out;
}

CouplingSeries CouplingSeries::operator*(const Rational& c) const {
  return *this * RatFunc(c);
}

CouplingSeries operator*(const RatFunc& c, const CouplingSeries& s) {
  return s * c;
}
CouplingSeries operator*(const Rational& c, const CouplingSeries& s) {
  return s * c;
}

CouplingSeries CouplingSeries::shifted_by_h(int k) const {
  CouplingSeries out(h_min_, h_max_, coupling_cutoff_);
  out.truncated_ = truncated_;
  for (const auto& [key, val] : terms_) {
    SeriesKey nk = key;
    nk.hbar += k;
    out.admit(nk, val);
  }
  return out;
}

CouplingSeries CouplingSeries::pow(unsigned e) const {
  CouplingSeries r(h_min_, h_max_, coupling_cutoff_);
  r.add_term(SeriesKey{}, RatFunc(Rational(1)));
  CouplingSeries base = *this;
  while (e > 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

std::string CouplingSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, val] : terms_) {
    if (!first) os << "  +  ";
    first = false;
    os << "(" << val.to_string() << ") " << key.to_string();
  }
  if (truncated_) os << "  [truncated]";
  return os.str();
}

CouplingSeries series_log_one_plus(const CouplingSeries& a) {
  if (a.coupling_cutoff() < 0)
    throw std::invalid_argument("log needs a coupling cutoff");
  for (const auto& [key, val] : a.terms())
    if (key.coupling_degree() < 1)
      throw std::invalid_argument(
          "log argument must have positive coupling degree");
  CouplingSeries out(a.h_min(), a.h_max(), a.coupling_cutoff());
  CouplingSeries power = a;
  for (int k = 1; k <= a.coupling_cutoff(); ++k) {
    Rational c = Rational(k % 2 == 1 ? 1 : -1, k);
    out += power * c;
    if (k < a.coupling_cutoff()) power *= a;
  }
  return out;
}

}  // namespace cyclebv
